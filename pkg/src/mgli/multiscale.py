"""Distance-binned (scaled) GLI matrices and per-segment mGLI features.

Bins are half-open ``[r_t, r_{t+1})`` except the last, which also holds its
upper edge, so every distance inside ``[r_0, r_k]`` lands in exactly one bin.
Distances outside that range are dropped.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mgli.errors import InvalidArgumentError
from mgli.gli import GLIMatrix

__all__ = ["ScaleScheme", "FeatureMatrix", "bin_index", "scaled_matrix", "scheme_matrices", "localized_features"]


@dataclass(frozen=True, eq=False)
class ScaleScheme:
    edges: np.ndarray

    def __post_init__(self):
        e = np.array(self.edges, dtype=float).ravel()
        if len(e) < 2:
            raise InvalidArgumentError("a scale scheme needs at least two edges")
        if not np.all(np.isfinite(e)) or np.any(e < 0):
            raise InvalidArgumentError("scale edges must be finite and non-negative")
        if np.any(np.diff(e) <= 0):
            raise InvalidArgumentError("scale edges must be strictly increasing")
        e.setflags(write=False)
        object.__setattr__(self, "edges", e)

    @classmethod
    def parse(cls, text: str) -> "ScaleScheme":
        """Build a scheme from ``"start:stop:step"`` or a comma list of edges.

        ``"5:27:1"`` gives edges 5, 6, ..., 27 (22 bins).
        """
        text = text.strip()
        try:
            if ":" in text:
                start, stop, step = (float(x) for x in text.split(":"))
                if not step > 0 or not stop > start:
                    raise InvalidArgumentError(f"bad scale range {text!r}")
                n = int(round((stop - start) / step))
                if n < 1 or abs(start + n * step - stop) > 1e-9 * max(1.0, abs(stop)):
                    raise InvalidArgumentError(f"step does not divide the range in {text!r}")
                return cls(start + step * np.arange(n + 1))
            return cls([float(x) for x in text.split(",")])
        except ValueError as exc:
            if isinstance(exc, InvalidArgumentError):
                raise
            raise InvalidArgumentError(f"cannot parse scale scheme {text!r}") from exc

    @property
    def n_bins(self) -> int:
        return len(self.edges) - 1

    @property
    def bins(self) -> list[tuple[float, float]]:
        e = self.edges
        return [(float(e[t]), float(e[t + 1])) for t in range(self.n_bins)]

    @property
    def labels(self) -> list[str]:
        return [f"{_fmt(lo)}-{_fmt(hi)}" for lo, hi in self.bins]

    def split(self, t: int, at: float) -> "ScaleScheme":
        """Scheme with bin ``t`` split in two at radius ``at``."""
        lo, hi = self.bins[t]
        if not lo < at < hi:
            raise InvalidArgumentError("split point must lie strictly inside the bin")
        return ScaleScheme(np.insert(self.edges, t + 1, at))


def _fmt(x):
    return f"{x:g}"


def bin_index(distances, edges) -> np.ndarray:
    """Bin number of each distance, ``-1`` when outside ``[edges[0], edges[-1]]``."""
    d = np.asarray(distances, dtype=float)
    edges = np.asarray(edges, dtype=float)
    idx = np.searchsorted(edges, d, side="right") - 1
    idx = np.where(d == edges[-1], len(edges) - 2, idx)
    return np.where((d < edges[0]) | (d > edges[-1]), -1, idx)


def scaled_matrix(g: GLIMatrix, bin: tuple[float, float], last: bool = True) -> GLIMatrix:
    """Keep entries whose representative distance falls in ``bin``.

    The bin is ``[lo, hi)``; with ``last=True`` (a lone bin, or the top bin
    of a scheme) it is closed ``[lo, hi]``.
    """
    lo, hi = float(bin[0]), float(bin[1])
    if not lo < hi:
        raise InvalidArgumentError("bin must satisfy lo < hi")
    d = g.distances
    inside = (d >= lo) & ((d <= hi) if last else (d < hi))
    return g.with_values(np.where(inside, g.values, 0.0))


def scheme_matrices(g: GLIMatrix, scheme: ScaleScheme) -> list[GLIMatrix]:
    """One scaled matrix per bin, using the scheme's half-open bins."""
    idx = bin_index(g.distances, scheme.edges)
    return [g.with_values(np.where(idx == t, g.values, 0.0)) for t in range(scheme.n_bins)]


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """``n_segments x n_bins`` localized scaled GLI values."""

    values: np.ndarray
    scheme: ScaleScheme
    mode: str
    segment_labels: list

    @property
    def shape(self):
        return self.values.shape

    @property
    def bin_labels(self) -> list[str]:
        return self.scheme.labels


def localized_features(g: GLIMatrix, scheme: ScaleScheme) -> FeatureMatrix:
    """Row sums of the scaled matrices, one column per bin of ``scheme``."""
    idx = bin_index(g.distances, scheme.edges)
    n, k = g.values.shape[0], scheme.n_bins
    out = np.zeros((n, k))
    for t in range(k):
        out[:, t] = np.where(idx == t, g.values, 0.0).sum(axis=1)
    return FeatureMatrix(out, scheme, g.mode, list(g.row_labels))
