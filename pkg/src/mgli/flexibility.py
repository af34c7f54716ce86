"""B-factor regression on mGLI features and the multi-protein benchmark."""
from __future__ import annotations

import csv
import logging
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from mgli.errors import InvalidArgumentError, MGLIError, UndefinedCorrelationError
from mgli.multiscale import FeatureMatrix, ScaleScheme
from mgli.protein import DEFAULT_SCHEME, protein_features, read_pdb

__all__ = [
    "FitOptions",
    "FitReport",
    "pearson",
    "design_matrix",
    "fit_bfactor",
    "ManifestEntry",
    "read_manifest",
    "BenchmarkRow",
    "BenchmarkReport",
    "benchmark",
]

log = logging.getLogger(__name__)

TRANSFORMS = ("raw", "reciprocal", "concat")
COND_LIMIT = 1e12


@dataclass(frozen=True)
class FitOptions:
    transform: str = "reciprocal"
    epsilon: float = 1e-3
    ridge: float = 1e-6

    def __post_init__(self):
        if self.transform not in TRANSFORMS:
            raise InvalidArgumentError(f"transform must be one of {TRANSFORMS}, got {self.transform!r}")
        if not self.epsilon > 0:
            raise InvalidArgumentError("epsilon must be positive")
        if not self.ridge >= 0:
            raise InvalidArgumentError("ridge must be non-negative")


@dataclass
class FitReport:
    weights: np.ndarray
    intercept: float
    fitted: np.ndarray
    experimental: np.ndarray
    pearson_r: float
    protein_id: str
    n_residues: int
    options: FitOptions
    solver: str
    residue_ids: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "protein_id": self.protein_id,
            "n_residues": self.n_residues,
            "pearson_r": None if math.isnan(self.pearson_r) else self.pearson_r,
            "intercept": self.intercept,
            "weights": self.weights.tolist(),
            "solver": self.solver,
            "options": asdict(self.options),
        }


def pearson(x, y) -> float:
    """Sample Pearson correlation coefficient.

    Raises
    ------
    UndefinedCorrelationError
        If either vector has zero variance.
    """
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if len(x) != len(y) or len(x) < 2:
        raise InvalidArgumentError("pearson needs two vectors of equal length >= 2")
    xc = x - x.mean()
    yc = y - y.mean()
    sx = math.sqrt(float(xc @ xc))
    sy = math.sqrt(float(yc @ yc))
    # spreads below rounding noise of the mean count as constant
    if sx <= 1e-14 * (np.abs(x).max() * math.sqrt(len(x))) or sx == 0:
        raise UndefinedCorrelationError("first vector has zero variance")
    if sy <= 1e-14 * (np.abs(y).max() * math.sqrt(len(y))) or sy == 0:
        raise UndefinedCorrelationError("second vector has zero variance")
    r = float(xc @ yc) / (sx * sy)
    return max(-1.0, min(1.0, r))


def design_matrix(features, opts: FitOptions) -> np.ndarray:
    """Apply the feature transform (without the intercept column)."""
    f = features.values if isinstance(features, FeatureMatrix) else np.asarray(features, dtype=float)
    if opts.transform == "raw":
        return f
    recip = 1.0 / (f + opts.epsilon)
    if opts.transform == "reciprocal":
        return recip
    return np.hstack([f, recip])


def _solve(x, y, ridge):
    """Least squares on centred data with ridge fallback.

    Returns ``(weights, intercept, solver)``.
    """
    xm = x.mean(axis=0)
    ym = y.mean()
    xc = x - xm
    yc = y - ym
    cond = np.linalg.cond(xc) if xc.size else 0.0
    if xc.shape[0] >= xc.shape[1] and np.isfinite(cond) and cond <= COND_LIMIT:
        w, *_ = np.linalg.lstsq(xc, yc, rcond=None)
        solver = "lstsq"
    else:
        # ridge on the same centred system; the intercept stays unpenalised
        gram = xc.T @ xc + ridge * np.eye(xc.shape[1])
        w = np.linalg.lstsq(gram, xc.T @ yc, rcond=None)[0]
        solver = "ridge"
    return w, float(ym - xm @ w), solver


def fit_bfactor(features, b, opts: FitOptions | None = None, protein_id: str = "") -> FitReport:
    """Fit ``b ~ X w + c`` on one protein and score it by Pearson correlation.

    ``X`` is the transformed feature matrix. The fit is in-sample. When the
    centred design is rank deficient or its condition number exceeds 1e12
    the system is re-solved with ridge penalty ``opts.ridge``.

    Raises
    ------
    UndefinedCorrelationError
        If experimental or fitted values are constant; the exception's
        ``report`` attribute still holds the fit.
    """
    opts = opts or FitOptions()
    b = np.asarray(b, dtype=float).ravel()
    x = design_matrix(features, opts)
    if x.shape[0] != len(b):
        raise InvalidArgumentError(f"{x.shape[0]} feature rows but {len(b)} B-factors")
    if len(b) < 2:
        raise InvalidArgumentError("need at least 2 residues to fit")
    w, c, solver = _solve(x, b, opts.ridge)
    fitted = x @ w + c
    labels = list(features.segment_labels) if isinstance(features, FeatureMatrix) else []
    report = FitReport(w, c, fitted, b, float("nan"), protein_id, len(b), opts, solver, labels)
    try:
        report.pearson_r = pearson(fitted, b)
    except UndefinedCorrelationError as exc:
        raise UndefinedCorrelationError(str(exc), report) from None
    return report


# ------------------------------------------------------------------ benchmark

@dataclass(frozen=True)
class ManifestEntry:
    path: str
    chain: str | None = None


def read_manifest(path) -> list[ManifestEntry]:
    """Parse ``path[,chain]`` lines; blank lines and ``#`` comments are ignored."""
    entries = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) > 2:
            raise InvalidArgumentError(f"bad manifest line {raw!r}")
        entries.append(ManifestEntry(parts[0], (parts[1] or None) if len(parts) == 2 else None))
    if not entries:
        raise InvalidArgumentError(f"manifest {path} lists no structures")
    return entries


@dataclass
class BenchmarkRow:
    pdb_id: str
    chain: str
    n_residues: int
    pearson_r: float
    status: str
    report: FitReport | None = None


@dataclass
class BenchmarkReport:
    rows: list

    @property
    def successes(self) -> list:
        return [r for r in self.rows if r.status == "ok"]

    @property
    def failures(self) -> list:
        return [r for r in self.rows if r.status != "ok"]

    @property
    def mean_r(self) -> float:
        ok = self.successes
        return float(np.mean([r.pearson_r for r in ok])) if ok else float("nan")

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["pdb_id", "chain", "n_residues", "pearson_r", "status"])
            for r in self.rows:
                w.writerow([r.pdb_id, r.chain, r.n_residues,
                            "" if math.isnan(r.pearson_r) else f"{r.pearson_r:.9g}", r.status])
            fh.write(f"# mean_pearson_r={self.mean_r:.9g} n_ok={len(self.successes)} "
                     f"n_failed={len(self.failures)}\n")


def _one(entry: ManifestEntry, scheme, mode, opts) -> BenchmarkRow:
    pdb_id = Path(entry.path).stem.upper()
    try:
        chain = read_pdb(entry.path, entry.chain)
        pdb_id = chain.pdb_id or pdb_id
        feats = protein_features(chain, scheme, mode)
        rep = fit_bfactor(feats, chain.bfactors, opts, protein_id=pdb_id)
    except (MGLIError, OSError, ValueError) as exc:
        log.warning("%s: %s", entry.path, exc)
        return BenchmarkRow(pdb_id, entry.chain or "", 0, float("nan"),
                            f"error: {type(exc).__name__}: {exc}")
    return BenchmarkRow(pdb_id, chain.chain_id, len(chain), rep.pearson_r, "ok", rep)


def benchmark(manifest, scheme: ScaleScheme | str = DEFAULT_SCHEME, opts: FitOptions | None = None,
              mode: str = "absolute") -> BenchmarkReport:
    """Fit every protein in ``manifest`` and collect per-protein correlations.

    ``manifest`` is a manifest file path or a sequence of
    :class:`ManifestEntry`. A failing protein becomes an error row; the
    batch carries on.
    """
    if isinstance(manifest, (str, Path)):
        entries = read_manifest(manifest)
    else:
        entries = [e if isinstance(e, ManifestEntry) else ManifestEntry(*e) for e in manifest]
    if not entries:
        raise InvalidArgumentError("empty manifest")
    if isinstance(scheme, str):
        scheme = ScaleScheme.parse(scheme)
    opts = opts or FitOptions()
    return BenchmarkReport([_one(e, scheme, mode, opts) for e in entries])
