"""Curve primitives: polylines, parametric curves and arc-length segmentation.

Points are plain ``numpy`` arrays of shape ``(3,)``; polylines hold an
``(n, 3)`` vertex array. A closed polyline never repeats its first vertex,
the closing edge ``vertices[-1] -> vertices[0]`` is implicit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from mgli.errors import DegenerateGeometryError, InvalidArgumentError

__all__ = [
    "Polyline",
    "Structure",
    "ParametricCurve",
    "Segment",
    "Segmentation",
    "sample_parametric",
    "transform",
    "arclength_partition",
    "partition_at",
    "partition_structure",
    "random_rotation",
]


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Polyline:
    """Ordered vertex list, open or closed. Orientation follows vertex order."""

    vertices: np.ndarray
    closed: bool = False

    def __post_init__(self):
        v = _frozen(self.vertices)
        if v.ndim != 2 or v.shape[1] != 3:
            raise InvalidArgumentError(f"vertices must have shape (n, 3), got {v.shape}")
        if len(v) < 2:
            raise InvalidArgumentError("a polyline needs at least 2 vertices")
        if not np.all(np.isfinite(v)):
            raise InvalidArgumentError("vertex coordinates must be finite")
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "closed", bool(self.closed))
        if np.any(self.edge_lengths == 0):
            raise DegenerateGeometryError("consecutive vertices must be distinct")

    def __len__(self):
        return len(self.vertices)

    @property
    def loop(self) -> np.ndarray:
        """Vertices in traversal order, with the first one appended when closed."""
        if self.closed:
            return np.vstack([self.vertices, self.vertices[:1]])
        return self.vertices

    @property
    def edge_lengths(self) -> np.ndarray:
        return np.linalg.norm(np.diff(self.loop, axis=0), axis=1)

    @property
    def n_edges(self) -> int:
        return len(self.vertices) if self.closed else len(self.vertices) - 1

    @property
    def length(self) -> float:
        return float(self.edge_lengths.sum())

    @property
    def cumulative_length(self) -> np.ndarray:
        """Arc length at each vertex of :attr:`loop`, starting at 0."""
        return np.concatenate([[0.0], np.cumsum(self.edge_lengths)])

    def point_at(self, s):
        """Point(s) at arc length ``s`` measured from vertex 0."""
        s = np.asarray(s, dtype=float)
        loop = self.loop
        cum = self.cumulative_length
        k = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(cum) - 2)
        frac = (s - cum[k]) / (cum[k + 1] - cum[k])
        pts = loop[k] + frac[..., None] * (loop[k + 1] - loop[k])
        # land exactly on vertices when the parameter does
        pts = np.where((frac <= 0)[..., None], loop[k], pts)
        pts = np.where((frac >= 1)[..., None], loop[k + 1], pts)
        return pts

    def reversed(self) -> "Polyline":
        """Same curve traversed backwards.

        For a closed curve vertex 0 is kept as the start point.
        """
        if self.closed:
            v = np.vstack([self.vertices[:1], self.vertices[:0:-1]])
        else:
            v = self.vertices[::-1]
        return Polyline(v, self.closed)


@dataclass(frozen=True, eq=False)
class Structure:
    """Named collection of polylines (knot, link, lasso, protein chain...)."""

    components: Mapping[str, Polyline]

    def __post_init__(self):
        comps = self.components
        if not isinstance(comps, Mapping):
            names = [name for name, _ in comps]
            if len(set(names)) != len(names):
                raise InvalidArgumentError("component names must be unique")
            comps = dict(comps)
        if not comps:
            raise InvalidArgumentError("a structure needs at least one component")
        for name, p in comps.items():
            if not isinstance(p, Polyline):
                raise InvalidArgumentError(f"component {name!r} is not a Polyline")
        object.__setattr__(self, "components", dict(comps))

    def __getitem__(self, name) -> Polyline:
        try:
            return self.components[name]
        except KeyError:
            raise InvalidArgumentError(f"no component named {name!r}") from None

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    @property
    def names(self) -> list[str]:
        return list(self.components)

    def map(self, fn) -> "Structure":
        return Structure({k: fn(p) for k, p in self.components.items()})


@dataclass(frozen=True, eq=False)
class ParametricCurve:
    """A curve ``t -> point`` on ``[0, 1]``.

    ``func`` must be vectorised: an array of ``N`` parameters maps to an
    ``(N, 3)`` array. ``derivative`` is optional; without it velocities are
    taken from a fourth-order central difference.
    """

    func: Callable[[np.ndarray], np.ndarray]
    closed: bool = False
    derivative: Callable[[np.ndarray], np.ndarray] | None = None

    def __call__(self, t):
        return np.asarray(self.func(np.asarray(t, dtype=float)), dtype=float)

    def velocity(self, t):
        t = np.asarray(t, dtype=float)
        if self.derivative is not None:
            return np.asarray(self.derivative(t), dtype=float)
        h = 1e-3
        return (-self(t + 2 * h) + 8 * self(t + h) - 8 * self(t - h) + self(t - 2 * h)) / (12 * h)


def sample_parametric(curve: ParametricCurve, n: int) -> Polyline:
    """Sample ``curve`` at ``n`` equally spaced parameters.

    Closed curves use ``t = i/n`` (the endpoint ``t = 1`` is the start
    again and is not repeated); open curves use ``t = i/(n-1)``.
    """
    n = int(n)
    if curve.closed:
        if n < 3:
            raise InvalidArgumentError("closed curves need n >= 3 samples")
        t = np.arange(n) / n
    else:
        if n < 2:
            raise InvalidArgumentError("open curves need n >= 2 samples")
        t = np.arange(n) / (n - 1)
    return Polyline(curve(t), curve.closed)


def transform(obj, matrix, translation=(0.0, 0.0, 0.0)):
    """Apply ``x -> matrix @ x + translation`` to every vertex.

    Works on a :class:`Polyline` or a whole :class:`Structure`; closed flags
    and component names are kept.
    """
    matrix = np.asarray(matrix, dtype=float)
    translation = np.asarray(translation, dtype=float)
    if matrix.shape != (3, 3) or translation.shape != (3,):
        raise InvalidArgumentError("expected a 3x3 matrix and a length-3 translation")
    if not (np.all(np.isfinite(matrix)) and np.all(np.isfinite(translation))):
        raise InvalidArgumentError("affine map must be finite")
    if isinstance(obj, Structure):
        return obj.map(lambda p: transform(p, matrix, translation))
    return Polyline(obj.vertices @ matrix.T + translation, obj.closed)


def random_rotation(rng) -> np.ndarray:
    """Haar-random proper rotation matrix."""
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


@dataclass(frozen=True, eq=False)
class Segment:
    """A contiguous piece of one component.

    ``points`` is the ordered vertex list of the piece, including any split
    points synthesised on edge interiors. ``start``/``stop`` are arc-length
    positions along the parent component.
    """

    component: str
    index: int
    points: np.ndarray
    start: float
    stop: float
    representative: np.ndarray
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "points", _frozen(self.points))
        object.__setattr__(self, "representative", _frozen(self.representative))
        if not self.label:
            object.__setattr__(self, "label", f"{self.component}:{self.index + 1}")
        if len(self.points) < 2 or self.length <= 0:
            raise DegenerateGeometryError(f"segment {self.label} has zero length")

    @property
    def length(self) -> float:
        return float(np.linalg.norm(np.diff(self.points, axis=0), axis=1).sum())

    @property
    def edges(self):
        """``(starts, ends)`` arrays of the straight pieces of this segment."""
        return self.points[:-1], self.points[1:]

    def reversed(self) -> "Segment":
        return Segment(self.component, self.index, self.points[::-1], self.start, self.stop,
                       self.representative, self.label)

    def as_curve(self) -> ParametricCurve:
        """Arc-length parametrisation of the piece on ``[0, 1]``."""
        pts = self.points
        seg_len = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        knots = np.concatenate([[0.0], np.cumsum(seg_len)]) / seg_len.sum()

        def func(t):
            t = np.asarray(t, dtype=float)
            k = np.clip(np.searchsorted(knots, t, side="right") - 1, 0, len(knots) - 2)
            frac = (t - knots[k]) / (knots[k + 1] - knots[k])
            return pts[k] + frac[..., None] * (pts[k + 1] - pts[k])

        def derivative(t):
            t = np.asarray(t, dtype=float)
            k = np.clip(np.searchsorted(knots, t, side="right") - 1, 0, len(knots) - 2)
            return (pts[k + 1] - pts[k]) / (knots[k + 1] - knots[k])[..., None]

        curve = ParametricCurve(func, False, derivative)
        object.__setattr__(curve, "breakpoints", knots)
        return curve


@dataclass(frozen=True, eq=False)
class Segmentation:
    """Ordered segments of (components of) one structure."""

    structure: Structure
    segments: tuple[Segment, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    def __len__(self):
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def __getitem__(self, i) -> Segment:
        return self.segments[i]

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.segments]

    @property
    def representatives(self) -> np.ndarray:
        return np.array([s.representative for s in self.segments]).reshape(-1, 3)

    def reversed_component(self, name) -> "Segmentation":
        """Flip the traversal direction of every segment on component ``name``.

        Segment order and labels are kept, so matrix entries stay aligned.
        """
        return Segmentation(self.structure,
                            [s.reversed() if s.component == name else s for s in self.segments])

    def overlaps(self, a: Segment, b: Segment) -> bool:
        """Whether two segments share a piece of curve of positive length."""
        if a.component != b.component:
            return False
        if a is b:
            return True
        total = self.structure[a.component].length
        return _intervals_overlap(a.start, a.stop, b.start, b.stop, total,
                                  self.structure[a.component].closed)


def _intervals_overlap(a0, a1, b0, b1, total, closed):
    if not closed:
        return min(a1, b1) - max(a0, b0) > 1e-12 * total
    pieces = []
    for lo, hi in ((a0, a1), (b0, b1)):
        lo, hi = lo % total, hi % total
        if hi <= lo:
            hi += total
        pieces.append((lo, hi))
    (lo1, hi1), (lo2, hi2) = pieces
    for shift in (-total, 0.0, total):
        if min(hi1, hi2 + shift) - max(lo1, lo2 + shift) > 1e-12 * total:
            return True
    return False


def _cut_component(polyline: Polyline, name, cuts, representatives=None,
                   labels=None) -> list[Segment]:
    """Split ``polyline`` at sorted arc-length positions ``cuts``.

    ``cuts`` includes both ends (0 and the total length). Split points are
    computed once so neighbouring pieces share bit-identical endpoints.
    """
    cuts = np.asarray(cuts, dtype=float)
    cum = polyline.cumulative_length
    loop = polyline.loop
    cut_points = polyline.point_at(cuts)
    cut_points[0] = loop[0]
    cut_points[-1] = loop[-1]
    segments = []
    for i in range(len(cuts) - 1):
        s0, s1 = cuts[i], cuts[i + 1]
        inner = np.nonzero((cum > s0) & (cum < s1))[0]
        pts = np.vstack([cut_points[i : i + 1], loop[inner], cut_points[i + 1 : i + 2]])
        keep = np.ones(len(pts), dtype=bool)
        keep[1:] = np.any(pts[1:] != pts[:-1], axis=1)
        pts = pts[keep]
        rep = polyline.point_at(0.5 * (s0 + s1)) if representatives is None else representatives[i]
        label = labels[i] if labels is not None else ""
        segments.append(Segment(name, i, pts, float(s0), float(s1), rep, label))
    return segments


def _equal_cuts(polyline: Polyline, n) -> np.ndarray:
    n = int(n)
    if n < 1:
        raise InvalidArgumentError("number of pieces must be >= 1")
    total = polyline.length
    if not total > 0:
        raise InvalidArgumentError("cannot partition a zero-length polyline")
    cuts = total * np.arange(n + 1) / n
    cuts[-1] = polyline.cumulative_length[-1]
    return cuts


def arclength_partition(polyline: Polyline, n: int, name: str = "curve") -> Segmentation:
    """Split ``polyline`` into ``n`` pieces of equal arc length.

    Pieces are ordered along the orientation; for closed curves the first
    piece starts at vertex 0. Representatives are arc-length midpoints.
    """
    return Segmentation(Structure({name: polyline}),
                        _cut_component(polyline, name, _equal_cuts(polyline, n)))


def partition_at(polyline: Polyline, fractions: Sequence[float], name: str = "curve",
                 structure: Structure | None = None) -> Segmentation:
    """Split ``polyline`` at the given fractions of its total length.

    Fractions are sorted and must lie strictly inside ``(0, 1)``.
    """
    f = np.sort(np.asarray(fractions, dtype=float))
    if np.any((f <= 0) | (f >= 1)) or np.any(np.diff(f) <= 0):
        raise InvalidArgumentError("cut fractions must be distinct and inside (0, 1)")
    total = polyline.cumulative_length[-1]
    cuts = np.concatenate([[0.0], f * total, [total]])
    structure = structure if structure is not None else Structure({name: polyline})
    return Segmentation(structure, _cut_component(polyline, name, cuts))


def partition_structure(structure: Structure, n: int | Mapping[str, int],
                        components: Sequence[str] | None = None) -> Segmentation:
    """Equal-arc segmentation of several components of one structure.

    ``n`` is either one piece count for every component or a mapping from
    component name to piece count.
    """
    names = list(components) if components is not None else structure.names
    segments = []
    for name in names:
        p = structure[name]
        k = n[name] if isinstance(n, Mapping) else n
        segments.extend(_cut_component(p, name, _equal_cuts(p, k)))
    return Segmentation(structure, segments)
