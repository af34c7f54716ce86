"""Gauss linking integral kernels and segmentation matrices.

Three independent routes to the same number are provided:

* :func:`edge_pair_gli` evaluates the double integral between two straight
  edges in closed form (signed solid angle of the parallelogram of
  difference vectors, split into two triangles).
* :func:`quadrature_gli` integrates the Gauss integrand adaptively for
  arbitrary parametric curves.
* :func:`projection_crossing_estimate` averages half the signed crossing
  count between two polylines over random projection directions.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numba
import numpy as np

from mgli.errors import (
    ConvergenceError,
    DegenerateGeometryError,
    InvalidArgumentError,
    SingularConfigurationError,
)
from mgli.geometry import ParametricCurve, Polyline, Segment, Segmentation

__all__ = [
    "GLIMatrix",
    "edge_pair_gli",
    "edge_pairs_gli",
    "polyline_gli",
    "quadrature_gli",
    "segment_gli",
    "segmentation_matrix",
    "grand_sum",
    "projection_crossing_estimate",
    "thread_count",
]

MODES = ("signed", "absolute")

# pairs per vectorised block; bounds temporary memory to a few hundred MB
_BLOCK = 250_000


def _check_mode(mode):
    if mode not in MODES:
        raise InvalidArgumentError(f"mode must be 'signed' or 'absolute', got {mode!r}")


def thread_count(threads=None) -> int:
    """Worker count: explicit value, else ``MGLI_THREADS``, else all cores."""
    if threads is None:
        env = os.environ.get("MGLI_THREADS", "").strip()
        threads = int(env) if env else 0
    if threads <= 0:
        threads = os.cpu_count() or 1
    return int(threads)


def _dot(x, y):
    return np.einsum("...i,...i->...", x, y)


def _kernel(a0, a1, b0, b1):
    """Closed-form GLI for broadcast arrays of edges, no validation.

    Returns ``(values, triple, norms)``; ``triple`` is the triple product used
    to screen for coplanar (possibly intersecting) pairs.
    """
    r00 = a0 - b0
    r01 = a0 - b1
    r11 = a1 - b1
    r10 = a1 - b0
    n00 = np.sqrt(_dot(r00, r00))
    n01 = np.sqrt(_dot(r01, r01))
    n11 = np.sqrt(_dot(r11, r11))
    n10 = np.sqrt(_dot(r10, r10))
    d00_11 = _dot(r00, r11)
    triple = _dot(r00, np.cross(r01, r11))
    den1 = n00 * n01 * n11 + _dot(r00, r01) * n11 + _dot(r01, r11) * n00 + d00_11 * n01
    den2 = n00 * n10 * n11 + _dot(r00, r10) * n11 + _dot(r10, r11) * n00 + d00_11 * n10
    values = (np.arctan2(triple, den1) + np.arctan2(triple, den2)) / (2 * np.pi)
    return values, triple, (n00, n01, n11, n10)


def _segment_distance(p0, p1, q0, q1):
    """Minimum distance between segments ``p0p1`` and ``q0q1`` (vectorised)."""
    d1 = p1 - p0
    d2 = q1 - q0
    r = p0 - q0
    a = _dot(d1, d1)
    e = _dot(d2, d2)
    f = _dot(d2, r)
    c = _dot(d1, r)
    b = _dot(d1, d2)
    denom = a * e - b * b
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(denom > 1e-300, np.clip((b * f - c * e) / denom, 0.0, 1.0), 0.0)
        t = (b * s + f) / e
        s = np.where(t < 0, np.clip(-c / a, 0.0, 1.0), np.where(t > 1, np.clip((b - c) / a, 0.0, 1.0), s))
    t = np.clip(t, 0.0, 1.0)
    diff = (p0 + s[..., None] * d1) - (q0 + t[..., None] * d2)
    return np.sqrt(_dot(diff, diff))


def _shares_endpoint(a0, a1, b0, b1):
    return (np.all(a0 == b0, axis=-1) | np.all(a0 == b1, axis=-1)
            | np.all(a1 == b0, axis=-1) | np.all(a1 == b1, axis=-1))


def edge_pairs_gli(a0, a1, b0, b1):
    """Closed-form GLI for every broadcast edge pair.

    Returns ``(values, singular)``: pairs sharing an endpoint get exactly 0,
    pairs that intersect elsewhere get 0 and ``singular = True``.
    """
    a0, a1, b0, b1 = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (a0, a1, b0, b1)))
    shared = _shares_endpoint(a0, a1, b0, b1)
    with np.errstate(invalid="ignore", divide="ignore"):
        values, triple, norms = _kernel(a0, a1, b0, b1)
    scale = norms[0] * norms[1] * norms[2]
    singular = np.zeros(values.shape, dtype=bool)
    suspect = ~shared & ((np.abs(triple) <= 1e-10 * scale) | ~np.isfinite(values))
    if np.any(suspect):
        idx = np.nonzero(suspect)
        length = np.maximum(np.sqrt(_dot(a1[idx] - a0[idx], a1[idx] - a0[idx])),
                            np.sqrt(_dot(b1[idx] - b0[idx], b1[idx] - b0[idx])))
        dist = _segment_distance(a0[idx], a1[idx], b0[idx], b1[idx])
        singular[idx] = dist <= 1e-12 * length
    values = np.where(shared | singular, 0.0, values)
    return values, singular


def edge_pair_gli(a0, a1, b0, b1) -> float:
    """Gauss linking integral between straight edges ``a0->a1`` and ``b0->b1``.

    Exact up to rounding; the result lies in ``[-1/2, 1/2]``. Edges sharing
    an endpoint give exactly 0 (the integrand vanishes identically).

    Raises
    ------
    DegenerateGeometryError
        If either edge has zero length.
    SingularConfigurationError
        If the edges intersect anywhere other than a shared endpoint.
    """
    a0, a1, b0, b1 = (np.asarray(x, dtype=float).reshape(3) for x in (a0, a1, b0, b1))
    if np.all(a0 == a1) or np.all(b0 == b1):
        raise DegenerateGeometryError("edge has zero length")
    value, singular = edge_pairs_gli(a0[None], a1[None], b0[None], b1[None])
    if singular[0]:
        raise SingularConfigurationError("edges intersect")
    return float(value[0])


def _canonical(points):
    """Orient a vertex list canonically; returns ``(points, sign)``.

    A path and its reverse map to the same array, so their sums are
    computed identically and differ only by the exact factor ``sign``.
    """
    rev = points[::-1]
    diff = np.nonzero((points != rev).ravel())[0]
    if len(diff) and points.ravel()[diff[0]] > rev.ravel()[diff[0]]:
        return rev, -1.0
    return points, 1.0


def _edge_arrays(points_list):
    """Stack canonically oriented edges; returns starts, ends, offsets, signs."""
    canon = [_canonical(np.asarray(p)) for p in points_list]
    starts = [p[:-1] for p, _ in canon]
    ends = [p[1:] for p, _ in canon]
    counts = np.array([len(s) for s in starts])
    offsets = np.concatenate([[0], np.cumsum(counts)])
    signs = np.array([sg for _, sg in canon])
    return np.vstack(starts), np.vstack(ends), offsets, signs


def polyline_gli(a: Polyline, b: Polyline, mode: str = "signed") -> float:
    """Total GLI between two disjoint polylines (closed form over all edge pairs)."""
    _check_mode(mode)
    a0, a1, _, sa = _edge_arrays([a.loop])
    b0, b1, _, sb = _edge_arrays([b.loop])
    total = 0.0
    step = max(1, _BLOCK // len(b0))
    for i in range(0, len(a0), step):
        vals, singular = edge_pairs_gli(a0[i:i + step, None], a1[i:i + step, None], b0[None], b1[None])
        if singular.any():
            raise SingularConfigurationError("polylines intersect")
        total += float(np.sum(np.abs(vals) if mode == "absolute" else vals))
    return total if mode == "absolute" else float(sa[0] * sb[0]) * total


def segment_gli(a: Segment, b: Segment, mode: str = "signed") -> float:
    """GLI between two curve segments, summed over their straight edges.

    In absolute mode each edge pair contributes its absolute value; the
    integrand has constant sign on a pair of straight edges, so this is the
    integral of the absolute integrand.

    Raises
    ------
    SingularConfigurationError
        If the segments intersect at an interior point.
    """
    _check_mode(mode)
    a0, a1, _, sa = _edge_arrays([a.points])
    b0, b1, _, sb = _edge_arrays([b.points])
    vals, singular = edge_pairs_gli(a0[:, None], a1[:, None], b0[None], b1[None])
    if singular.any():
        raise SingularConfigurationError(f"segments {a.label} and {b.label} intersect")
    if mode == "absolute":
        return float(np.abs(vals).sum())
    return float(sa[0] * sb[0]) * float(vals.sum())


@dataclass(frozen=True, eq=False)
class GLIMatrix:
    """Pairwise segment GLI values with the matching representative distances.

    ``diagnostics`` lists ``(i, j, message)`` for entries forced to zero
    because the segments intersect.
    """

    values: np.ndarray
    distances: np.ndarray
    mode: str
    row_labels: list
    col_labels: list
    self_analysis: bool = False
    diagnostics: list = field(default_factory=list)

    @property
    def shape(self):
        return self.values.shape

    def with_values(self, values) -> "GLIMatrix":
        return GLIMatrix(np.asarray(values, dtype=float), self.distances, self.mode,
                         self.row_labels, self.col_labels, self.self_analysis,
                         list(self.diagnostics))


def _overlap_mask(rows: Segmentation, cols: Segmentation) -> np.ndarray:
    n, m = len(rows), len(cols)
    mask = np.zeros((n, m), dtype=bool)
    if rows.structure is not cols.structure:
        return mask
    rcomp = np.array([s.component for s in rows], dtype=object)
    ccomp = np.array([s.component for s in cols], dtype=object)
    rstart = np.array([s.start for s in rows])
    rstop = np.array([s.stop for s in rows])
    cstart = np.array([s.start for s in cols])
    cstop = np.array([s.stop for s in cols])
    for name in set(rcomp) & set(ccomp):
        ri = np.nonzero(rcomp == name)[0]
        ci = np.nonzero(ccomp == name)[0]
        poly = rows.structure[name]
        total = poly.cumulative_length[-1]
        tol = 1e-12 * total
        lo1, hi1 = rstart[ri][:, None], rstop[ri][:, None]
        lo2, hi2 = cstart[ci][None], cstop[ci][None]
        shifts = (-total, 0.0, total) if poly.closed else (0.0,)
        hit = np.zeros((len(ri), len(ci)), dtype=bool)
        for sh in shifts:
            hit |= np.minimum(hi1, hi2 + sh) - np.maximum(lo1, lo2 + sh) > tol
        mask[np.ix_(ri, ci)] = hit
    if rows is cols:
        np.fill_diagonal(mask, True)
    return mask


def _row_block(r0, r1, r_off, r_sign, c0, c1, c_off, c_sign, row_seg_range, mode):
    """Segment-level sums for the row segments in ``row_seg_range``."""
    i_lo, i_hi = row_seg_range
    e_lo, e_hi = r_off[i_lo], r_off[i_hi]
    vals, singular = edge_pairs_gli(r0[e_lo:e_hi, None], r1[e_lo:e_hi, None], c0[None], c1[None])
    if mode == "absolute":
        vals = np.abs(vals)
    col_starts = c_off[:-1]
    row_starts = r_off[i_lo:i_hi] - e_lo
    block = np.add.reduceat(np.add.reduceat(vals, col_starts, axis=1), row_starts, axis=0)
    if mode == "signed":
        block *= r_sign[i_lo:i_hi, None] * c_sign[None]
    sing = np.add.reduceat(np.add.reduceat(singular.astype(np.int64), col_starts, axis=1),
                           row_starts, axis=0) > 0
    return block, sing


def segmentation_matrix(rows: Segmentation, cols: Segmentation, mode: str = "signed",
                        threads: int | None = None) -> GLIMatrix:
    """Generalised segmentation matrix between two segmentations.

    Entry ``(i, j)`` is the GLI between row segment ``i`` and column segment
    ``j``. It is 0 when the two segments share a piece of curve of positive
    length (always the case on the diagonal when ``rows is cols``) and 0,
    with a diagnostic, when they intersect at isolated points. Distances are
    Euclidean distances between segment representatives.

    Passing the same :class:`Segmentation` object twice selects
    self-analysis, in which case the result is exactly symmetric.
    """
    _check_mode(mode)
    self_analysis = rows is cols
    r0, r1, r_off, r_sign = _edge_arrays([s.points for s in rows])
    c0, c1, c_off, c_sign = _edge_arrays([s.points for s in cols])
    n, m = len(rows), len(cols)

    # blocks of whole row segments, so each entry is summed in one place
    per_block = max(1, _BLOCK // max(1, len(c0)))
    ranges, i = [], 0
    while i < n:
        j = i + 1
        while j < n and r_off[j + 1] - r_off[i] <= per_block:
            j += 1
        ranges.append((i, j))
        i = j

    def work(rng):
        return _row_block(r0, r1, r_off, r_sign, c0, c1, c_off, c_sign, rng, mode)

    workers = min(thread_count(threads), len(ranges))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(work, ranges))
    else:
        results = [work(r) for r in ranges]
    values = np.vstack([blk for blk, _ in results])
    singular = np.vstack([s for _, s in results])

    overlap = _overlap_mask(rows, cols)
    singular &= ~overlap
    values[overlap | singular] = 0.0
    rl, cl = rows.labels, cols.labels
    diagnostics = [(int(i), int(j), f"segments {rl[i]} and {cl[j]} intersect; entry set to 0")
                   for i, j in zip(*np.nonzero(singular))]

    reps_r, reps_c = rows.representatives, cols.representatives
    distances = np.sqrt(np.sum((reps_r[:, None, :] - reps_c[None, :, :]) ** 2, axis=-1))
    if self_analysis:
        values = 0.5 * (values + values.T)
        np.fill_diagonal(values, 0.0)
        np.fill_diagonal(distances, 0.0)
    return GLIMatrix(values, distances, mode, rl, cl, self_analysis, diagnostics)


def grand_sum(m) -> float:
    """Sum of all entries of a :class:`GLIMatrix` (or plain array)."""
    values = m.values if isinstance(m, GLIMatrix) else np.asarray(m, dtype=float)
    return float(np.sum(values))


# ---------------------------------------------------------------- quadrature

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


def _as_curve(c):
    if isinstance(c, Segment):
        return c.as_curve()
    if isinstance(c, ParametricCurve):
        return c
    raise InvalidArgumentError("expected a ParametricCurve or a Segment")


def _cell_rule(c1, c2, cells, absolute):
    """Tensor Gauss-Legendre estimate on each cell ``(s0, s1, t0, t1)``."""
    s0, s1, t0, t1 = cells.T
    hs, ht = 0.5 * (s1 - s0), 0.5 * (t1 - t0)
    s = (s0 + s1)[:, None] * 0.5 + hs[:, None] * _GL_NODES[None]
    t = (t0 + t1)[:, None] * 0.5 + ht[:, None] * _GL_NODES[None]
    p1, v1 = c1(s.ravel()).reshape(*s.shape, 3), c1.velocity(s.ravel()).reshape(*s.shape, 3)
    p2, v2 = c2(t.ravel()).reshape(*t.shape, 3), c2.velocity(t.ravel()).reshape(*t.shape, 3)
    r = p1[:, :, None, :] - p2[:, None, :, :]
    cross = np.cross(v1[:, :, None, :], v2[:, None, :, :])
    f = _dot(cross, r) / np.sqrt(_dot(r, r)) ** 3
    if absolute:
        f = np.abs(f)
    w = _GL_WEIGHTS[:, None] * _GL_WEIGHTS[None, :]
    return np.einsum("kij,ij->k", f, w) * hs * ht / (4 * np.pi)


def _split(cells):
    s0, s1, t0, t1 = cells.T
    sm, tm = 0.5 * (s0 + s1), 0.5 * (t0 + t1)
    return np.stack([
        np.stack([s0, sm, t0, tm], 1), np.stack([sm, s1, t0, tm], 1),
        np.stack([s0, sm, tm, t1], 1), np.stack([sm, s1, tm, t1], 1),
    ], 1).reshape(-1, 4)


def _grid(lo, hi, breaks):
    pts = [lo] + [b for b in breaks if lo < b < hi] + [hi]
    return np.array(pts)


def quadrature_gli(c1, c2, s_range=(0.0, 1.0), t_range=(0.0, 1.0), tol: float = 1e-7,
                   mode: str = "signed", max_cells: int = 2 ** 20) -> float:
    """Adaptive cubature of the Gauss linking integrand.

    Parameters
    ----------
    c1, c2 : ParametricCurve or Segment
        Segments are parametrised by normalised arc length.
    s_range, t_range : (float, float)
        Parameter sub-intervals of ``[0, 1]`` for ``c1`` and ``c2``.
    tol : float
        Target absolute error. A cell is accepted once the difference
        between its 8x8 Gauss-Legendre value and the sum over its four
        children is below ``tol`` times its share of the domain area.
    mode : {'signed', 'absolute'}
        ``'absolute'`` integrates the absolute value of the integrand.
    max_cells : int
        Refinement budget (number of cells evaluated).

    Raises
    ------
    ConvergenceError
        When the budget is exhausted; carries the last estimate and error.
    """
    _check_mode(mode)
    if not tol > 0:
        raise InvalidArgumentError("tol must be positive")
    (sa, sb), (ta, tb) = s_range, t_range
    if not (0 <= sa < sb <= 1 and 0 <= ta < tb <= 1):
        raise InvalidArgumentError("parameter ranges must be sub-intervals of [0, 1]")
    c1, c2 = _as_curve(c1), _as_curve(c2)
    absolute = mode == "absolute"

    sg = _grid(sa, sb, getattr(c1, "breakpoints", ()))
    tg = _grid(ta, tb, getattr(c2, "breakpoints", ()))
    cells = np.array([(sg[i], sg[i + 1], tg[j], tg[j + 1])
                      for i in range(len(sg) - 1) for j in range(len(tg) - 1)])
    area = (sb - sa) * (tb - ta)
    coarse = _cell_rule(c1, c2, cells, absolute)
    evaluated = len(cells)
    accepted = 0.0
    pending_err = np.inf
    while len(cells):
        children = _split(cells)
        fine = _cell_rule(c1, c2, children, absolute)
        evaluated += len(children)
        fine_sum = fine.reshape(-1, 4).sum(axis=1)
        err = np.abs(fine_sum - coarse)
        cell_area = (cells[:, 1] - cells[:, 0]) * (cells[:, 3] - cells[:, 2])
        ok = err <= tol * cell_area / area
        if not np.all(np.isfinite(fine_sum)):
            raise SingularConfigurationError("integrand is singular: curves intersect")
        accepted += float(np.sum(fine_sum[ok]))
        keep = ~ok
        pending = float(np.sum(fine_sum[keep]))
        pending_err = float(np.sum(err[keep]))
        if not keep.any():
            return accepted
        if evaluated + 4 * int(keep.sum()) > max_cells:
            raise ConvergenceError(
                f"quadrature did not converge within {max_cells} cells",
                estimate=accepted + pending, error=pending_err)
        kept_children = children.reshape(-1, 4, 4)[keep].reshape(-1, 4)
        cells = kept_children
        coarse = fine.reshape(-1, 4)[keep].ravel()
    return accepted


# ------------------------------------------------------- crossing estimator

@numba.njit(cache=True)
def _crossing_sums(a, b, e1, e2, d):
    """Half the signed crossing count between ``a`` and ``b`` for each frame.

    Returns ``(values, degenerate)``; a frame is degenerate if some edge
    projects to (nearly) a point.
    """
    nd = d.shape[0]
    na = a.shape[0] - 1
    nb = b.shape[0] - 1
    values = np.zeros(nd)
    degenerate = np.zeros(nd, dtype=np.bool_)
    ax = np.empty(na + 1)
    ay = np.empty(na + 1)
    ah = np.empty(na + 1)
    bx = np.empty(nb + 1)
    by = np.empty(nb + 1)
    bh = np.empty(nb + 1)
    for k in range(nd):
        for i in range(na + 1):
            ax[i] = a[i, 0] * e1[k, 0] + a[i, 1] * e1[k, 1] + a[i, 2] * e1[k, 2]
            ay[i] = a[i, 0] * e2[k, 0] + a[i, 1] * e2[k, 1] + a[i, 2] * e2[k, 2]
            ah[i] = a[i, 0] * d[k, 0] + a[i, 1] * d[k, 1] + a[i, 2] * d[k, 2]
        for j in range(nb + 1):
            bx[j] = b[j, 0] * e1[k, 0] + b[j, 1] * e1[k, 1] + b[j, 2] * e1[k, 2]
            by[j] = b[j, 0] * e2[k, 0] + b[j, 1] * e2[k, 1] + b[j, 2] * e2[k, 2]
            bh[j] = b[j, 0] * d[k, 0] + b[j, 1] * d[k, 1] + b[j, 2] * d[k, 2]
        bad = False
        for i in range(na):
            if abs(ax[i + 1] - ax[i]) + abs(ay[i + 1] - ay[i]) < 1e-12:
                bad = True
        for j in range(nb):
            if abs(bx[j + 1] - bx[j]) + abs(by[j + 1] - by[j]) < 1e-12:
                bad = True
        if bad:
            degenerate[k] = True
            continue
        total = 0
        for i in range(na):
            rx = ax[i + 1] - ax[i]
            ry = ay[i + 1] - ay[i]
            amin_x = min(ax[i], ax[i + 1])
            amax_x = max(ax[i], ax[i + 1])
            amin_y = min(ay[i], ay[i + 1])
            amax_y = max(ay[i], ay[i + 1])
            for j in range(nb):
                if max(bx[j], bx[j + 1]) < amin_x or min(bx[j], bx[j + 1]) > amax_x:
                    continue
                if max(by[j], by[j + 1]) < amin_y or min(by[j], by[j + 1]) > amax_y:
                    continue
                qx = bx[j + 1] - bx[j]
                qy = by[j + 1] - by[j]
                den = rx * qy - ry * qx
                if den == 0.0:
                    continue
                wx = bx[j] - ax[i]
                wy = by[j] - ay[i]
                s = (wx * qy - wy * qx) / den
                t = (wx * ry - wy * rx) / den
                if s < 0.0 or s >= 1.0 or t < 0.0 or t >= 1.0:
                    continue
                ha = ah[i] + s * (ah[i + 1] - ah[i])
                hb = bh[j] + t * (bh[j + 1] - bh[j])
                # sign of (over direction x under direction) along the view axis
                sgn = 1 if den > 0 else -1
                if ha < hb:
                    sgn = -sgn
                total += sgn
        values[k] = 0.5 * total
    return values, degenerate


def _frames(directions):
    d = directions / np.linalg.norm(directions, axis=1, keepdims=True)
    helper = np.where((np.abs(d[:, 0]) < 0.9)[:, None], [[1.0, 0.0, 0.0]], [[0.0, 1.0, 0.0]])
    e1 = np.cross(d, helper)
    e1 /= np.linalg.norm(e1, axis=1, keepdims=True)
    e2 = np.cross(d, e1)
    return e1, e2, d


def projection_crossing_estimate(a: Polyline, b: Polyline, n_directions: int, seed: int = 42,
                                 return_stderr: bool = False, max_retries: int = 100):
    """Monte-Carlo GLI estimate from signed crossings in random projections.

    Each of ``n_directions`` seeded uniform directions on the sphere gives
    half the signed count of crossings between edges of ``a`` and edges of
    ``b`` in the orthogonal plane; the estimate is their mean.

    With ``return_stderr=True`` returns ``(estimate, standard_error)``.
    """
    n_directions = int(n_directions)
    if n_directions < 1:
        raise InvalidArgumentError("n_directions must be >= 1")
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((n_directions, 3))
    pa = np.ascontiguousarray(a.loop)
    pb = np.ascontiguousarray(b.loop)
    values, degenerate = _crossing_sums(pa, pb, *_frames(dirs))
    retries = 0
    while degenerate.any():
        retries += 1
        if retries > max_retries:
            raise DegenerateGeometryError("projection stays degenerate after resampling")
        idx = np.nonzero(degenerate)[0]
        new_vals, new_deg = _crossing_sums(pa, pb, *_frames(rng.standard_normal((len(idx), 3))))
        values[idx] = new_vals
        degenerate[idx] = new_deg
    estimate = float(values.mean())
    if not return_stderr:
        return estimate
    stderr = float(values.std(ddof=1) / np.sqrt(n_directions)) if n_directions > 1 else float("inf")
    return estimate, stderr
