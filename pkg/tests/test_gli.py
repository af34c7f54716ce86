import numpy as np
import pytest
from scipy import integrate

from conftest import G1_REF, G2_REF, random_closed_curve, random_walk, straight
from mgli.curves import circle, hopf_link, torus_link_component
from mgli.errors import (
    ConvergenceError,
    DegenerateGeometryError,
    SingularConfigurationError,
)
from mgli.geometry import (
    Polyline,
    Segment,
    Segmentation,
    Structure,
    arclength_partition,
    partition_at,
    partition_structure,
    sample_parametric,
)
from mgli.gli import (
    edge_pair_gli,
    grand_sum,
    polyline_gli,
    projection_crossing_estimate,
    quadrature_gli,
    segment_gli,
    segmentation_matrix,
)


def _scipy_gli(p, q, a, b):
    """Plain dblquad of the Gauss integrand for two straight edges."""
    p, q, a, b = map(np.asarray, (p, q, a, b))
    u, v = q - p, b - a
    det_uv = np.cross(u, v)

    def f(t, s):
        r = p + s * u - (a + t * v)
        return det_uv @ r / np.linalg.norm(r) ** 3

    val, _ = integrate.dblquad(f, 0, 1, 0, 1, epsabs=1e-11, epsrel=1e-11)
    return val / (4 * np.pi)


# ------------------------------------------------------------ edge kernel

def test_shared_endpoint_is_exactly_zero(rng):
    for _ in range(20):
        o, a, b = rng.normal(size=(3, 3))
        assert edge_pair_gli(o, a, o, b) == 0.0
        assert edge_pair_gli(a, o, o, b) == 0.0
        assert edge_pair_gli(a, o, b, o) == 0.0


def test_coplanar_edges_give_zero():
    assert edge_pair_gli([0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 2, 0]) == 0.0
    assert abs(quadrature_gli(straight([0, 0, 0], [1, 0, 0]), straight([0, 1, 0], [1, 1, 0]))) <= 1e-7


def test_intersecting_edges_are_singular():
    with pytest.raises(SingularConfigurationError):
        edge_pair_gli([-1, 0, 0], [1, 0, 0], [0, -1, 0], [0, 1, 0])
    # endpoint touching the other edge's interior
    with pytest.raises(SingularConfigurationError):
        edge_pair_gli([-1, 0, 0], [1, 0, 0], [0, 0, 0], [0, 1, 1])
    with pytest.raises(DegenerateGeometryError):
        edge_pair_gli([0, 0, 0], [0, 0, 0], [0, 1, 0], [1, 1, 1])


def test_kernel_range(rng):
    vals = [edge_pair_gli(*rng.normal(size=(4, 3))) for _ in range(500)]
    assert max(abs(v) for v in vals) <= 0.5


def test_kernel_matches_scipy(rng):
    for _ in range(5):
        pts = rng.uniform(-1, 1, (4, 3))
        assert edge_pair_gli(*pts) == pytest.approx(_scipy_gli(*pts), abs=1e-9)


def test_crossing_edges_near_half():
    # a short edge pair passing very close to each other links by ~ +-1/2
    v = edge_pair_gli([-100, 0, 0], [100, 0, 0], [0, -100, 1e-3], [0, 100, 1e-3])
    assert abs(abs(v) - 0.5) < 1e-4


# ------------------------------------------------------------- quadrature

def test_quadrature_matches_scipy_oracle(rng):
    for _ in range(3):
        pts = rng.uniform(-1, 1, (4, 3))
        q = quadrature_gli(straight(*pts[:2]), straight(*pts[2:]), tol=1e-9)
        assert q == pytest.approx(_scipy_gli(*pts), abs=1e-8)


def test_quadrature_hopf_quarter_entry(hopf):
    v = quadrature_gli(*hopf, (0, 0.25), (0, 0.25))
    assert v == pytest.approx(-0.0640, abs=5e-3)


def test_quadrature_hopf_total(hopf):
    assert quadrature_gli(*hopf) == pytest.approx(-1.0, abs=1e-3)


def test_quadrature_absolute_dominates(hopf):
    signed = quadrature_gli(*hopf, tol=1e-6)
    absolute = quadrature_gli(*hopf, tol=1e-6, mode="absolute")
    assert absolute >= abs(signed)


def test_quadrature_budget_exhausted(hopf):
    near = straight([0, 0, 1e-4], [0, 1, 1e-4])
    with pytest.raises(ConvergenceError) as info:
        quadrature_gli(straight([-1, 0.5, 0], [1, 0.5, 0]), near, tol=1e-12, max_cells=512)
    assert np.isfinite(info.value.estimate) and info.value.error > 0


def test_quadrature_on_segments_matches_closed_form(rng):
    a = Polyline(rng.normal(size=(4, 3)))
    b = Polyline(rng.normal(size=(3, 3)) + [4, 0, 0])
    sa = arclength_partition(a, 1)[0]
    sb = arclength_partition(b, 1)[0]
    assert quadrature_gli(sa, sb, tol=1e-9) == pytest.approx(segment_gli(sa, sb), abs=1e-8)


# ------------------------------------------------------------ segment gli

def test_segment_gli_hopf_quarters():
    c1, c2 = hopf_link()
    n = 512
    # open quarter arcs, 512 vertices each, including both ends
    t = np.linspace(0, 0.25, n)
    s1 = Segment("l1", 0, c1(t), 0, 1, c1(np.array([0.125]))[0])
    s2 = Segment("l2", 0, c2(t), 0, 1, c2(np.array([0.125]))[0])
    assert segment_gli(s1, s2) == pytest.approx(-0.0640, abs=2e-3)


def test_segment_gli_collinear_neighbours_zero():
    p = Polyline([[0, 0, 0], [1, 0, 0], [2, 0, 0], [3, 0, 0]])
    seg = arclength_partition(p, 3)
    assert segment_gli(seg[0], seg[1]) == 0.0


def test_segment_gli_symmetric_and_absolute(rng):
    for _ in range(100):
        a = arclength_partition(random_walk(rng, 5), 1)[0]
        b = arclength_partition(random_walk(rng, 5, offset=(3, 0, 0)), 1)[0]
        s_ab, s_ba = segment_gli(a, b), segment_gli(b, a)
        assert abs(s_ab - s_ba) <= 1e-12
        assert segment_gli(a, b, "absolute") >= abs(s_ab)


def test_segment_gli_additive(rng):
    p = random_walk(rng, 8)
    partner = arclength_partition(random_walk(rng, 6, offset=(1, 1, 1)), 1)[0]
    whole = arclength_partition(p, 1)[0]
    halves = partition_at(p, [0.37])
    assert segment_gli(halves[0], partner) + segment_gli(halves[1], partner) == pytest.approx(
        segment_gli(whole, partner), abs=1e-9)


def test_segment_gli_intersection_raises():
    a = arclength_partition(Polyline([[-1, 0, 0], [1, 0, 0]]), 1)[0]
    b = arclength_partition(Polyline([[0, -1, 0], [0, 1, 0]]), 1)[0]
    with pytest.raises(SingularConfigurationError):
        segment_gli(a, b)


# ------------------------------------------------------- segmentation matrix

def _hopf_segmentations(n_rows, n_cols, samples=2000):
    c1, c2 = hopf_link()
    s = Structure({"l1": sample_parametric(c1, samples), "l2": sample_parametric(c2, samples)})
    return partition_structure(s, n_rows, ["l1"]), partition_structure(s, n_cols, ["l2"])


def test_hopf_matrix_g1():
    rows, cols = _hopf_segmentations(4, 4)
    m = segmentation_matrix(rows, cols)
    np.testing.assert_allclose(m.values, G1_REF, atol=5e-3)
    assert grand_sum(m) == pytest.approx(-1.0, abs=1e-3)
    assert not m.self_analysis and m.diagnostics == []


def test_hopf_matrix_g2():
    rows, cols = _hopf_segmentations(4, 6)
    m = segmentation_matrix(rows, cols)
    np.testing.assert_allclose(m.values, G2_REF, atol=5e-3)
    assert grand_sum(m) == pytest.approx(-1.0, abs=1e-3)


def test_self_analysis_seven_pieces(rng):
    p = random_walk(rng, 30)
    seg = arclength_partition(p, 7)
    m = segmentation_matrix(seg, seg)
    assert m.shape == (7, 7)
    assert np.all(np.diag(m.values) == 0)
    np.testing.assert_array_equal(m.values, m.values.T)
    np.testing.assert_array_equal(m.distances, m.distances.T)
    assert np.all(np.diag(m.distances) == 0)
    # off-diagonal entries are the segment GLIs
    assert m.values[0, 3] == pytest.approx(segment_gli(seg[0], seg[3]), abs=1e-12)


def test_absolute_mode_nonnegative(rng):
    seg = arclength_partition(random_walk(rng, 25), 6)
    m = segmentation_matrix(seg, seg, "absolute")
    s = segmentation_matrix(seg, seg, "signed")
    assert np.all(m.values >= 0)
    assert np.all(m.values >= np.abs(s.values) - 1e-15)


def test_lasso_bridge_matrix():
    # square loop pierced by an open bridge
    loop = Polyline([[0, 0, 0], [4, 0, 0], [4, 4, 0], [0, 4, 0]], closed=True)
    bridge = Polyline([[2, 2, -1], [2, 2, 1]])
    s = Structure({"loop": loop, "bridge": bridge})
    seg = partition_structure(s, {"loop": 3, "bridge": 1})
    m = segmentation_matrix(seg, seg)
    assert m.shape == (4, 4)
    assert np.all(np.diag(m.values) == 0)
    np.testing.assert_array_equal(m.values, m.values.T)
    assert grand_sum(m) != 0


def test_intersecting_entry_zero_with_diagnostic():
    s = Structure({"a": Polyline([[-1, 0, 0], [1, 0, 0]]), "b": Polyline([[0, -1, 0], [0, 1, 0]]),
                   "c": Polyline([[0, -1, 1], [1, 1, 3]])})
    seg = partition_structure(s, 1)
    m = segmentation_matrix(seg, seg)
    assert m.values[0, 1] == 0 and m.values[1, 0] == 0
    flagged = {(i, j) for i, j, _ in m.diagnostics}
    assert (0, 1) in flagged and (1, 0) in flagged
    assert m.values[0, 2] != 0


def test_matrix_threads_deterministic(rng):
    seg = arclength_partition(random_walk(rng, 400), 50)
    a = segmentation_matrix(seg, seg, threads=1)
    b = segmentation_matrix(seg, seg, threads=4)
    np.testing.assert_array_equal(a.values, b.values)


def test_grand_sum_basics(rng):
    assert grand_sum(np.zeros((3, 4))) == 0
    assert grand_sum(G1_REF) == pytest.approx(-1.0, abs=1e-3)


def test_grand_sum_independent_of_segmentation(rng):
    a = random_closed_curve(rng, 30)
    b = random_closed_curve(rng, 30, center=(1.0, 0.2, 0.1))
    total = polyline_gli(a, b)
    for _ in range(3):
        ra = partition_at(a, np.sort(rng.uniform(0, 1, rng.integers(1, 8))))
        rb = partition_at(b, np.sort(rng.uniform(0, 1, rng.integers(1, 8))))
        assert grand_sum(segmentation_matrix(ra, rb)) == pytest.approx(total, abs=1e-9)


# --------------------------------------------------------- crossing counts

def test_crossings_hopf(hopf):
    a, b = sample_parametric(hopf[0], 200), sample_parametric(hopf[1], 200)
    est, se = projection_crossing_estimate(a, b, 20000, seed=7, return_stderr=True)
    assert abs(est + 1) <= 3 * se or est == -1.0


def test_crossings_coplanar_zero():
    a = sample_parametric(circle(), 50)
    b = sample_parametric(circle((3, 0, 0)), 50)
    est, se = projection_crossing_estimate(a, b, 5000, seed=1, return_stderr=True)
    assert abs(est) <= 3 * se + 1e-12


def test_crossings_reproducible(rng):
    a, b = random_walk(rng, 6), random_walk(rng, 6, offset=(0.5, 0, 0))
    assert projection_crossing_estimate(a, b, 300, seed=3) == projection_crossing_estimate(a, b, 300, seed=3)


def test_crossings_match_closed_form(rng):
    for k in range(5):
        a, b = random_walk(rng, 8), random_walk(rng, 8, offset=(0.3, 0.2, 0))
        est, se = projection_crossing_estimate(a, b, 20000, seed=k, return_stderr=True)
        assert abs(est - polyline_gli(a, b)) <= 4 * se


# -------------------------------------------------------------- invariance

def test_topological_integers():
    c1, c2 = hopf_link()
    assert polyline_gli(sample_parametric(c1, 300), sample_parametric(c2, 300)) == pytest.approx(-1, abs=1e-9)
    far = polyline_gli(sample_parametric(circle(), 100), sample_parametric(circle((0, 0, 5)), 100))
    assert abs(far) < 1e-9
    t0 = sample_parametric(torus_link_component(2, 8, 0), 300)
    t1 = sample_parametric(torus_link_component(2, 8, 1), 300)
    assert abs(polyline_gli(t0, t1)) == pytest.approx(4, abs=1e-9)


def test_reflection_and_reversal(rng):
    a, b = random_walk(rng, 10), random_walk(rng, 10, offset=(1, 0, 0))
    s = Structure({"a": a, "b": b})
    seg = partition_structure(s, 3)
    m = segmentation_matrix(seg, seg)
    flip = np.diag([1.0, 1.0, -1.0])
    from mgli.geometry import transform

    seg_r = partition_structure(transform(s, flip), 3)
    mr = segmentation_matrix(seg_r, seg_r)
    np.testing.assert_array_equal(mr.values, -m.values)
    rev = seg.reversed_component("b")
    mv = segmentation_matrix(rev, rev)
    # pairs between a and b flip sign; a-a and b-b pairs keep it
    sign = np.ones((6, 6))
    sign[:3, 3:] = sign[3:, :3] = -1
    np.testing.assert_array_equal(mv.values, sign * m.values)
    assert polyline_gli(a, b.reversed()) == -polyline_gli(a, b)
    assert segment_gli(rev[0], rev[4]) == -segment_gli(seg[0], seg[4])
