from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from affinetube.algebra import MultiPoly, identity, matmul, transpose
from affinetube.catalog import SurfaceId, make_surface, theorem2_ids
from affinetube.invariants import (
    DegenerateFormError,
    Jet3,
    L1Tensor,
    MetricForm,
    NotApplicable,
    OrbitType,
    adapt_frame,
    classify_L1,
    cubic_to_tensor,
    extract_L1,
    graph_jet,
    invariants_at,
    metric_trace,
    pseudo_norm_sq,
    second_fundamental_signature,
    standard_metric,
    tensor_to_cubic,
    trace_free_part,
    tube_criterion,
)
from affinetube.symmetry import Hypersurface, linear_field, symmetry_algebra

from conftest import fractions, invertible_matrices, recoordinatize

F = Fraction


def bare_jet(Q, C) -> Jet3:
    n = len(Q)
    return Jet3(n, [[F(x) for x in r] for r in Q], C, identity(n + 1), (F(0),) * (n + 1))


def lorentz_l1(T: MultiPoly, n: int) -> L1Tensor:
    return L1Tensor(MetricForm((n - 1, 1), standard_metric(n - 1, 1)), T, [F(0)] * n, n)


def congruent(B, Q):
    return matmul(matmul(transpose(B), Q), B)


@st.composite
def cubics(draw, n: int):
    terms = {}
    for e in product(range(4), repeat=n):
        if sum(e) == 3 and draw(st.booleans()):
            terms[e] = draw(fractions(5))
    return MultiPoly(n, terms)


# -- graph jet ---------------------------------------------------------------

def test_paraboloid_jet():
    x1, x2, x3 = MultiPoly.gens(3)
    j = graph_jet(Hypersurface(2, x3 - x1 * x1 - x2 * x2, (0, 0, 0)))
    assert j.Q == [[1, 0], [0, 1]] and j.C.is_zero()


def test_lorentzian_jet_read_off_equation():
    j = graph_jet(make_surface(SurfaceId("t2.1", 4)))
    h = F(1, 2)
    assert j.Q == [[0, 0, 0, h], [0, 1, 0, 0], [0, 0, 1, 0], [h, 0, 0, 0]]
    assert j.C.is_zero()


def test_sec6_jet_against_finite_differences():
    S = make_surface(SurfaceId("sec6", 4))
    j = graph_jet(S)
    assert j.graph_index == 4
    assert second_fundamental_signature(j) == (3, 1)
    assert not j.C.is_zero()

    # floating-point oracle: the graph x5 = g(x1..x4) is explicit here
    def g(u):
        x1 = 1.0 + u[0]
        return x1 * u[1] + x1 * (u[2] ** 2 + u[3] ** 2)

    h = 1e-3
    e = [[h if i == k else 0.0 for i in range(4)] for k in range(4)]
    for a in range(4):
        for b in range(4):
            pp = g([x + y for x, y in zip(e[a], e[b])])
            pm = g([x - y for x, y in zip(e[a], e[b])])
            mp = g([-x + y for x, y in zip(e[a], e[b])])
            mm = g([-x - y for x, y in zip(e[a], e[b])])
            mixed = (pp - pm - mp + mm) / (4 * h * h)
            assert abs(mixed / 2 - float(j.Q[a][b])) < 1e-9


def test_singular_point_rejected():
    x = MultiPoly.gens(3)
    S = Hypersurface(2, x[2] - x[0] * x[0], (0, 0, 0))
    with pytest.raises(ValueError):
        graph_jet(S, (0, 0, 1))


@pytest.mark.parametrize("sid", theorem2_ids(4, alphas=(0, 1)) + [SurfaceId("sec6", 4), SurfaceId("t1", 4)], ids=lambda s: s.label)
def test_jet_is_symmetric_and_signature(sid):
    S = make_surface(sid)
    j = graph_jet(S)
    assert j.is_symmetric()
    T = j.tensor()
    n = j.n
    for i, k, l in product(range(n), repeat=3):
        for a, b, c in permutations((i, k, l)):
            assert T[i][k][l] == T[a][b][c]
    raw = second_fundamental_signature(j)
    want = (n, 0) if sid.family == "T1Quadric" else (n - 1, 1)
    assert raw in (want, want[::-1])
    _, metric, _ = adapt_frame(j)
    assert tuple(metric.sig) == want


def test_sec6_wrong_side_has_opposite_signature():
    S = make_surface(SurfaceId("sec6", 4), point=(-1, 0, 0, 0, 0))
    assert second_fundamental_signature(graph_jet(S)) == (1, 3)


def test_parabolic_point_is_degenerate():
    S = make_surface(SurfaceId("t2.4", 4), point=(0, 0, 0, 0, 0))
    with pytest.raises(DegenerateFormError):
        adapt_frame(graph_jet(S))


# -- frame adaptation --------------------------------------------------------

def test_adapt_identity_when_already_normal():
    G = standard_metric(3, 1)
    B, metric, _ = adapt_frame(bare_jet(G, MultiPoly.zero(4)))
    assert B == identity(4) and metric.G == G and metric.scale == 1


def test_adapt_diagonal_lorentzian():
    Q = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]
    B, metric, adapted = adapt_frame(bare_jet(Q, MultiPoly.zero(4)))
    assert metric.sig == (3, 1) and metric.normalized
    assert congruent(B, [[F(x) for x in r] for r in Q]) == metric.G == adapted.Q
    assert metric.G == [[metric.scale * x for x in r] for r in standard_metric(3, 1)]


@pytest.mark.parametrize("factor,scale", [(4, 1), (2, 2), (F(1, 9), 1), (12, 3)])
def test_adapt_scaled_form(factor, scale):
    G = standard_metric(3, 1)
    Q = [[factor * x for x in r] for r in G]
    B, metric, _ = adapt_frame(bare_jet(Q, MultiPoly.zero(4)))
    assert congruent(B, Q) == metric.G
    assert metric.scale == scale
    assert metric.G == [[scale * x for x in r] for r in G]


@given(invertible_matrices(4, 2))
def test_adapt_random_lorentzian_congruence(S):
    G = standard_metric(3, 1)
    Q = congruent(S, G)
    B, metric, adapted = adapt_frame(bare_jet(Q, MultiPoly.zero(4)))
    assert metric.sig == (3, 1)
    assert adapted.Q == metric.G
    if metric.normalized:
        assert congruent(B, Q) == metric.G
        assert metric.G == [[metric.scale * x for x in r] for r in G]


# -- L1 -----------------------------------------------------------------------

def test_zero_cubic_gives_zero_l1():
    t = extract_L1(bare_jet(standard_metric(3, 1), MultiPoly.zero(4)))
    assert t.is_zero() and all(d == 0 for d in t.D_shift)


def test_cube_null_is_already_trace_free():
    _, _, t = invariants_at(make_surface(SurfaceId("t2.2", 4)))
    assert all(d == 0 for d in t.D_shift)
    support = {e for e in t.T.terms}
    assert len(support) == 1
    assert classify_L1(t).tag == "CubeNull"


def test_quadric_has_zero_l1():
    for n in (2, 3, 4):
        _, _, t = invariants_at(make_surface(SurfaceId("t1", n)))
        assert t.is_zero()


@given(cubics(4), invertible_matrices(4, 2))
def test_trace_free_certificate(C, S):
    Q = congruent(S, standard_metric(3, 1))
    T, lam = trace_free_part(C, Q)
    from affinetube.algebra import inverse

    assert not any(metric_trace(cubic_to_tensor(T, 4), inverse(Q)))
    # C - T is a multiple of the quadratic form
    Phi = sum((MultiPoly.gens(4)[i] * MultiPoly.gens(4)[j] * Q[i][j] for i in range(4) for j in range(4)), MultiPoly.zero(4))
    L = sum((MultiPoly.gens(4)[i] * lam[i] for i in range(4)), MultiPoly.zero(4))
    assert C - T == Phi * L


@given(cubics(4))
def test_tensor_round_trip(C):
    assert tensor_to_cubic(cubic_to_tensor(C, 4), 4) == C


@given(cubics(4), invertible_matrices(4, 2))
def test_l1_symmetric_and_self_adjoint(C, S):
    Q = congruent(S, standard_metric(3, 1))
    _, metric, adapted = adapt_frame(bare_jet(Q, C))
    t = extract_L1(adapted, metric)
    G = metric.G
    for k in range(4):
        X = [F(int(i == k)) for i in range(4)]
        E = t.endomorphism(X)
        assert matmul(G, E) == matmul(transpose(E), G)


def test_pseudo_norm_examples():
    x = MultiPoly.gens(4)
    assert pseudo_norm_sq(lorentz_l1(MultiPoly.zero(4), 4)) == 0
    assert pseudo_norm_sq(lorentz_l1(x[0] ** 3, 4)) == 0
    assert pseudo_norm_sq(lorentz_l1(x[1] ** 3, 4)) > 0


@given(cubics(3), invertible_matrices(3, 2))
def test_definite_jets_nonzero_l1_has_nonzero_norm(C, S):
    Q = congruent(S, identity(3))
    j = bare_jet(Q, C)
    _, metric, adapted = adapt_frame(j)
    t = extract_L1(adapted, metric)
    assert metric.sig == (3, 0)
    if not t.is_zero():
        assert pseudo_norm_sq(t) > 0
    else:
        assert pseudo_norm_sq(t) == 0


@pytest.mark.parametrize("n", [4, 5, 6])
def test_catalog_norm_vanishes(n):
    for sid in theorem2_ids(n, alphas=(0, F(1, 7))):
        _, _, t = invariants_at(make_surface(sid))
        assert pseudo_norm_sq(t) == 0


# -- orbit classification ----------------------------------------------------

def test_orbit_examples():
    x = MultiPoly.gens(4)
    assert classify_L1(lorentz_l1(MultiPoly.zero(4), 4)).tag == "Zero"
    assert classify_L1(lorentz_l1(x[0] ** 3, 4)).tag == "CubeNull"
    assert classify_L1(lorentz_l1(x[0] ** 2 * x[1] * 3, 4)).tag == "SquareNullLinear"
    t = classify_L1(lorentz_l1(x[0] * (x[1] ** 2 + x[2] ** 2 * 2) * 3, 4))
    assert t.tag == "NullTimesQuadric" and t.params == (1, F(1, 2))
    odd = classify_L1(lorentz_l1(x[1] ** 3, 4))
    assert odd.tag == "Unclassified" and odd.diagnostic


def test_irrational_eigenvalues_unclassified():
    x = MultiPoly.gens(5)
    q = x[1] ** 2 + x[1] * x[2] * 2 - x[2] ** 2 + x[3] ** 2
    t = classify_L1(lorentz_l1(x[0] * q, 5))
    assert t.tag == "Unclassified" and "irrational" in t.diagnostic


def test_classification_needs_lorentzian_metric():
    t = L1Tensor(MetricForm((4, 0), identity(4)), MultiPoly.gens(4)[0] ** 3, [0] * 4, 4)
    with pytest.raises(ValueError):
        classify_L1(t)


def test_orbit_type_validation():
    with pytest.raises(ValueError):
        OrbitType("Banana")
    with pytest.raises(ValueError):
        OrbitType("CubeNull", (1,))
    with pytest.raises(ValueError):
        OrbitType("NullTimesQuadric")


@pytest.mark.parametrize("n", [4, 5])
def test_sec6_orbit(n):
    _, _, t = invariants_at(make_surface(SurfaceId("sec6", n)))
    o = classify_L1(t)
    assert o.tag == "NullTimesQuadric" and o.params == (1,) * (n - 2)


# -- frame independence ------------------------------------------------------

@pytest.mark.parametrize("sid", [SurfaceId("t2.2", 4), SurfaceId("t2.3", 4, 1), SurfaceId("t2.6", 4), SurfaceId("sec6", 4)], ids=lambda s: s.label)
def test_frame_independence(sid):
    rng = random.Random(f"frame-{sid.label}")
    S = make_surface(sid)
    _, metric0, t0 = invariants_at(S)
    orbit0 = classify_L1(t0)
    for _ in range(10):
        P = recoordinatize(S, rng)
        _, metric, t = invariants_at(P)
        assert metric.sig == metric0.sig
        assert (pseudo_norm_sq(t) == 0) == (pseudo_norm_sq(t0) == 0)
        o = classify_L1(t)
        assert (o.tag, o.params) == (orbit0.tag, orbit0.params)


# -- tube criterion ----------------------------------------------------------

def test_tube_criterion_examples():
    assert tube_criterion(make_surface(SurfaceId("t2.2", 4))) is True
    assert tube_criterion(make_surface(SurfaceId("t1", 4))) is NotApplicable


def test_not_applicable_is_not_a_boolean():
    with pytest.raises(TypeError):
        bool(NotApplicable)


def test_cayley_surface_has_a_scaling_isotropy_element():
    """Oracle for the Cayley-type surface ``x3 = x1 x2 - x1^3/3``.

    ``x1 d1 + 2 x2 d2 + 3 x3 d3`` is tangent (X(F) = 3F), vanishes at 0 and
    multiplies the trace-free cubic by a nonzero factor, so the criterion
    answers true.  See the decisions ledger for the conflict with the
    expected value in the build contract.
    """
    x1, x2, x3 = MultiPoly.gens(3)
    Fc = x3 - x1 * x2 + x1 ** 3 / 3
    S = Hypersurface(2, Fc, (0, 0, 0))
    X = linear_field(3, {(0, 0): 1, (1, 1): 2, (2, 2): 3})
    assert X.apply(Fc) == Fc * 3
    L = symmetry_algebra(S)
    assert L.contains(X) and L.dim == 3
    _, _, t = invariants_at(S)
    assert not t.is_zero()
    assert tube_criterion(S) is True
