from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from affinetube.algebra import GaussRational, I, MultiPoly
from affinetube.holo import (
    HoloVectorField,
    RealDefiningPoly,
    algebra_closure,
    base_point,
    expected_isotropy_dim,
    gamma_rho,
    generator_count,
    generators,
    holo_bracket,
    holo_tangent,
    isotropy_dim_at,
    killing_signature,
    real_part_action,
    sl2_triple,
    tangency_multiplier,
    transitive_count,
)
from affinetube.symmetry import LieAlgebraBasis

from conftest import fractions

F = Fraction


def field(N, spec):
    return HoloVectorField.from_terms(N, spec)


@st.composite
def gauss(draw):
    return GaussRational(draw(fractions(4)), draw(fractions(4)))


@st.composite
def holo_fields(draw, N: int = 2, max_deg: int = 2):
    comps = []
    for _ in range(N):
        terms = {}
        for _ in range(draw(st.integers(0, 3))):
            e = tuple(draw(st.integers(0, max_deg)) for _ in range(N))
            if sum(e) <= max_deg:
                terms[e] = draw(gauss())
        comps.append(MultiPoly(N, terms))
    return HoloVectorField(tuple(comps))


# -- tangency operator -------------------------------------------------------

def test_real_part_action_examples():
    z, c = MultiPoly.gens(2)
    rho = RealDefiningPoly(z + c, 1)
    assert real_part_action(field(1, {0: MultiPoly.const(1, I)}), rho).is_zero()
    circle = RealDefiningPoly(z * c - 1, 1)
    euler = field(1, {0: MultiPoly.gens(1)[0]})
    assert real_part_action(euler, circle) == z * c * 2


def test_reality_is_checked():
    z, c = MultiPoly.gens(2)
    with pytest.raises(ValueError):
        RealDefiningPoly(z * I + c, 1)


@given(holo_fields(2))
def test_real_part_action_is_real(Y):
    rho = RealDefiningPoly(_disc_rho(), 2)
    out = real_part_action(Y, rho)
    assert out.conjugate([2, 3, 0, 1]) == out


def _disc_rho():
    z1, z2, c1, c2 = MultiPoly.gens(4)
    return z1 * c1 + z2 * c2 * 2 - z1 * c2 - z2 * c1 - 1


def test_translation_y_2n_plus_1_is_tangent_with_constant_multiplier():
    n = 4
    Y = dict(generators(n))["Y9"]
    mu = tangency_multiplier(Y, gamma_rho(n))
    assert mu is not None and mu.degree() <= 0


@pytest.mark.parametrize("n", [4, 5])
def test_all_generators_tangent(n):
    rho = gamma_rho(n)
    gens = generators(n)
    assert len(gens) == generator_count(n) == {4: 16, 5: 23}[n]
    for label, Y in gens:
        assert holo_tangent(Y, rho), label


def test_multipliers():
    n = 4
    rho = gamma_rho(n)
    gens = dict(generators(n))
    z = MultiPoly.gens(2 * (n + 1))
    assert tangency_multiplier(gens["Y6"], rho) == MultiPoly.const(10, 1)
    assert tangency_multiplier(gens["Y10"], rho) == MultiPoly.const(10, 2)
    last = tangency_multiplier(gens["Y16"], rho)
    assert last == (z[0] - z[n + 1]) * (I / 2)


def test_real_translation_not_tangent():
    n = 4
    d1 = field(n + 1, {0: MultiPoly.const(n + 1, 1)})
    assert not holo_tangent(d1, gamma_rho(n))


def test_perturbed_surface_loses_tangency():
    # the bump |z1|^4 only breaks fields that move z1 or rescale rho
    n = 4
    z = MultiPoly.gens(2 * (n + 1))
    bumped = gamma_rho(n, perturb=z[0] ** 2 * z[n + 1] ** 2)
    lost = {label for label, Y in generators(n) if not holo_tangent(Y, bumped)}
    assert lost == {"Y1", "Y6", "Y10", "Y16"}


@pytest.mark.parametrize("n", [4, 5])
def test_printed_variants_are_not_tangent(n):
    rho = gamma_rho(n)
    printed = dict(generators(n, printed=True))
    fixed = dict(generators(n))
    changed = {k for k in fixed if fixed[k] != printed[k]}
    want = {f"Y{n + j}" for j in range(3, n + 1)}
    want |= {f"I{j},{k}" for j in range(3, n + 1) for k in range(j + 1, n + 1)}
    assert changed == want
    for k in changed:
        assert not holo_tangent(printed[k], rho), k


# -- brackets -----------------------------------------------------------------

def test_bracket_examples():
    d1 = field(1, {0: MultiPoly.const(1, I)})
    e = field(1, {0: MultiPoly.gens(1)[0]})
    assert holo_bracket(d1, d1).is_zero()
    assert holo_bracket(d1, e) == d1


@given(holo_fields(), holo_fields(), holo_fields())
def test_holo_jacobi(X, Y, Z):
    total = holo_bracket(X, holo_bracket(Y, Z)) + holo_bracket(Y, holo_bracket(Z, X)) + holo_bracket(Z, holo_bracket(X, Y))
    assert total.is_zero()


@pytest.mark.parametrize("n", [4, 5])
def test_generators_close(n):
    ok, table = algebra_closure([f for _, f in generators(n)])
    assert ok and len(table) == generator_count(n)


def test_imaginary_translations_abelian():
    n = 4
    trans = [f for _, f in generators(n)[: n + 1]]
    ok, table = algebra_closure(trans)
    assert ok
    assert all(c == 0 for row in table for coeffs in row for c in coeffs)


def test_closure_without_last_generator_is_reported():
    n = 4
    gens = [f for _, f in generators(n)][:-1]
    ok, table = algebra_closure(gens)
    assert ok in (True, False)
    assert (table is None) == (not ok)


# -- isotropy and sl2 ---------------------------------------------------------

@pytest.mark.parametrize("n", [4, 5, 6])
def test_isotropy_dimension_ledger(n):
    gens = [f for _, f in generators(n)]
    iso = isotropy_dim_at(gens, base_point(n), gamma_rho(n))
    assert iso == expected_isotropy_dim(n) == n * n - 4 * n + 7
    assert transitive_count(n) + iso == generator_count(n)


def test_isotropy_needs_point_on_surface():
    n = 4
    with pytest.raises(ValueError):
        isotropy_dim_at([f for _, f in generators(n)], [GaussRational(2)] + [GaussRational(1)] * n, gamma_rho(n))


@pytest.mark.parametrize("n", [4, 5])
def test_sl2_triple(n):
    A, H, B = sl2_triple(n)
    p0 = base_point(n)
    assert [f.evaluate(p0) == [0] * (n + 1) for f in (A, H, B)] == [True, False, False]
    span = LieAlgebraBasis([A, H, B])
    for X, Y in ((H, A), (H, B), (A, B)):
        assert span.contains(holo_bracket(X, Y))
    assert killing_signature([A, H, B]) == (2, 1)


def test_sl2_standard_relations_after_basis_change():
    n = 4
    A, H, B = sl2_triple(n)
    E = A - B   # = -Y1/4
    assert holo_bracket(H, E) == E * -1
    assert holo_bracket(H, B) == B
    assert holo_bracket(E, B) == H * F(1, 8)
