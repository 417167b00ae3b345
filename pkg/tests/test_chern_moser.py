from __future__ import annotations

import random
from fractions import Fraction

import pytest

from affinetube.algebra import GaussRational, MultiPoly, TruncSeries
from affinetube.holo import (
    CMError,
    closed_form_residual,
    cm_expand,
    cm_trace,
    compare_pieces,
    d_n,
    printed_pieces,
    trace_conditions,
)
from affinetube.holo.chern_moser import random_gauss

F = Fraction


@pytest.fixture(scope="module", params=[4, 5, 6])
def jet(request):
    return cm_expand(request.param, 6)


def wvars(n):
    g = MultiPoly.gens(2 * n)
    return g[:n], g[n:]


def test_d_n():
    assert d_n(4) == F(5, 3)
    assert d_n(2) == 0


def test_cap_and_n_guards():
    with pytest.raises(CMError):
        cm_expand(4, 5)
    with pytest.raises(CMError):
        cm_expand(2, 6)


def test_solution_is_independent_of_re_w(jet):
    assert jet.u_free


def test_pieces_are_bihomogeneous_and_conjugate_symmetric(jet):
    n = jet.n
    for (k, l), p in jet.pieces.items():
        for e in p.terms:
            assert (sum(e[:n]), sum(e[n:])) == (k, l)
    assert jet.conjugate_symmetric()


def test_levi_form_and_low_pieces_match_printed(jet):
    got = compare_pieces(jet)
    assert got[(1, 1)] and got[(2, 2)] and got[(3, 2)]


def test_f33_differs_from_printed_by_one_term(jet):
    n = jet.n
    w, wb = wvars(n)
    s = sum((w[j] * wb[j] for j in range(2, n)), MultiPoly.zero(2 * n))
    a1 = w[0] * wb[0]
    diff = jet.piece(3, 3) - printed_pieces(n)[(3, 3)]
    assert diff == a1 * a1 * s * F(-1, 32)


def test_traces_vanish(jet):
    assert all(trace_conditions(jet).values())


def test_trace_of_printed_f22_by_hand():
    # tr F22 = (1/8)(4 d/5 - 4 (n-2)/(n+2)) |w1|^2 * const vanishes for d_n
    for n in (4, 5, 6):
        assert cm_trace(printed_pieces(n)[(2, 2)], n).is_zero()


@pytest.mark.parametrize("n", [4, 5])
def test_closed_form_satisfies_surface_equation(n):
    rng = random.Random(n)
    hits = 0
    while hits < 20:
        wp = [random_gauss(rng) for _ in range(n)]
        u = F(rng.randint(-5, 5), rng.randint(1, 5))
        try:
            res = closed_form_residual(n, wp, u)
        except ZeroDivisionError:
            continue
        assert res == 0
        hits += 1


def _closed_form_series(n, cap):
    """``10 Re(num/den)`` of the closed-form implicit equation as a series in (w', wbar')."""
    d = d_n(n)
    N = 2 * n

    def S(p):
        return TruncSeries(N, p.terms, cap)

    w, wb = wvars(n)
    w = [S(x) for x in w]
    wb = [S(x) for x in wb]
    s = sum(w[j] * wb[j] for j in range(2, n))
    a1 = w[0] * wb[0]
    num = (w[0] + 1) * s * 4 + a1 * (w[1] * 2 + w[0] * wb[1]) + w[0] * wb[1] * 4 + w[0] * w[0] * wb[1] * 2
    den = (w[0] + 2) * (wb[0] + 2) * (a1 * (-d) + 20)
    q = num * den.inverse()
    swap = list(range(n, N)) + list(range(n))
    return (q + S(q.conjugate(swap))) * 5


@pytest.mark.parametrize("n", [4, 5])
def test_expansion_agrees_with_closed_form_series(n):
    jet = cm_expand(n, 6)
    total = MultiPoly.zero(2 * n)
    for p in jet.pieces.values():
        total = total + p
    assert total == _closed_form_series(n, 6).as_poly()
