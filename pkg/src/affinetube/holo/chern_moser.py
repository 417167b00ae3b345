"""Chern-Moser expansion of the tube over the type C surface.

Series live in the variables ``w_1..w_n, wbar_1..wbar_n, u, v`` where
``w_{n+1} = u + i v``.  ``u`` and ``v`` get weight 2 so that the weighted cap
bounds the bidegree ``k + l`` of the pieces ``F_{k,l}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..algebra import GaussRational, I, MultiPoly, TruncSeries, compose
from ..algebra.scalars import conj
from .type_c import gamma_rho


def d_n(n: int) -> Fraction:
    return Fraction(5 * (n - 2), n + 2)


@dataclass(frozen=True)
class CMFormulas:
    """Printed coefficients of the change of variables, the pieces and tr."""

    map_d: Fraction = Fraction(1, 10)      # i d_n / 10 in z_2 and z_{n+1}
    map_sq: Fraction = Fraction(2)         # 2 w_j^2 / (2 + w_1)^2
    f11: Fraction = Fraction(1, 2)
    f22: Fraction = Fraction(1, 8)
    f22_d: Fraction = Fraction(1, 5)
    f22_sum: Fraction = Fraction(4)        # 4 / (n + 2)
    f32: Fraction = Fraction(1, 16)
    f33: Fraction = Fraction(1, 160)
    f33_d: Fraction = Fraction(1, 5)
    tr_12: Fraction = Fraction(4)
    tr_jj: Fraction = Fraction(2)
    closed_scale: Fraction = Fraction(10)  # Im w_{n+1} / 10 = Re(...)


PRINTED_CM = CMFormulas()


class CMError(ValueError):
    pass


@dataclass
class BigradedJet:
    n: int
    cap: int
    pieces: dict
    u_free: bool

    def piece(self, k: int, l: int) -> MultiPoly:
        return self.pieces.get((k, l), MultiPoly.zero(2 * self.n))

    def conjugate_symmetric(self) -> bool:
        swap = list(range(self.n, 2 * self.n)) + list(range(self.n))
        keys = set(self.pieces)
        for k, l in keys:
            if self.piece(k, l).conjugate(swap) != self.piece(l, k):
                return False
        return True


class _Ring:
    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        self.nv = 2 * n + 2
        self.weights = [1] * (2 * n) + [2, 2]
        gens = MultiPoly.gens(self.nv)
        self.w = [self.series(g) for g in gens[:n]]
        self.wb = [self.series(g) for g in gens[n:2 * n]]
        self.u = self.series(gens[2 * n])
        self.v = self.series(gens[2 * n + 1])
        self.swap = list(range(n, 2 * n)) + list(range(n)) + [2 * n, 2 * n + 1]

    def series(self, p) -> TruncSeries:
        if not isinstance(p, MultiPoly):
            p = MultiPoly.const(self.nv, p)
        return TruncSeries(self.nv, p.terms, self.cap, self.weights)

    def bar(self, s: TruncSeries) -> TruncSeries:
        return self.series(s.conjugate(self.swap))


def change_of_variables(R: _Ring, f: CMFormulas = PRINTED_CM) -> list[TruncSeries]:
    n = R.n
    d = d_n(n)
    w = R.w
    wn1 = R.u + R.v * I
    inv = (R.series(2) + w[0]).inverse()
    c = I * d * f.map_d
    z = [None] * (n + 1)
    z[0] = w[0] + 1
    z2 = w[1] - c * w[0] * wn1
    for j in range(2, n):
        z2 = z2 - w[j] * w[j] * inv * inv * f.map_sq
    z[1] = z2
    for j in range(2, n):
        z[j] = w[j] * inv * 2
    z[n] = wn1 * -I + w[1] + w[0] * Fraction(1, 2) * (w[1] - c * (R.series(2) + w[0]) * wn1)
    return z


def rho_in_w(R: _Ring, f: CMFormulas = PRINTED_CM) -> TruncSeries:
    n = R.n
    z = change_of_variables(R, f)
    zb = [R.bar(s) for s in z]
    rho = gamma_rho(n).rho
    return compose(rho, z + zb)


def cm_expand(n: int, cap: int = 6, formulas: CMFormulas = PRINTED_CM) -> BigradedJet:
    """Solve ``rho = 0`` for ``v = Im w_{n+1}`` as a series and split by bidegree."""
    if cap < 6:
        raise CMError("cap must be at least 6 to determine F33")
    if n < 3:
        raise CMError("need n >= 3")
    R = _Ring(n, cap)
    rho = rho_in_w(R, formulas)
    vi = 2 * n + 1
    lin = rho.coeff(tuple(int(i == vi) for i in range(R.nv)))
    if lin == 0:
        raise CMError("equation is not solvable for Im w_{n+1}")
    rest = rho - R.v * lin
    ident = [R.series(g) for g in MultiPoly.gens(R.nv)]
    v = R.series(0)
    for _ in range(cap + 2):
        subst = list(ident)
        subst[vi] = v
        new = compose(rest, subst) * (-1 / GaussRational.coerce(lin))
        new = R.series(new)
        if new == v:
            break
        v = new
    else:
        raise CMError("series solve did not stabilize")
    u_free = all(e[2 * n] == 0 for e in v.terms)
    pieces: dict = {}
    for e, c in v.terms.items():
        if e[2 * n] or e[vi]:
            continue
        k = sum(e[:n])
        l = sum(e[n:2 * n])
        term = MultiPoly(2 * n, {e[:2 * n]: c})
        pieces[(k, l)] = pieces[(k, l)] + term if (k, l) in pieces else term
    return BigradedJet(n, cap, pieces, u_free)


# ----------------------------------------------------------------------------
# printed pieces and the trace operator

def _wvars(n: int):
    g = MultiPoly.gens(2 * n)
    return g[:n], g[n:]


def _re(p: MultiPoly, n: int) -> MultiPoly:
    swap = list(range(n, 2 * n)) + list(range(n))
    return (p + p.conjugate(swap)) * Fraction(1, 2)


def printed_pieces(n: int, f: CMFormulas = PRINTED_CM) -> dict:
    w, wb = _wvars(n)
    d = d_n(n)
    re12 = _re(w[0] * wb[1], n)
    s = MultiPoly.zero(2 * n)
    for j in range(2, n):
        s = s + w[j] * wb[j]
    a1 = w[0] * wb[0]
    F11 = (re12 + s) * f.f11
    F22 = a1 * (re12 * (d * f.f22_d) - s * (f.f22_sum / (n + 2))) * f.f22
    F32 = w[0] * a1 * s * f.f32
    F33 = a1 * a1 * (d * f.f33) * ((re12 + s) * (d * f.f33_d) - s)
    return {(1, 1): F11, (2, 2): F22, (3, 2): F32, (3, 3): F33}


def cm_trace(F: MultiPoly, n: int, k: int = 1, f: CMFormulas = PRINTED_CM) -> MultiPoly:
    """Apply ``tr`` to ``F`` ``k`` times."""
    for _ in range(k):
        if F.is_zero():
            return F
        out = (F.diff(0).diff(n + 1) + F.diff(1).diff(n)) * f.tr_12
        for j in range(2, n):
            out = out + F.diff(j).diff(n + j) * f.tr_jj
        F = out
    return F


def compare_pieces(jet: BigradedJet, f: CMFormulas = PRINTED_CM) -> dict:
    printed = printed_pieces(jet.n, f)
    return {key: jet.piece(*key) == val for key, val in printed.items()}


def trace_conditions(jet: BigradedJet, f: CMFormulas = PRINTED_CM) -> dict:
    n = jet.n
    return {
        "tr F22": cm_trace(jet.piece(2, 2), n, 1, f).is_zero(),
        "tr^2 F32": cm_trace(jet.piece(3, 2), n, 2, f).is_zero(),
        "tr^3 F33": cm_trace(jet.piece(3, 3), n, 3, f).is_zero(),
    }


# ----------------------------------------------------------------------------
# exact check of the closed-form implicit equation

def closed_form_v(n: int, wp: Sequence, f: CMFormulas = PRINTED_CM) -> Fraction:
    """``Im w_{n+1}`` predicted by the printed closed form at ``w' = wp``."""
    d = d_n(n)
    w = [GaussRational.coerce(x) for x in wp]
    wb = [conj(x) for x in w]
    s = sum((w[j] * wb[j] for j in range(2, n)), GaussRational(0))
    a1 = w[0] * wb[0]
    num = (w[0] + 1) * s * 4 + a1 * (w[1] * 2 + w[0] * wb[1]) + w[0] * wb[1] * 4 + w[0] * w[0] * wb[1] * 2
    den = (w[0] + 2) * (wb[0] + 2) * (20 - a1 * d)
    return (num / den).re * f.closed_scale


def map_point(n: int, wp: Sequence, u, v, f: CMFormulas = PRINTED_CM) -> list[GaussRational]:
    d = d_n(n)
    w = [GaussRational.coerce(x) for x in wp]
    wn1 = GaussRational(u, v)
    c = I * d * f.map_d
    z = [None] * (n + 1)
    z[0] = w[0] + 1
    z2 = w[1] - c * w[0] * wn1
    for j in range(2, n):
        z2 = z2 - w[j] * w[j] * f.map_sq / ((w[0] + 2) * (w[0] + 2))
    z[1] = z2
    for j in range(2, n):
        z[j] = w[j] * 2 / (w[0] + 2)
    z[n] = wn1 * -I + w[1] + w[0] / 2 * (w[1] - c * (w[0] + 2) * wn1)
    return z


def closed_form_residual(n: int, wp: Sequence, u, f: CMFormulas = PRINTED_CM) -> GaussRational:
    """``rho(z(w))`` with ``v`` taken from the closed form; zero when the form is right."""
    v = closed_form_v(n, wp, f)
    z = map_point(n, wp, u, v, f)
    return gamma_rho(n).at(z)


def random_gauss(rng, bound: int = 5) -> GaussRational:
    def r():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    return GaussRational(r(), r())

