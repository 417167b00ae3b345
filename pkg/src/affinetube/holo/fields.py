"""Holomorphic polynomial vector fields and tangency to real hypersurfaces.

A real polynomial in ``(z, zbar)`` is stored over Gaussian rationals in
``2N`` variables: ``z_1..z_N`` then ``zbar_1..zbar_N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from ..algebra import GaussRational, I, MultiPoly, congruence_diagonalize, rank, solve
from ..algebra.scalars import conj, imag_part, real_part
from ..symmetry import LieAlgebraBasis


def _swap(N: int) -> list[int]:
    return list(range(N, 2 * N)) + list(range(N))


def realify(p: MultiPoly, N: int) -> MultiPoly:
    """``p + conj(p)`` with the variable swap, i.e. ``2 Re p``."""
    return p + p.conjugate(_swap(N))


@dataclass(frozen=True)
class HoloVectorField:
    """``sum_j comps[j](z) d/dz_j`` on C^N with ``N = n + 1``."""

    comps: tuple

    def __post_init__(self):
        comps = tuple(self.comps)
        N = len(comps)
        if any(c.nvars != N for c in comps):
            raise ValueError("components must be polynomials in the N holomorphic variables")
        object.__setattr__(self, "comps", comps)

    @property
    def N(self) -> int:
        return len(self.comps)

    @property
    def n(self) -> int:
        return self.N - 1

    @classmethod
    def from_terms(cls, N: int, spec: dict) -> HoloVectorField:
        comps = [MultiPoly.zero(N)] * N
        for j, poly in spec.items():
            comps[j] = poly
        return cls(tuple(comps))

    def degree(self) -> int:
        return max(c.degree() for c in self.comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def as_dict(self) -> dict:
        """Real coordinates of the field (real and imaginary parts of each coefficient)."""
        out = {}
        for j, c in enumerate(self.comps):
            for e, v in c.terms.items():
                re, im = real_part(v), imag_part(v)
                if re:
                    out[(j, e, 0)] = re
                if im:
                    out[(j, e, 1)] = im
        return out

    def __add__(self, other: HoloVectorField) -> HoloVectorField:
        if other.N != self.N:
            raise ValueError("dimension mismatch")
        return HoloVectorField(tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other):
        return self + other * -1

    def __neg__(self):
        return self * -1

    def __mul__(self, c) -> HoloVectorField:
        return HoloVectorField(tuple(p * c for p in self.comps))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, HoloVectorField) and self.comps == other.comps

    def __hash__(self):
        return hash(tuple(frozenset(c.terms.items()) for c in self.comps))

    def bracket(self, other: HoloVectorField) -> HoloVectorField:
        return holo_bracket(self, other)

    def evaluate(self, p: Sequence) -> list:
        return [GaussRational.coerce(c.evaluate(p)) for c in self.comps]

    def to_text(self) -> str:
        names = [f"z{i + 1}" for i in range(self.N)]
        parts = []
        for j, c in enumerate(self.comps):
            if not c.is_zero():
                parts.append(f"({c.to_text(names)})*d/dz{j + 1}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class RealDefiningPoly:
    rho: MultiPoly
    N: int

    def __post_init__(self):
        if self.rho.nvars != 2 * self.N:
            raise ValueError("rho must live in 2N variables")
        if self.rho.conjugate(_swap(self.N)) != self.rho:
            raise ValueError("rho is not real")

    def at(self, p: Sequence) -> GaussRational:
        pts = [GaussRational.coerce(x) for x in p]
        return GaussRational.coerce(self.rho.evaluate(pts + [conj(x) for x in pts]))

    def contains(self, p: Sequence) -> bool:
        return self.at(p) == 0


def holo_bracket(X: HoloVectorField, Y: HoloVectorField) -> HoloVectorField:
    if X.N != Y.N:
        raise ValueError("dimension mismatch")
    N = X.N
    comps = []
    for j in range(N):
        acc = MultiPoly.zero(N)
        for k in range(N):
            if not X.comps[k].is_zero():
                acc = acc + X.comps[k] * Y.comps[j].diff(k)
            if not Y.comps[k].is_zero():
                acc = acc - Y.comps[k] * X.comps[j].diff(k)
        comps.append(acc)
    return HoloVectorField(tuple(comps))


def real_part_action(Y: HoloVectorField, rho: RealDefiningPoly) -> MultiPoly:
    """``2 Re(sum_j Y_j d rho / d z_j)`` in the ``(z, zbar)`` variables."""
    N = Y.N
    if rho.N != N:
        raise ValueError("dimension mismatch")
    positions = list(range(N))
    acc = MultiPoly.zero(2 * N)
    for j, c in enumerate(Y.comps):
        if not c.is_zero():
            acc = acc + c.embed(2 * N, positions) * rho.rho.diff(j)
    return realify(acc, N)


def _monomials(nvars: int, d: int) -> list[tuple]:
    out = [()]
    for _ in range(nvars):
        out = [e + (k,) for e in out for k in range(d + 1)]
    return sorted(e for e in out if sum(e) <= d)


def tangency_multiplier(Y: HoloVectorField, rho: RealDefiningPoly, mu_degree: int | None = None) -> MultiPoly | None:
    """A polynomial ``mu`` with ``real_part_action(Y, rho) = mu * rho``, or None.

    ``mu`` ranges over polynomials in ``(z, zbar)`` of degree at most
    ``mu_degree`` (default: ``deg Y - 1``, at least 0).
    """
    N = Y.N
    target = real_part_action(Y, rho)
    if target.is_zero():
        return MultiPoly.zero(2 * N)
    if mu_degree is None:
        mu_degree = max(Y.degree() - 1, 0)
    monos = _monomials(2 * N, mu_degree)
    cols = []
    for e in monos:
        base = MultiPoly.monomial(e) * rho.rho
        cols.append(base)           # real part of the unknown coefficient
        cols.append(base * I)       # imaginary part
    keys = sorted({k for c in cols for k in c.terms} | set(target.terms))
    rows, rhs = [], []
    for k in keys:
        for part in (real_part, imag_part):
            rows.append([part(c.coeff(k)) for c in cols])
            rhs.append(part(target.coeff(k)))
    sol = solve(rows, rhs)
    if sol is None:
        return None
    mu = MultiPoly.zero(2 * N)
    for idx, e in enumerate(monos):
        c = GaussRational(sol[2 * idx], sol[2 * idx + 1])
        if c:
            mu = mu + MultiPoly.monomial(e, c)
    return mu


def holo_tangent(Y: HoloVectorField, rho: RealDefiningPoly, mu_degree: int | None = None) -> bool:
    return tangency_multiplier(Y, rho, mu_degree) is not None


def real_basis(fields: Sequence[HoloVectorField]) -> LieAlgebraBasis:
    return LieAlgebraBasis(fields)


def algebra_closure(fields: Sequence[HoloVectorField]) -> tuple[bool, list | None]:
    L = LieAlgebraBasis(fields)
    table = L.structure_constants()
    return table is not None, table


def isotropy_dim_at(fields: Sequence[HoloVectorField], p0: Sequence, rho: RealDefiningPoly | None = None) -> int:
    """Real dimension of the combinations vanishing at ``p0``."""
    if rho is not None and not rho.contains(p0):
        raise ValueError("p0 is not on the surface")
    p0 = [GaussRational.coerce(x) for x in p0]
    vals = [f.evaluate(p0) for f in fields]
    N = len(p0)
    M = []
    for j in range(N):
        M.append([v[j].re for v in vals])
        M.append([v[j].im for v in vals])
    return len(fields) - rank(M)


def evaluation_rank(fields: Sequence[HoloVectorField], p0: Sequence) -> int:
    return len(fields) - isotropy_dim_at(fields, p0)


def killing_form(table: list) -> list:
    """``K(a, b) = tr(ad_a ad_b)`` from structure constants."""
    d = len(table)
    ad = [[[table[a][b][c] for b in range(d)] for c in range(d)] for a in range(d)]
    K = [[Fraction(0)] * d for _ in range(d)]
    for a, b in product(range(d), repeat=2):
        K[a][b] = sum(
            (ad[a][i][k] * ad[b][k][i] for i in range(d) for k in range(d)),
            Fraction(0),
        )
    return K


def killing_signature(fields: Sequence[HoloVectorField]) -> tuple[int, int] | None:
    ok, table = algebra_closure(fields)
    if not ok:
        return None
    _, _, sig = congruence_diagonalize(killing_form(table))
    return sig

