"""Surface catalog and the real affine group acting on the type C domains."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .algebra import MultiPoly, compose
from .algebra.scalars import as_rational
from .symmetry import Hypersurface

FAMILIES = ("T1Quadric", "T2_1", "T2_2", "T2_3", "T2_4", "T2_5", "T2_6", "T2_7", "Sec6Gamma")

CLI_NAMES = {
    "t1": "T1Quadric",
    "t2.1": "T2_1",
    "t2.2": "T2_2",
    "t2.3": "T2_3",
    "t2.4": "T2_4",
    "t2.5": "T2_5",
    "t2.6": "T2_6",
    "t2.7": "T2_7",
    "sec6": "Sec6Gamma",
}

THEOREM2_FAMILIES = FAMILIES[1:8]

EXPECTED_ORBIT = {
    "T2_1": "Zero",
    "T2_2": "CubeNull",
    "T2_3": "SquareNullLinear",
    "T2_4": "NullTimesQuadric",
    "T2_5": "NullTimesQuadric",
    "T2_6": "NullTimesQuadric",
    "T2_7": "NullTimesQuadric",
    "Sec6Gamma": "NullTimesQuadric",
}


@dataclass(frozen=True)
class SurfaceId:
    family: str
    n: int
    alpha: Fraction | None = None

    def __post_init__(self):
        family = CLI_NAMES.get(self.family, self.family)
        if family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "family", family)
        if family == "T1Quadric":
            if self.n < 1:
                raise ValueError("quadric needs n >= 1")
        elif family == "Sec6Gamma":
            if self.n < 3:
                raise ValueError("Sec6Gamma needs n >= 3")
        elif self.n < 4:
            raise ValueError(f"{family} is defined for n >= 4")
        if family == "T2_3":
            object.__setattr__(self, "alpha", as_rational(0 if self.alpha is None else self.alpha))
        elif self.alpha is not None:
            raise ValueError("alpha is only meaningful for T2_3")

    @property
    def label(self) -> str:
        base = f"{self.family}(n={self.n})"
        return base if self.alpha is None else f"{self.family}(n={self.n}, alpha={self.alpha})"


def _vars(n: int) -> list[MultiPoly]:
    return MultiPoly.gens(n + 1)


def _sum_squares(x, lo: int, hi: int) -> MultiPoly:
    """Sum of ``x_i^2`` for 1-based ``lo <= i <= hi``."""
    out = MultiPoly.zero(len(x))
    for i in range(lo, hi + 1):
        out = out + x[i - 1] * x[i - 1]
    return out


def surface_polynomial(sid: SurfaceId) -> MultiPoly:
    n = sid.n
    x = _vars(n)
    X = lambda i: x[i - 1]  # noqa: E731  1-based access
    last = X(n + 1)
    if sid.family == "T1Quadric":
        return last - _sum_squares(x, 1, n)
    mid = _sum_squares(x, 2, n - 1)
    if sid.family == "T2_1":
        return last - X(1) * X(n) - mid
    if sid.family == "T2_2":
        return last - X(1) * X(n) - mid - X(1) ** 3
    if sid.family == "T2_3":
        return last - X(1) * X(n) - mid - X(1) ** 2 * X(2) - X(1) ** 4 * sid.alpha
    if sid.family == "T2_4":
        return last - X(1) * X(n) - X(1) * mid
    if sid.family == "T2_5":
        return last - last * X(n) * 2 - X(1) * X(n) ** 2 * 2 + X(1) * X(n) + mid / 2
    if sid.family == "T2_6":
        return last - X(1) * X(n) - mid - X(1) * X(2) ** 2
    if sid.family == "T2_7":
        return (1 - X(n) * 2) * (last + X(1) * X(n) + mid / 2) + X(n) * X(2) ** 2
    if sid.family == "Sec6Gamma":
        return last - X(1) * X(2) - X(1) * _sum_squares(x, 3, n)
    raise AssertionError(sid.family)


def t2_5_alternate(n: int) -> MultiPoly:
    """The second printed form of family (5)."""
    x = _vars(n)
    mid = _sum_squares(x, 2, n - 1)
    return (1 - x[n - 1] * 2) * (x[n] + x[0] * x[n - 1] + mid / 2) + x[n - 1] * mid


def default_point(sid: SurfaceId) -> tuple:
    dim = sid.n + 1
    if sid.family in ("T2_4", "Sec6Gamma"):
        # the origin is a parabolic point of these two
        return (Fraction(1),) + (Fraction(0),) * (dim - 1)
    return (Fraction(0),) * dim


def make_surface(sid: SurfaceId, point: Sequence | None = None) -> Hypersurface:
    constraint = "x1 > 0" if sid.family == "Sec6Gamma" else None
    return Hypersurface(
        sid.n,
        surface_polynomial(sid),
        default_point(sid) if point is None else point,
        constraint=constraint,
        name=sid.label,
    )


def theorem2_ids(n: int, alphas: Sequence = (0, Fraction(1, 12), Fraction(1, 7), 1)) -> list[SurfaceId]:
    out = []
    for fam in THEOREM2_FAMILIES:
        if fam == "T2_3":
            out.extend(SurfaceId(fam, n, as_rational(a)) for a in alphas)
        else:
            out.append(SurfaceId(fam, n))
    return out


# ----------------------------------------------------------------------------
# the group G acting on the type C domains

@dataclass(frozen=True)
class Sec6Formulas:
    """Printed coefficients of the group action and of the transitivity parameters.

    Each field is one printed coefficient; tests flip them one at a time.
    """

    x2_shift: Fraction = Fraction(-2)   # x2 -> r^2 (x2 - 2 sum s_j x_j + t)
    x2_t: Fraction = Fraction(1)
    last_ss: Fraction = Fraction(1)     # x_{n+1} -> q r^2 (x_{n+1} + x1 sum s_j^2 + t x1)
    last_t: Fraction = Fraction(1)
    h_sum: Fraction = Fraction(1)       # h = x_{n+1} - x1 x2 - x1 sum x_j^2
    t_num: Fraction = Fraction(1)       # t = x1 x2 / h
    base_last: Fraction = Fraction(1)   # base point (1, 0, ..., 0, +-1)


PRINTED = Sec6Formulas()


@dataclass(frozen=True)
class GroupParams:
    q: Fraction
    r: Fraction
    t: Fraction
    s: tuple

    def __post_init__(self):
        object.__setattr__(self, "q", as_rational(self.q))
        object.__setattr__(self, "r", as_rational(self.r))
        object.__setattr__(self, "t", as_rational(self.t))
        object.__setattr__(self, "s", tuple(as_rational(v) for v in self.s))
        if self.q <= 0:
            raise ValueError("q must be positive")
        if self.r == 0:
            raise ValueError("r must be nonzero")

    @property
    def n(self) -> int:
        return len(self.s) + 2

    @classmethod
    def identity(cls, n: int) -> GroupParams:
        return cls(1, 1, 0, (0,) * (n - 2))


def _act(q, r, t, s, x, f: Sec6Formulas = PRINTED):
    """The printed action; works for any ring elements supporting + - *."""
    n = len(x) - 1
    x1, x2, last = x[0], x[1], x[n]
    xs = x[2:n]
    shift = x2 + t * f.x2_t
    for sj, xj in zip(s, xs):
        shift = shift + sj * xj * f.x2_shift
    ss = None
    for sj in s:
        ss = sj * sj if ss is None else ss + sj * sj
    tail = last + t * x1 * f.last_t
    if ss is not None:
        tail = tail + x1 * ss * f.last_ss
    out = [q * x1, r * r * shift]
    out.extend(r * (xj + sj) for sj, xj in zip(s, xs))
    out.append(q * r * r * tail)
    return out


def group_act(g: GroupParams, x: Sequence, formulas: Sec6Formulas = PRINTED) -> list[Fraction]:
    x = [as_rational(v) for v in x]
    if len(x) != g.n + 1:
        raise ValueError(f"point of dimension {len(x)} for a group acting on R^{g.n + 1}")
    return _act(g.q, g.r, g.t, g.s, x, formulas)


def compose_params(g: GroupParams, h: GroupParams) -> GroupParams:
    """Parameters of ``x -> g(h(x))``."""
    if g.n != h.n:
        raise ValueError("parameter dimension mismatch")
    s = tuple(sh + sg / h.r for sg, sh in zip(g.s, h.s))
    t = h.t - 2 * sum((sg * sh for sg, sh in zip(g.s, h.s)), Fraction(0)) / h.r + g.t / (h.r * h.r)
    return GroupParams(g.q * h.q, g.r * h.r, t, s)


def inverse_params(g: GroupParams) -> GroupParams:
    r2 = g.r * g.r
    ss = sum((v * v for v in g.s), Fraction(0))
    return GroupParams(1 / g.q, 1 / g.r, -r2 * (g.t + 2 * ss), tuple(-g.r * v for v in g.s))


def surface_invariance(g: GroupParams, sid: SurfaceId | None = None, formulas: Sec6Formulas = PRINTED) -> bool:
    """``F o g = q r^2 F`` as an exact polynomial identity."""
    sid = sid or SurfaceId("Sec6Gamma", g.n)
    if sid.family != "Sec6Gamma":
        raise ValueError("the group G acts on the Sec6Gamma surface")
    if sid.n != g.n:
        raise ValueError("parameter dimension does not match the surface")
    F = surface_polynomial(sid)
    x = MultiPoly.gens(g.n + 1)
    images = _act(g.q, g.r, g.t, g.s, x, formulas)
    return compose(F, images) == F * (g.q * g.r * g.r)


# ----------------------------------------------------------------------------
# transitivity: symbolic check with formal square roots

class _Reducer:
    """Normal form in ``Q[x, u, v] / (u^2 - sigma h, v^2 - x1)``."""

    def __init__(self, n: int, sigma: int, f: Sec6Formulas):
        self.N = n + 3  # x1..x_{n+1}, u, v
        self.n = n
        g = MultiPoly.gens(self.N)
        self.x = g[: n + 1]
        self.u = g[n + 1]
        self.v = g[n + 2]
        mid = MultiPoly.zero(self.N)
        for j in range(3, n + 1):
            mid = mid + self.x[j - 1] * self.x[j - 1]
        self.h = self.x[n] - self.x[0] * self.x[1] - self.x[0] * mid * f.h_sum
        self.u2 = self.h * sigma
        self.v2 = self.x[0]

    def reduce(self, p: MultiPoly) -> MultiPoly:
        iu, iv = self.n + 1, self.n + 2
        out = MultiPoly.zero(self.N)
        for e, c in p.terms.items():
            a, b = e[iu], e[iv]
            base = list(e)
            base[iu] = a % 2
            base[iv] = b % 2
            term = MultiPoly.monomial(base, c)
            if a // 2:
                term = term * self.u2 ** (a // 2)
            if b // 2:
                term = term * self.v2 ** (b // 2)
            out = out + term
        return out


class _RatFn:
    """Quotient ``num / den`` of reduced polynomials."""

    __slots__ = ("num", "den", "R")

    def __init__(self, R: _Reducer, num, den=None):
        self.R = R
        self.num = R.reduce(num)
        self.den = R.reduce(den if den is not None else MultiPoly.const(R.N, 1))

    def _wrap(self, o):
        if isinstance(o, _RatFn):
            return o
        return _RatFn(self.R, MultiPoly.const(self.R.N, o))

    def __add__(self, o):
        o = self._wrap(o)
        return _RatFn(self.R, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._wrap(o)
        return _RatFn(self.R, self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, o):
        o = self._wrap(o)
        return _RatFn(self.R, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def equals(self, o) -> bool:
        o = self._wrap(o)
        return self.R.reduce(self.num * o.den - o.num * self.den).is_zero()


def verify_transitivity(n: int, side: str = ">", formulas: Sec6Formulas = PRINTED) -> bool:
    """The printed parameters carry the base point to a generic ``x``.

    ``r = sqrt(sigma h) / sqrt(x1)`` and ``s_j = x_j sqrt(x1) / sqrt(sigma h)``
    are handled with formal roots ``u = sqrt(sigma h)``, ``v = sqrt(x1)``.
    """
    if side not in (">", "<"):
        raise ValueError("side must be '>' or '<'")
    if n < 3:
        raise ValueError("need n >= 3")
    sigma = 1 if side == ">" else -1
    R = _Reducer(n, sigma, formulas)
    one = MultiPoly.const(R.N, 1)
    x = [_RatFn(R, xi) for xi in R.x]
    q = x[0]
    r = _RatFn(R, R.u, R.v)
    t = _RatFn(R, R.x[0] * R.x[1] * formulas.t_num, R.u2)
    s = [_RatFn(R, R.x[j] * R.v, R.u) for j in range(2, n)]
    base = [_RatFn(R, one)] + [_RatFn(R, MultiPoly.zero(R.N))] * (n - 1)
    base.append(_RatFn(R, one * (sigma * formulas.base_last)))
    image = _act(q, r, t, s, base, formulas)
    return all(a.equals(b) for a, b in zip(image, x))
