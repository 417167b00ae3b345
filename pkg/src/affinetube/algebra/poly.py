"""Sparse multivariate polynomials and truncated power series.

Terms are stored as ``{exponent tuple: coefficient}`` with zero coefficients
never stored.  Exponent tuples are dense and have length ``nvars``.
Coefficients are ints, Fractions or GaussRationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import GaussRational, conj, exact_str

ZERO_DEGREE = -1
"""Degree reported for the zero polynomial."""


def _norm_coeff(c):
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    return c


def grlex_key(exp: tuple) -> tuple:
    """Graded lexicographic sort key (total degree first, then x1 > x2 > ...)."""
    return (sum(exp), tuple(-e for e in exp))


class MultiPoly:
    """Polynomial in ``nvars`` variables with exact coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exp, c in terms.items():
                if c:
                    if len(exp) != nvars:
                        raise ValueError(f"exponent {exp} does not have {nvars} entries")
                    clean[tuple(exp)] = _norm_coeff(c)
        self.terms = clean

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> MultiPoly:
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, c=1) -> MultiPoly:
        """The variable with 0-based index ``i``."""
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): c})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> MultiPoly:
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def gens(cls, nvars: int) -> list[MultiPoly]:
        return [cls.var(nvars, i) for i in range(nvars)]

    def _like(self, terms: dict) -> MultiPoly:
        return MultiPoly(self.nvars, terms)

    # basic queries ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return ZERO_DEGREE
        return max(sum(e) for e in self.terms)

    def coeff(self, exp: Sequence[int]):
        return self.terms.get(tuple(exp), Fraction(0))

    def constant_term(self):
        return self.coeff((0,) * self.nvars)

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def is_complex(self) -> bool:
        return any(isinstance(c, GaussRational) and c.im != 0 for c in self.terms.values())

    def homogeneous_part(self, d: int) -> MultiPoly:
        return self._like({e: c for e, c in self.terms.items() if sum(e) == d})

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction, GaussRational)):
            return MultiPoly.const(self.nvars, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, TruncSeries) and not isinstance(self, TruncSeries):
            return o + self
        terms = dict(self.terms)
        for e, c in o.terms.items():
            v = terms.get(e)
            terms[e] = c if v is None else v + c
        return self._like(terms)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> MultiPoly:
        if not c:
            return self._like({})
        return self._like({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, TruncSeries) and not isinstance(self, TruncSeries):
            return o * self
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple([a + b for a, b in zip(e1, e2)])
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return self._like(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            return self.scale(1 / other if isinstance(other, GaussRational) else Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = self._like({(0,) * self.nvars: Fraction(1)})
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussRational)):
            if not other:
                return not self.terms
            return self.terms == {(0,) * self.nvars: other}
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # calculus and substitution ------------------------------------------
    def diff(self, i: int) -> MultiPoly:
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = c * k
        return self._like(out)

    def gradient(self) -> list[MultiPoly]:
        return [self.diff(i) for i in range(self.nvars)]

    def evaluate(self, point: Sequence):
        """Evaluate at ``point``; entries may be any ring elements."""
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(point)}")
        powers: list[dict[int, object]] = [{} for _ in range(self.nvars)]
        total = None
        for e, c in self.terms.items():
            val = c
            for i, k in enumerate(e):
                if k:
                    cache = powers[i]
                    p = cache.get(k)
                    if p is None:
                        p = point[i] ** k
                        cache[k] = p
                    val = val * p
            total = val if total is None else total + val
        return Fraction(0) if total is None else total

    def map_coeffs(self, fn) -> MultiPoly:
        return self._like({e: fn(c) for e, c in self.terms.items()})

    def conjugate(self, swap: Sequence[int] | None = None) -> MultiPoly:
        """Conjugate coefficients, optionally permuting variables by ``swap``."""
        if swap is None:
            return self.map_coeffs(conj)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                ne[swap[i]] = k
            out[tuple(ne)] = conj(c)
        return self._like(out)

    def embed(self, nvars: int, positions: Sequence[int]) -> MultiPoly:
        """Move variable i to position ``positions[i]`` in an ``nvars``-variable ring."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, k in enumerate(e):
                ne[positions[i]] += k
            out[tuple(ne)] = c
        return MultiPoly(nvars, out)

    def truncate(self, cap: int, weights: Sequence[int] | None = None) -> TruncSeries:
        return TruncSeries(self.nvars, self.terms, cap, weights)

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.to_text()!r})"

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        out = ""
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            negative = False
            if isinstance(c, GaussRational) and c.im == 0:
                c = c.re
            if isinstance(c, Fraction) and c < 0:
                negative, c = True, -c
            cs = exact_str(c)
            if isinstance(c, GaussRational):
                cs = f"({cs})"
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            if not out:
                out = f"-{body}" if negative else body
            else:
                out += f" - {body}" if negative else f" + {body}"
        return out

    __str__ = to_text


def compose(f: MultiPoly, subst: Sequence[MultiPoly]) -> MultiPoly:
    """Substitute ``subst[i]`` for variable i of ``f``.

    If any substituent is a TruncSeries the result is truncated at the
    smallest cap among them.
    """
    if len(subst) != f.nvars:
        raise ValueError(f"arity mismatch: {f.nvars} variables, {len(subst)} substituents")
    if not subst:
        raise ValueError("cannot compose a constant-only ring without substituents")
    nv = {s.nvars for s in subst}
    if len(nv) != 1:
        raise ValueError("substituents live in different polynomial rings")
    nvars = nv.pop()
    series = [s for s in subst if isinstance(s, TruncSeries)]
    if series:
        cap = min(s.cap for s in series)
        weights = series[0].weights
        for s in series:
            if s.weights != weights:
                raise ValueError("substituents use different degree weights")
        subst = [s if isinstance(s, TruncSeries) else s.truncate(cap, weights) for s in subst]
        one = TruncSeries(nvars, {(0,) * nvars: 1}, cap, weights)
    else:
        one = MultiPoly.const(nvars, 1)
    powers: list[list] = [[one] for _ in subst]

    def power(i, k):
        cache = powers[i]
        while len(cache) <= k:
            cache.append(cache[-1] * subst[i])
        return cache[k]

    acc: dict = {}
    # group by leading variables to share partial products
    for e, c in f.sorted_terms():
        term = None
        for i, k in enumerate(e):
            if k:
                p = power(i, k)
                term = p if term is None else term * p
        if term is None:
            term = one
        for te, tc in term.terms.items():
            v = acc.get(te)
            acc[te] = tc * c if v is None else v + tc * c
    if series:
        return TruncSeries(nvars, acc, cap, weights)
    return MultiPoly(nvars, acc)


class TruncSeries(MultiPoly):
    """MultiPoly with all terms of weighted degree above ``cap`` discarded."""

    __slots__ = ("cap", "weights")

    def __init__(self, nvars: int, terms: dict | None, cap: int, weights: Sequence[int] | None = None):
        self.cap = cap
        self.weights = tuple(weights) if weights is not None else (1,) * nvars
        if len(self.weights) != nvars:
            raise ValueError("weights length must equal nvars")
        w = self.weights
        kept = {}
        if terms:
            for e, c in terms.items():
                if sum(a * b for a, b in zip(e, w)) <= cap:
                    kept[e] = c
        super().__init__(nvars, kept)

    def wdeg(self, exp: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(exp, self.weights))

    def _like(self, terms: dict) -> TruncSeries:
        return TruncSeries(self.nvars, terms, self.cap, self.weights)

    def _cap_with(self, o) -> int:
        if isinstance(o, TruncSeries):
            if o.weights != self.weights:
                raise ValueError("series use different degree weights")
            return min(self.cap, o.cap)
        return self.cap

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            v = terms.get(e)
            terms[e] = c if v is None else v + c
        return TruncSeries(self.nvars, terms, self._cap_with(o), self.weights)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        cap = self._cap_with(o)
        w = self.weights
        left = sorted(((self.wdeg(e), e, c) for e, c in self.terms.items()), key=lambda t: t[0])
        right = sorted(
            ((sum(a * b for a, b in zip(e, w)), e, c) for e, c in o.terms.items()),
            key=lambda t: t[0],
        )
        out: dict = {}
        for d1, e1, c1 in left:
            room = cap - d1
            if room < 0:
                break
            for d2, e2, c2 in right:
                if d2 > room:
                    break
                e = tuple([a + b for a, b in zip(e1, e2)])
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return TruncSeries(self.nvars, out, cap, w)

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return (
                self.cap == other.cap
                and self.weights == other.weights
                and self.terms == other.terms
            )
        return super().__eq__(other)

    __hash__ = MultiPoly.__hash__

    def inverse(self) -> TruncSeries:
        """Multiplicative inverse; requires a nonzero constant term."""
        c0 = self.constant_term()
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / c0 if isinstance(c0, GaussRational) else Fraction(1) / c0
        tail = (self - c0).scale(inv0)  # self = c0 * (1 + tail)
        one = TruncSeries(self.nvars, {(0,) * self.nvars: 1}, self.cap, self.weights)
        result = one
        term = one
        # tail has weighted degree >= 1, so cap+1 rounds suffice
        for _ in range(self.cap):
            term = -(term * tail)
            if not term:
                break
            result = result + term
        return result.scale(inv0)

    def as_poly(self) -> MultiPoly:
        return MultiPoly(self.nvars, self.terms)

    def __repr__(self):
        return f"TruncSeries({self.nvars}, cap={self.cap}, {self.to_text()!r})"


def poly_sum(items: Iterable[MultiPoly], nvars: int) -> MultiPoly:
    acc: dict = {}
    proto = None
    for p in items:
        proto = proto or p
        for e, c in p.terms.items():
            v = acc.get(e)
            acc[e] = c if v is None else v + c
    if proto is None:
        return MultiPoly(nvars)
    return proto._like(acc)


def to_sympy(f: MultiPoly):
    """Rational polynomial as a ``sympy.Poly`` in generators ``t0, t1, ...``."""
    import sympy

    gens = sympy.symbols(f"t0:{f.nvars}")
    data = {}
    for e, c in f.terms.items():
        if isinstance(c, GaussRational):
            if c.im:
                raise ValueError("sympy conversion needs rational coefficients")
            c = c.re
        c = Fraction(c)
        data[e] = sympy.Rational(c.numerator, c.denominator)
    if not data:
        data = {(0,) * f.nvars: sympy.Integer(0)}
    return sympy.Poly.from_dict(data, *gens, domain="QQ")


def from_sympy(p, nvars: int) -> MultiPoly:
    terms = {}
    for e, c in p.terms():
        c = sympy_rational(c)
        if c:
            terms[tuple(e)] = c
    return MultiPoly(nvars, terms)


def sympy_rational(c) -> Fraction:
    import sympy

    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def is_irreducible_over_q(f: MultiPoly) -> bool:
    """Irreducibility over Q of a rational polynomial (sympy-backed)."""
    _, factors = to_sympy(f).factor_list()
    return sum(m for g, m in factors if g.total_degree() > 0) == 1
