"""Affine symmetry algebras of polynomial hypersurfaces.

An affine vector field ``x -> A x + b`` is a symmetry of ``{F = 0}`` when its
derivation of ``F`` is a multiple of ``F``.  Everything here reduces to exact
nullspace computations on coefficient vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import (
    MultiPoly,
    SparseSpan,
    compose,
    inverse,
    is_irreducible_over_q,
    matmul,
    matvec,
    nullspace,
    rank,
)
from .algebra.scalars import as_rational, exact_str


class ReducibleSurfaceError(ValueError):
    """The defining polynomial factors; pass ``mu_degree`` to proceed anyway."""


class BracketClosureError(ValueError):
    pass


def _frac_matrix(A) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(as_rational(x) for x in row) for row in A)


@dataclass(frozen=True)
class AffineVectorField:
    """The field ``v(x) = A x + b`` on R^(n+1)."""

    A: tuple
    b: tuple

    def __post_init__(self):
        A = _frac_matrix(self.A)
        b = tuple(as_rational(x) for x in self.b)
        if any(len(row) != len(b) for row in A) or len(A) != len(b):
            raise ValueError("linear part must be square and match the translation")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def dim(self) -> int:
        return len(self.b)

    @classmethod
    def zero(cls, dim: int) -> AffineVectorField:
        return cls(((0,) * dim,) * dim, (0,) * dim)

    @classmethod
    def from_vector(cls, v: Sequence, dim: int) -> AffineVectorField:
        A = [v[i * dim:(i + 1) * dim] for i in range(dim)]
        return cls(A, v[dim * dim:dim * dim + dim])

    def as_vector(self) -> list[Fraction]:
        return [x for row in self.A for x in row] + list(self.b)

    def as_dict(self) -> dict:
        return {i: x for i, x in enumerate(self.as_vector()) if x}

    def is_zero(self) -> bool:
        return not any(self.as_vector())

    def _check(self, other: AffineVectorField):
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: AffineVectorField) -> AffineVectorField:
        self._check(other)
        return AffineVectorField.from_vector(
            [a + b for a, b in zip(self.as_vector(), other.as_vector())], self.dim
        )

    def __sub__(self, other: AffineVectorField) -> AffineVectorField:
        return self + other * -1

    def __neg__(self):
        return self * -1

    def __mul__(self, c) -> AffineVectorField:
        c = as_rational(c)
        return AffineVectorField.from_vector([c * x for x in self.as_vector()], self.dim)

    __rmul__ = __mul__

    def evaluate(self, p: Sequence) -> list[Fraction]:
        return [a + b for a, b in zip(matvec(list(map(list, self.A)), p), self.b)]

    def apply(self, F: MultiPoly) -> MultiPoly:
        """Derivation of ``F`` along the field."""
        n = self.dim
        xs = MultiPoly.gens(n)
        out = MultiPoly.zero(n)
        for i in range(n):
            comp = MultiPoly.const(n, self.b[i])
            for j in range(n):
                if self.A[i][j]:
                    comp = comp + xs[j] * self.A[i][j]
            if comp:
                out = out + comp * F.diff(i)
        return out

    def bracket(self, other: AffineVectorField) -> AffineVectorField:
        return bracket(self, other)

    def conjugate_by(self, M, p: Sequence) -> AffineVectorField:
        """Express the field in coordinates ``y = M (x - p)``."""
        A = [list(r) for r in self.A]
        Minv = inverse(M)
        lin = matmul(matmul(M, A), Minv)
        trans = matvec(M, self.evaluate(p))
        return AffineVectorField(lin, trans)

    def to_json(self) -> dict:
        return {
            "A": [[exact_str(x) for x in row] for row in self.A],
            "b": [exact_str(x) for x in self.b],
        }


def bracket(X: AffineVectorField, Y: AffineVectorField) -> AffineVectorField:
    """``[X, Y] = DY.X - DX.Y``: linear part ``BA - AB``, translation ``Ba - Ab``."""
    X._check(Y)
    A = [list(r) for r in X.A]
    B = [list(r) for r in Y.A]
    BA = matmul(B, A)
    AB = matmul(A, B)
    lin = [[u - v for u, v in zip(r1, r2)] for r1, r2 in zip(BA, AB)]
    Ba = matvec(B, X.b)
    Ab = matvec(A, Y.b)
    return AffineVectorField(lin, [u - v for u, v in zip(Ba, Ab)])


@dataclass
class Hypersurface:
    """Zero set of ``F`` in R^(n+1) with a regular reference point."""

    n: int
    F: MultiPoly
    ref_point: tuple
    constraint: str | None = None
    name: str = ""

    def __post_init__(self):
        if self.F.nvars != self.n + 1:
            raise ValueError(f"F must have {self.n + 1} variables, has {self.F.nvars}")
        if self.F.is_zero():
            raise ValueError("defining polynomial is zero")
        self.ref_point = tuple(as_rational(x) for x in self.ref_point)
        if len(self.ref_point) != self.n + 1:
            raise ValueError("reference point has the wrong dimension")
        if self.F.evaluate(self.ref_point) != 0:
            raise ValueError("reference point is not on the surface")
        if not any(self.gradient_at(self.ref_point)):
            raise ValueError("gradient of F vanishes at the reference point")

    @property
    def dim(self) -> int:
        return self.n + 1

    def gradient_at(self, p: Sequence) -> list[Fraction]:
        return [Fraction(g.evaluate(p)) for g in self.F.gradient()]

    def contains(self, p: Sequence) -> bool:
        return self.F.evaluate([as_rational(x) for x in p]) == 0


def pull_back(S: Hypersurface, M, c: Sequence | None = None) -> Hypersurface:
    """The surface ``F(M y + c) = 0`` with reference point ``M^-1 (p - c)``.

    With ``c = p - M p`` (the default) the reference point stays at ``p``.
    """
    dim = S.dim
    M = [[as_rational(x) for x in row] for row in M]
    p = S.ref_point
    if c is None:
        Mp = matvec(M, p)
        c = [a - b for a, b in zip(p, Mp)]
    c = [as_rational(x) for x in c]
    y = MultiPoly.gens(dim)
    subst = [sum((y[j] * M[i][j] for j in range(dim) if M[i][j]), MultiPoly.const(dim, c[i])) for i in range(dim)]
    q = matvec(inverse(M), [a - b for a, b in zip(p, c)])
    name = f"{S.name} pulled back" if S.name else ""
    return Hypersurface(S.n, compose(S.F, subst), q, name=name)


class LieAlgebraBasis:
    """Linearly independent fields spanning a (sub)algebra.

    Works for any field type exposing ``as_dict``, ``bracket``, ``+`` and
    scalar ``*``.
    """

    def __init__(self, fields: Sequence, check: bool = True):
        self.fields = list(fields)
        self._span = SparseSpan(f.as_dict() for f in self.fields)
        if check and not self._span.independent:
            raise ValueError("fields are linearly dependent")
        self._structure = None

    def __len__(self):
        return len(self.fields)

    def __iter__(self):
        return iter(self.fields)

    def __getitem__(self, i):
        return self.fields[i]

    @property
    def dim(self) -> int:
        return len(self.fields)

    def contains(self, X) -> bool:
        return self._span.contains(X.as_dict())

    def coords(self, X) -> list[Fraction] | None:
        c = self._span.coords(X.as_dict())
        if c is None:
            return None
        return [c.get(i, Fraction(0)) for i in range(self.dim)]

    def combine(self, coeffs: Sequence):
        out = None
        for c, f in zip(coeffs, self.fields):
            if c:
                term = f * c
                out = term if out is None else out + term
        if out is None:
            out = self.fields[0] * 0
        return out

    def structure_constants(self):
        """``c[i][j][k]`` with ``[f_i, f_j] = sum_k c[i][j][k] f_k``; None if not closed."""
        if self._structure is not None:
            return self._structure
        d = self.dim
        table = [[None] * d for _ in range(d)]
        zero = [Fraction(0)] * d
        for i in range(d):
            table[i][i] = zero
            for j in range(i + 1, d):
                c = self.coords(self.fields[i].bracket(self.fields[j]))
                if c is None:
                    return None
                table[i][j] = c
                table[j][i] = [-x for x in c]
        self._structure = table
        return table

    def is_closed(self) -> bool:
        return self.structure_constants() is not None

    def span_equals(self, other: LieAlgebraBasis) -> bool:
        return self.dim == other.dim and all(self.contains(f) for f in other.fields)


def full_affine_algebra(dim: int) -> LieAlgebraBasis:
    fields = []
    for i in range(dim):
        for j in range(dim):
            v = [0] * (dim * dim + dim)
            v[i * dim + j] = 1
            fields.append(AffineVectorField.from_vector(v, dim))
    for i in range(dim):
        v = [0] * (dim * dim + dim)
        v[dim * dim + i] = 1
        fields.append(AffineVectorField.from_vector(v, dim))
    return LieAlgebraBasis(fields, check=False)


def _monomials_upto(nvars: int, d: int) -> list[tuple]:
    out = [()]
    for _ in range(nvars):
        out = [e + (k,) for e in out for k in range(d + 1)]
    return sorted((e for e in out if sum(e) <= d), key=lambda e: (sum(e), e))


def symmetry_algebra(S: Hypersurface, mu_degree: int | None = None, check_irreducible: bool = True) -> LieAlgebraBasis:
    """All affine fields ``X`` with ``X(F) = mu F``.

    ``mu`` is a constant unless ``mu_degree`` is given, in which case it is a
    polynomial of that degree bound (needed for reducible ``F``).
    """
    F = S.F
    dim = S.dim
    if mu_degree is None:
        if check_irreducible and not is_irreducible_over_q(F):
            raise ReducibleSurfaceError("defining polynomial is reducible over Q; supply mu_degree")
        mu_degree = 0
    xs = MultiPoly.gens(dim)
    grads = F.gradient()
    columns: list[MultiPoly] = []
    for i in range(dim):
        for j in range(dim):
            columns.append(xs[j] * grads[i])
    for i in range(dim):
        columns.append(grads[i])
    for m in _monomials_upto(dim, mu_degree):
        columns.append(-(MultiPoly.monomial(m) * F))
    keys = sorted({e for col in columns for e in col.terms})
    row_of = {e: r for r, e in enumerate(keys)}
    M = [[Fraction(0)] * len(columns) for _ in keys]
    for c, col in enumerate(columns):
        for e, v in col.terms.items():
            M[row_of[e]][c] = v
    nfield = dim * dim + dim
    basis = nullspace(M, len(columns))
    fields = [AffineVectorField.from_vector(v[:nfield], dim) for v in basis]
    fields = [f for f in fields if not f.is_zero()]
    return LieAlgebraBasis(fields)


def _span_basis(vectors: Sequence[AffineVectorField]) -> list[AffineVectorField]:
    span = SparseSpan()
    out = []
    for v in vectors:
        if span.add(v.as_dict()):
            out.append(v)
    return out


def isotropy_at(L: LieAlgebraBasis, p: Sequence) -> LieAlgebraBasis:
    """Fields of ``span L`` vanishing at ``p``."""
    if not L.dim:
        return LieAlgebraBasis([])
    p = [as_rational(x) for x in p]
    if len(p) != L[0].dim:
        raise ValueError("point dimension does not match the algebra")
    evals = [f.evaluate(p) for f in L]
    M = [[ev[r] for ev in evals] for r in range(len(p))]
    return LieAlgebraBasis([L.combine(c) for c in nullspace(M, L.dim)])


def transitivity_rank(L: LieAlgebraBasis, p: Sequence, S: Hypersurface) -> int:
    """Dimension of ``{X(p)}`` inside the tangent plane of ``S`` at ``p``."""
    p = [as_rational(x) for x in p]
    if not S.contains(p):
        raise ValueError("point is not on the surface")
    if not L.dim:
        return 0
    evals = [f.evaluate(p) for f in L]
    grad = S.gradient_at(p)
    tangent = nullspace([grad])
    dim_u = rank(evals)
    dim_w = len(tangent)
    dim_sum = rank(evals + tangent)
    return dim_u + dim_w - dim_sum


@dataclass
class Filtration:
    chain: list[LieAlgebraBasis]
    stabilized_at: int
    dims: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.dims:
            self.dims = [g.dim for g in self.chain]

    @property
    def limit(self) -> LieAlgebraBasis:
        return self.chain[-1]


def _annihilators(vectors: list[list[Fraction]], length: int) -> list[list[Fraction]]:
    if not vectors:
        return [[Fraction(int(i == j)) for i in range(length)] for j in range(length)]
    return nullspace(vectors, length)


def filtration(h: LieAlgebraBasis, g_full: LieAlgebraBasis, p: Sequence, max_steps: int = 50) -> Filtration:
    """``g_0`` = isotropy of ``p`` in ``g_full``; ``g_{i+1} = {X in g_i : [X, h] in g_i + h}``."""
    if not h.is_closed():
        raise BracketClosureError("h is not closed under the bracket")
    g = isotropy_at(g_full, p)
    chain = [g]
    for _ in range(max_steps):
        if not g.dim:
            break
        length = len(g[0].as_vector())
        W = [f.as_vector() for f in h] + [f.as_vector() for f in g]
        ann = _annihilators(W, length)
        if not ann:
            break
        ann = [{k: a for k, a in enumerate(phi) if a} for phi in ann]
        rows = []
        for Y in h:
            brs = [X.bracket(Y).as_vector() for X in g]
            for phi in ann:
                rows.append([sum((a * br[k] for k, a in phi.items() if br[k]), Fraction(0)) for br in brs])
        coeffs = nullspace(rows, g.dim)
        if len(coeffs) == g.dim:
            break
        g = LieAlgebraBasis([g.combine(c) for c in coeffs])
        chain.append(g)
    return Filtration(chain=chain, stabilized_at=len(chain) - 1)


def check_prop_cs(h: LieAlgebraBasis, filt: Filtration, i: int) -> bool:
    """``[h + g_{i+1}, h + g_{i+1}]`` lies in ``h + g_i``."""
    chain = filt.chain
    if i + 1 >= len(chain):
        # chain is constant past the stabilization index
        upper = lower = chain[-1]
    else:
        upper, lower = chain[i + 1], chain[i]
    top = _span_basis(list(h) + list(upper))
    target = SparseSpan(f.as_dict() for f in list(h) + list(lower))
    for a in range(len(top)):
        for b in range(a + 1, len(top)):
            if not target.contains(top[a].bracket(top[b]).as_dict()):
                return False
    return True


def algebra_to_json(L: LieAlgebraBasis) -> list[dict]:
    return [f.to_json() for f in L]


def linear_field(dim: int, entries: dict[tuple[int, int], object] = (), translation: dict[int, object] = ()) -> AffineVectorField:
    """Convenience constructor from sparse 0-based entries."""
    A = [[0] * dim for _ in range(dim)]
    for (i, j), v in dict(entries).items():
        A[i][j] = v
    b = [0] * dim
    for i, v in dict(translation).items():
        b[i] = v
    return AffineVectorField(A, b)


FieldFactory = Callable[[int], AffineVectorField]
