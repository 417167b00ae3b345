"""Low-order affine invariants of a hypersurface at a point.

The pipeline is ``graph_jet`` -> ``adapt_frame`` -> ``extract_L1`` followed by
``pseudo_norm_sq``, ``classify_L1`` or ``tube_criterion``.  In tangent
coordinates ``u`` and normal coordinate ``w`` the surface is the graph
``w = u^T Q u + C(u) + O(4)``.  The cubic is only meaningful modulo
``Phi * V*`` where ``Phi(u) = u^T Q u``; its trace-free representative is L1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .algebra import (
    MultiPoly,
    SparseSpan,
    compose,
    congruence_diagonalize,
    from_sympy,
    identity,
    inverse,
    matmul,
    matvec,
    nullspace,
    to_sympy,
    transpose,
)
from .algebra.poly import sympy_rational
from .algebra.scalars import as_rational, exact_str
from .symmetry import Hypersurface, LieAlgebraBasis, isotropy_at, symmetry_algebra


class DegenerateFormError(ValueError):
    """The second fundamental form is singular at the point."""


class _NotApplicable:
    """Third outcome of the tube criterion; refuses to act as a boolean."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        raise TypeError("NotApplicable has no truth value")

    def __repr__(self):
        return "NotApplicable"

    def __reduce__(self):
        return (_NotApplicable, ())


NotApplicable = _NotApplicable()


# ----------------------------------------------------------------------------
# cubic forms and symmetric 3-tensors

def cubic_to_tensor(C: MultiPoly, n: int) -> list:
    """Totally symmetric ``T`` with ``C(u) = sum T[i][j][k] u_i u_j u_k``."""
    T = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for e, c in C.terms.items():
        if sum(e) != 3:
            raise ValueError("cubic form expected")
        idx = [i for i in range(n) for _ in range(e[i])]
        count = len(set(_perms(idx)))
        for i, j, k in set(_perms(idx)):
            T[i][j][k] = Fraction(c) / count
    return T


def _perms(idx):
    a, b, c = idx
    return [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]


def tensor_to_cubic(T: list, n: int) -> MultiPoly:
    terms: dict = {}
    for i, j, k in product(range(n), repeat=3):
        if T[i][j][k]:
            e = [0] * n
            e[i] += 1
            e[j] += 1
            e[k] += 1
            e = tuple(e)
            terms[e] = terms.get(e, 0) + T[i][j][k]
    return MultiPoly(n, terms)


def quadratic_form(Q, n: int) -> MultiPoly:
    u = MultiPoly.gens(n)
    out = MultiPoly.zero(n)
    for i in range(n):
        for j in range(n):
            if Q[i][j]:
                out = out + u[i] * u[j] * Q[i][j]
    return out


def metric_trace(T: list, Minv) -> list[Fraction]:
    """Covector ``sum_ij g^{ij} T_ijk``."""
    n = len(Minv)
    return [
        sum((Minv[i][j] * T[i][j][k] for i in range(n) for j in range(n) if Minv[i][j]), Fraction(0))
        for k in range(n)
    ]


def _linear(coeffs: Sequence, n: int) -> MultiPoly:
    u = MultiPoly.gens(n)
    out = MultiPoly.zero(n)
    for c, x in zip(coeffs, u):
        if c:
            out = out + x * c
    return out


def trace_free_part(C: MultiPoly, Q) -> tuple[MultiPoly, list[Fraction]]:
    """Representative of ``C`` modulo ``Phi * V*`` with zero metric trace.

    Returns the trace-free cubic and the covector ``lam`` removed, so that
    ``C = T + Phi * lam``.  The trace of ``Phi * lam`` is ``(n+2)/3 * lam``.
    """
    n = len(Q)
    Minv = inverse(Q)
    tr = metric_trace(cubic_to_tensor(C, n), Minv)
    lam = [Fraction(3) * t / (n + 2) for t in tr]
    T = C - quadratic_form(Q, n) * _linear(lam, n)
    return T, lam


# ----------------------------------------------------------------------------
# data types

@dataclass
class Jet3:
    """Order-3 graph jet ``w = u^T Q u + C(u)`` in the frame ``(u, w) = M (x - p)``."""

    n: int
    Q: list
    C: MultiPoly
    frame: list
    point: tuple
    graph_index: int = -1
    oriented: bool = False

    def tensor(self) -> list:
        return cubic_to_tensor(self.C, self.n)

    @property
    def rank(self) -> int:
        _, _, (p, q) = congruence_diagonalize(self.Q)
        return p + q

    def is_symmetric(self) -> bool:
        n = self.n
        return all(self.Q[i][j] == self.Q[j][i] for i in range(n) for j in range(n))

    def negated(self) -> Jet3:
        frame = [list(r) for r in self.frame]
        frame[-1] = [-x for x in frame[-1]]
        return Jet3(self.n, [[-x for x in r] for r in self.Q], -self.C, frame, self.point,
                    self.graph_index, not self.oriented)


def standard_metric(p: int, q: int) -> list:
    """The normalized form: ``q`` hyperbolic pairs ``(i, n-1-i)`` around an identity block."""
    n = p + q
    G = [[Fraction(0)] * n for _ in range(n)]
    for i in range(q):
        G[i][n - 1 - i] = G[n - 1 - i][i] = Fraction(1)
    for i in range(q, n - q):
        G[i][i] = Fraction(1)
    return G


@dataclass
class MetricForm:
    """Normalized second fundamental form.

    ``G`` is the exact matrix used for contractions.  ``scale`` is ``c`` when
    ``G = c * standard_metric``; ``normalized`` is False when no rational
    congruence to a multiple of the standard form was found (``G`` is then the
    jet's own quadratic form).
    """

    sig: tuple
    G: list
    scale: Fraction = Fraction(1)
    normalized: bool = True

    @property
    def is_lorentzian(self) -> bool:
        return self.sig[1] == 1

    def inverse(self) -> list:
        return inverse(self.G)


@dataclass
class L1Tensor:
    metric: MetricForm
    T: MultiPoly
    D_shift: list
    n: int

    def tensor(self) -> list:
        return cubic_to_tensor(self.T, self.n)

    def is_zero(self) -> bool:
        return self.T.is_zero()

    def endomorphism(self, X: Sequence) -> list:
        """``L1(X)`` as a matrix: ``L1(X)^i_j = g^{ia} T_{ajk} X^k``."""
        n = self.n
        T = self.tensor()
        Minv = self.metric.inverse()
        TX = [[sum((T[a][j][k] * X[k] for k in range(n)), Fraction(0)) for j in range(n)] for a in range(n)]
        return matmul(Minv, TX)


@dataclass
class OrbitType:
    tag: str
    params: tuple | None = None
    diagnostic: str = ""

    TAGS = ("Zero", "CubeNull", "SquareNullLinear", "NullTimesQuadric", "Unclassified")

    def __post_init__(self):
        if self.tag not in self.TAGS:
            raise ValueError(f"unknown orbit tag {self.tag!r}")
        if (self.params is not None) != (self.tag == "NullTimesQuadric"):
            raise ValueError("params are present exactly for NullTimesQuadric")


# ----------------------------------------------------------------------------
# jet extraction

def graph_jet(S: Hypersurface, p: Sequence | None = None, order: int = 3) -> Jet3:
    """Implicit graph expansion of ``F = 0`` at ``p`` up to ``order``."""
    p = tuple(as_rational(x) for x in (S.ref_point if p is None else p))
    if not S.contains(p):
        raise ValueError("point is not on the surface")
    N = S.dim
    n = S.n
    grad = S.gradient_at(p)
    if not any(grad):
        raise ValueError("gradient of F vanishes at the point (singular point)")
    k = max(i for i in range(N) if grad[i])
    others = [i for i in range(N) if i != k]
    # translate: G(y) = F(p + y)
    y = MultiPoly.gens(N)
    G = compose(S.F, [y[i] + p[i] for i in range(N)])
    gk = grad[k]
    # G = gk*y_k + (rest); solve y_k = phi(y') by fixed point in the tangent variables
    u = MultiPoly.gens(n)
    rest = G - y[k] * gk
    phi = MultiPoly.zero(n)
    for _ in range(order + 1):
        subst = [None] * N
        for pos, i in enumerate(others):
            subst[i] = u[pos]
        subst[k] = phi
        new = (compose(rest, subst) * Fraction(-1, 1) / gk).truncate(order).as_poly()
        if new == phi:
            break
        phi = new
    else:
        raise AssertionError("implicit solve did not stabilize")
    lin = phi.homogeneous_part(1)
    Qp = phi.homogeneous_part(2)
    C = phi.homogeneous_part(3)
    Q = [[Fraction(0)] * n for _ in range(n)]
    for e, c in Qp.terms.items():
        idx = [i for i in range(n) for _ in range(e[i])]
        if idx[0] == idx[1]:
            Q[idx[0]][idx[0]] = Fraction(c)
        else:
            Q[idx[0]][idx[1]] = Q[idx[1]][idx[0]] = Fraction(c) / 2
    # frame: u_pos = y_others[pos], w = y_k - lin(u)
    frame = [[Fraction(0)] * N for _ in range(N)]
    for pos, i in enumerate(others):
        frame[pos][i] = Fraction(1)
    frame[n][k] = Fraction(1)
    for e, c in lin.terms.items():
        pos = e.index(1)
        frame[n][others[pos]] -= Fraction(c)
    return Jet3(n, Q, C, frame, p, graph_index=k)


def second_fundamental_signature(j: Jet3) -> tuple[int, int]:
    """Raw signature of ``Q``; no orientation is imposed."""
    _, _, sig = congruence_diagonalize(j.Q)
    return sig


def _is_rational_square(r: Fraction) -> Fraction | None:
    from math import isqrt

    if r < 0:
        return None
    a, b = r.numerator, r.denominator
    sa, sb = isqrt(a), isqrt(b)
    if sa * sa == a and sb * sb == b:
        return Fraction(sa, sb)
    return None


def _squarefree_kernel(r: Fraction) -> Fraction:
    """Positive square-free integer ``c`` with ``|r| / c`` a rational square."""
    from sympy import factorint

    m = abs(r.numerator) * r.denominator
    c = 1
    for prime, e in factorint(m).items():
        if e % 2:
            c *= prime
    return Fraction(c)


def _transform_jet(j: Jet3, B) -> Jet3:
    """Jet in coordinates ``u = B u'``."""
    n = j.n
    Qn = matmul(matmul(transpose(B), j.Q), B)
    subst = [_linear(row, n) for row in B]
    Cn = compose(j.C, subst) if not j.C.is_zero() else MultiPoly.zero(n)
    Binv = inverse(B)
    N = n + 1
    block = [[Fraction(0)] * N for _ in range(N)]
    for a in range(n):
        for b in range(n):
            block[a][b] = Binv[a][b]
    block[n][n] = Fraction(1)
    return Jet3(n, Qn, Cn, matmul(block, j.frame), j.point, j.graph_index, j.oriented)


def _diagonal_scaling(Q, sig) -> tuple[list, Fraction] | None:
    """Diagonal ``S`` with ``S^T Q S = c * standard_metric`` when ``Q`` has its shape."""
    n = len(Q)
    p, q = sig
    G = standard_metric(p, q)
    if any(Q[i][j] and not G[i][j] for i in range(n) for j in range(n)):
        return None
    if any(not Q[i][j] for i in range(n) for j in range(n) if G[i][j]):
        return None
    middle = range(q, n - q)
    candidates = [Fraction(1)] + [_squarefree_kernel(Q[i][i]) for i in middle[:1]]
    for c in candidates:
        scale = [Fraction(1)] * n
        for i in middle:
            root = _is_rational_square(Q[i][i] / c)
            if root is None:
                break
            scale[i] = 1 / root
        else:
            for i in range(q):
                scale[i] = c / Q[i][n - 1 - i]
            return [[scale[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)], c
    return None


def _normalizing_basis(Q, sig) -> tuple[list, Fraction] | None:
    """Rational ``B`` with ``B^T Q B = c * standard_metric(sig)``, if one is found."""
    n = len(Q)
    p, q = sig
    B0, D, _ = congruence_diagonalize(Q)
    d = [D[i][i] for i in range(n)]
    pos = [i for i in range(n) if d[i] > 0]
    neg = [i for i in range(n) if d[i] < 0]
    candidates = [Fraction(1)]
    if pos:
        candidates.append(_squarefree_kernel(d[pos[0]]))
    if neg:
        candidates.append(_squarefree_kernel(d[neg[0]]))
    for c in candidates:
        used = set()
        pairs = []
        ok = True
        for b in neg:
            # a hyperbolic plane only needs d_a / (-d_b) to be a square
            a = next((a for a in pos if a not in used and _is_rational_square(-d[a] / d[b]) is not None), None)
            if a is None:
                ok = False
                break
            used.add(a)
            pairs.append((a, b, _is_rational_square(-d[a] / d[b])))
        if not ok:
            continue
        middle = [a for a in pos if a not in used]
        roots = {a: _is_rational_square(d[a] / c) for a in middle}
        if any(r is None for r in roots.values()):
            continue
        cols = [None] * n
        e = identity(n)
        for idx, (a, b, ratio) in enumerate(pairs):
            # X = e_a, Y = ratio * e_b have Q(X,X) = -Q(Y,Y) = d_a
            k = c / (2 * d[a])
            cols[idx] = [e[a][i] + ratio * e[b][i] for i in range(n)]
            cols[n - 1 - idx] = [k * (e[a][i] - ratio * e[b][i]) for i in range(n)]
        for off, a in enumerate(middle):
            cols[q + off] = [x / roots[a] for x in e[a]]
        B1 = transpose(cols)
        return matmul(B0, B1), c
    return None


def adapt_frame(j: Jet3) -> tuple[list, MetricForm, Jet3]:
    """Normalize the quadratic form.

    Returns ``(B, metric, adapted_jet)``.  When the raw signature has
    ``p < q`` the normal coordinate is flipped first (so the adapted jet has
    ``p >= q``).  ``B`` acts on tangent coordinates of the oriented jet:
    ``B^T Q B = G``.
    """
    p, q = second_fundamental_signature(j)
    if p + q < j.n:
        raise DegenerateFormError(f"second fundamental form has rank {p + q} < {j.n}")
    if p < q:
        j = j.negated()
        p, q = q, p
    G = standard_metric(p, q)
    if j.Q == G:
        return identity(j.n), MetricForm((p, q), G), j
    found = _diagonal_scaling(j.Q, (p, q)) or _normalizing_basis(j.Q, (p, q))
    if found is None:
        return identity(j.n), MetricForm((p, q), [list(r) for r in j.Q], Fraction(1), False), j
    B, c = found
    adapted = _transform_jet(j, B)
    Gc = [[c * x for x in r] for r in G]
    assert adapted.Q == Gc
    return B, MetricForm((p, q), Gc, c), adapted


def extract_L1(j: Jet3, metric: MetricForm | None = None) -> L1Tensor:
    """Trace-free cubic of an adapted jet."""
    if metric is None:
        _, metric, j = adapt_frame(j)
    if j.Q != metric.G:
        raise ValueError("jet is not in an adapted frame for this metric")
    T, lam = trace_free_part(j.C, metric.G)
    D = matvec(inverse(metric.G), lam)
    return L1Tensor(metric, T, D, j.n)


def invariants_at(S: Hypersurface, p: Sequence | None = None) -> tuple[Jet3, MetricForm, L1Tensor]:
    j = graph_jet(S, p)
    _, metric, adapted = adapt_frame(j)
    return adapted, metric, extract_L1(adapted, metric)


def pseudo_norm_sq(t: L1Tensor) -> Fraction:
    """``g^{ia} g^{jb} g^{kc} T_ijk T_abc``."""
    n = t.n
    T = t.tensor()
    Minv = t.metric.inverse()
    # raise the three indices one at a time
    U = T
    for axis in range(3):
        V = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for i, j, k in product(range(n), repeat=3):
            idx = (i, j, k)
            s = Fraction(0)
            for a in range(n):
                m = Minv[idx[axis]][a]
                if m:
                    src = list(idx)
                    src[axis] = a
                    s += m * U[src[0]][src[1]][src[2]]
            V[i][j][k] = s
        U = V
    return sum((U[i][j][k] * T[i][j][k] for i, j, k in product(range(n), repeat=3)), Fraction(0))


# ----------------------------------------------------------------------------
# orbit classification

def _bilinear(Q, x, y) -> Fraction:
    return sum((x[i] * Q[i][j] * y[j] for i in range(len(Q)) for j in range(len(Q)) if Q[i][j]), Fraction(0))


def _quad_matrix(q: MultiPoly, n: int) -> list:
    M = [[Fraction(0)] * n for _ in range(n)]
    for e, c in q.terms.items():
        if sum(e) != 2:
            raise ValueError("quadratic form expected")
        idx = [i for i in range(n) for _ in range(e[i])]
        if idx[0] == idx[1]:
            M[idx[0]][idx[0]] += Fraction(c)
        else:
            M[idx[0]][idx[1]] += Fraction(c) / 2
            M[idx[1]][idx[0]] += Fraction(c) / 2
    return M


def _rational_eigenvalues(A: list, B: list) -> list[Fraction] | None:
    """Roots of ``det(A - x B)`` with multiplicity, or None if some are irrational."""
    import sympy

    m = len(A)
    x = sympy.Symbol("x")
    M = sympy.Matrix(m, m, lambda i, j: sympy.Rational(str(A[i][j])) - x * sympy.Rational(str(B[i][j])))
    poly = sympy.Poly(M.det(method="berkowitz"), x)
    _, factors = poly.factor_list()
    roots = []
    for f, mult in factors:
        if f.degree() != 1:
            return None
        a, b = f.all_coeffs()
        roots.extend([-sympy_rational(b) / sympy_rational(a)] * mult)
    return roots


def classify_L1(t: L1Tensor) -> OrbitType:
    """Match the trace-free cubic against the three null normal forms."""
    p, q = t.metric.sig
    n = t.n
    if q != 1 or p != n - 1:
        raise ValueError(f"orbit classification needs a Lorentzian metric, got {t.metric.sig}")
    T = t.T
    if T.is_zero():
        return OrbitType("Zero")
    G = t.metric.G
    Ginv = t.metric.inverse()

    def is_null(coeffs):
        return _bilinear(Ginv, coeffs, coeffs) == 0

    _, factors = to_sympy(T).factor_list()
    linear = []
    for f, mult in factors:
        if f.total_degree() == 1:
            coeffs = [sympy_rational(f.coeff_monomial(tuple(int(i == k) for i in range(n)))) for k in range(n)]
            linear.append((coeffs, mult, f))
    for coeffs, mult, _ in linear:
        if mult == 3:
            if is_null(coeffs):
                return OrbitType("CubeNull")
            return OrbitType("Unclassified", diagnostic="cube of a non-null linear form")
        if mult == 2:
            if is_null(coeffs):
                return OrbitType("SquareNullLinear")
            return OrbitType("Unclassified", diagnostic="square of a non-null linear form")
    diag = "no null linear factor"
    for coeffs, _, f in linear:
        if not is_null(coeffs):
            continue
        qpoly, rem = to_sympy(T).div(f)
        assert rem.is_zero
        qp = from_sympy(qpoly, n)
        result = _null_times_quadric(coeffs, _quad_matrix(qp, n), G, Ginv, n)
        if isinstance(result, OrbitType):
            return result
        diag = result
    return OrbitType("Unclassified", diagnostic=diag)


def _null_times_quadric(ell, q, G, Ginv, n) -> OrbitType | str:
    sharp = matvec(Ginv, ell)
    kernel = nullspace([ell], n)
    for v in kernel:
        if _bilinear(q, sharp, v) != 0:
            return "quadric does not annihilate the null direction"
    # any v with ell(v) != 0 gives a complement W of sharp inside ker ell
    v0 = [Fraction(int(i == next(k for k in range(n) if ell[k]))) for i in range(n)]
    ell_v0 = sum((a * b for a, b in zip(ell, v0)), Fraction(0))
    b = _bilinear(q, sharp, v0) / ell_v0
    q2 = [[q[i][j] - b * G[i][j] for j in range(n)] for i in range(n)]
    W = nullspace([ell, matvec(G, v0)], n)
    qW = [[_bilinear(q2, x, y) for y in W] for x in W]
    gW = [[_bilinear(G, x, y) for y in W] for x in W]
    alphas = _rational_eigenvalues(qW, gW)
    if alphas is None:
        return OrbitType("Unclassified", diagnostic="irrational eigenvalues in the quadric factor")
    if not any(alphas):
        return "quadric factor vanishes on the null complement"
    lead = max(alphas, key=lambda a: (abs(a), a))
    params = tuple(sorted((a / lead for a in alphas), reverse=True))
    return OrbitType("NullTimesQuadric", params)


# ----------------------------------------------------------------------------
# tube criterion

def isotropy_action(X, jet: Jet3, T: MultiPoly, G) -> MultiPoly:
    """Trace-free part of the derivation of ``T`` along the tangent block of ``X``."""
    n = jet.n
    Xc = X.conjugate_by(jet.frame, jet.point)
    if any(Xc.b):
        raise ValueError("field does not vanish at the jet point")
    if any(Xc.A[n][:n]):
        raise ValueError("field does not preserve the tangent plane")
    grads = T.gradient()
    out = MultiPoly.zero(n)
    for k in range(n):
        comp = _linear(Xc.A[k][:n], n)
        if comp and grads[k]:
            out = out + grads[k] * comp
    return trace_free_part(out, G)[0] if not out.is_zero() else out


def tube_criterion(S: Hypersurface, p: Sequence | None = None, algebra: LieAlgebraBasis | None = None):
    """True iff some isotropy element scales L1 by a nonzero factor.

    Returns ``NotApplicable`` when the trace-free L1 vanishes.
    """
    p = tuple(as_rational(x) for x in (S.ref_point if p is None else p))
    jet, metric, l1 = invariants_at(S, p)
    if l1.is_zero():
        return NotApplicable
    L = algebra if algebra is not None else symmetry_algebra(S)
    iso = isotropy_at(L, p)
    actions = [isotropy_action(X, jet, l1.T, metric.G) for X in iso]
    span = SparseSpan(a.terms for a in actions)
    # sum c_k action_k = lam T with lam != 0 iff T lies in the span of the actions
    return span.contains(l1.T.terms)


# ----------------------------------------------------------------------------
# reporting

def l1_summary(S: Hypersurface, p: Sequence | None = None) -> dict:
    jet, metric, l1 = invariants_at(S, p)
    out = {
        "signature": list(metric.sig),
        "metric_normalized": metric.normalized,
        "metric_scale": exact_str(metric.scale),
        "l1": l1.T.to_text(),
        "l1_norm_sq": exact_str(pseudo_norm_sq(l1)),
    }
    if metric.sig[1] == 1 and metric.sig[0] == jet.n - 1:
        orbit = classify_L1(l1)
        out["orbit"] = orbit.tag
        out["alphas"] = [exact_str(a) for a in orbit.params] if orbit.params else []
    else:
        out["orbit"] = None
        out["alphas"] = []
    return out
