from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from affinetube.algebra import MultiPoly

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def fractions(bound: int = 9):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound))


def nonzero_fractions(bound: int = 9):
    return st.builds(
        Fraction,
        st.integers(1, bound).flatmap(lambda k: st.sampled_from([k, -k])),
        st.integers(1, bound),
    )


@st.composite
def polys(draw, nvars: int, max_deg: int = 3, max_terms: int = 5):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exp = tuple(draw(st.integers(0, max_deg)) for _ in range(nvars))
        if sum(exp) <= max_deg:
            terms[exp] = draw(fractions())
    return MultiPoly(nvars, terms)


@st.composite
def invertible_matrices(draw, n: int, bound: int = 4):
    """Integer matrices with nonzero determinant (unit triangular factors)."""
    L = [[Fraction(int(i == j)) if i <= j else Fraction(draw(st.integers(-bound, bound))) for j in range(n)] for i in range(n)]
    U = [[Fraction(int(i == j)) if j <= i else Fraction(draw(st.integers(-bound, bound))) for j in range(n)] for i in range(n)]
    d = [draw(nonzero_fractions(3)) for _ in range(n)]
    M = [[sum(L[i][k] * U[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[M[i][j] * d[j] for j in range(n)] for i in range(n)]


def random_invertible(rng, dim: int, bound: int = 2) -> list:
    from affinetube.algebra import determinant

    while True:
        M = [[Fraction(rng.randint(-bound, bound)) for _ in range(dim)] for _ in range(dim)]
        if determinant(M):
            return M


def recoordinatize(S, rng, bound: int = 2):
    """``S`` precomposed with a random exact affine map fixing the reference point."""
    from affinetube.symmetry import pull_back

    return pull_back(S, random_invertible(rng, S.dim, bound))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
