"""The tube over the type C surface and its holomorphic symmetry fields.

Indices follow the printed numbering ``Y_1 .. Y_{n^2-2n+8}``.  Two printed
families are not tangent as written: ``Y_{n+j}`` carries ``d/dz_1`` where the
group ``G`` gives ``d/dz_2``, and ``I_{j,k}`` lacks the ``-2i z_j z_k d/dz_2``
term that its diagonal analogue ``Y_{n^2-3n+6+j}`` has.  ``printed=True``
reproduces the printed forms.
"""

from __future__ import annotations

from fractions import Fraction

from ..algebra import GaussRational, I, MultiPoly
from .fields import HoloVectorField, RealDefiningPoly


def gamma_rho(n: int, perturb: MultiPoly | None = None) -> RealDefiningPoly:
    """``x_{n+1} - x_1 x_2 - x_1 sum_{j>=3} x_j^2`` with ``x = (z + zbar)/2``."""
    N = n + 1
    v = MultiPoly.gens(2 * N)
    x = [(v[k] + v[N + k]) * Fraction(1, 2) for k in range(N)]
    rho = x[n] - x[0] * x[1]
    for j in range(2, n):
        rho = rho - x[0] * x[j] * x[j]
    if perturb is not None:
        rho = rho + perturb
    return RealDefiningPoly(rho, N)


def base_point(n: int) -> list[GaussRational]:
    return [GaussRational(1)] + [GaussRational(0)] * n


def _z(N: int):
    return MultiPoly.gens(N)


def _field(N: int, spec: dict) -> HoloVectorField:
    """``spec`` maps 1-based component indices to polynomials."""
    return HoloVectorField.from_terms(N, {j - 1: p for j, p in spec.items()})


def generators(n: int, printed: bool = False) -> list[tuple[str, HoloVectorField]]:
    """``(label, field)`` for ``Y_1 .. Y_{n^2-2n+8}`` in printed order."""
    if n < 3:
        raise ValueError("need n >= 3")
    N = n + 1
    z = _z(N)
    Z = lambda j: z[j - 1]  # noqa: E731
    one = MultiPoly.const(N, 1)
    out: list[tuple[str, HoloVectorField]] = []
    for j in range(1, N + 1):
        out.append((f"Y{j}", _field(N, {j: one * I})))
    out.append((f"Y{n + 2}", _field(N, {1: Z(1), N: Z(N)})))
    for j in range(3, n + 1):
        target = 1 if printed else 2
        out.append((f"Y{n + j}", _field(N, {target: Z(j) * -2, j: one})))
    out.append((f"Y{2 * n + 1}", _field(N, {2: one, N: Z(1)})))
    spec = {2: Z(2) * 2, N: Z(N) * 2}
    for j in range(3, n + 1):
        spec[j] = Z(j)
    out.append((f"Y{2 * n + 2}", _field(N, spec)))
    for j in range(3, n + 1):
        for k in range(j + 1, n + 1):
            out.append((f"R{j},{k}", _field(N, {j: Z(k), k: -Z(j)})))
    for j in range(3, n + 1):
        for k in range(j + 1, n + 1):
            spec = {j: Z(k) * I, k: Z(j) * I}
            if not printed:
                spec[2] = Z(j) * Z(k) * (I * -2)
            out.append((f"I{j},{k}", _field(N, spec)))
    for j in range(3, n + 1):
        out.append((f"Y{n * n - 3 * n + 6 + j}", _field(N, {2: Z(j) ** 2 * -I, j: Z(j) * I})))
    out.append((f"Y{n * n - 2 * n + 7}", _field(N, {2: (Z(1) - 1) * (I * 2), N: (Z(1) ** 2 - 1) * I})))
    out.append((f"Y{n * n - 2 * n + 8}", last_generator(n)))
    return out


def last_generator(n: int) -> HoloVectorField:
    N = n + 1
    z = _z(N)
    return _field(N, {
        1: (z[0] ** 2 - 1) * (I / 2),
        2: z[n] * I,
        N: z[0] * z[n] * I,
    })


def transitive_count(n: int) -> int:
    return 2 * n + 1


def expected_isotropy_dim(n: int) -> int:
    return n * n - 4 * n + 7


def generator_count(n: int) -> int:
    return n * n - 2 * n + 8


def sl2_triple(n: int) -> tuple[HoloVectorField, HoloVectorField, HoloVectorField]:
    """``A = Y_last / 2``, ``H = Y_{n+2}``, ``B = Y_last / 2 + Y_1 / 4``."""
    gens = dict(generators(n))
    A = last_generator(n) * Fraction(1, 2)
    H = gens[f"Y{n + 2}"]
    B = A + gens["Y1"] * Fraction(1, 4)
    return A, H, B
