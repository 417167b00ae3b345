"""Verification suites and single-surface analysis shared by the CLI and the tests.

Every check yields a ``Check`` with status ``pass``, ``fail`` or ``n/a`` and an
exact witness string.  Suites fan out across independent surfaces only, and
results are merged in submission order, so reports do not depend on scheduling.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import exact_str
from .catalog import (
    EXPECTED_ORBIT,
    PRINTED,
    GroupParams,
    Sec6Formulas,
    SurfaceId,
    make_surface,
    surface_invariance,
    theorem2_ids,
    verify_transitivity,
)
from .holo import chern_moser as cm
from .holo import type_c
from .holo.fields import algebra_closure, holo_tangent, isotropy_dim_at, killing_signature
from .invariants import (
    DegenerateFormError,
    NotApplicable,
    classify_L1,
    invariants_at,
    pseudo_norm_sq,
    tube_criterion,
)
from .symmetry import (
    Hypersurface,
    check_prop_cs,
    filtration,
    full_affine_algebra,
    isotropy_at,
    symmetry_algebra,
    transitivity_rank,
)

PASS, FAIL, NA = "pass", "fail", "n/a"


@dataclass
class Check:
    name: str
    status: str
    witness: str = ""
    seconds: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        out = {"name": self.name, "status": self.status, "witness": self.witness}
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


def _check(name: str, ok: bool, witness: str = "") -> Check:
    return Check(name, PASS if ok else FAIL, witness)


def _timed(fn: Callable[[], list[Check]]) -> list[Check]:
    start = time.perf_counter()
    checks = fn()
    elapsed = time.perf_counter() - start
    for c in checks:
        c.seconds = elapsed / max(len(checks), 1)
    return checks


def run_parallel(fn: Callable, items: Sequence, jobs: int = 1) -> list:
    """``[fn(x) for x in items]``, optionally in worker processes, in input order."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def tube_str(value) -> object:
    return "n/a" if value is NotApplicable else bool(value)


# ----------------------------------------------------------------------------
# analysis of one surface

def analyze_surface(S: Hypersurface, with_filtration: bool = True) -> dict:
    """Symmetry, filtration and third-order invariants of ``S`` at its reference point."""
    p = S.ref_point
    L = symmetry_algebra(S)
    iso = isotropy_at(L, p)
    out: dict = {
        "surface": S.name or S.F.to_text(),
        "n": S.n,
        "point": [exact_str(x) for x in p],
        "symmetry_dim": L.dim,
        "isotropy_dim": iso.dim,
        "transitivity_rank": transitivity_rank(L, p, S),
    }
    if with_filtration:
        filt = filtration(L, full_affine_algebra(S.dim), p)
        out["filtration_dims"] = filt.dims
    try:
        jet, metric, l1 = invariants_at(S, p)
    except DegenerateFormError as exc:
        out.update({"degenerate": True, "detail": str(exc), "signature": None, "tube": "n/a"})
        return out
    out["signature"] = list(metric.sig)
    out["metric_normalized"] = metric.normalized
    out["metric_scale"] = exact_str(metric.scale)
    out["l1"] = l1.T.to_text()
    out["l1_zero"] = l1.is_zero()
    out["l1_norm_sq"] = exact_str(pseudo_norm_sq(l1))
    if metric.is_lorentzian:
        orbit = classify_L1(l1)
        out["orbit"] = orbit.tag
        out["alphas"] = [exact_str(a) for a in orbit.params] if orbit.params else []
    else:
        out["orbit"] = None
        out["alphas"] = []
    out["tube"] = tube_str(tube_criterion(S, p, algebra=L))
    return out


# ----------------------------------------------------------------------------
# quadric suite

def quadric_symmetry_dim(n: int) -> int:
    return n + n * (n - 1) // 2 + 1


def theorem1_checks(n: int) -> list[Check]:
    def run():
        S = make_surface(SurfaceId("T1Quadric", n))
        tag = f"T1Quadric(n={n})"
        _, metric, l1 = invariants_at(S)
        L = symmetry_algebra(S)
        filt = filtration(L, full_affine_algebra(S.dim), S.ref_point)
        rank = transitivity_rank(L, S.ref_point, S)
        want = quadric_symmetry_dim(n)
        via_filtration = filt.limit.dim + rank
        return [
            _check(f"{tag} signature", tuple(metric.sig) == (n, 0), str(tuple(metric.sig))),
            _check(f"{tag} trace-free L1 zero", l1.is_zero(), l1.T.to_text()),
            _check(f"{tag} symmetry dim (tangency)", L.dim == want, f"{L.dim} vs {want}"),
            _check(
                f"{tag} symmetry dim (filtration)",
                via_filtration == want and rank == n,
                f"{filt.limit.dim} + {rank} vs {want}",
            ),
            _check(f"{tag} tube criterion n/a", tube_criterion(S, algebra=L) is NotApplicable, "n/a"),
            _check(
                f"{tag} filtration closure",
                all(check_prop_cs(L, filt, i) for i in range(len(filt.chain))),
                str(filt.dims),
            ),
        ]

    return _timed(run)


# ----------------------------------------------------------------------------
# Lorentzian catalog suite

def theorem2_surface_checks(sid: SurfaceId) -> list[Check]:
    def run():
        n = sid.n
        S = make_surface(sid)
        tag = sid.label
        L = symmetry_algebra(S)
        iso = isotropy_at(L, S.ref_point)
        _, metric, l1 = invariants_at(S)
        bound = (n - 2) * (n - 3) // 2
        checks = [
            _check(f"{tag} signature", tuple(metric.sig) == (n - 1, 1), str(tuple(metric.sig))),
            _check(f"{tag} isotropy dim", iso.dim >= bound, f"{iso.dim} >= {bound}"),
            _check(f"{tag} pseudo-norm", pseudo_norm_sq(l1) == 0, exact_str(pseudo_norm_sq(l1))),
        ]
        tube = tube_criterion(S, algebra=L)
        if l1.is_zero():
            checks.append(Check(f"{tag} tube criterion", NA, "trace-free L1 = 0"))
        else:
            checks.append(_check(f"{tag} tube criterion", tube is True, str(tube_str(tube)).lower()))
        orbit = classify_L1(l1) if metric.is_lorentzian else None
        got = orbit.tag if orbit else "none"
        want = EXPECTED_ORBIT[sid.family]
        if orbit and orbit.params:
            got += "(" + ",".join(exact_str(a) for a in orbit.params) + ")"
        checks.append(_check(f"{tag} orbit", orbit is not None and orbit.tag == want, f"{got} vs {want}"))
        return checks

    return _timed(run)


def theorem2_checks(n: int, jobs: int = 1) -> list[Check]:
    groups = run_parallel(theorem2_surface_checks, theorem2_ids(n), jobs)
    return [c for g in groups for c in g]


# ----------------------------------------------------------------------------
# type C suite: real group, holomorphic fields, Chern-Moser pieces

def random_group_params(rng: random.Random, n: int, bound: int = 9) -> GroupParams:
    def rat(nonzero: bool = False, positive: bool = False) -> Fraction:
        while True:
            num = rng.randint(1 if positive else -bound, bound)
            if num or not nonzero:
                return Fraction(num, rng.randint(1, bound))

    return GroupParams(
        rat(positive=True),
        rat(nonzero=True),
        rat(),
        tuple(rat() for _ in range(n - 2)),
    )


def sec6_real_checks(n: int, seed: int = 0, samples: int = 20, formulas: Sec6Formulas = PRINTED) -> list[Check]:
    def run():
        rng = random.Random(f"sec6-{n}-{seed}")
        tag = f"Sec6Gamma(n={n})"
        sid = SurfaceId("Sec6Gamma", n)
        good = sum(
            surface_invariance(random_group_params(rng, n), sid, formulas) for _ in range(samples)
        )
        return [
            _check(f"{tag} invariance F o g = q r^2 F", good == samples, f"{good}/{samples}"),
            _check(f"{tag} transitivity h > 0", verify_transitivity(n, ">", formulas), ""),
            _check(f"{tag} transitivity h < 0", verify_transitivity(n, "<", formulas), ""),
        ]

    return _timed(run)


def sec6_holo_checks(n: int) -> list[Check]:
    def run():
        tag = f"type C tube(n={n})"
        rho = type_c.gamma_rho(n)
        gens = [f for _, f in type_c.generators(n)]
        tangent = sum(holo_tangent(f, rho) for f in gens)
        total = type_c.generator_count(n)
        closed, _ = algebra_closure(gens)
        p0 = type_c.base_point(n)
        iso = isotropy_dim_at(gens, p0, rho)
        want_iso = type_c.expected_isotropy_dim(n)
        triple = type_c.sl2_triple(n)
        vanish = [f.evaluate(p0) == [0] * (n + 1) for f in triple]
        sig = killing_signature(list(triple))
        return [
            _check(f"{tag} tangent fields", tangent == total == len(gens), f"{tangent}/{total}"),
            _check(f"{tag} bracket closure", closed, ""),
            _check(f"{tag} isotropy dim", iso == want_iso, f"{iso} vs {want_iso}"),
            _check(
                f"{tag} sl2 vanishing at p0",
                vanish == [True, False, False],
                "".join("1" if v else "0" for v in vanish),
            ),
            _check(f"{tag} sl2 Killing signature", sig == (2, 1), str(sig)),
        ]

    return _timed(run)


def chern_moser_checks(n: int, cap: int = 6, formulas: cm.CMFormulas = cm.PRINTED_CM) -> list[Check]:
    tag = f"Chern-Moser(n={n})"
    names = {(1, 1): "F11", (2, 2): "F22", (3, 2): "F32", (3, 3): "F33"}
    if cap < 6:
        return [Check(f"{tag} {names[k]}", NA, f"cap {cap} < 6") for k in names] + [
            Check(f"{tag} {t}", NA, f"cap {cap} < 6") for t in ("tr F22", "tr^2 F32", "tr^3 F33")
        ]

    def run():
        jet = cm.cm_expand(n, cap, formulas)
        got = cm.compare_pieces(jet, formulas)
        printed = cm.printed_pieces(n, formulas)
        checks = []
        for key, ok in got.items():
            witness = "" if ok else f"difference {(jet.piece(*key) - printed[key]).to_text(_cm_names(n))}"
            checks.append(_check(f"{tag} {names[key]}", ok, witness))
        for name, ok in cm.trace_conditions(jet, formulas).items():
            checks.append(_check(f"{tag} {name}", ok, ""))
        return checks

    return _timed(run)


def _cm_names(n: int) -> list[str]:
    return [f"w{i + 1}" for i in range(n)] + [f"wb{i + 1}" for i in range(n)]


def section6_checks(n: int, seed: int = 0, cap: int = 6) -> list[Check]:
    return sec6_real_checks(n, seed) + sec6_holo_checks(n) + chern_moser_checks(n, cap)


def section6_summary(n: int, checks: Sequence[Check]) -> dict:
    """Condensed view of ``section6_checks(n)`` output."""
    by_name = {c.name: c for c in checks}

    def ok(name: str) -> bool:
        return by_name[name].status == PASS

    holo = f"type C tube(n={n})"
    cmtag = f"Chern-Moser(n={n})"
    tangent = by_name[f"{holo} tangent fields"].witness.split("/")[0]
    iso = by_name[f"{holo} isotropy dim"].witness.split(" ")[0]
    cm_block = {}
    for piece in ("F11", "F22", "F32", "F33"):
        c = by_name[f"{cmtag} {piece}"]
        cm_block[f"{piece}_ok"] = "n/a" if c.status == NA else c.status == PASS
    traces = [by_name[f"{cmtag} {t}"] for t in ("tr F22", "tr^2 F32", "tr^3 F33")]
    cm_block["traces_ok"] = "n/a" if traces[0].status == NA else all(t.status == PASS for t in traces)
    return {
        "n": n,
        "invariance_ok": ok(f"Sec6Gamma(n={n}) invariance F o g = q r^2 F"),
        "transitivity_ok": ok(f"Sec6Gamma(n={n}) transitivity h > 0") and ok(f"Sec6Gamma(n={n}) transitivity h < 0"),
        "tangent_fields_ok": int(tangent),
        "closure_ok": ok(f"{holo} bracket closure"),
        "isotropy_dim": int(iso),
        "expected_isotropy_dim": type_c.expected_isotropy_dim(n),
        "sl2_ok": ok(f"{holo} sl2 vanishing at p0") and ok(f"{holo} sl2 Killing signature"),
        "cm": cm_block,
    }


def summarize(checks: Sequence[Check]) -> dict:
    counts = {PASS: 0, FAIL: 0, NA: 0}
    for c in checks:
        counts[c.status] += 1
    return counts
