"""Verification suites run by ``finring verify`` and the acceptance tests.

A suite is a function ``(seed) -> list[Case]``.  Cases carry a verdict and,
on failure, a witness that reproduces the problem.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import corpus as corpus_mod
from .actions import burnside_orbits, check_product_aut_structure, enumerate_orbits, orbit_count, product_aut_order
from .errors import NotSemisimple
from .fields import finite_field, matrix_ring, zmod
from .iso import automorphisms, is_isomorphic
from .profinite import check_system, free_nil_system, generic_poly_nonvanishing, theorem2_shadow
from .radical import (
    check_claim1,
    check_za_plus_a,
    jacobson_radical,
    largest_nilpotent_ideal,
    maximal_ideal_report,
    nil_report,
    z_tower,
)
from .ring import build_ring, quotient, unitalize
from .verdict import FAIL, NA, PASS, Verdict, failed, passed
from .wedderburn import (
    canonical_factors,
    decompose_semisimple,
    jordan_exponent,
    jordan_witness,
    rebuild,
    scramble,
    size_bounds,
    vanishes_on,
    w_poly_degree,
)


# report schema vocabulary: not-applicable cases are listed as skipped
REPORT_VERDICT = {PASS: "pass", FAIL: "fail", NA: "skip"}


@dataclass
class Case:
    id: str
    verdict: str
    detail: str = ""
    witness: Any = None
    ms: float = 0.0

    def to_dict(self) -> dict:
        d = {"id": self.id, "verdict": REPORT_VERDICT[self.verdict], "ms": round(self.ms, 3)}
        if self.detail:
            d["detail"] = self.detail
        if self.witness is not None:
            d["witness"] = _jsonable(self.witness)
        return d


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return repr(x)


@dataclass
class VerificationReport:
    suite: str
    cases: list = field(default_factory=list)

    def __post_init__(self):
        self.cases = sorted(self.cases, key=lambda c: c.id)

    @property
    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "skip": 0}
        for c in self.cases:
            out["skip" if c.verdict == NA else c.verdict] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def to_json(self) -> str:
        return json.dumps({"suite": self.suite, "cases": [c.to_dict() for c in self.cases],
                           "summary": self.summary}, sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"suite {self.suite}"]
        for c in self.cases:
            tag = REPORT_VERDICT[c.verdict].upper()
            line = f"  {tag} {c.id} ({c.ms:.1f} ms)"
            if c.detail:
                line += f": {c.detail}"
            if c.witness is not None and c.verdict == FAIL:
                line += f" witness={_jsonable(c.witness)}"
            lines.append(line)
        s = self.summary
        lines.append(f"summary: {s['pass']} pass, {s['fail']} fail, {s['skip']} skip")
        return "\n".join(lines) + "\n"


def _run(cid: str, fn: Callable[[], Verdict]) -> Case:
    t = time.perf_counter()
    v = fn()
    ms = (time.perf_counter() - t) * 1000
    return Case(cid, v.status, v.detail, v.witness if v.status == FAIL else None, ms)


def _check(cond: bool, ok: str, bad: str, witness=None) -> Verdict:
    return passed(ok) if cond else failed(bad, witness)


# -- 1. radical agreement -------------------------------------------------------

def radical_agreement(seed: int = 0, max_order: int = 256) -> list[Case]:
    def one(R):
        rep = maximal_ideal_report(R)
        J = rep.phi_radical
        if not rep.agree:
            return failed("maximal-ideal intersections differ from the scan",
                          [rep.left_intersection.order, rep.core_intersection.order, J.order])
        if R.order <= 64 and largest_nilpotent_ideal(R) != J:
            return failed("largest nilpotent ideal differs", J.gens)
        Q, _ = quotient(R, J)
        if not jacobson_radical(Q).is_zero():
            return failed("J(R/J(R)) is nonzero", J.gens)
        return passed(f"|J| = {J.order}, {len(rep.left_ideals)} regular maximal left ideals")
    return [_run(n, lambda R=R: one(R)) for n, R in corpus_mod.corpus(max_order)]


# -- 2. Wedderburn roundtrip -------------------------------------------------------

FACTOR_POOL = [(1, q) for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32)] \
    + [(2, 2), (2, 3), (3, 2)]


def random_factor_lists(seed: int, count: int = 50, max_order: int = 512) -> list[tuple]:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        total, picked = 1, []
        for _ in range(int(rng.integers(1, 6))):
            k, q = FACTOR_POOL[int(rng.integers(len(FACTOR_POOL)))]
            size = q ** (k * k)
            if total * size <= max_order:
                picked.append((k, q, 1))
                total *= size
        if picked:
            out.append(canonical_factors(picked))
    return out


def wedderburn_roundtrip(seed: int = 0, count: int = 50) -> list[Case]:
    cases = []
    for i, fs in enumerate(random_factor_lists(seed, count)):
        def one(fs=fs, i=i):
            R, _ = scramble(rebuild(fs), seed * 1000 + i)
            d = decompose_semisimple(R)
            return _check(d.factors == fs and d.order == R.order,
                          str(d), f"decomposed to {d}", [list(f) for f in fs])
        cases.append(_run(f"random-{i:02d}", one))
    for n, R in corpus_mod.corpus():
        def one(R=R):
            J = jacobson_radical(R)
            try:
                d = decompose_semisimple(R)
            except NotSemisimple as exc:
                return _check(not J.is_zero(), "rejected: J != 0",
                              "rejected a semisimple ring", repr(exc.witness))
            if not J.is_zero():
                return failed("accepted a ring with J != 0", J.gens)
            back = rebuild(d)
            return _check(is_isomorphic(back, R) is not None, str(d), "rebuild not isomorphic", str(d))
        cases.append(_run(f"corpus-{n}", one))
    return cases


# -- 3. free nil towers ----------------------------------------------------------------

def free_nil_tower(seed: int = 0) -> list[Case]:
    cases = []
    for p, N in [(2, 4), (3, 2)]:
        def one(p=p, N=N):
            rep = theorem2_shadow(p, N)
            v = rep.verdict()
            if not v:
                return v
            sysv = check_system(free_nil_system(p, N))
            return v if sysv else sysv
        cases.append(_run(f"p{p}-N{N}", one))
    return cases


# -- 4. automorphisms of products ---------------------------------------------------------

AUT_CASES = {
    "f2xf2": ([(1, 2, 2)], 2),
    "z6-shape": ([(1, 2, 1), (1, 3, 1)], 1),
    "m2f2": ([(2, 2, 1)], 6),
    "m2f2^2": ([(2, 2, 2)], 72),
    "f4^2": ([(1, 4, 2)], 8),
}


def product_aut(seed: int = 0) -> list[Case]:
    cases = []
    for cid, (fs, expected) in AUT_CASES.items():
        def one(fs=fs, expected=expected):
            brute = len(automorphisms(rebuild(fs)))
            formula = product_aut_order(fs)
            if not brute == formula == expected:
                return failed(f"brute {brute}, formula {formula}, expected {expected}", brute)
            return check_product_aut_structure(fs)
        cases.append(_run(cid, one))
    return cases


# -- 5. size bounds and w_m ----------------------------------------------------------------------

def expanded_w_degree(m: int) -> int:
    """Degree of ``w_m`` by multiplying out integer coefficient lists."""
    poly = np.array([1], dtype=object)
    for j in range(2, m + 1):
        for i in range(1, j):
            f = np.zeros(j + 1, dtype=object)
            f[i], f[j] = 1, -1
            poly = np.convolve(poly, f)
    nz = np.nonzero(poly)[0]
    return int(nz[-1])


def w_bounds(seed: int = 0) -> list[Case]:
    cases = []
    for m in range(2, 7):
        cases.append(_run(f"degree-m{m}", lambda m=m: _check(
            w_poly_degree(m) == expanded_w_degree(m) == sum(j * (j - 1) for j in range(2, m + 1)),
            f"deg w_{m} = {w_poly_degree(m)}", "degree mismatch", m)))
    for k, q in itertools.product((1, 2), (2, 3)):
        def one(k=k, q=q):
            M = matrix_ring(k, q)
            zeros = [m for m in range(2, 8) if vanishes_on(m, M)]
            for m in zeros:
                b = size_bounds(m, 1)    # the coset is all of M_k(F_q): index 1
                if k > b.k_poly_branch or q > b.f_bound:
                    return failed(f"w_{m} vanishes on M_{k}(F_{q}) outside the bounds", m)
            return passed(f"w_m vanishes identically for m in {zeros}")
        cases.append(_run(f"vanishing-k{k}-q{q}", one))
    for m, k in itertools.product((2, 3), range(1, 7)):
        def one(m=m, k=k):
            v = jordan_witness(m, k, 2)
            if k > jordan_exponent(m) and v.detail != "nonzero":
                return failed("Jordan witness vanishes beyond the bound", (m, k))
            return v
        cases.append(_run(f"jordan-m{m}-k{k}", one))
    return cases


# -- 6. radical remarks -------------------------------------------------------------------

def radical_remarks(seed: int = 0) -> list[Case]:
    def one(R):
        v = check_za_plus_a(R)
        if not v:
            return v
        J = jacobson_radical(R)
        return _check(nil_report(J).is_nil, v.detail, "J(R) is not nil", J.gens)
    return [_run(n, lambda R=R: one(R)) for n, R in corpus_mod.corpus(128)]


# -- 7. the Z tower on nil rings --------------------------------------------------------------

def z_tower_suite(seed: int = 0) -> list[Case]:
    cases = []
    for n, R in corpus_mod.corpus(81):
        rep = nil_report(R)
        if not rep.is_nil:
            continue

        def one(R=R, rep=rep):
            I = R.whole()
            v = check_claim1(R, I, rep.nilexponent)
            if not v:
                return v
            if rep.is_nilpotent and not z_tower(R, I, 1).level(0).is_whole():
                return failed("Z_0 != R for a nilpotent ring")
            return v
        cases.append(_run(n, one))
    return cases


# -- 8. orbits ----------------------------------------------------------------------------------

def orbits(seed: int = 0) -> list[Case]:
    rings = {1: build_ring([], [], "0"), 2: zmod(2), 3: zmod(3), 4: finite_field(4)}
    cases = []
    for N, m, n in itertools.product(rings, range(1, 5), range(1, 3)):
        def one(N=N, m=m, n=n):
            rep = orbit_count(rings[N], m, n)
            b, e = burnside_orbits(N, m, n), enumerate_orbits(N, m, n)
            return _check(b == e == rep.orbit_count == rep.multiset_count,
                          f"{b} orbits", f"burnside {b} vs enumeration {e}", (N, m, n))
        cases.append(_run(f"N{N}-m{m}-n{n}", one))
    cases.append(_run("f2-m3-n1", lambda: _check(
        orbit_count(zmod(2), 3, 1).orbit_count == 4, "4 orbits", "expected 4")))
    return cases


# -- 9. polynomials at free generators ------------------------------------------------------

def reduced_polys(p: int, n: int):
    """All nonzero polynomials with partial degrees < p and no constant term."""
    exps = [e for e in itertools.product(range(p), repeat=n) if any(e)]
    for coeffs in itertools.product(range(p), repeat=len(exps)):
        if any(coeffs):
            yield {e: c for e, c in zip(exps, coeffs) if c}


def poly_nonvanishing(seed: int = 0) -> list[Case]:
    cases = []
    for p, n in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]:
        def one(p=p, n=n):
            count = 0
            for f in reduced_polys(p, n):
                v = generic_poly_nonvanishing(p, n, f)
                if not v:
                    return v
                count += 1
            return passed(f"{count} polynomials")
        cases.append(_run(f"p{p}-n{n}", one))
    return cases


# -- 10. unitalization -------------------------------------------------------------------------------

def unitalization(seed: int = 0) -> list[Case]:
    cases = []
    for n, R in corpus_mod.corpus():
        if R.is_unital:
            continue

        def one(R=R):
            c = R.characteristic
            R1, emb = unitalize(R, c)
            img = emb.image()
            checks = [
                (R1.is_unital, "R_1 has no identity"),
                (emb.is_hom and emb.is_injective, "embedding is not an injective homomorphism"),
                (img.is_ideal(), "image is not a two-sided ideal"),
                (img.index == c, f"index {img.index} != {c}"),
                (R1.order == R.order * c, "order mismatch"),
            ]
            for ok, msg in checks:
                if not ok:
                    return failed(msg, R.name)
            return passed(f"|R_1| = {R1.order} = {R.order} * {c}")
        cases.append(_run(n, one))
    return cases


SUITES: dict[str, Callable[..., list[Case]]] = {
    "radical-agreement": radical_agreement,
    "wedderburn-roundtrip": wedderburn_roundtrip,
    "free-nil-tower": free_nil_tower,
    "product-aut": product_aut,
    "size-bounds": w_bounds,
    "radical-remarks": radical_remarks,
    "z-tower": z_tower_suite,
    "orbits": orbits,
    "poly-nonvanishing": poly_nonvanishing,
    "unitalization": unitalization,
}


def run_suite(name: str, seed: int = 0) -> VerificationReport:
    return VerificationReport(name, SUITES[name](seed))
