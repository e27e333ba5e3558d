"""Automorphism groups, automorphisms of products of matrix rings, orbit
counts for coordinate permutations and the census of non-null factors."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial, prod

import numpy as np

from .errors import BudgetExceeded, DuplicateFactorClass
from .fields import matrix_ring
from .iso import DEFAULT_BUDGET, automorphisms
from .ntheory import prime_power
from .radical import nil_report
from .ring import FiniteRing, RingElement, RingHom, annihilator, identity_hom, product
from .verdict import Verdict, failed, passed

ORBIT_ENUM_LIMIT = 1 << 20


# -- automorphism groups -----------------------------------------------------------

@dataclass(frozen=True)
class AutGroup:
    ring: FiniteRing
    elements: tuple
    generators: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, f: RingHom) -> bool:
        return f in self._set

    @property
    def _set(self):
        return frozenset(self.elements)

    def closure_violation(self, pairs: int = 50, seed: int = 0):
        """A random pair whose composite or inverse is missing, else ``None``."""
        rng = np.random.default_rng(seed)
        els = self.elements
        S = self._set
        for _ in range(pairs):
            f, g = (els[int(i)] for i in rng.integers(0, len(els), size=2))
            if f.compose(g) not in S or f.inverse() not in S:
                return f, g
        return None


def _generators(elements) -> tuple:
    """Greedy generating subset under composition."""
    if not elements:
        return ()
    ident = identity_hom(elements[0].source)
    gens: list = []
    span = {ident}
    for f in elements:
        if f in span:
            continue
        gens.append(f)
        frontier = list(span)
        while frontier:
            new = []
            for h in frontier:
                for g in gens:
                    c = g.compose(h)
                    if c not in span:
                        span.add(c)
                        new.append(c)
            frontier = new
    return tuple(gens)


def automorphism_group(R: FiniteRing, budget: int = DEFAULT_BUDGET) -> AutGroup:
    els = tuple(automorphisms(R, budget))
    return AutGroup(R, els, _generators(els))


def matrix_aut_order(k: int, q: int) -> int:
    """``|Aut(M_k(F_q))| = |PGL_k(q)| * e`` for ``q = p^e`` (inner
    automorphisms composed with field automorphisms)."""
    e = prime_power(q)[1]
    gl = prod(q ** k - q ** i for i in range(k))
    return gl // (q - 1) * e


def _check_classes(factors) -> list:
    factors = [tuple(int(v) for v in f) for f in factors]
    seen = set()
    for k, q, m in factors:
        if (k, q) in seen:
            raise DuplicateFactorClass(f"class M_{k}(F_{q}) given twice; merge the multiplicities")
        if m < 1 or k < 1 or prime_power(q) is None:
            raise ValueError(f"bad factor {(k, q, m)}")
        seen.add((k, q))
    return factors


def product_aut_order(factors, cross_check_limit: int = 256) -> int:
    """``prod kappa_i! * |Aut(M_k(F_q))|^kappa_i`` over ``(k, q, kappa)``.

    The single-factor orders use the closed form, checked by brute force
    when ``q^(k^2) <= cross_check_limit``.
    """
    total = 1
    for k, q, m in _check_classes(factors):
        a = matrix_aut_order(k, q)
        if q ** (k * k) <= cross_check_limit:
            brute = len(automorphisms(matrix_ring(k, q)))
            assert brute == a, f"Aut(M_{k}(F_{q})): closed form {a}, search {brute}"
        total *= factorial(m) * a ** m
    return total


def check_product_aut_structure(factors, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Every automorphism of ``prod M_k(F_q)^kappa`` permutes the factors
    within isomorphism classes and acts by an automorphism on each."""
    factors = _check_classes(factors)
    classes = [(k, q) for k, q, m in factors for _ in range(m)]
    blocks = [matrix_ring(k, q) for k, q in classes]
    R, inj, proj = product(blocks) if len(blocks) > 1 else (
        blocks[0], [identity_hom(blocks[0])], [identity_hom(blocks[0])])
    block_images = [f.image() for f in inj]
    auts = automorphisms(R, budget)
    for phi in auts:
        sigma = []
        for b, f in enumerate(inj):
            img = phi.compose(f).image()
            hits = [c for c, B in enumerate(block_images) if B == img]
            if len(hits) != 1 or classes[hits[0]] != classes[b]:
                return failed(f"block {b} is not sent onto a block of the same class", phi.images)
            sigma.append(hits[0])
        # rebuild phi as (block permutation) o (blockwise automorphisms)
        images = np.zeros_like(phi.images)
        for b, c in enumerate(sigma):
            g = proj[c].compose(phi).compose(inj[b])
            if not (g.is_hom and g.is_bijective):
                return failed(f"component {b} -> {c} is not an automorphism", phi.images)
            images = (images + inj[c].compose(g).compose(proj[b]).images) % R._d
        if not np.array_equal(images, phi.images):
            return failed("automorphism does not factor through blocks", phi.images)
    expected = product_aut_order(factors)
    if len(auts) != expected:
        return failed(f"|Aut| = {len(auts)}, expected {expected}", len(auts))
    return passed(f"{len(auts)} automorphisms factor as permutation times blockwise")


# -- orbits of coordinate permutations -----------------------------------------------

def partitions(m: int, largest: int | None = None):
    """Partitions of ``m`` as non-increasing tuples."""
    if largest is None:
        largest = m
    if m == 0:
        yield ()
        return
    for first in range(min(m, largest), 0, -1):
        for rest in partitions(m - first, first):
            yield (first,) + rest


def cycle_type_count(lam) -> int:
    """Number of permutations of ``sum(lam)`` points with cycle type ``lam``."""
    m = sum(lam)
    denom = 1
    for length in set(lam):
        a = lam.count(length)
        denom *= length ** a * factorial(a)
    return factorial(m) // denom


def burnside_orbits(N: int, m: int, n: int) -> int:
    """Orbits of ``S_m`` permuting the rows of ``m x n`` arrays over ``N``
    symbols: ``(1/m!) sum_sigma N^(n * cycles(sigma))``."""
    total = sum(cycle_type_count(lam) * N ** (n * len(lam)) for lam in partitions(m))
    q, r = divmod(total, factorial(m))
    assert r == 0
    return q


def enumerate_orbits(N: int, m: int, n: int, limit: int = ORBIT_ENUM_LIMIT) -> int:
    """Direct count: distinct row-sorted forms of all ``m x n`` arrays."""
    if N ** (m * n) > limit:
        raise BudgetExceeded(f"{N}^{m * n} arrays exceed the enumeration limit {limit}")
    rows = list(itertools.product(range(N), repeat=n))
    return len({tuple(sorted(arr)) for arr in itertools.product(rows, repeat=m)})


@dataclass(frozen=True)
class OrbitReport:
    ring: FiniteRing
    m: int
    n: int
    orbit_count: int
    method: str                    # "burnside", "canonical-enumeration" or "both"
    enumerated: int | None = None

    @property
    def multiset_count(self) -> int:
        return comb(self.ring.order ** self.n + self.m - 1, self.m)


def orbit_count(R: FiniteRing, m: int, n: int, method: str = "auto") -> OrbitReport:
    """Orbits of ``S_m`` on ``(R^m)^n`` (permuting the ``m`` coordinates).

    ``auto`` runs Burnside and, when small enough, direct enumeration, and
    checks that the two agree.
    """
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    N = R.order
    if method == "burnside":
        return OrbitReport(R, m, n, burnside_orbits(N, m, n), "burnside")
    if method == "canonical-enumeration":
        c = enumerate_orbits(N, m, n)
        return OrbitReport(R, m, n, c, method, c)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    b = burnside_orbits(N, m, n)
    if N ** (m * n) > ORBIT_ENUM_LIMIT:
        return OrbitReport(R, m, n, b, "burnside")
    c = enumerate_orbits(N, m, n)
    if b != c:
        raise AssertionError(f"Burnside {b} != enumeration {c}")
    return OrbitReport(R, m, n, b, "both", c)


# -- null factors --------------------------------------------------------------------

@dataclass(frozen=True)
class CensusRow:
    name: str
    is_null: bool
    witness: RingElement | None     # some s whose annihilator is not everything


@dataclass(frozen=True)
class CensusReport:
    rows: tuple

    @property
    def non_null(self) -> int:
        return sum(not r.is_null for r in self.rows)


def null_factor_census(factors) -> CensusReport:
    rows = []
    for R in factors:
        null = nil_report(R).is_null
        witness = None
        if not null:
            witness = next(x for x in R.elements() if not annihilator(x).is_whole())
        elif R.order > 1 and not R.is_null:
            raise AssertionError("nil report and multiplication disagree on nullity")
        rows.append(CensusRow(R.name, null, witness))
    return CensusReport(tuple(rows))
