"""Finite truncations of profinite rings.

The free commutative nil ring of nilexponent ``p`` and characteristic ``p``
on generators ``x_0, x_1, ...`` is the limit of its quotients by the ideals
generated by ``x_n, x_{n+1}, ...``; level ``n`` of the tower is
:func:`free_nil_ring` ``(p, n)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BadDegree, ConstantTerm, NotPrime, ZeroPolynomial
from .ntheory import is_prime
from .radical import jacobson_radical, nil_report
from .ring import FiniteRing, RingElement, RingHom
from .verdict import Verdict, failed, passed


def monomials(p: int, n: int) -> list[tuple[int, ...]]:
    """Exponent vectors with entries ``< p`` and degree ``>= 1``, ordered by
    degree and then with higher powers of earlier variables first."""
    exps = [e for e in itertools.product(range(p), repeat=n) if any(e)]
    return sorted(exps, key=lambda e: (sum(e), [-a for a in e]))


@lru_cache(maxsize=None)
def free_nil_ring(p: int, n: int) -> FiniteRing:
    """``x_0..x_{n-1}`` commuting, ``x_i^p = 0``, no identity, over ``F_p``."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError("need at least one generator")
    basis = monomials(p, n)
    pos = {e: i for i, e in enumerate(basis)}
    r = len(basis)
    sc = np.zeros((r, r, r), dtype=np.int64)
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            c = tuple(x + y for x, y in zip(a, b))
            if max(c) < p:
                sc[i, j, pos[c]] = 1
    # associativity and commutativity hold by construction
    return FiniteRing([p] * r, sc, f"freenil_p{p}_g{n}", check=False)


def generator(p: int, n: int, i: int) -> RingElement:
    """``x_i`` in ``free_nil_ring(p, n)``."""
    R = free_nil_ring(p, n)
    e = tuple(int(j == i) for j in range(n))
    return R.gen(monomials(p, n).index(e))


@dataclass(frozen=True)
class InverseSystem:
    """``levels[0] <- levels[1] <- ...``; ``maps[i]`` goes from
    ``levels[i+1]`` onto ``levels[i]``."""

    levels: tuple
    maps: tuple
    free_nil: bool = False

    def __post_init__(self):
        if len(self.maps) != max(len(self.levels) - 1, 0):
            raise ValueError("need one connecting map per consecutive pair of levels")
        for i, f in enumerate(self.maps):
            if f.source != self.levels[i + 1] or f.target != self.levels[i]:
                raise ValueError(f"map {i} does not connect level {i + 1} to level {i}")

    def project(self, x: RingElement, level: int) -> RingElement:
        """Image of an element of the top level at a lower level."""
        for i in range(len(self.levels) - 2, level - 1, -1):
            x = self.maps[i](x)
        return x


def connecting_map(p: int, n: int) -> RingHom:
    """``free_nil(p, n+1) -> free_nil(p, n)`` killing ``x_n``."""
    src, tgt = free_nil_ring(p, n + 1), free_nil_ring(p, n)
    pos = {e: i for i, e in enumerate(monomials(p, n))}
    images = np.zeros((src.r, tgt.r), dtype=np.int64)
    for i, e in enumerate(monomials(p, n + 1)):
        if e[n] == 0:
            images[i, pos[e[:n]]] = 1
    return RingHom(src, tgt, images, name=f"kill x_{n}")


def free_nil_system(p: int, N: int) -> InverseSystem:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if N < 1:
        raise ValueError("N must be >= 1")
    levels = tuple(free_nil_ring(p, n) for n in range(1, N + 1))
    maps = tuple(connecting_map(p, n) for n in range(1, N))
    return InverseSystem(levels, maps, free_nil=True)


def check_system(sys: InverseSystem) -> Verdict:
    """Connecting maps are surjective homomorphisms and nil invariants move
    the right way up the tower (never decrease; for free nil towers the
    nilexponent is constant and the class strictly increases)."""
    for i, f in enumerate(sys.maps):
        cert = f.certificate()
        if not f.is_hom:
            return failed(f"map {i} is not a homomorphism", cert)
        if not f.is_surjective:
            return failed(f"map {i} is not surjective", cert)
    reps = [nil_report(R) for R in sys.levels]
    for i in range(len(reps) - 1):
        lo, hi = reps[i], reps[i + 1]
        if lo.is_nilpotent and hi.is_nilpotent:
            if hi.nilpotency_class < lo.nilpotency_class:
                return failed(f"class drops between levels {i} and {i + 1}", (lo, hi))
            if sys.free_nil and hi.nilpotency_class == lo.nilpotency_class:
                return failed(f"class not strictly increasing at level {i + 1}", (lo, hi))
        if lo.is_nil and hi.is_nil:
            if hi.nilexponent < lo.nilexponent:
                return failed(f"nilexponent drops between levels {i} and {i + 1}", (lo, hi))
            if sys.free_nil and hi.nilexponent != lo.nilexponent:
                return failed(f"nilexponent changes at level {i + 1}", (lo, hi))
    return passed(f"{len(sys.maps)} maps, {len(sys.levels)} levels")


# -- polynomials at the free generators -----------------------------------------------

def _normalize_poly(p: int, n: int, f) -> dict:
    """``{exponent tuple: coefficient mod p}`` without zero terms."""
    items = f.items() if isinstance(f, dict) else f
    out: dict = {}
    for e, c in items:
        e = tuple(int(a) for a in e)
        if len(e) != n or min(e) < 0:
            raise BadDegree(f"monomial {e} does not have {n} nonnegative exponents")
        out[e] = (out.get(e, 0) + int(c)) % p
    return {e: c for e, c in out.items() if c}


@lru_cache(maxsize=None)
def _monomial_values(p: int, n: int) -> dict:
    """Values of all reduced monomials, computed by multiplying generators."""
    R = free_nil_ring(p, n)
    x = [generator(p, n, i) for i in range(n)]
    vals = {}
    for e in itertools.product(range(p), repeat=n):
        if not any(e):
            continue
        acc = None
        for i, a in enumerate(e):
            for _ in range(a):
                acc = x[i] if acc is None else acc * x[i]
        vals[e] = np.array(acc.coeffs, dtype=np.int64)
    return vals


def evaluate_at_generators(p: int, n: int, f) -> RingElement:
    R = free_nil_ring(p, n)
    terms = _normalize_poly(p, n, f)
    vals = _monomial_values(p, n)
    acc = np.zeros(R.r, dtype=np.int64)
    for e, c in terms.items():
        if any(e) and max(e) < p:         # x_i^p = 0 kills the rest
            acc += c * vals[e]
    return R.element(acc % p)


def generic_poly_nonvanishing(p: int, n: int, f) -> Verdict:
    """A nonzero polynomial with partial degrees ``< p`` and no constant term
    does not vanish at ``x_0..x_{n-1}`` in ``free_nil_ring(p, n)``.

    ``f`` maps exponent tuples to coefficients (a dict or pairs).
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    terms = _normalize_poly(p, n, f)
    if not terms:
        raise ZeroPolynomial("polynomial is zero mod p")
    for e in terms:
        if max(e) >= p:
            raise BadDegree(f"monomial {e} has a partial degree >= {p}")
    if tuple([0] * n) in terms:
        raise ConstantTerm("constant terms cannot be evaluated in a ring without identity")
    val = evaluate_at_generators(p, n, terms)
    if val:
        return passed(f"{len(terms)} terms")
    return failed("reduced polynomial vanishes at the free generators", terms)


# -- the tower report ------------------------------------------------------------------

@dataclass(frozen=True)
class ShadowRow:
    level: int
    order: int
    nilexponent: int | None
    nilpotency_class: int | None
    radical_is_whole: bool


@dataclass(frozen=True)
class TowerReport:
    p: int
    rows: tuple

    @property
    def nilexponents(self) -> tuple:
        return tuple(r.nilexponent for r in self.rows)

    @property
    def classes(self) -> tuple:
        return tuple(r.nilpotency_class for r in self.rows)

    def verdict(self) -> Verdict:
        p = self.p
        for r in self.rows:
            if not r.radical_is_whole:
                return failed(f"J(level {r.level}) is not the whole ring", r)
            if r.nilexponent != p:
                return failed(f"nilexponent {r.nilexponent} != {p} at level {r.level}", r)
            if r.nilpotency_class != r.level * (p - 1) + 1:
                return failed(f"class {r.nilpotency_class} != n(p-1)+1 at level {r.level}", r)
        cls = self.classes
        if any(b <= a for a, b in zip(cls, cls[1:])):
            return failed("classes are not strictly increasing", cls)
        return passed(f"nilexponents {self.nilexponents}, classes {cls}")

    def table(self) -> str:
        lines = ["level order nilexponent class"]
        for r in self.rows:
            lines.append(f"{r.level} {r.order} {r.nilexponent} {r.nilpotency_class}")
        return "\n".join(lines)


def theorem2_shadow(p: int, N: int) -> TowerReport:
    """Per level of the free nil tower: order, nilexponent, class and
    whether the radical is everything."""
    sys = free_nil_system(p, N)
    rows = []
    for n, R in enumerate(sys.levels, start=1):
        rep = nil_report(R)
        rows.append(ShadowRow(n, R.order, rep.nilexponent, rep.nilpotency_class,
                              jacobson_radical(R).is_whole()))
    return TowerReport(p, tuple(rows))
