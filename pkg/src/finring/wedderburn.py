"""Decomposition of finite semisimple rings into matrix rings over finite
fields, and the polynomial bounds on such factors.

A finite semisimple ring ``R`` is unital and ``R -> prod R/m`` over its
maximal ideals ``m`` is an isomorphism.  Each simple quotient is recognised
as ``M_k(F_q)`` from a minimal left ideal ``L``: ``F_q = End(L)`` and ``k``
is the dimension of ``L`` over it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .errors import NotSemisimple, NotSimple, NotUnital
from .fields import irreducible_poly, matrix_index, matrix_ring
from .lattice import fp_nullspace, fp_rank, fp_rref, fp_solve
from .ntheory import is_prime, prime_power
from .radical import jacobson_radical, maximal_ideals
from .ring import (
    AdditiveSubgroup,
    FiniteRing,
    RingElement,
    as_rows,
    RingHom,
    build_ring,
    product,
    quotient,
)
from .verdict import PASS, Verdict, failed


# -- simple rings ----------------------------------------------------------------

def maximal_two_sided_quotients(R: FiniteRing) -> list[tuple[AdditiveSubgroup, FiniteRing, RingHom]]:
    """``(m, R/m, projection)`` for every maximal two-sided ideal ``m``."""
    if not R.is_unital:
        raise NotUnital(f"{R.name or 'ring'} has no identity; unitalize it first")
    out = []
    for m in maximal_ideals(R):
        Q, pi = quotient(R, m)
        out.append((m, Q, pi))
    return out


def _is_simple(S: FiniteRing) -> bool:
    if S.order == 1:
        return False
    maxes = maximal_ideals(S)
    return len(maxes) == 1 and maxes[0].is_zero()


def _mat_pow(A: np.ndarray, n: int, p: int) -> np.ndarray:
    out = np.eye(len(A), dtype=np.int64)
    for _ in range(n):
        out = (out @ A) % p
    return out


def recognize_matrix_ring(S: FiniteRing) -> tuple[int, int, RingHom]:
    """``(k, q, iso)`` with ``iso: S -> M_k(F_q)`` certified bijective."""
    if S.order > 1 and not S.is_unital:
        raise NotUnital(f"{S.name or 'ring'} has no identity")
    if not _is_simple(S):
        raise NotSimple(f"{S.name or 'ring'} has a proper nonzero ideal")
    p = S.characteristic
    assert is_prime(p) and all(d == p for d in S.moduli)
    r = S.r
    E = np.eye(r, dtype=np.int64)

    # a minimal left ideal: a principal one S x of least nonzero dimension
    best = None
    for x in S.vectors()[1:]:
        M = S.mul_many(E, x)
        rk = fp_rank(M, p)
        if rk and (best is None or rk < best[0]):
            best = (rk, M)
    d = best[0]
    A, piv = fp_rref(best[1], p)
    B = A[:d]                                   # F_p basis of L, reduced echelon

    # left action of each generator on L: coords(e_a v) = coords(v) @ act[a]
    act = [S.mul_many(E[a], B)[:, piv] % p for a in range(r)]

    # End_S(L): matrices Phi (acting on the right) commuting with every act[a]
    Id = np.eye(d, dtype=np.int64)
    cons = np.vstack([np.kron(Aa, Id) - np.kron(Id, Aa.T) for Aa in act]) % p
    D = fp_nullspace(cons, p).reshape(-1, d, d)
    f = len(D)
    q = p ** f
    k, rem = divmod(d, f)
    if rem or q ** (k * k) != S.order:
        raise AssertionError(f"dimension count failed: d={d}, f={f}, |S|={S.order}")

    # End_S(L) is a field: commutative, every nonzero element invertible
    for X in D:
        for Y in D:
            if ((X @ Y - Y @ X) % p).any():
                raise AssertionError("endomorphism ring is not commutative")
    poly = irreducible_poly(p, f)
    root = None
    for code in range(1, q):
        c = [(code // p ** i) % p for i in range(f)]
        X = np.tensordot(c, D, axes=1) % p
        if fp_rank(X, p) != d:
            raise AssertionError("endomorphism ring has zero divisors")
        if root is None:
            val = sum(a * _mat_pow(X, i, p) for i, a in enumerate(poly)) % p
            if not val.any():
                root = X
    if f == 1:
        root = np.zeros((d, d), dtype=np.int64) if root is None else root
    powers = [_mat_pow(root, c, p) for c in range(f)]

    # an F_q-basis u_1..u_k of L, and the F_p basis {u_i t^c} it induces
    U, W = [], np.zeros((0, d), dtype=np.int64)
    for j in range(d):
        u = Id[j]
        cand = np.vstack([W] + [(u @ P) % p for P in powers])
        if fp_rank(cand, p) == len(W) + f:
            U.append(u)
            W = cand
    assert len(U) == k

    # matrix of e_a in the basis U: e_a u_j = sum_i u_i * M_ij
    images = np.zeros((r, k * k * f), dtype=np.int64)
    for a in range(r):
        for j, u in enumerate(U):
            alpha = fp_solve(W.T, (u @ act[a]) % p, p)
            for i in range(k):
                for c in range(f):
                    images[a, matrix_index(k, q, i, j, c)] = alpha[i * f + c]
    iso = RingHom(S, matrix_ring(k, q), images, name="recognize")
    if not (iso.is_hom and iso.is_bijective):
        raise AssertionError("recognised map is not an isomorphism")
    return k, q, iso


# -- decompositions -------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """Factors ``(k, q, multiplicity)`` sorted by ``(q, k)``; ``iso`` maps the
    source ring onto :func:`rebuild` of the factors."""

    factors: tuple
    iso: RingHom | None = None

    def __post_init__(self):
        object.__setattr__(self, "factors", canonical_factors(self.factors))

    def serialize(self) -> str:
        return "[" + ", ".join(f"({k},{q})^{m}" for k, q, m in self.factors) + "]"

    __str__ = serialize

    @property
    def order(self) -> int:
        out = 1
        for k, q, m in self.factors:
            out *= q ** (k * k * m)
        return out

    @classmethod
    def parse(cls, text: str) -> "Decomposition":
        items = re.findall(r"\((\d+),(\d+)\)\^(\d+)", text.replace(" ", ""))
        return cls(tuple((int(k), int(q), int(m)) for k, q, m in items))


def canonical_factors(factors) -> tuple:
    """Merge equal ``(k, q)`` classes and sort by ``(q, k)``."""
    counts: dict = {}
    for k, q, m in factors:
        if m < 0 or k < 1 or prime_power(q) is None:
            raise ValueError(f"bad factor {(k, q, m)}")
        if m:
            counts[(k, q)] = counts.get((k, q), 0) + m
    return tuple((k, q, counts[(k, q)]) for k, q in sorted(counts, key=lambda kq: (kq[1], kq[0])))


def rebuild(d) -> FiniteRing:
    """Product of ``M_k(F_q)`` with multiplicities (a Decomposition or a
    factor list); the empty list gives the zero ring."""
    factors = d.factors if isinstance(d, Decomposition) else canonical_factors(d)
    blocks = [matrix_ring(k, q) for k, q, m in factors for _ in range(m)]
    if not blocks:
        return build_ring([], [], "0")
    if len(blocks) == 1:
        return blocks[0]
    return product(blocks)[0]


def decompose_semisimple(R: FiniteRing) -> Decomposition:
    """Wedderburn decomposition with a certified isomorphism onto
    :func:`rebuild` of the factors."""
    J = jacobson_radical(R)
    if not J.is_zero():
        witness = next(x for x in J.elements() if x)
        raise NotSemisimple(witness)
    if R.order == 1:
        target = rebuild(())
        return Decomposition((), RingHom(R, target, np.zeros((R.r, 0), dtype=np.int64)))
    # finite rings with zero radical always have an identity
    if not R.is_unital:
        raise NotUnital("semisimple ring without identity")
    parts = []
    for pos, (m, Q, pi) in enumerate(maximal_two_sided_quotients(R)):
        k, q, rec = recognize_matrix_ring(Q)
        parts.append(((q, k, pos), rec.compose(pi)))
    parts.sort(key=lambda t: t[0])
    dec = Decomposition(tuple((k, q, 1) for (q, k, _), _ in parts))
    target = rebuild(dec)
    images = np.hstack([h.images for _, h in parts])
    iso = RingHom(R, target, images, name="wedderburn")
    if not (iso.is_hom and iso.is_bijective):
        raise AssertionError("diagonal map is not an isomorphism")
    return Decomposition(dec.factors, iso)


def scramble(R: FiniteRing, seed: int = 0) -> tuple[FiniteRing, RingHom]:
    """An isomorphic copy of ``R`` in a random basis, with the isomorphism
    copy -> R.  All moduli must be prime."""
    if not all(is_prime(d) for d in R.moduli):
        raise ValueError("scramble needs prime moduli")
    rng = np.random.default_rng(seed)
    r = R.r
    order = sorted(range(r), key=lambda i: (R.moduli[i], rng.random()))
    P = np.zeros((r, r), dtype=np.int64)          # row i: new generator f_i in old coords
    Pinv_cols = {}
    start = 0
    while start < r:
        p = R.moduli[order[start]]
        end = start
        while end < r and R.moduli[order[end]] == p:
            end += 1
        idx = order[start:end]
        n = len(idx)
        while True:
            M = rng.integers(0, p, size=(n, n))
            if fp_rank(M, p) == n:
                break
        for a in range(n):
            P[start + a, idx] = M[a]
        for i in idx:
            Pinv_cols[i] = (p, start, end)
        start = end
    moduli = [R.moduli[order[i]] for i in range(r)]

    def coords(v):
        out = np.zeros(r, dtype=np.int64)
        done = set()
        for i, (p, s, e) in Pinv_cols.items():
            if (s, e) in done:
                continue
            done.add((s, e))
            out[s:e] = fp_solve(P[s:e][:, order[s:e]].T, v[order[s:e]], p)
        return out

    sc = np.zeros((r, r, r), dtype=np.int64)
    prods = R.mul_many(np.repeat(P, r, axis=0), np.tile(P, (r, 1)))
    for n, v in enumerate(prods):
        sc[n // r, n % r] = coords(v)
    S = build_ring(moduli, sc, f"{R.name}~{seed}")
    iso = RingHom(S, R, P)
    assert iso.is_hom and iso.is_bijective
    return S, iso


# -- the polynomial w_m and size bounds ---------------------------------------------

def w_poly_degree(m: int) -> int:
    """Degree of ``prod_{0<i<j<=m} (x^i - x^j)``."""
    if m < 2:
        raise ValueError("m must be >= 2")
    return sum(j * (j - 1) for j in range(2, m + 1))


def jordan_exponent(m: int) -> int:
    """``m(m-1)(m+1)/6 = sum_{i<m} i(m-i)``: the power of a nilpotent ``x``
    that ``w_m(x)`` equals up to a unit."""
    return m * (m - 1) * (m + 1) // 6


def _powers(x: RingElement, n: int) -> list[RingElement]:
    out = [x]
    for _ in range(n - 1):
        out.append(out[-1] * x)
    return out


def w_poly(m: int, x: RingElement) -> RingElement:
    """``w_m(x)`` evaluated in the ring of ``x``."""
    if m < 2:
        raise ValueError("m must be >= 2")
    pw = _powers(x, m)
    out = None
    for j in range(2, m + 1):
        for i in range(1, j):
            term = pw[i - 1] - pw[j - 1]
            out = term if out is None else out * term
    return out


def w_poly_many(m: int, R: FiniteRing, X) -> np.ndarray:
    """``w_m`` on every row of ``X`` (batched)."""
    X = as_rows(X, R.r)
    pw = [X]
    for _ in range(m - 1):
        pw.append(R.mul_many(pw[-1], X))
    out = None
    for j in range(2, m + 1):
        for i in range(1, j):
            term = (pw[i - 1] - pw[j - 1]) % R._d
            out = term if out is None else R.mul_many(out, term)
    return out


@dataclass(frozen=True)
class BoundReport:
    m: int
    s: int
    k_bound: int
    f_bound: int
    w_degree: int
    k_index_branch: int      # largest k with 2^(k^2) <= s
    k_poly_branch: int       # m(m-1)(m+1)/6


def _index_branch(s: int) -> int:
    # floor(sqrt(log2 s)) computed exactly: largest k with 2^(k*k) <= s
    k = isqrt(max(s.bit_length() - 1, 0))
    while 2 ** ((k + 1) ** 2) <= s:
        k += 1
    while k and 2 ** (k * k) > s:
        k -= 1
    return k


def size_bounds(m: int, s: int) -> BoundReport:
    """Bounds on ``k`` and ``|F|`` for a quotient ``M_k(F)`` of a ring with
    an ideal of index ``s`` whose coset lies in the zero set of ``w_m``."""
    if m < 2 or s < 1:
        raise ValueError("need m >= 2 and s >= 1")
    kb_index = _index_branch(s)
    kb_poly = jordan_exponent(m)
    deg = w_poly_degree(m)
    return BoundReport(m, s, max(kb_index, kb_poly), max(s, deg), deg, kb_index, kb_poly)


def jordan_block(k: int, q: int) -> RingElement:
    """The ``k x k`` matrix with ones right above the diagonal."""
    M = matrix_ring(k, q)
    v = [0] * M.r
    for a in range(k - 1):
        v[matrix_index(k, q, a, a + 1)] = 1
    return M.element(v)


def jordan_witness(m: int, k: int, q: int):
    """Evaluate ``w_m`` at the nilpotent Jordan block of ``M_k(F_q)``.

    Passes when the value is nonzero or ``k`` is within
    ``m(m-1)(m+1)/6`` (where vanishing is allowed); ``witness`` is the value.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    val = w_poly(m, jordan_block(k, q))
    state = "nonzero" if val else "zero"
    if not val and k > jordan_exponent(m):
        return failed(f"w_{m}(N_{k}) = 0 over F_{q} although k > {jordan_exponent(m)}", val)
    return Verdict(PASS, state, val)


def vanishes_on(m: int, R: FiniteRing) -> bool:
    """Does ``w_m`` vanish on every element of ``R``?"""
    return not w_poly_many(m, R, R.vectors()).any()
