"""Finite fields, matrix rings over them and a few other standard rings.

``F_q`` with ``q = p^e`` is ``F_p[t]/(f)`` for the smallest monic
irreducible ``f`` of degree ``e`` (coefficient tuples compared as base-``p``
numbers, constant term least significant).  ``M_k(F_q)`` has additive
generators ``E_ab * t^c`` numbered ``(a*k + b)*e + c``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .errors import NotPrime, NotPrimePower
from .ntheory import is_prime, prime_power
from .ring import FiniteRing, build_ring


# -- polynomials over F_p as coefficient lists, constant term first -----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, f, p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``f``."""
    a = _trim([x % p for x in a])
    n = len(f) - 1
    while len(a) > n:
        c = a[-1]
        shift = len(a) - 1 - n
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _monic(p: int, deg: int, code: int) -> list[int]:
    return [(code // p ** i) % p for i in range(deg)] + [1]


@lru_cache(maxsize=None)
def irreducible_poly(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree ``e`` over ``F_p``."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    for code in range(p ** e):
        f = _monic(p, e, code)
        if e > 1 and f[0] == 0:
            continue
        if all(poly_mod(f, _monic(p, d, c), p)
               for d in range(1, e // 2 + 1) for c in range(p ** d)):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


def _field_params(q: int) -> tuple[int, int, tuple[int, ...]]:
    pe = prime_power(q)
    if pe is None:
        raise NotPrimePower(f"{q} is not a prime power")
    p, e = pe
    return p, e, irreducible_poly(p, e)


def _tpowers(p: int, e: int, f) -> np.ndarray:
    """``t^m mod f`` for ``m < 2e - 1`` as rows of length ``e``."""
    out = np.zeros((2 * e - 1, e), dtype=np.int64)
    for m in range(2 * e - 1):
        r = poly_mod([0] * m + [1], f, p)
        out[m, :len(r)] = r
    return out


# -- rings ------------------------------------------------------------------------

def matrix_ring(k: int, q: int) -> FiniteRing:
    """``M_k(F_q)``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    p, e, f = _field_params(q)
    T = _tpowers(p, e, f)
    n = k * k * e
    sc = np.zeros((n, n, n), dtype=np.int64)
    for a, b, c in itertools.product(range(k), range(k), range(e)):
        i = (a * k + b) * e + c
        for b2, c2 in itertools.product(range(k), range(e)):
            j = (b * k + b2) * e + c2
            base = (a * k + b2) * e
            sc[i, j, base:base + e] = T[c + c2]
    name = f"F{q}" if k == 1 else f"M{k}(F{q})"
    return FiniteRing([p] * n, sc, name)


def finite_field(q: int) -> FiniteRing:
    return matrix_ring(1, q)


def matrix_index(k: int, q: int, a: int, b: int, c: int = 0) -> int:
    """Generator number of ``E_ab * t^c`` in :func:`matrix_ring`."""
    e = _field_params(q)[1]
    return (a * k + b) * e + c


def field_element_matrix(k: int, q: int, coeffs) -> np.ndarray:
    """Coordinates of the scalar matrix ``g(t) * I_k`` in ``M_k(F_q)``."""
    p, e, _ = _field_params(q)
    v = np.zeros(k * k * e, dtype=np.int64)
    for a in range(k):
        v[(a * k + a) * e:(a * k + a) * e + e] = np.asarray(coeffs, dtype=np.int64) % p
    return v


def zmod(n: int) -> FiniteRing:
    return build_ring([n], [[[1 % n]]], f"Z{n}")


def null_ring(moduli) -> FiniteRing:
    r = len(moduli)
    label = "x".join(map(str, moduli))
    return build_ring(list(moduli), np.zeros((r, r, r), dtype=np.int64), f"null{label}")


def upper_triangular(k: int, p: int) -> FiniteRing:
    """Upper triangular ``k x k`` matrices over ``F_p``."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    cells = [(a, b) for a in range(k) for b in range(a, k)]
    pos = {c: i for i, c in enumerate(cells)}
    n = len(cells)
    sc = np.zeros((n, n, n), dtype=np.int64)
    for (a, b), i in pos.items():
        for (b2, c), j in pos.items():
            if b == b2:
                sc[i, j, pos[(a, c)]] = 1
    return build_ring([p] * n, sc, f"UT{k}(F{p})")


def truncated_poly(n: int, deg: int) -> FiniteRing:
    """``Z/n[x]/(x^deg)`` with basis ``1, x, ..., x^(deg-1)``."""
    sc = np.zeros((deg, deg, deg), dtype=np.int64)
    for i in range(deg):
        for j in range(deg - i):
            sc[i, j, i + j] = 1 % n
    return build_ring([n] * deg, sc, f"Z{n}[x]/x^{deg}")
