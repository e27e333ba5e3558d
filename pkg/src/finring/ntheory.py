"""Small integer helpers (inputs here never exceed a few thousand)."""

from math import gcd


def factorint(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorint(n) == {n: 1}


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, e)`` with ``q == p**e``, or ``None``."""
    if q < 2:
        return None
    f = factorint(q)
    if len(f) != 1:
        return None
    return next(iter(f.items()))


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def big_omega(n: int) -> int:
    """Number of prime factors of ``n`` counted with multiplicity."""
    return sum(factorint(n).values()) if n > 1 else 0
