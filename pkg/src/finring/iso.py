"""Isomorphism and automorphism search by generator-image backtracking.

A ring generating tuple ``g_1..g_t`` of the source is fixed once.  For each
prefix we record a presentation of the subring it generates: a basis of
monomials in the generators plus the relations they satisfy.  A candidate
assignment of images extends to a homomorphism on that subring exactly when
the image monomials satisfy the same relations, which prunes every level of
the search tree, not just the leaves.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .errors import SearchBudgetExceeded
from .lattice import Lattice
from .ring import (
    FiniteRing,
    RingHom,
    element_signature,
    fingerprint,
    subring_generated,
)

DEFAULT_BUDGET = 200_000


def _signatures(R: FiniteRing) -> list[tuple]:
    cache = R.__dict__.setdefault("_sig_cache", {})
    if "all" not in cache:
        cache["all"] = [element_signature(R, v) for v in R.vectors()]
    return cache["all"]


class Presentation:
    """Monomial basis and relations of the subring generated by ``gens``.

    Words are stored as ``(parent, g)``: the word ``parent * g_g``
    (``parent == -1`` for a single generator).  Each relation is a sparse
    integer combination of words that vanishes in the source ring.
    """

    def __init__(self, R: FiniteRing, gens):
        self.ring = R
        self.t = len(gens)
        self.words: list[tuple[int, int]] = []
        self.values: list[tuple[int, ...]] = []
        self.basis: list[int] = []
        self.relations: list[dict[int, int]] = []
        lat = Lattice(R.moduli, track=True)
        queue = deque((-1, g) for g in range(self.t))
        while queue:
            parent, g = queue.popleft()
            val = tuple(gens[g]) if parent < 0 else R.mul_vec(self.values[parent], gens[g])
            w = len(self.words)
            self.words.append((parent, g))
            self.values.append(val)
            c = lat.express(val)
            if c is not None:
                rel = {b: -x for b, x in c.items()}
                rel[w] = rel.get(w, 0) + 1
                self.relations.append(rel)
                continue
            # order of val modulo the current span, with the witness combination
            n, mult = 1, list(val)
            while True:
                n += 1
                mult = [(a + b) % d for a, b, d in zip(mult, val, R.moduli)]
                c = lat.express(mult)
                if c is not None:
                    break
            rel = {b: -x for b, x in c.items()}
            rel[w] = n
            self.relations.append(rel)
            lat.insert(val, label=w)
            self.basis.append(w)
            for h in range(self.t):
                queue.append((w, h))
        self.lattice = lat
        self.order = lat.order()

    def image_values(self, S: FiniteRing, images) -> list[np.ndarray]:
        out = []
        for parent, g in self.words:
            if parent < 0:
                out.append(np.asarray(images[g], dtype=np.int64))
            else:
                out.append(S.mul_many(out[parent], images[g])[0])
        return out

    def holds_in(self, S: FiniteRing, vals) -> bool:
        for rel in self.relations:
            acc = np.zeros(S.r, dtype=np.int64)
            for w, c in rel.items():
                acc += c * vals[w]
            if (acc % S._d).any():
                return False
        return True

    def extend(self, S: FiniteRing, vals) -> np.ndarray:
        """Images of the source's additive generators (requires the
        generators to generate the whole source ring)."""
        R = self.ring
        rows = []
        for i in range(R.r):
            e = [int(i == j) for j in range(R.r)]
            c = self.lattice.express(e)
            acc = np.zeros(S.r, dtype=np.int64)
            for w, x in c.items():
                acc += x * vals[w]
            rows.append(acc % S._d)
        return np.array(rows, dtype=np.int64).reshape(R.r, S.r)


def generating_tuple(R: FiniteRing) -> list[tuple[int, ...]]:
    """Greedy small ring-generating tuple: each step adds the element that
    enlarges the generated subring most, preferring rare signatures."""
    if R.r == 0:
        return []
    sigs = _signatures(R)
    counts: dict = {}
    for s in sigs:
        counts[s] = counts.get(s, 0) + 1
    elements = R.elements()
    chosen: list = []
    current = 1
    while current < R.order:
        best = None
        for k, x in enumerate(elements):
            size = subring_generated(chosen + [x]).order
            key = (-size, counts[sigs[k]], k)
            if best is None or key < best[0]:
                best = (key, x)
        chosen.append(best[1])
        current = -best[0][0]
    return [x.coeffs for x in chosen]


def _search(R: FiniteRing, S: FiniteRing, budget: int, find_all: bool):
    if R.order != S.order:
        return []
    if R.r == 0 or S.r == 0:
        if R.order == S.order == 1:
            return [RingHom(R, S, np.zeros((R.r, S.r), dtype=np.int64))]
        return []
    gens = generating_tuple(R)
    t = len(gens)
    pres = [Presentation(R, gens[:i + 1]) for i in range(t)]
    sig_R = _signatures(R)
    sig_S = _signatures(S)
    want = [sig_R[int(R.index_of(g)[0])] for g in gens]
    SX = S.vectors()
    cands = [[SX[k] for k, s in enumerate(sig_S) if s == w] for w in want]
    found: list[RingHom] = []
    nodes = 0

    def rec(i: int, images: list) -> bool:
        nonlocal nodes
        for c in cands[i]:
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"isomorphism search exceeded {budget} nodes")
            imgs = images + [c]
            p = pres[i]
            vals = p.image_values(S, imgs)
            if not p.holds_in(S, vals):
                continue
            if S.span([vals[w] for w in p.basis]).order != p.order:
                continue
            if i + 1 < t:
                if rec(i + 1, imgs) and not find_all:
                    return True
                continue
            f = RingHom(R, S, p.extend(S, vals))
            if f.is_hom and f.is_bijective:
                found.append(f)
                if not find_all:
                    return True
        return False

    rec(0, [])
    return found


def is_isomorphic(R: FiniteRing, S: FiniteRing, budget: int = DEFAULT_BUDGET) -> RingHom | None:
    """A certified isomorphism ``R -> S`` or ``None``.

    Raises :class:`SearchBudgetExceeded` when the node cap is hit, which is
    distinct from a negative answer.
    """
    if fingerprint(R) != fingerprint(S):
        return None
    found = _search(R, S, budget, find_all=False)
    return found[0] if found else None


def automorphisms(R: FiniteRing, budget: int = DEFAULT_BUDGET) -> list[RingHom]:
    """All ring automorphisms, sorted by their generator images."""
    found = _search(R, R, budget, find_all=True)
    return sorted(found, key=lambda f: f.images.ravel().tolist())
