"""Finite associative rings given by additive structure constants.

The additive group of a ring is ``Z/d_1 x ... x Z/d_r`` with generators
``e_1..e_r``; multiplication is fixed by ``e_i * e_j = sum_k c[i][j][k] e_k``.
Rings need not be unital or commutative.  Rings of order up to
:data:`TABLE_LIMIT` additionally get full addition/multiplication tables
indexed by element number, which the exhaustive scans use.
"""

from __future__ import annotations

import itertools
from collections import Counter
from functools import cached_property
from math import gcd, prod

import numpy as np

from .errors import (
    BadCharacteristic,
    BadShape,
    BudgetExceeded,
    InconsistentConstant,
    NonAssociative,
    NotTwoSidedIdeal,
    RingMismatch,
    UnreducedConstant,
)
from .lattice import Lattice, kernel, smith_normal_form
from .ntheory import big_omega, factorint, lcm

TABLE_LIMIT = 1024
ENUM_LIMIT = 1 << 16

MAX_ORDER = 1 << 63          # elements are indexed by int64 mixed-radix codes

KINDS = ("subgroup", "left-ideal", "right-ideal", "two-sided-ideal", "subring")


def as_rows(X, r: int, dtype=np.int64) -> np.ndarray:
    """View ``X`` as an ``(N, r)`` array; works for ``r == 0`` too."""
    A = np.asarray(X, dtype=dtype)
    if r == 0:
        return A.reshape(A.shape[0] if A.ndim == 2 else 1, 0)
    return A.reshape(-1, r)


class FiniteRing:
    """A finite associative ring.

    ``moduli`` are the cyclic factors of the additive group and ``sc`` the
    ``r x r x r`` array of structure constants.  Validation (shape, reduced
    constants, bilinear consistency, associativity on generator triples)
    runs unless ``check=False``.
    """

    def __init__(self, moduli, sc, name: str = "", *, check: bool = True):
        moduli = tuple(int(d) for d in moduli)
        r = len(moduli)
        C = np.asarray(sc, dtype=np.int64) if r else np.zeros((0, 0, 0), dtype=np.int64)
        if C.shape != (r, r, r):
            raise BadShape(f"structure constants have shape {C.shape}, expected {(r, r, r)}")
        if any(d < 2 for d in moduli):
            raise BadShape(f"moduli must be >= 2, got {list(moduli)}")
        self.moduli = moduli
        self.sc = C
        self.sc.setflags(write=False)
        self.name = name
        self.r = r
        self.order = prod(moduli)
        if self.order >= MAX_ORDER:
            raise BadShape(f"ring order {self.order} exceeds the supported limit 2^63")
        self._d = np.array(moduli, dtype=np.int64)
        strides = [1] * r
        for i in range(r - 2, -1, -1):
            strides[i] = strides[i + 1] * moduli[i + 1]
        self._strides = np.array(strides, dtype=np.int64)
        self._C2 = C.reshape(r, r * r)
        if check:
            self._validate()

    def _validate(self) -> None:
        C, d, r = self.sc, self._d, self.r
        if r == 0:
            return
        if (C < 0).any() or (C >= d[None, None, :]).any():
            i, j, k = map(int, np.argwhere((C < 0) | (C >= d[None, None, :]))[0])
            raise UnreducedConstant(f"c[{i}][{j}][{k}] = {C[i, j, k]} not reduced mod {d[k]}")
        left = (C * d[:, None, None]) % d[None, None, :]
        right = (C * d[None, :, None]) % d[None, None, :]
        bad = np.argwhere((left != 0) | (right != 0))
        if len(bad):
            i, j, k = map(int, bad[0])
            raise InconsistentConstant(
                f"e_{i}*e_{j} has coordinate {C[i, j, k]} at {k}, not killed by d_{i}={d[i]} and d_{j}={d[j]}")
        # (e_i e_j) e_k  versus  e_i (e_j e_k)
        L = np.einsum("ijm,mkl->ijkl", C, C) % d
        R = np.einsum("jkm,iml->ijkl", C, C) % d
        bad = np.argwhere((L != R).any(axis=3))
        if len(bad):
            raise NonAssociative(tuple(map(int, bad[0])))

    # -- identity and equality -------------------------------------------
    @cached_property
    def _key(self):
        return (self.moduli, self.sc.tobytes())

    def __eq__(self, other):
        return isinstance(other, FiniteRing) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        label = self.name or "ring"
        return f"<FiniteRing {label} order={self.order} moduli={list(self.moduli)}>"

    # -- vector arithmetic -------------------------------------------------
    def reduce(self, X) -> np.ndarray:
        return np.asarray(X, dtype=np.int64) % self._d

    def mul_many(self, A, B) -> np.ndarray:
        """Row-wise products of two ``(N, r)`` arrays (either may have one row)."""
        A = as_rows(A, self.r)
        B = as_rows(B, self.r)
        n = max(len(A), len(B))
        if self.r == 0:
            return np.zeros((n, 0), dtype=np.int64)
        P = (A @ self._C2).reshape(-1, self.r, self.r)
        return (P * B[:, :, None]).sum(axis=1) % self._d

    def mul_vec(self, a, b) -> tuple[int, ...]:
        return tuple(int(x) for x in self.mul_many(a, b)[0])

    def add_vec(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.moduli))

    def additive_order(self, v) -> int:
        return lcm(*(d // gcd(int(x), d) for x, d in zip(v, self.moduli)))

    # -- elements ------------------------------------------------------------
    def element(self, coeffs) -> "RingElement":
        return RingElement(self, coeffs)

    def zero(self) -> "RingElement":
        return RingElement(self, (0,) * self.r)

    def gen(self, i: int) -> "RingElement":
        v = [0] * self.r
        v[i] = 1
        return RingElement(self, v)

    def basis(self) -> list["RingElement"]:
        return [self.gen(i) for i in range(self.r)]

    def vectors(self) -> np.ndarray:
        """All elements as an ``(order, r)`` array in index order."""
        if self.order > ENUM_LIMIT:
            raise BudgetExceeded(f"ring of order {self.order} too large to enumerate")
        return self._vectors

    @cached_property
    def _vectors(self) -> np.ndarray:
        if self.r == 0:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.indices(self.moduli, dtype=np.int64).reshape(self.r, -1).T
        grids.setflags(write=False)
        return grids

    def elements(self) -> list["RingElement"]:
        return [RingElement(self, v) for v in self.vectors()]

    def index_of(self, X) -> np.ndarray:
        X = as_rows(X, self.r)
        return X @ self._strides if self.r else np.zeros(len(X), dtype=np.int64)

    def vector_at(self, idx: int) -> tuple[int, ...]:
        out = []
        for s, d in zip(self._strides, self.moduli):
            out.append((int(idx) // int(s)) % d)
        return tuple(out)

    # -- tables (small rings only) --------------------------------------------
    @property
    def has_tables(self) -> bool:
        return self.order <= TABLE_LIMIT

    @cached_property
    def mul_table(self) -> np.ndarray:
        if not self.has_tables:
            raise BudgetExceeded(f"no tables for order {self.order}")
        X = self._vectors
        N, r = X.shape
        if r == 0:
            return np.zeros((1, 1), dtype=np.int64)
        P = (X @ self._C2).reshape(N, r, r).astype(np.float64)  # P[n, j, k]
        T = np.matmul(P.transpose(0, 2, 1), X.T.astype(np.float64))  # (N, k, M)
        T = np.rint(T).astype(np.int64) % self._d[None, :, None]
        out = np.einsum("nkm,k->nm", T, self._strides)
        out.setflags(write=False)
        return out

    @cached_property
    def add_table(self) -> np.ndarray:
        if not self.has_tables:
            raise BudgetExceeded(f"no tables for order {self.order}")
        X = self._vectors
        N = len(X)
        out = np.zeros((N, N), dtype=np.int64)
        for k in range(self.r):
            col = X[:, k]
            out += ((col[:, None] + col[None, :]) % self.moduli[k]) * self._strides[k]
        out.setflags(write=False)
        return out

    @cached_property
    def neg_index(self) -> np.ndarray:
        return self.index_of((-self._vectors) % self._d)

    # -- global properties ------------------------------------------------------
    @cached_property
    def characteristic(self) -> int:
        return lcm(*self.moduli)

    @cached_property
    def is_commutative(self) -> bool:
        return bool((self.sc == self.sc.transpose(1, 0, 2)).all())

    @cached_property
    def is_null(self) -> bool:
        return not self.sc.any()

    @cached_property
    def identity(self) -> "RingElement | None":
        """The multiplicative identity, found by solving ``e*x = x*e = x``
        on generators, or ``None``."""
        r = self.r
        if r == 0:
            return self.zero()
        C = self.sc
        images = [np.concatenate([C[i, j] for j in range(r)] + [C[j, i] for j in range(r)])
                  for i in range(r)]
        lat = Lattice(self.moduli * (2 * r), track=True)
        for i, v in enumerate(images):
            lat.insert(v, label=i)
        target = np.concatenate([np.eye(r, dtype=np.int64)[j] for j in range(r)] * 2)
        coef = lat.express(target)
        if coef is None:
            return None
        e = RingElement(self, [coef.get(i, 0) for i in range(r)])
        for g in self.basis():
            if e * g != g or g * e != g:  # pragma: no cover - guarded by express
                return None
        return e

    @property
    def is_unital(self) -> bool:
        return self.identity is not None

    # -- subgroups ------------------------------------------------------------
    def span(self, vectors, kind: str = "subgroup") -> "AdditiveSubgroup":
        lat = Lattice(self.moduli)
        for v in vectors:
            lat.insert(v)
        return AdditiveSubgroup(self, lat, kind)

    def whole(self) -> "AdditiveSubgroup":
        return self.span(np.eye(self.r, dtype=np.int64), "two-sided-ideal")

    def zero_ideal(self) -> "AdditiveSubgroup":
        return self.span([], "two-sided-ideal")

    def span_of_mask(self, mask, kind: str = "subgroup") -> "AdditiveSubgroup":
        """Subgroup spanned by the elements flagged in a boolean mask over
        :meth:`vectors`; greedy, one vectorised membership pass per step."""
        X = self.vectors()[np.asarray(mask, dtype=bool)]
        lat = Lattice(self.moduli)
        while len(X):
            inside = lat.contains_many(X)
            X = X[~inside]
            if len(X):
                lat.insert(X[0])
        return AdditiveSubgroup(self, lat, kind)


class RingElement:
    """An element of a :class:`FiniteRing`; coefficients are kept reduced."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: FiniteRing, coeffs):
        if len(coeffs) != ring.r:
            raise BadShape(f"expected {ring.r} coefficients, got {len(coeffs)}")
        self.ring = ring
        self.coeffs = tuple(int(c) % d for c, d in zip(coeffs, ring.moduli))

    def _check(self, other: "RingElement") -> None:
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatch("elements belong to different rings")

    def __add__(self, other):
        self._check(other)
        return RingElement(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return RingElement(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return RingElement(self.ring, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(self.ring, [a * other for a in self.coeffs])
        self._check(other)
        return RingElement(self.ring, self.ring.mul_vec(self.coeffs, other.coeffs))

    def __rmul__(self, other):
        if isinstance(other, int):
            return RingElement(self.ring, [a * other for a in self.coeffs])
        return NotImplemented

    def __pow__(self, n: int):
        if n < 1:
            raise ValueError("only positive powers exist in a non-unital ring")
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.coeffs == other.coeffs and (self.ring is other.ring or self.ring == other.ring)

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"RingElement({list(self.coeffs)})"

    @property
    def index(self) -> int:
        return int(self.ring.index_of(self.coeffs)[0])

    @property
    def additive_order(self) -> int:
        return self.ring.additive_order(self.coeffs)


class AdditiveSubgroup:
    """Subgroup of a ring's additive group in canonical (Hermite) form.

    ``kind`` records a certified closure property; equality ignores it.
    """

    def __init__(self, ring: FiniteRing, lattice: Lattice, kind: str = "subgroup"):
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        self.ring = ring
        self.lattice = lattice
        self.kind = "subgroup"
        if kind != "subgroup":
            self.certify(kind)

    @cached_property
    def gens(self) -> list[tuple[int, ...]]:
        return self.lattice.generators()

    @cached_property
    def order(self) -> int:
        return self.lattice.order()

    @property
    def index(self) -> int:
        return self.ring.order // self.order

    def key(self):
        return self.lattice.key()

    def __eq__(self, other):
        return (isinstance(other, AdditiveSubgroup) and self.ring == other.ring
                and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<{self.kind} of order {self.order} gens={self.gens}>"

    def __len__(self):
        return self.order

    def __contains__(self, x) -> bool:
        v = x.coeffs if isinstance(x, RingElement) else x
        return self.lattice.contains(v)

    def contains_many(self, X) -> np.ndarray:
        return self.lattice.contains_many(X)

    def issubset(self, other: "AdditiveSubgroup") -> bool:
        return all(g in other for g in self.gens)

    __le__ = issubset

    def is_zero(self) -> bool:
        return self.order == 1

    def is_whole(self) -> bool:
        return self.order == self.ring.order

    def vectors(self) -> np.ndarray:
        if self.order > ENUM_LIMIT:
            raise BudgetExceeded(f"subgroup of order {self.order} too large to enumerate")
        return self.lattice.elements()

    def elements(self) -> list[RingElement]:
        return [RingElement(self.ring, v) for v in self.vectors()]

    def mask(self) -> np.ndarray:
        """Boolean membership mask over ``ring.vectors()``."""
        m = np.zeros(self.ring.order, dtype=bool)
        m[self.ring.index_of(self.vectors())] = True
        return m

    def __add__(self, other: "AdditiveSubgroup") -> "AdditiveSubgroup":
        lat = self.lattice.copy()
        for g in other.gens:
            lat.insert(g)
        return AdditiveSubgroup(self.ring, lat)

    def intersection(self, other: "AdditiveSubgroup") -> "AdditiveSubgroup":
        gens = self.gens
        if not gens:
            return AdditiveSubgroup(self.ring, Lattice(self.ring.moduli))
        orders = [self.ring.additive_order(g) for g in gens]
        # kernel of  Z^t -> G / other,  a -> sum a_i g_i
        rels = kernel(orders, gens, self.ring.moduli, tgt_base=other.lattice.rows)
        rels += [tuple(o if i == j else 0 for j in range(len(gens))) for i, o in enumerate(orders)]
        G = np.array(gens, dtype=np.int64)
        vecs = [np.array(a, dtype=np.int64) @ G for a in rels]
        return self.ring.span(vecs)

    __and__ = intersection

    # -- closure checks ---------------------------------------------------------
    def _products(self, left: bool) -> np.ndarray:
        R = self.ring
        if not self.gens or R.r == 0:
            return np.zeros((0, R.r), dtype=np.int64)
        G = np.array(self.gens, dtype=np.int64)
        E = np.eye(R.r, dtype=np.int64)
        A = np.repeat(E, len(G), axis=0)
        B = np.tile(G, (R.r, 1))
        return R.mul_many(A, B) if left else R.mul_many(B, A)

    def is_left_ideal(self) -> bool:
        return bool(self.contains_many(self._products(True)).all())

    def is_right_ideal(self) -> bool:
        return bool(self.contains_many(self._products(False)).all())

    def is_ideal(self) -> bool:
        return self.is_left_ideal() and self.is_right_ideal()

    def is_subring(self) -> bool:
        G = np.array(self.gens, dtype=np.int64).reshape(-1, self.ring.r)
        if not len(G):
            return True
        A = np.repeat(G, len(G), axis=0)
        B = np.tile(G, (len(G), 1))
        return bool(self.contains_many(self.ring.mul_many(A, B)).all())

    def certify(self, kind: str) -> "AdditiveSubgroup":
        check = {
            "subgroup": lambda: True,
            "left-ideal": self.is_left_ideal,
            "right-ideal": self.is_right_ideal,
            "two-sided-ideal": self.is_ideal,
            "subring": self.is_subring,
        }[kind]
        if not check():
            raise NotTwoSidedIdeal(f"subgroup is not a {kind}") if kind == "two-sided-ideal" \
                else ValueError(f"subgroup is not a {kind}")
        self.kind = kind
        return self


class RingHom:
    """Map between rings given by images of the source's additive generators.

    Flags are computed on demand and never assumed; build invalid maps
    freely and inspect :meth:`certificate`.
    """

    def __init__(self, source: FiniteRing, target: FiniteRing, images, name: str = ""):
        self.source = source
        self.target = target
        M = np.asarray(images, dtype=np.int64).reshape(source.r, target.r)
        self.images = M % target._d if target.r else M
        self.images.setflags(write=False)
        self.name = name

    def __repr__(self):
        return f"<RingHom {self.source.name or 'R'} -> {self.target.name or 'S'}>"

    def apply_vectors(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64).reshape(-1, self.source.r)
        if self.target.r == 0:
            return np.zeros((len(X), 0), dtype=np.int64)
        return (X @ self.images) % self.target._d

    def __call__(self, x):
        if isinstance(x, RingElement):
            if x.ring != self.source:
                raise RingMismatch("element is not in the source ring")
            return RingElement(self.target, self.apply_vectors(x.coeffs)[0])
        return tuple(int(c) for c in self.apply_vectors(x)[0])

    @cached_property
    def additive_violation(self):
        for i, d in enumerate(self.source.moduli):
            if any((d * self.images[i]) % self.target._d):
                return i
        return None

    @property
    def is_additive(self) -> bool:
        return self.additive_violation is None

    @cached_property
    def multiplicative_violation(self):
        S, T = self.source, self.target
        r = S.r
        if r == 0:
            return None
        lhs = T.mul_many(np.repeat(self.images, r, axis=0), np.tile(self.images, (r, 1)))
        rhs = self.apply_vectors(S.sc.reshape(r * r, r))
        bad = np.nonzero((lhs != rhs).any(axis=1))[0]
        if len(bad):
            k = int(bad[0])
            return (k // r, k % r)
        return None

    @property
    def is_multiplicative(self) -> bool:
        return self.multiplicative_violation is None

    @property
    def is_hom(self) -> bool:
        return self.is_additive and self.is_multiplicative

    def image(self) -> AdditiveSubgroup:
        return self.target.span(self.images)

    def kernel(self) -> AdditiveSubgroup:
        if not self.is_additive:
            raise ValueError("map is not additive")
        gens = kernel(self.source.moduli, self.images, self.target.moduli)
        return self.source.span(gens)

    @property
    def is_injective(self) -> bool:
        return self.is_additive and self.image().order == self.source.order

    @property
    def is_surjective(self) -> bool:
        return self.image().order == self.target.order

    @property
    def is_bijective(self) -> bool:
        return self.is_additive and self.source.order == self.target.order and self.is_surjective

    def certificate(self) -> dict:
        return {
            "additive": self.is_additive,
            "additive_violation": self.additive_violation,
            "multiplicative": self.is_multiplicative,
            "multiplicative_violation": self.multiplicative_violation,
            "injective": self.is_injective,
            "surjective": self.is_surjective,
        }

    def compose(self, inner: "RingHom") -> "RingHom":
        """``self o inner``."""
        if inner.target != self.source:
            raise RingMismatch("cannot compose: target/source mismatch")
        return RingHom(inner.source, self.target, self.apply_vectors(inner.images))

    def inverse(self) -> "RingHom":
        if not self.is_bijective:
            raise ValueError("map is not bijective")
        lat = Lattice(self.target.moduli, track=True)
        for i, v in enumerate(self.images):
            lat.insert(v, label=i)
        rows = []
        for j in range(self.target.r):
            t = [int(i == j) for i in range(self.target.r)]
            c = lat.express(t)
            rows.append([c.get(i, 0) for i in range(self.source.r)])
        return RingHom(self.target, self.source, rows)

    def __eq__(self, other):
        return (isinstance(other, RingHom) and self.source == other.source
                and self.target == other.target and np.array_equal(self.images, other.images))

    def __hash__(self):
        return hash(self.images.tobytes())


def identity_hom(R: FiniteRing) -> RingHom:
    return RingHom(R, R, np.eye(R.r, dtype=np.int64))


# -- operations -------------------------------------------------------------------

def build_ring(moduli, sc, name: str = "") -> FiniteRing:
    """Validated ring from moduli and structure constants (nested lists or
    ``{(i, j): [c_1..c_r]}``)."""
    r = len(moduli)
    if isinstance(sc, dict):
        C = np.zeros((r, r, r), dtype=np.int64)
        for (i, j), v in sc.items():
            if len(v) != r:
                raise BadShape(f"product ({i},{j}) has {len(v)} coordinates, expected {r}")
            C[i, j] = v
        sc = C
    return FiniteRing(moduli, sc, name)


def characteristic(R: FiniteRing) -> int:
    return R.characteristic


def _common_ring(S) -> FiniteRing:
    S = list(S)
    if not S:
        raise ValueError("need at least one element")
    R = S[0].ring
    for x in S[1:]:
        if x.ring != R:
            raise RingMismatch("elements belong to different rings")
    return R


def _closure(R: FiniteRing, lat: Lattice, step) -> Lattice:
    while True:
        before = lat.order()
        for v in step(as_rows(lat.generators(), R.r)):
            lat.insert(v)
        if lat.order() == before:
            return lat


def subring_generated(S) -> AdditiveSubgroup:
    """Smallest subset containing ``S`` closed under +, -, * (integer
    multiples included, no identity adjoined)."""
    R = _common_ring(S)
    lat = Lattice(R.moduli)
    for x in S:
        lat.insert(x.coeffs)

    def step(G):
        if not len(G):
            return G
        return R.mul_many(np.repeat(G, len(G), axis=0), np.tile(G, (len(G), 1)))

    return AdditiveSubgroup(R, _closure(R, lat, step), "subring")


def ideal_generated(S, sided: str = "two") -> AdditiveSubgroup:
    """Smallest left/right/two-sided ideal containing ``S``; the unitalized
    action is used, so ``S`` itself always lies in the result."""
    R = _common_ring(S)
    if sided not in ("left", "right", "two"):
        raise ValueError("sided must be 'left', 'right' or 'two'")
    lat = Lattice(R.moduli)
    for x in S:
        lat.insert(x.coeffs)
    E = np.eye(R.r, dtype=np.int64)

    def step(G):
        if not len(G):
            return G
        A = np.repeat(E, len(G), axis=0)
        B = np.tile(G, (R.r, 1))
        out = []
        if sided in ("left", "two"):
            out.append(R.mul_many(A, B))
        if sided in ("right", "two"):
            out.append(R.mul_many(B, A))
        return np.vstack(out)

    kind = {"left": "left-ideal", "right": "right-ideal", "two": "two-sided-ideal"}[sided]
    return AdditiveSubgroup(R, _closure(R, lat, step), kind)


def annihilator(x: RingElement) -> AdditiveSubgroup:
    """Two-sided annihilator ``{a : a x = x a = 0}``."""
    R = x.ring
    if R.r == 0:
        return R.whole()
    E = np.eye(R.r, dtype=np.int64)
    left = R.mul_many(E, x.coeffs)
    right = R.mul_many(x.coeffs, E)
    images = np.hstack([left, right])
    gens = kernel(R.moduli, images, R.moduli * 2)
    A = R.span(gens)
    if R.is_commutative:
        A.certify("two-sided-ideal")
    return A


def _presentation_from_lattice(B):
    """SNF data for ``Z^n / rowspace(B)``: kept diagonal entries, the
    coordinate map (columns of V) and lifted generators (rows of V^-1)."""
    s, V, Vi = smith_normal_form(B)
    keep = [i for i, x in enumerate(s) if x > 1]
    return [s[i] for i in keep], np.array(V, dtype=object)[:, keep], [Vi[i] for i in keep]


def quotient(R: FiniteRing, I: AdditiveSubgroup) -> tuple[FiniteRing, RingHom]:
    """``R/I`` with its projection homomorphism."""
    if I.ring != R:
        raise RingMismatch("ideal belongs to another ring")
    if not I.is_ideal():
        raise NotTwoSidedIdeal("quotient needs a two-sided ideal")
    if R.r == 0:
        return R, identity_hom(R)
    moduli, Vk, lifts = _presentation_from_lattice(I.lattice.rows)
    q = len(moduli)
    dq = np.array(moduli, dtype=object)

    def project(X):
        X = as_rows(X, R.r, dtype=object)
        if q == 0:
            return np.zeros((len(X), 0), dtype=np.int64)
        return (X.dot(Vk) % dq).astype(np.int64)

    L = np.array(lifts, dtype=np.int64).reshape(q, R.r) % R._d if q else np.zeros((0, R.r), np.int64)
    C = np.zeros((q, q, q), dtype=np.int64)
    for a in range(q):
        if q:
            C[a] = project(R.mul_many(np.repeat(L[a:a + 1], q, axis=0), L))
    name = f"{R.name}/I" if R.name else ""
    Q = FiniteRing(moduli, C, name)
    pi = RingHom(R, Q, project(np.eye(R.r, dtype=np.int64)))
    return Q, pi


def subring_as_ring(H: AdditiveSubgroup) -> tuple[FiniteRing, RingHom]:
    """Present a subring as a ring in its own right, with the inclusion map."""
    R = H.ring
    if not H.is_subring():
        raise ValueError("subgroup is not closed under multiplication")
    n = R.r
    if n == 0 or H.order == 1:
        Z = FiniteRing((), [], f"0")
        return Z, RingHom(Z, R, np.zeros((0, n), dtype=np.int64))
    B = [list(r) for r in H.lattice.rows]
    # lattice coordinates of the relation lattice diag(d) in basis B
    M = []
    for i, d in enumerate(R.moduli):
        v = [0] * n
        v[i] = d
        M.append(_coords(B, v))
    moduli, Vk, lifts = _presentation_from_lattice(M)
    q = len(moduli)
    Bm = np.array(B, dtype=object)
    gens = [np.array(l, dtype=object).dot(Bm) for l in lifts]
    G = (np.array(gens, dtype=object).astype(np.int64) % R._d).reshape(q, n)
    dq = np.array(moduli, dtype=object)

    def coords(v):
        c = np.array(_coords(B, list(map(int, v))), dtype=object)
        return [int(x) for x in (c.dot(Vk) % dq)]

    C = np.zeros((q, q, q), dtype=np.int64)
    for a in range(q):
        prods = R.mul_many(np.repeat(G[a:a + 1], q, axis=0), G)
        for b in range(q):
            C[a, b] = coords(prods[b])
    S = FiniteRing(moduli, C, f"sub({R.name})" if R.name else "")
    return S, RingHom(S, R, G)


def _coords(B, v) -> list[int]:
    """Exact coefficients of ``v`` in the upper-triangular basis ``B``."""
    n = len(B)
    v = list(v)
    c = [0] * n
    for i in range(n):
        h = B[i][i]
        if v[i] % h:
            raise ValueError("vector not in lattice")
        q = v[i] // h
        c[i] = q
        if q:
            for j in range(i, n):
                v[j] -= q * B[i][j]
    return c


def product(rings, name: str | None = None) -> tuple[FiniteRing, list[RingHom], list[RingHom]]:
    """Direct product with injection and projection homomorphisms."""
    rings = list(rings)
    if not rings:
        raise ValueError("product of an empty list")
    moduli = tuple(d for R in rings for d in R.moduli)
    n = len(moduli)
    C = np.zeros((n, n, n), dtype=np.int64)
    offsets = []
    off = 0
    for R in rings:
        offsets.append(off)
        C[off:off + R.r, off:off + R.r, off:off + R.r] = R.sc
        off += R.r
    if name is None:
        name = " x ".join(R.name or "R" for R in rings)
    P = FiniteRing(moduli, C, name, check=False)
    inj, proj = [], []
    for R, o in zip(rings, offsets):
        M = np.zeros((R.r, n), dtype=np.int64)
        M[:, o:o + R.r] = np.eye(R.r, dtype=np.int64)
        inj.append(RingHom(R, P, M))
        proj.append(RingHom(P, R, M.T))
    return P, inj, proj


def unitalize(R: FiniteRing, c: int | None = None) -> tuple[FiniteRing, RingHom]:
    """``R x Z/c`` with ``(a,k)(b,l) = (ab + l a + k b, kl)`` and the
    embedding ``a -> (a, 0)``; ``c`` must be a multiple of the
    characteristic and at least 2."""
    if c is None:
        c = max(2, R.characteristic)
    if c < 2 or c % R.characteristic:
        raise BadCharacteristic(f"c={c} is not a multiple >= 2 of characteristic {R.characteristic}")
    r = R.r
    n = r + 1
    C = np.zeros((n, n, n), dtype=np.int64)
    C[:r, :r, :r] = R.sc
    for i in range(r):
        C[i, r, i] = 1
        C[r, i, i] = 1
    C[r, r, r] = 1
    R1 = FiniteRing(R.moduli + (c,), C, f"{R.name}^+" if R.name else "")
    emb = RingHom(R, R1, np.eye(r, n, dtype=np.int64))
    return R1, emb


def element_signature(R: FiniteRing, v) -> tuple:
    """Isomorphism-invariant data of a single element."""
    x = RingElement(R, v)
    seen = {x.coeffs: 1}
    p = x
    k = 1
    while True:
        p = p * x
        k += 1
        if p.coeffs in seen:
            period = (seen[p.coeffs], k - seen[p.coeffs])
            break
        seen[p.coeffs] = k
    return (x.additive_order, period, subring_generated([x]).order)


def fingerprint(R: FiniteRing) -> tuple:
    """Cheap invariants: order, characteristic, unital flag, additive
    elementary divisors and the nilexponent spectrum (0 = not nilpotent)."""
    spectrum: Counter = Counter()
    if R.order <= ENUM_LIMIT:
        spectrum = Counter(nilpotency_indices(R).tolist())
    return (R.order, R.characteristic, R.is_unital, invariant_factors(R.moduli),
            tuple(sorted(spectrum.items())))


def nilpotency_indices(R: FiniteRing, X=None) -> np.ndarray:
    """Least ``n`` with ``x^n = 0`` for each row of ``X`` (default: all
    elements), 0 where ``x`` is not nilpotent."""
    if X is None:
        X = R.vectors()
    X = as_rows(X, R.r)
    out = np.zeros(len(X), dtype=np.int64)
    # a nilpotent x has x^n = 0 for n <= composition length + 1
    bound = big_omega(R.order) + 1
    P = X
    for n in range(1, bound + 1):
        out[~P.any(axis=1) & (out == 0)] = n
        if (out > 0).all():
            break
        P = R.mul_many(P, X)
    return out


def invariant_factors(moduli) -> tuple[int, ...]:
    """Elementary divisors of the additive group, sorted."""
    out = []
    for d in moduli:
        for p, e in factorint(d).items():
            out.append(p ** e)
    return tuple(sorted(out))


def associativity_violation(R: FiniteRing, max_exhaustive: int = 64, samples: int = 10_000,
                            seed: int = 0) -> tuple | None:
    """Element-level associativity scan: exhaustive up to ``max_exhaustive``
    elements, random triples beyond.  Returns a violating triple or ``None``."""
    if R.order <= max_exhaustive:
        X = R.vectors()
        idx = np.array(list(itertools.product(range(len(X)), repeat=3)))
        A, B, Cc = X[idx[:, 0]], X[idx[:, 1]], X[idx[:, 2]]
    else:
        rng = np.random.default_rng(seed)
        A = rng.integers(0, R._d, size=(samples, R.r))
        B = rng.integers(0, R._d, size=(samples, R.r))
        Cc = rng.integers(0, R._d, size=(samples, R.r))
    lhs = R.mul_many(R.mul_many(A, B), Cc)
    rhs = R.mul_many(A, R.mul_many(B, Cc))
    bad = np.nonzero((lhs != rhs).any(axis=1))[0]
    if len(bad):
        k = bad[0]
        return tuple(map(tuple, (A[k], B[k], Cc[k])))
    return None
