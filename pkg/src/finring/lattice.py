"""Integer lattice machinery for subgroups of finite abelian groups.

A finite abelian group is handled as ``Z^n / B`` where ``B`` is a full-rank
base lattice, by default ``diag(moduli)``.  Subgroups are lattices ``L`` with
``B <= L <= Z^n``, kept in Hermite normal form so that equality and membership
are decidable and deterministic.

:class:`Lattice` optionally tracks *provenance*: for every basis row, the
integer combination of inserted vectors it came from.  That gives solving
("express t in terms of v_1..v_m") and kernels of homomorphisms for free.
"""

from __future__ import annotations

from math import prod

import numpy as np


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def _add_prov(p: dict, q: dict, c: int) -> dict:
    """p + c*q for sparse integer vectors."""
    if not c:
        return p
    out = dict(p)
    for k, v in q.items():
        w = out.get(k, 0) + c * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def _lin_prov(a: int, p: dict, b: int, q: dict) -> dict:
    """a*p + b*q for sparse integer vectors."""
    out = {}
    for k, v in p.items():
        w = a * v
        if w:
            out[k] = w
    for k, v in q.items():
        w = out.get(k, 0) + b * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


class Lattice:
    """Hermite-normal-form lattice between a base lattice and ``Z^n``.

    ``rows[i]`` always has its pivot at column ``i``; before any insertion the
    rows are the HNF of the base lattice, so every column owns a row.
    """

    def __init__(self, moduli, base=None, track: bool = False):
        self.moduli = tuple(int(d) for d in moduli)
        self.n = len(self.moduli)
        self.track = track
        self.rows: list[list[int]] = []
        self.prov: list[dict] = []
        for i, d in enumerate(self.moduli):
            row = [0] * self.n
            row[i] = d
            self.rows.append(row)
            self.prov.append({})
        self._base_det = prod(self.moduli)
        if base is not None:
            # base rows carry zero provenance: they are zero in the group
            saved, self.track = self.track, False
            for b in base:
                self._insert(list(b), {})
            self.track = saved
            self._reduce_rows()
            self._base_det = prod(self.rows[i][i] for i in range(self.n))
        self.relations: list[dict] = []
        self._count = 0

    # -- construction ---------------------------------------------------
    def copy(self) -> "Lattice":
        new = Lattice.__new__(Lattice)
        new.moduli = self.moduli
        new.n = self.n
        new.track = self.track
        new.rows = [list(r) for r in self.rows]
        new.prov = [dict(p) for p in self.prov]
        new._base_det = self._base_det
        new.relations = list(self.relations)
        new._count = self._count
        return new

    def insert(self, v, label: int | None = None) -> dict:
        """Add ``v`` to the lattice; return the relation it produced.

        With tracking on, ``label`` (default: running counter) names the
        inserted vector in provenance dictionaries.  The returned dict is a
        relation among inserted vectors, i.e. an element of the kernel of
        ``Z^m -> Z^n / B``.
        """
        if label is None:
            label = self._count
        self._count = max(self._count, label + 1)
        v = [int(x) % d if d else int(x) for x, d in zip(v, self.moduli)]
        rel = self._insert(v, {label: 1} if self.track else {})
        self._reduce_rows()
        if self.track and rel:
            self.relations.append(rel)
        return rel

    def _insert(self, v: list[int], pv: dict) -> dict:
        n = self.n
        rows, prov = self.rows, self.prov
        for i in range(n):
            b = v[i]
            if b == 0:
                continue
            row = rows[i]
            a = row[i]
            if b % a == 0:
                q = b // a
                for j in range(i, n):
                    v[j] -= q * row[j]
                if self.track:
                    pv = _add_prov(pv, prov[i], -q)
                continue
            g, s, t = xgcd(a, b)
            ag, bg = a // g, b // g
            new_row = [s * row[j] + t * v[j] for j in range(n)]
            new_v = [ag * v[j] - bg * row[j] for j in range(n)]
            if self.track:
                new_p = _lin_prov(s, prov[i], t, pv)
                pv = _lin_prov(ag, pv, -bg, prov[i])
                prov[i] = new_p
            rows[i] = new_row
            v = new_v
        return pv

    def _reduce_rows(self) -> None:
        # Reducing row i at column j > i by d_j (or by row j) keeps the
        # triangular coefficient of row i zero, so provenance stays valid.
        n, rows, d = self.n, self.rows, self.moduli
        for i in range(n - 1, -1, -1):
            row = rows[i]
            for j in range(i + 1, n):
                h = rows[j][j]
                x = row[j]
                if x < 0 or x >= h:
                    q = x // h
                    rj = rows[j]
                    for k in range(j, n):
                        row[k] -= q * rj[k]
                    if self.track:
                        self.prov[i] = _add_prov(self.prov[i], self.prov[j], -q)

    # -- queries --------------------------------------------------------
    def pivots(self) -> tuple[int, ...]:
        return tuple(self.rows[i][i] for i in range(self.n))

    def key(self) -> tuple:
        return tuple(tuple(r) for r in self.rows)

    def order(self) -> int:
        """Order of ``L / B``."""
        return self._base_det // prod(self.pivots()) if self.n else 1

    def index(self) -> int:
        """Index ``[Z^n : L]``, the order of the quotient group."""
        return prod(self.pivots()) if self.n else 1

    def contains(self, v) -> bool:
        v = [int(x) for x in v]
        for i in range(self.n):
            row = self.rows[i]
            h = row[i]
            if v[i] % h:
                return False
            q = v[i] // h
            if q:
                for j in range(i, self.n):
                    v[j] -= q * row[j]
        return True

    def contains_many(self, X: np.ndarray) -> np.ndarray:
        """Vectorised membership for the rows of an integer array."""
        X = np.array(X, dtype=np.int64, copy=True)
        if self.n == 0:
            return np.ones(len(X), dtype=bool)
        X = X.reshape(-1, self.n)
        ok = np.ones(len(X), dtype=bool)
        for i in range(self.n):
            row = np.array(self.rows[i], dtype=np.int64)
            h = row[i]
            col = X[:, i]
            ok &= (col % h) == 0
            q = col // h
            X -= q[:, None] * row[None, :]
            if self.moduli[i]:
                X[:, i + 1:] %= np.array(self.moduli[i + 1:], dtype=np.int64)
        return ok

    def express(self, t) -> dict | None:
        """Coefficients (by label) writing ``t`` as a combination of inserted
        vectors modulo the base lattice, or ``None`` if ``t`` is not in ``L``."""
        if not self.track:
            raise ValueError("express() needs a tracking lattice")
        v = [int(x) for x in t]
        coef: dict = {}
        for i in range(self.n):
            row = self.rows[i]
            h = row[i]
            if v[i] % h:
                return None
            q = v[i] // h
            if q:
                for j in range(i, self.n):
                    v[j] -= q * row[j]
                coef = _add_prov(coef, self.prov[i], q)
        return coef

    def generators(self) -> list[tuple[int, ...]]:
        """Canonical generators of ``L / B``: HNF rows of non-trivial
        cyclic order, reduced by the moduli."""
        out = []
        for i in range(self.n):
            row = self.rows[i]
            if self.moduli[i] // row[i] > 1 if self.moduli[i] else True:
                out.append(tuple(x % d for x, d in zip(row, self.moduli)))
        return out

    def cyclic_orders(self) -> list[int]:
        return [d // r[i] for i, (d, r) in enumerate(zip(self.moduli, self.rows))]

    def elements(self) -> np.ndarray:
        """All elements of ``L / diag(moduli)`` as reduced vectors.

        Valid for the default base only (rows enumerate cosets uniquely by
        triangularity).
        """
        d = np.array(self.moduli, dtype=np.int64)
        out = np.zeros((1, self.n), dtype=np.int64)
        for i in range(self.n):
            m = self.moduli[i] // self.rows[i][i]
            if m <= 1:
                continue
            row = np.array(self.rows[i], dtype=np.int64)
            steps = np.arange(m, dtype=np.int64)[:, None] * row[None, :]
            out = (out[:, None, :] + steps[None, :, :]).reshape(-1, self.n) % d
        return out


def span(moduli, vectors) -> Lattice:
    lat = Lattice(moduli)
    for v in vectors:
        lat.insert(v)
    return lat


def kernel(src_moduli, images, tgt_moduli, tgt_base=None) -> list[tuple[int, ...]]:
    """Generators of the kernel of the homomorphism
    ``(+)Z/src_moduli -> Z^n / tgt_base`` sending ``e_k`` to ``images[k]``.

    The homomorphism must be well defined (``src_moduli[k] * images[k]``
    lies in the target base lattice).
    """
    lat = Lattice(tgt_moduli, base=tgt_base, track=True)
    m = len(src_moduli)
    for k, v in enumerate(images):
        lat.insert(v, label=k)
    gens = []
    for rel in lat.relations:
        vec = tuple(rel.get(k, 0) % src_moduli[k] for k in range(m))
        if any(vec):
            gens.append(vec)
    return gens


def smith_normal_form(B: list[list[int]]):
    """Smith form of a square nonsingular integer matrix.

    Returns ``(diag, V, Vinv)`` with ``U B V = diag(diag)`` for some
    unimodular ``U``; only the column transform is needed by callers.
    """
    n = len(B)
    A = [list(map(int, r)) for r in B]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_op(j, k, c):  # column j += c * column k
        for r in A:
            r[j] += c * r[k]
        for r in V:
            r[j] += c * r[k]
        # inverse: row k of Vinv -= c * row j
        rk, rj = Vi[k], Vi[j]
        for x in range(n):
            rk[x] -= c * rj[x]

    def col_swap(j, k):
        for r in A:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]
        Vi[j], Vi[k] = Vi[k], Vi[j]

    def col_neg(j):
        for r in A:
            r[j] = -r[j]
        for r in V:
            r[j] = -r[j]
        Vi[j] = [-x for x in Vi[j]]

    for t in range(n):
        while True:
            # smallest nonzero entry of the trailing block
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                raise ValueError("singular matrix")
            i, j = best
            A[t], A[i] = A[i], A[t]
            if j != t:
                col_swap(t, j)
            if A[t][t] < 0:
                col_neg(t)
            p = A[t][t]
            dirty = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    col_op(j, t, -q)
                if A[t][j]:
                    dirty = True
            for i in range(t + 1, n):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    dirty = True
            if dirty:
                continue
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
    return [A[i][i] for i in range(n)], V, Vi


# -- linear algebra over F_p ------------------------------------------------

def fp_rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p and the pivot columns."""
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        f = A[:, c].copy()
        f[r] = 0
        A = (A - f[:, None] * A[r][None, :]) % p
        piv.append(c)
        r += 1
    return A, piv


def fp_rank(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(fp_rref(M, p)[1])


def fp_nullspace(M, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : M x = 0}`` over F_p."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    A, piv = fp_rref(M, p)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        x = np.zeros(cols, dtype=np.int64)
        x[f] = 1
        for r, c in enumerate(piv):
            x[c] = (-A[r, f]) % p
        basis.append(x)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def fp_solve(M, b, p: int) -> np.ndarray | None:
    """One solution of ``M x = b`` over F_p, or ``None``."""
    M = np.asarray(M, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    aug = np.hstack([M, b])
    A, piv = fp_rref(aug, p)
    cols = M.shape[1]
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = A[r, cols]
    return x
