"""Jacobson radical by several independent routes, nil/nilpotent diagnostics
and the ideal tower used to show that nil rings of bounded nilexponent
behave well.

Routes to ``J(R)``:

* :func:`jacobson_radical` -- elements ``x`` with ``yx`` left quasi-regular
  for every ``y`` (an exhaustive scan);
* :func:`jacobson_radical_via_maximal_ideals` -- the intersection of the
  maximal regular left ideals, and of their two-sided cores;
* :func:`largest_nilpotent_ideal` -- the sum of all nilpotent principal
  ideals (finite rings only).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotTwoSidedIdeal, OddLength, PreconditionFailed, RingMismatch
from .lattice import Lattice, fp_nullspace, kernel
from .ntheory import big_omega, factorint, is_prime
from .ring import (
    AdditiveSubgroup,
    FiniteRing,
    RingElement,
    as_rows,
    ideal_generated,
    nilpotency_indices,
)
from .verdict import Verdict, failed, not_applicable, passed


# -- quasi-regularity ---------------------------------------------------------

def quasi_regular_witness(x: RingElement) -> RingElement | None:
    """Some ``z`` with ``x + z + zx = 0``, or ``None``.

    ``z -> z + zx`` is additive, so this is a linear solve for ``-x``.
    """
    R = x.ring
    if R.r == 0:
        return R.zero()
    E = np.eye(R.r, dtype=np.int64)
    images = (E + R.mul_many(E, x.coeffs)) % R._d
    lat = Lattice(R.moduli, track=True)
    for i, v in enumerate(images):
        lat.insert(v, label=i)
    c = lat.express((-x).coeffs)
    if c is None:
        return None
    z = RingElement(R, [c.get(i, 0) for i in range(R.r)])
    assert not (x + z + z * x)
    return z


def quasi_regular_mask(R: FiniteRing) -> np.ndarray:
    """Boolean mask over ``R.vectors()`` of left quasi-regular elements."""
    N = R.order
    if R.has_tables:
        add, mul = R.add_table, R.mul_table
        z = np.arange(N)[:, None]
        z_plus_zw = add[z, mul]                     # [z, w] -> z + zw
        total = add[z_plus_zw, np.arange(N)[None, :]]  # + w
        return (total == 0).any(axis=0)
    # nilpotent elements are quasi-regular (z = -w + w^2 - ...); solve the rest
    mask = nilpotency_indices(R) > 0
    X = R.vectors()
    for k in np.nonzero(~mask)[0]:
        mask[k] = quasi_regular_witness(RingElement(R, X[k])) is not None
    return mask


def jacobson_radical(R: FiniteRing) -> AdditiveSubgroup:
    """``{x : for all y there is z with yx + z + zyx = 0}`` by exhaustive scan."""
    if R.r == 0:
        return R.zero_ideal()
    Q = quasi_regular_mask(R)
    if Q.all():
        return R.whole()
    if R.has_tables:
        ok = Q[R.mul_table].all(axis=0)            # column x holds y*x
    else:
        X = R.vectors()
        ok = np.zeros(R.order, dtype=bool)
        E = np.eye(R.r, dtype=np.int64)
        for k, x in enumerate(X):
            Rx = R.span(R.mul_many(E, x))
            ok[k] = Q[R.index_of(Rx.vectors())].all()
    J = R.span_of_mask(ok)
    assert J.order == int(ok.sum()), "radical scan did not return a subgroup"
    return J.certify("two-sided-ideal")


def is_semisimple(R: FiniteRing) -> bool:
    return jacobson_radical(R).is_zero()


# -- maximal ideals through hyperplane cores -----------------------------------

def _functional_rows(R: FiniteRing, side: str) -> np.ndarray:
    """Vectors ``u`` (one block per "multiplier pattern") such that the core
    of the hyperplane ``ker(lam)`` is ``{x : lam(u_j(x)) = 0 for all rows}``,
    with ``u_j`` linear in ``x``: shape ``(patterns, r_x, r)``."""
    r = R.r
    C = R.sc
    E = np.eye(r, dtype=np.int64)
    blocks = [E[None, :, :]]                                 # x
    if side in ("left", "two"):
        blocks.append(C)                                     # e_a x   -> C[a, j]
    if side in ("right", "two"):
        blocks.append(C.transpose(1, 0, 2))                  # x e_b   -> C[j, b]
    if side == "two":
        # (e_a x) e_b = sum_m C[a,j,m] C[m,b,:]
        T = np.einsum("ajm,mbk->abjk", C, C) % R._d
        blocks.append(T.reshape(r * r, r, r))
    return np.concatenate(blocks, axis=0)


def hyperplane_cores(R: FiniteRing, side: str) -> list[AdditiveSubgroup]:
    """Distinct cores of all index-``p`` subgroups under the ``side`` action.

    A maximal (left / two-sided) ideal ``M`` has elementary abelian
    quotient, so ``M`` lies in some index-``p`` subgroup ``H``; the core of
    ``H`` is an ideal containing ``M`` and still proper, hence equals ``M``.
    So the maximal elements of this list are exactly the maximal ideals.
    """
    if R.r == 0:
        return []
    U = _functional_rows(R, side)
    seen: dict = {}
    for p in sorted({q for d in R.moduli for q in factorint(d)}):
        P = [i for i, d in enumerate(R.moduli) if d % p == 0]
        for lam in _projective_points(p, len(P)):
            full = np.zeros(R.r, dtype=np.int64)
            full[P] = lam
            # rows: functional x_j -> lam(u(e_j)); restricted to P coordinates
            M = (U @ full) % p                                # (patterns, r_x)
            null = fp_nullspace(M[:, P], p)
            gens = []
            for j, d in enumerate(R.moduli):
                v = [0] * R.r
                v[j] = 1 if d % p else p
                gens.append(v)
            for n in null:
                v = [0] * R.r
                for j, c in zip(P, n):
                    v[j] = int(c)
                gens.append(v)
            core = R.span(gens)
            seen.setdefault(core.key(), core)
    return list(seen.values())


def _projective_points(p: int, n: int):
    """Nonzero vectors of F_p^n with first nonzero coordinate 1."""
    for lead in range(n):
        rest = n - lead - 1
        for k in range(p ** rest):
            v = [0] * n
            v[lead] = 1
            for j in range(rest):
                v[lead + 1 + j] = (k // p ** j) % p
            yield v


def _maximal(subgroups: list[AdditiveSubgroup]) -> list[AdditiveSubgroup]:
    proper = [H for H in subgroups if not H.is_whole()]
    out = [H for H in proper
           if not any(H.order < K.order and H.issubset(K) for K in proper)]
    return sorted(out, key=lambda H: H.key())


def maximal_left_ideals(R: FiniteRing) -> list[AdditiveSubgroup]:
    return [H.certify("left-ideal") for H in _maximal(hyperplane_cores(R, "left"))]


def maximal_ideals(R: FiniteRing) -> list[AdditiveSubgroup]:
    return [H.certify("two-sided-ideal") for H in _maximal(hyperplane_cores(R, "two"))]


def regular_witness(R: FiniteRing, I: AdditiveSubgroup) -> RingElement | None:
    """Some ``a`` with ``x - xa`` in ``I`` for every ``x``, or ``None``."""
    X = R.vectors()
    E = np.eye(R.r, dtype=np.int64)
    ok = np.ones(len(X), dtype=bool)
    for i in range(R.r):
        diff = (E[i][None, :] - R.mul_many(E[i], X)) % R._d
        ok &= I.contains_many(diff)
    hits = np.nonzero(ok)[0]
    return RingElement(R, X[hits[0]]) if len(hits) else None


def core_ideal(R: FiniteRing, I: AdditiveSubgroup) -> AdditiveSubgroup:
    """``m_I``: the largest two-sided ideal inside the left ideal ``I``.

    ``m_I = {x : R^ x R^ in I}`` with ``R^`` the unitalization.  For a left
    ideal this is ``{x : x R^ in I}``: if ``x R^`` lies in ``I`` then
    ``R^ x R^ = R^ (x R^)`` does too, and the converse is trivial.  So it is
    the kernel of ``x -> (x, x e_1, ..., x e_r)`` into ``(R/I)^(r+1)``.
    """
    r = R.r
    E = np.eye(r, dtype=np.int64)
    images = np.hstack([E] + [R.sc[:, b, :] for b in range(r)])
    base = []
    for blk in range(r + 1):
        for row in I.lattice.rows:
            v = [0] * (r * (r + 1))
            v[blk * r:(blk + 1) * r] = row
            base.append(v)
    gens = kernel(R.moduli, images, R.moduli * (r + 1), tgt_base=base)
    return R.span(gens).certify("two-sided-ideal")


@dataclass
class MaximalIdealReport:
    left_ideals: list          # maximal regular left ideals
    cores: list                # their m_I
    left_intersection: AdditiveSubgroup
    core_intersection: AdditiveSubgroup
    phi_radical: AdditiveSubgroup

    @property
    def agree(self) -> bool:
        return self.left_intersection == self.core_intersection == self.phi_radical


def _intersect_all(R: FiniteRing, groups) -> AdditiveSubgroup:
    # empty family -> R (matches J(R) = R for radical rings)
    out = R.whole()
    for H in groups:
        out = out & H
    return out


def maximal_ideal_report(R: FiniteRing) -> MaximalIdealReport:
    regular = [I for I in maximal_left_ideals(R) if regular_witness(R, I) is not None]
    cores = [core_ideal(R, I) for I in regular]
    return MaximalIdealReport(
        left_ideals=regular,
        cores=cores,
        left_intersection=_intersect_all(R, regular),
        core_intersection=_intersect_all(R, cores),
        phi_radical=jacobson_radical(R),
    )


def jacobson_radical_via_maximal_ideals(R: FiniteRing) -> AdditiveSubgroup:
    """Intersection of the maximal regular left ideals; also checks it
    against the intersection of their cores and the scan-based radical."""
    rep = maximal_ideal_report(R)
    if not rep.agree:
        raise AssertionError(
            f"radical routes disagree: |J1|={rep.left_intersection.order} "
            f"|J2|={rep.core_intersection.order} |J|={rep.phi_radical.order}")
    return rep.left_intersection.certify("two-sided-ideal")


# -- nil and nilpotent -----------------------------------------------------------

@dataclass(frozen=True)
class NilReport:
    is_nil: bool
    nilexponent: int | None
    is_nilpotent: bool
    nilpotency_class: int | None
    is_null: bool
    witness_element: RingElement | None


def product_span(R: FiniteRing, A: AdditiveSubgroup, B: AdditiveSubgroup) -> AdditiveSubgroup:
    """Additive span of ``{a b : a in A, b in B}``."""
    GA = as_rows(A.gens, R.r).reshape(len(A.gens), R.r)
    GB = as_rows(B.gens, R.r).reshape(len(B.gens), R.r)
    if not len(GA) or not len(GB):
        return R.span([])
    return R.span(R.mul_many(np.repeat(GA, len(GB), axis=0), np.tile(GB, (len(GA), 1))))


def power_chain(S: AdditiveSubgroup) -> list[AdditiveSubgroup]:
    """``S, S^2, S^3, ...`` until zero or two equal consecutive terms.

    Stops at composition length + 1 at the latest.
    """
    R = S.ring
    chain = [S]
    for _ in range(big_omega(S.order) + 1):
        if chain[-1].is_zero():
            break
        nxt = product_span(R, chain[-1], S)
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return chain


def nilpotency_class(S: AdditiveSubgroup) -> int | None:
    """Least ``n`` with all ``n``-fold products zero, or ``None``."""
    chain = power_chain(S)
    if chain[-1].is_zero():
        return len(chain)
    return None


def nil_report(S) -> NilReport:
    """Nil/nilpotent/null diagnostics of a ring or of a subring of one."""
    if isinstance(S, FiniteRing):
        S = S.whole()
    R = S.ring
    if S.is_zero():
        return NilReport(True, 1, True, 1, True, R.zero())
    X = S.vectors()
    idx = nilpotency_indices(R, X)
    is_nil = bool((idx > 0).all())
    nilexp, witness = None, None
    if is_nil:
        k = int(np.argmax(idx))
        nilexp = int(idx[k])
        witness = RingElement(R, X[k])
    cls = nilpotency_class(S)
    return NilReport(
        is_nil=is_nil,
        nilexponent=nilexp,
        is_nilpotent=cls is not None,
        nilpotency_class=cls,
        is_null=cls is not None and cls <= 2,
        witness_element=witness,
    )


def largest_nilpotent_ideal(R: FiniteRing) -> AdditiveSubgroup:
    """Sum of all nilpotent principal two-sided ideals.

    Any ideal inside a nilpotent ideal is nilpotent and a finite sum of
    nilpotent ideals is nilpotent, so this is the largest nilpotent ideal.
    """
    total = R.zero_ideal()
    seen: set = set()
    for x in R.elements():
        if x in total:
            continue
        I = ideal_generated([x])
        if I.key() in seen:
            continue
        seen.add(I.key())
        if nilpotency_class(I) is not None:
            total = total + I
    assert nilpotency_class(total) is not None
    return total.certify("two-sided-ideal")


def nil_left_ideals(R: FiniteRing) -> list[AdditiveSubgroup]:
    """Nil principal left ideals ``R^ x`` (search for the containment check)."""
    out = {}
    for x in R.elements():
        L = ideal_generated([x], "left")
        if L.key() not in out and (nilpotency_indices(R, L.vectors()) > 0).all():
            out[L.key()] = L
    return list(out.values())


# -- remarks about the radical -----------------------------------------------------

def check_za_plus_a(R: FiniteRing) -> Verdict:
    """For ``x`` in ``J(R)`` and ``a`` with ``xa + a = 0``, ``a`` must be 0."""
    J = jacobson_radical(R)
    X = R.vectors()
    for x in J.vectors():
        vals = (R.mul_many(x, X) + X) % R._d
        bad = np.nonzero(~vals.any(axis=1) & X.any(axis=1))[0]
        if len(bad):
            return failed("xa + a = 0 with a != 0",
                          (tuple(map(int, x)), tuple(map(int, X[bad[0]]))))
    return passed(f"{J.order} radical elements checked against {R.order} elements")


def check_nagata_higman_shadow(R: FiniteRing) -> Verdict:
    """Prime characteristic ``p`` and nilexponent below ``p`` force
    nilpotency (commutative nil rings)."""
    if not R.is_commutative:
        raise PreconditionFailed("ring is not commutative")
    rep = nil_report(R)
    if not rep.is_nil:
        raise PreconditionFailed("ring is not nil")
    p = R.characteristic
    if not is_prime(p):
        return not_applicable(f"characteristic {p} is not prime")
    if rep.nilexponent >= p:
        return not_applicable(f"nilexponent {rep.nilexponent} >= characteristic {p}")
    if rep.is_nilpotent:
        return passed(f"nilexponent {rep.nilexponent} < {p}; class {rep.nilpotency_class}")
    return failed("nil of small nilexponent but not nilpotent", rep)


# -- the Z tower ------------------------------------------------------------------

@dataclass(frozen=True)
class ZTower:
    ring: FiniteRing
    ideal: AdditiveSubgroup
    levels: tuple          # Z_{-1}, Z_0, ..., Z_{n-1}

    def level(self, i: int) -> AdditiveSubgroup:
        """``Z_i`` for ``i >= -1``."""
        return self.levels[i + 1]


def sandwich(R: FiniteRing, I: AdditiveSubgroup, x) -> AdditiveSubgroup:
    """``IxI``: additive span of ``{i x j : i, j in I}``."""
    G = as_rows(I.gens, R.r).reshape(len(I.gens), R.r)
    if not len(G):
        return R.span([])
    left = R.mul_many(G, x)                       # i x
    A = np.repeat(left, len(G), axis=0)
    B = np.tile(G, (len(G), 1))
    return R.span(R.mul_many(A, B))


def nilpotent_modulo(S: AdditiveSubgroup, Z: AdditiveSubgroup) -> bool:
    """Is ``S/(Z cap S)`` nilpotent, i.e. does some power of ``S`` lie in ``Z``?"""
    for P in power_chain(S):
        if P.issubset(Z):
            return True
    return False


def z_tower(R: FiniteRing, I: AdditiveSubgroup, n: int) -> ZTower:
    """``Z_{-1} = 0`` and ``Z_{i+1} = {r : IrI/(Z_i cap IrI) nilpotent}``,
    by exhaustive membership, up to ``Z_{n-1}``."""
    if I.ring != R:
        raise RingMismatch("ideal belongs to another ring")
    if not I.is_ideal():
        raise NotTwoSidedIdeal("z_tower needs a two-sided ideal")
    if n < 1:
        raise ValueError("n must be >= 1")
    X = R.vectors()
    levels = [R.zero_ideal()]
    for _ in range(n):
        Z = levels[-1]
        mask = np.array([nilpotent_modulo(sandwich(R, I, x), Z) for x in X])
        nxt = R.span_of_mask(mask)
        assert nxt.order == int(mask.sum()), "Z level is not a subgroup"
        nxt.certify("two-sided-ideal")
        assert Z.issubset(nxt)
        levels.append(nxt)
    return ZTower(R, I, tuple(levels))


def check_claim1(R: FiniteRing, I: AdditiveSubgroup, n: int,
                 coset_rep: RingElement | None = None,
                 coset_ideal: AdditiveSubgroup | None = None,
                 tower: ZTower | None = None) -> Verdict:
    """``x^(n-k) y x^(n-k)`` lies in ``Z_{k-1}`` for ``k < n``, ``y`` in ``I``
    and ``x`` in the coset ``e = coset_rep + coset_ideal`` (default ``e = R``),
    provided every ``x`` in ``e`` has ``x^n = 0``."""
    K = coset_ideal if coset_ideal is not None else R.whole()
    a = np.array(coset_rep.coeffs if coset_rep is not None else [0] * R.r, dtype=np.int64)
    E = (K.vectors() + a) % R._d
    idx = nilpotency_indices(R, E)
    bad = np.nonzero((idx == 0) | (idx > n))[0]
    if len(bad):
        raise PreconditionFailed(f"x^{n} != 0 for x = {tuple(map(int, E[bad[0]]))}")
    if tower is None:
        tower = z_tower(R, I, n)
    Y = I.vectors()
    for k in range(n):
        Z = tower.level(k - 1)
        for x in E:
            p = x
            for _ in range(n - k - 1):
                p = R.mul_many(p, x)[0]
            vals = R.mul_many(R.mul_many(p, Y), p)
            inside = Z.contains_many(vals)
            if not inside.all():
                j = int(np.nonzero(~inside)[0][0])
                return failed(f"x^(n-k) y x^(n-k) not in Z_{k - 1} (k={k})",
                              (k, tuple(map(int, x)), tuple(map(int, Y[j]))))
    return passed(f"k < {n}, |I|={I.order}, |e|={len(E)}")


def star(ibar, x: RingElement) -> RingElement:
    """``i_1 x i_2 i_3 x i_4 ... i_{2m-1} x i_{2m}``."""
    ibar = list(ibar)
    if not ibar or len(ibar) % 2:
        raise OddLength(f"need a nonempty even-length tuple, got length {len(ibar)}")
    for i in ibar:
        if i.ring != x.ring:
            raise RingMismatch("tuple and element live in different rings")
    out = ibar[0] * x * ibar[1]
    for k in range(2, len(ibar), 2):
        out = out * ibar[k] * x * ibar[k + 1]
    return out
