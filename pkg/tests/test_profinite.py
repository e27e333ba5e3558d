import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from finring.errors import BadDegree, ConstantTerm, NotPrime, ZeroPolynomial
from finring.profinite import (
    InverseSystem,
    check_system,
    connecting_map,
    evaluate_at_generators,
    free_nil_ring,
    free_nil_system,
    generator,
    generic_poly_nonvanishing,
    monomials,
    theorem2_shadow,
)
from finring.radical import jacobson_radical, nil_report
from finring.ring import RingHom

SMALL_PN = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)]


@pytest.mark.parametrize("p,n", SMALL_PN + [(2, 4), (5, 2)])
def test_dimension_is_p_to_the_n_minus_one(p, n):
    R = free_nil_ring(p, n)
    assert len(monomials(p, n)) == p ** n - 1
    assert R.order == p ** (p ** n - 1)


def test_free_nil_examples():
    R = free_nil_ring(2, 2)
    assert R.order == 8
    x0, x1 = generator(2, 2, 0), generator(2, 2, 1)
    assert {tuple(x0.coeffs), tuple(x1.coeffs), tuple((x0 * x1).coeffs)} == {
        tuple(R.gen(i).coeffs) for i in range(R.r)
    }
    rep = nil_report(R)
    assert (rep.nilexponent, rep.nilpotency_class) == (2, 3)
    S = free_nil_ring(3, 1)
    assert S.r == 2 and nil_report(S).nilexponent == 3
    with pytest.raises(NotPrime):
        free_nil_ring(4, 1)


@pytest.mark.parametrize("p,n", SMALL_PN)
def test_free_nil_is_commutative_and_generators_are_p_nil(p, n):
    R = free_nil_ring(p, n)
    assert R.is_commutative
    for i in range(n):
        x = generator(p, n, i)
        assert x ** (p - 1) and not x ** p


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (3, 1)])
def test_free_nil_invariants_match_oracles(p, n):
    R = free_nil_ring(p, n)
    E = oracles.elements(R)
    assert nil_report(R).nilexponent == oracles.nilexponent(R, E) == p
    assert nil_report(R).nilpotency_class == oracles.nilpotency_class(R, E) == n * (p - 1) + 1


def test_system_orders_and_surjections():
    sys = free_nil_system(2, 3)
    assert [R.order for R in sys.levels] == [2, 8, 128]
    for f in sys.maps:
        assert f.is_hom and f.is_surjective
    for R in sys.levels:
        assert jacobson_radical(R).is_whole()


def test_projection_kills_top_generators():
    sys = free_nil_system(2, 3)
    x = generator(2, 3, 0) + generator(2, 3, 2) + generator(2, 3, 0) * generator(2, 3, 1)
    assert sys.project(x, 0) == generator(2, 1, 0)
    assert sys.project(x, 2) == x


def test_check_system_passes_on_free_nil():
    v = check_system(free_nil_system(2, 3))
    assert v.passed
    assert [nil_report(R).nilpotency_class for R in free_nil_system(2, 3).levels] == [2, 3, 4]
    assert check_system(free_nil_system(3, 2)).passed


def test_check_system_catches_a_broken_map():
    # x_0 -> x_0^2 is additive but not multiplicative on free_nil(3, 1)
    src = free_nil_ring(3, 2)
    tgt = free_nil_ring(3, 1)
    good = connecting_map(3, 1)
    images = np.array(good.images)
    i0 = monomials(3, 2).index((1, 0))
    images[i0] = (generator(3, 1, 0) ** 2).coeffs
    broken = RingHom(src, tgt, images)
    assert not broken.is_hom
    v = check_system(InverseSystem((tgt, src), (broken,), free_nil=True))
    assert not v.passed and "homomorphism" in v.detail and v.witness is not None


def test_inverse_system_rejects_mismatched_maps():
    with pytest.raises(ValueError):
        InverseSystem((free_nil_ring(2, 1), free_nil_ring(2, 2)), ())
    with pytest.raises(ValueError):
        InverseSystem((free_nil_ring(2, 2), free_nil_ring(2, 1)), (connecting_map(2, 1),))


# -- polynomials ------------------------------------------------------------------------

def test_poly_examples():
    assert generic_poly_nonvanishing(2, 2, {(1, 1): 1, (1, 0): 1}).passed
    assert generic_poly_nonvanishing(3, 1, {(2,): 1}).passed
    assert generic_poly_nonvanishing(3, 1, [((1,), 1), ((1,), 2), ((2,), 1)]).passed


def test_poly_errors():
    with pytest.raises(NotPrime):
        generic_poly_nonvanishing(4, 1, {(1,): 1})
    with pytest.raises(ZeroPolynomial):
        generic_poly_nonvanishing(3, 1, {(1,): 3})
    with pytest.raises(BadDegree):
        generic_poly_nonvanishing(2, 1, {(2,): 1})
    with pytest.raises(BadDegree):
        generic_poly_nonvanishing(2, 2, {(1,): 1})
    with pytest.raises(ConstantTerm):
        generic_poly_nonvanishing(2, 1, {(0,): 1, (1,): 1})


def test_evaluation_drops_high_powers():
    assert not evaluate_at_generators(2, 1, {(2,): 1})


@st.composite
def reduced_polys(draw):
    p, n = draw(st.sampled_from([(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]))
    exps = [e for e in itertools.product(range(p), repeat=n) if any(e)]
    terms = draw(st.dictionaries(st.sampled_from(exps), st.integers(1, p - 1), min_size=1))
    return p, n, terms


@given(reduced_polys())
def test_reduced_polynomials_never_vanish(pnf):
    p, n, f = pnf
    assert generic_poly_nonvanishing(p, n, f).passed
    # oracle: evaluate by multiplying out generator powers directly
    R = free_nil_ring(p, n)
    acc = R.zero()
    for e, c in f.items():
        term = None
        for i, a in enumerate(e):
            for _ in range(a):
                x = generator(p, n, i)
                term = x if term is None else term * x
        acc = acc + c * term
    assert acc == evaluate_at_generators(p, n, f) and acc


# -- the tower report ------------------------------------------------------------------------

def test_tower_examples():
    r = theorem2_shadow(2, 4)
    assert r.nilexponents == (2, 2, 2, 2) and r.classes == (2, 3, 4, 5)
    assert r.verdict().passed
    r = theorem2_shadow(3, 2)
    assert r.nilexponents == (3, 3) and r.classes == (3, 5)
    assert [row.order for row in r.rows] == [3 ** 2, 3 ** 8]
    assert r.table().splitlines()[0].startswith("level")


def test_tower_orders_follow_formula():
    r = theorem2_shadow(2, 3)
    assert [row.order for row in r.rows] == [2 ** (2 ** n - 1) for n in (1, 2, 3)]
    assert all(row.radical_is_whole for row in r.rows)
