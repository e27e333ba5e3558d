import math

import pytest
from conftest import small_rings
from hypothesis import given
from hypothesis import strategies as st

import oracles
from finring import corpus
from finring.errors import NotSemisimple, NotSimple, NotUnital
from finring.fields import (
    finite_field,
    irreducible_poly,
    matrix_ring,
    poly_mod,
    zmod,
)
from finring.iso import automorphisms, is_isomorphic
from finring.radical import is_semisimple, jacobson_radical
from finring.ring import product
from finring.wedderburn import (
    Decomposition,
    decompose_semisimple,
    jordan_block,
    jordan_exponent,
    jordan_witness,
    maximal_two_sided_quotients,
    rebuild,
    recognize_matrix_ring,
    scramble,
    size_bounds,
    vanishes_on,
    w_poly,
    w_poly_degree,
)

SEMISIMPLE = [n for n, R in corpus.corpus(256) if is_semisimple(R) and R.order > 1]


# -- fields and matrix rings -------------------------------------------------------------

@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4)])
def test_irreducible_poly_has_no_factor(p, e):
    f = list(irreducible_poly(p, e))
    assert len(f) == e + 1 and f[-1] == 1
    # no monic factor of degree 1..e/2 divides f
    for d in range(1, e // 2 + 1):
        for code in range(p ** d):
            g = [(code // p ** i) % p for i in range(d)] + [1]
            assert any(poly_mod(f, g, p))


def test_matrix_ring_examples():
    M = matrix_ring(2, 2)
    assert M.order == 16 and M.is_unital and jacobson_radical(M).is_zero()
    F4 = matrix_ring(1, 4)
    assert F4.order == 4 and len(automorphisms(F4)) == 2


@pytest.mark.parametrize("q", [4, 8, 9])
def test_finite_field_has_inverses(q):
    F = finite_field(q)
    one = F.identity
    for x in F.elements():
        if x:
            assert any(x * y == one for y in F.elements())


# -- maximal quotients ---------------------------------------------------------------------

def test_maximal_quotient_examples():
    orders = sorted(Q.order for _, Q, _ in maximal_two_sided_quotients(zmod(6)))
    assert orders == [2, 3]
    [(m, Q, pi)] = maximal_two_sided_quotients(matrix_ring(2, 2))
    assert m.is_zero() and Q.order == 16
    [(m, Q, pi)] = maximal_two_sided_quotients(zmod(4))
    assert oracles.elements(zmod(4)) and {tuple(map(int, v)) for v in m.vectors()} == {(0,), (2,)}
    assert Q.order == 2


def test_maximal_quotients_need_identity():
    with pytest.raises(NotUnital):
        maximal_two_sided_quotients(corpus.load("twoz8"))


# -- recognition ----------------------------------------------------------------------------

@pytest.mark.parametrize("k,q", [(1, 2), (1, 3), (1, 4), (1, 9), (2, 2), (2, 3), (3, 2), (2, 4)])
def test_recognize_scrambled_matrix_rings(k, q):
    R = matrix_ring(k, q)
    if q in (4, 9) or k > 1:
        R = scramble(R, 7)[0] if all(d == R.moduli[0] for d in R.moduli) else R
    kk, qq, iso = recognize_matrix_ring(R)
    assert (kk, qq) == (k, q)
    assert iso.is_hom and iso.is_bijective


def test_recognize_rejects_non_simple():
    with pytest.raises(NotSimple):
        recognize_matrix_ring(zmod(4))
    with pytest.raises(NotSimple):
        recognize_matrix_ring(zmod(6))
    with pytest.raises(NotUnital):
        recognize_matrix_ring(corpus.load("null2"))


# -- decomposition ----------------------------------------------------------------------------

def test_decompose_examples():
    assert decompose_semisimple(zmod(6)).factors == ((1, 2, 1), (1, 3, 1))
    R = product([matrix_ring(2, 2), finite_field(3)])[0]
    assert str(decompose_semisimple(R)) == "[(2,2)^1, (1,3)^1]"
    # a zero radical is necessary
    with pytest.raises(NotSemisimple) as exc:
        decompose_semisimple(zmod(4))
    assert exc.value.witness.coeffs == (2,)


@pytest.mark.parametrize("name", SEMISIMPLE)
def test_rebuild_roundtrip_on_corpus(name):
    R = corpus.load(name)
    d = decompose_semisimple(R)
    assert d.iso.is_hom and d.iso.is_bijective
    assert d.order == R.order
    assert is_isomorphic(rebuild(d), R) is not None


def test_rebuild_examples():
    R = rebuild([(1, 2, 3)])
    assert R.order == 8 and is_semisimple(R)
    assert rebuild([]).order == 1
    assert rebuild([(1, 2, 1), (1, 2, 1)]).order == 4


def test_decomposition_serialization():
    d = Decomposition(((1, 3, 1), (2, 2, 1), (1, 2, 2)))
    assert d.factors == ((1, 2, 2), (2, 2, 1), (1, 3, 1))
    assert Decomposition.parse(d.serialize()) == d
    assert str(Decomposition(())) == "[]"
    with pytest.raises(ValueError):
        Decomposition(((0, 2, 1),))
    with pytest.raises(ValueError):
        Decomposition(((1, 6, 1),))


factor_lists = st.lists(
    st.tuples(st.sampled_from([1, 2]), st.sampled_from([2, 3, 4]), st.integers(1, 2)),
    min_size=1, max_size=2,
).filter(lambda fs: math.prod(q ** (k * k * m) for k, q, m in fs) <= 512)


@given(factor_lists, st.integers(0, 1000))
def test_decompose_recovers_scrambled_products(fs, seed):
    target = Decomposition(tuple(fs))
    R = rebuild(target)
    if all(d == R.moduli[0] for d in R.moduli):
        R = scramble(R, seed)[0]
    assert decompose_semisimple(R).factors == target.factors


@given(small_rings())
def test_semisimple_quotient_decomposes(R):
    from finring.ring import quotient
    Q, _ = quotient(R, jacobson_radical(R))
    if Q.order > 1:
        d = decompose_semisimple(Q)
        assert d.order == Q.order


# -- the polynomial w_m and the size bounds ------------------------------------------------

def test_w_poly_degree_examples():
    assert w_poly_degree(2) == 2
    assert w_poly_degree(3) == 8
    with pytest.raises(ValueError):
        w_poly_degree(1)


@pytest.mark.parametrize("m", range(2, 7))
def test_w_poly_degree_by_expansion(m):
    # multiply out prod (x^i - x^j) with integer coefficient lists
    poly = [1]
    for j in range(2, m + 1):
        for i in range(1, j):
            f = [0] * (j + 1)
            f[i], f[j] = 1, -1
            out = [0] * (len(poly) + len(f) - 1)
            for a, x in enumerate(poly):
                for b, y in enumerate(f):
                    out[a + b] += x * y
            poly = out
    while poly and poly[-1] == 0:
        poly.pop()
    assert len(poly) - 1 == w_poly_degree(m)


def test_size_bound_examples():
    assert size_bounds(2, 1).k_bound == 1
    assert size_bounds(3, 1).k_bound == 4
    b = size_bounds(2, 2 ** 25)
    assert b.k_bound == 5 and b.k_index_branch == 5 and b.k_poly_branch == 1
    assert size_bounds(2, 2 ** 25 - 1).k_index_branch == 4
    with pytest.raises(ValueError):
        size_bounds(1, 4)


@given(st.integers(1, 2 ** 80))
def test_index_branch_is_floor_sqrt_log(s):
    k = size_bounds(2, s).k_index_branch
    assert 2 ** (k * k) <= s < 2 ** ((k + 1) ** 2)


def test_jordan_examples():
    v = jordan_witness(2, 2, 2)
    assert v.passed and v.detail == "nonzero"
    N = jordan_block(2, 2)
    assert w_poly(2, N) == N - N * N == N
    v = jordan_witness(3, 5, 2)
    assert v.passed and v.detail == "nonzero"
    assert jordan_exponent(3) == 4


@pytest.mark.parametrize("m,k", [(2, 1), (2, 2), (2, 3), (3, 3), (3, 4), (3, 5), (3, 6)])
def test_jordan_block_vanishes_exactly_below_exponent(m, k):
    # w_m(N) = N^{e} times a unit with e = m(m-1)(m+1)/6, so it vanishes iff k <= e
    v = jordan_witness(m, k, 2)
    assert v.passed
    assert (v.detail == "zero") == (k <= jordan_exponent(m))


def test_vanishing_on_small_matrix_rings():
    # every element of F_2 satisfies x = x^2
    assert vanishes_on(2, finite_field(2))
    assert not vanishes_on(2, finite_field(3))
    assert vanishes_on(3, finite_field(3))
    assert vanishes_on(4, matrix_ring(2, 2))
    assert not vanishes_on(3, matrix_ring(2, 2))
