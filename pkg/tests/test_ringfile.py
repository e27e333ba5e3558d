import pytest
from conftest import small_rings
from hypothesis import given

from finring import corpus
from finring.corpus import CORPUS_DIR
from finring.errors import NonAssociative, ParseError
from finring.iso import is_isomorphic
from finring.ringfile import canonicalize, dump_ring, dumps, load_ring, loads, to_json


@given(small_rings())
def test_text_roundtrip_is_byte_stable(R):
    text = dumps(R)
    S = loads(text)
    assert dumps(S) == text
    assert S.moduli == R.moduli and (S.sc == R.sc).all()


@given(small_rings())
def test_json_roundtrip(R):
    S = loads(to_json(R))
    assert dumps(S) == dumps(R)


def test_canonicalize_normalizes_layout():
    messy = "﻿# Z/6\n\n  ring z6  \nmoduli   6\nmul 0 0 : 1   # the unit\n"
    assert canonicalize(messy) == "ring z6\nmoduli 6\nmul 0 0 : 1\n"
    # explicit zero products are dropped
    assert canonicalize("moduli 2 2\nmul 0 1 : 0 0\nmul 0 0 : 1 0\n") == "ring\nmoduli 2 2\nmul 0 0 : 1 0\n"


def test_zero_ring_file():
    R = loads("ring zero\nmoduli\n")
    assert R.order == 1
    assert loads(dumps(R)).order == 1


def test_file_roundtrip(tmp_path):
    R = corpus.load("ut2f2")
    p = tmp_path / "r.ring"
    dump_ring(R, p)
    assert p.read_bytes() == dumps(R).encode()
    assert dumps(load_ring(p)) == dumps(R)


@pytest.mark.parametrize("name", corpus.names())
def test_corpus_files_match_constructors(name):
    R = load_ring(CORPUS_DIR / f"{name}.ring")
    assert (CORPUS_DIR / f"{name}.ring").read_text() == dumps(corpus.build(name))
    assert R.name == name


def test_corpus_is_broad_enough():
    rings = list(corpus.corpus(256))
    assert len(rings) >= 15
    assert max(R.order for _, R in rings) == 256
    assert any(not R.is_unital for _, R in rings)


def test_corpus_products_are_what_they_say():
    from finring.fields import zmod
    from finring.ring import product
    assert is_isomorphic(corpus.load("f2xf3"), zmod(6)) is not None
    assert is_isomorphic(corpus.load("ut2f2xz4"), product([corpus.load("ut2f2"), zmod(4)])[0]) is not None


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("moduli 2 x\n", 1, 10),
        ("ring a\nmoduli 2 1\n", 2, 10),
        ("mul 0 0 : 1\n", 1, 1),
        ("moduli 2\nmul 0 : 1\n", 2, 1),
        ("moduli 2\nmul 0 1 : 1\n", 2, 7),
        ("moduli 2 2\nmul 0 0 : 1\n", 2, 11),
        ("moduli 2\nmul 0 0 : 1\nmul 0 0 : 1\n", 3, 1),
        ("moduli 2\nmoduli 2\n", 2, 1),
        ("moduli 2\nfoo\n", 2, 1),
        ("ring a\n", 0, 0),
    ],
)
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as exc:
        loads(text)
    assert (exc.value.line, exc.value.col) == (line, col)


def test_json_parse_errors():
    with pytest.raises(ParseError):
        loads('{"moduli": [2], "mul": [[0, 0]]}')
    with pytest.raises(ParseError):
        loads('{"moduli": [2], "mul": [[0, 3, [1]]]}')
    with pytest.raises(ParseError) as exc:
        loads('{"moduli": [2],\n "mul": }')
    assert exc.value.line == 2


def test_load_validates_ring_axioms():
    with pytest.raises(NonAssociative):
        loads("moduli 2 2\nmul 0 0 : 0 1\nmul 0 1 : 1 0\n")
