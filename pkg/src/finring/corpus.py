"""The curated ring corpus.

Each entry is built by a constructor and also shipped as a ``.ring`` file in
``finring/data/corpus``; the tests check that both agree.  Regenerate the
files with ``python -m finring.corpus``.
"""

from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

import numpy as np

from .fields import finite_field, matrix_ring, null_ring, truncated_poly, upper_triangular, zmod
from .profinite import free_nil_ring
from .ring import FiniteRing, build_ring, product, subring_as_ring
from .ringfile import dumps, load_ring

CORPUS_DIR = Path(__file__).parent / "data" / "corpus"


def _renamed(R: FiniteRing, name: str) -> FiniteRing:
    return FiniteRing(R.moduli, R.sc, name)


def _prod(*rings) -> FiniteRing:
    return product(list(rings))[0]


def row_ring(p: int = 2) -> FiniteRing:
    """``{[[a, b], [0, 0]]}``: left identities but no right identity."""
    return build_ring([p, p], {(0, 0): [1, 0], (0, 1): [0, 1]})


def column_ring(p: int = 2) -> FiniteRing:
    """``{[[a, 0], [b, 0]]}``: the opposite of :func:`row_ring`."""
    return build_ring([p, p], {(0, 0): [1, 0], (1, 0): [0, 1]})


def even_z8() -> FiniteRing:
    """``2Z/8Z`` as a ring without identity."""
    R = zmod(8)
    return subring_as_ring(R.span([[2]]))[0]


CONSTRUCTORS = {
    "z2": lambda: zmod(2),
    "z3": lambda: zmod(3),
    "z4": lambda: zmod(4),
    "z6": lambda: zmod(6),
    "z8": lambda: zmod(8),
    "z9": lambda: zmod(9),
    "z12": lambda: zmod(12),
    "f4": lambda: finite_field(4),
    "f8": lambda: finite_field(8),
    "f9": lambda: finite_field(9),
    "m2f2": lambda: matrix_ring(2, 2),
    "m2f3": lambda: matrix_ring(2, 3),
    "ut2f2": lambda: upper_triangular(2, 2),
    "ut2f3": lambda: upper_triangular(2, 3),
    "ut3f2": lambda: upper_triangular(3, 2),
    "null2": lambda: null_ring([2]),
    "null3": lambda: null_ring([3]),
    "null4": lambda: null_ring([4]),
    "null2x2": lambda: null_ring([2, 2]),
    "freenil_p2_g1": lambda: free_nil_ring(2, 1),
    "freenil_p2_g2": lambda: free_nil_ring(2, 2),
    "freenil_p2_g3": lambda: free_nil_ring(2, 3),
    "freenil_p3_g1": lambda: free_nil_ring(3, 1),
    "f2t_t2": lambda: truncated_poly(2, 2),
    "f2t_t3": lambda: truncated_poly(2, 3),
    "z4t_t2": lambda: truncated_poly(4, 2),
    "f2t_t8": lambda: truncated_poly(2, 8),
    "f2xf2": lambda: _prod(zmod(2), zmod(2)),
    "f2xf3": lambda: _prod(zmod(2), zmod(3)),
    "f4xf4": lambda: _prod(finite_field(4), finite_field(4)),
    "m2f2xf3": lambda: _prod(matrix_ring(2, 2), zmod(3)),
    "m2f2xm2f2": lambda: _prod(matrix_ring(2, 2), matrix_ring(2, 2)),
    "ut2f2xz4": lambda: _prod(upper_triangular(2, 2), zmod(4)),
    "row2f2": lambda: row_ring(2),
    "col2f2": lambda: column_ring(2),
    "twoz8": even_z8,
    "z4xnull2": lambda: _prod(zmod(4), null_ring([2])),
    "f2xfreenil_p2_g2": lambda: _prod(zmod(2), free_nil_ring(2, 2)),
}


@lru_cache(maxsize=None)
def build(name: str) -> FiniteRing:
    """Corpus ring ``name`` from its constructor (named ``name``)."""
    return _renamed(CONSTRUCTORS[name](), name)


def names() -> list[str]:
    return sorted(CONSTRUCTORS)


@lru_cache(maxsize=None)
def load(name: str) -> FiniteRing:
    """Corpus ring ``name`` read from its shipped file."""
    return load_ring(CORPUS_DIR / f"{name}.ring")


def corpus(max_order: int | None = None) -> list[tuple[str, FiniteRing]]:
    """``(name, ring)`` pairs from the shipped files, sorted by name."""
    out = [(n, load(n)) for n in names()]
    if max_order is not None:
        out = [(n, R) for n, R in out if R.order <= max_order]
    return out


def write_files(directory: Path = CORPUS_DIR) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for n in names():
        (directory / f"{n}.ring").write_bytes(dumps(build(n)).encode("utf-8"))


if __name__ == "__main__":
    write_files(Path(sys.argv[1]) if len(sys.argv) > 1 else CORPUS_DIR)
