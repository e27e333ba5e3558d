"""Reading and writing ring definition files.

Text form::

    # comments and blank lines are ignored
    ring Z6
    moduli 6
    mul 0 0 : 1

Pairs without a ``mul`` line multiply to zero.  The same data is accepted as
JSON: ``{"name": ..., "moduli": [...], "mul": [[i, j, [c...]], ...]}``.
:func:`dumps` writes the canonical text form (sorted pairs, zero products
omitted, LF line endings), so ``dumps(loads(dumps(R))) == dumps(R)``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .errors import ParseError
from .ring import FiniteRing, build_ring


def _tokens(text: str, offset: int) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with their 1-based columns."""
    return [(m.group(), offset + m.start() + 1) for m in re.finditer(r"\S+", text)]


def _ints(tokens, line: int) -> list[int]:
    out = []
    for t, col in tokens:
        try:
            out.append(int(t))
        except ValueError:
            raise ParseError(f"expected an integer, got {t!r}", line, col) from None
    return out


def _parse_text(text: str) -> tuple[str, list[int], dict]:
    name, moduli, products = None, None, {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = _tokens(body, 0)
        if not toks:
            continue
        (head, col0), rest = toks[0], toks[1:]
        if head == "ring":
            if name is not None:
                raise ParseError("duplicate ring line", ln, col0)
            name = " ".join(t for t, _ in rest)
        elif head == "moduli":
            if moduli is not None:
                raise ParseError("duplicate moduli line", ln, col0)
            moduli = _ints(rest, ln)
            for (t, col), d in zip(rest, moduli):
                if d < 2:
                    raise ParseError(f"modulus {d} must be >= 2", ln, col)
        elif head == "mul":
            if moduli is None:
                raise ParseError("mul line before moduli line", ln, col0)
            colon = body.find(":")
            if colon < 0:
                raise ParseError("mul line needs 'i j : c_1 ... c_r'", ln, col0)
            lhs = [t for t in rest if t[1] <= colon]
            rhs = _tokens(body[colon + 1:], colon + 1)
            ij = _ints(lhs, ln)
            if len(ij) != 2:
                raise ParseError("mul line needs exactly two indices", ln, col0)
            r = len(moduli)
            for (t, col), i in zip(lhs, ij):
                if not 0 <= i < r:
                    raise ParseError(f"index {i} out of range 0..{r - 1}", ln, col)
            cs = _ints(rhs, ln)
            if len(cs) != r:
                col = rhs[0][1] if rhs else colon + 2
                raise ParseError(f"expected {r} constants, got {len(cs)}", ln, col)
            if tuple(ij) in products:
                raise ParseError(f"duplicate product {tuple(ij)}", ln, col0)
            products[tuple(ij)] = cs
        else:
            raise ParseError(f"unknown directive {head!r}", ln, col0)
    if moduli is None:
        raise ParseError("missing moduli line", 0, 0)
    return name or "", moduli, products


def _parse_json(text: str) -> tuple[str, list[int], dict]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    try:
        moduli = [int(d) for d in data["moduli"]]
        products = {}
        for i, j, cs in data.get("mul", []):
            if (int(i), int(j)) in products:
                raise ParseError(f"duplicate product {(i, j)}", 0, 0)
            products[(int(i), int(j))] = [int(c) for c in cs]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed JSON ring: {exc}", 0, 0) from None
    r = len(moduli)
    if any(d < 2 for d in moduli):
        raise ParseError("moduli must be >= 2", 0, 0)
    for (i, j), cs in products.items():
        if not (0 <= i < r and 0 <= j < r) or len(cs) != r:
            raise ParseError(f"bad product entry {(i, j)}", 0, 0)
    return str(data.get("name", "")), moduli, products


def loads(text: str) -> FiniteRing:
    """Parse and validate a ring (text or JSON form)."""
    if text.startswith("﻿"):
        text = text[1:]
    parse = _parse_json if text.lstrip().startswith("{") else _parse_text
    name, moduli, products = parse(text)
    r = len(moduli)
    sc = np.zeros((r, r, r), dtype=np.int64)
    for (i, j), cs in products.items():
        sc[i, j] = cs
    return build_ring(moduli, sc, name)


def load_ring(path) -> FiniteRing:
    return loads(Path(path).read_text(encoding="utf-8"))


def dumps(R: FiniteRing) -> str:
    lines = [f"ring {R.name}".rstrip(), " ".join(["moduli"] + [str(d) for d in R.moduli])]
    for i in range(R.r):
        for j in range(R.r):
            c = R.sc[i, j]
            if c.any():
                lines.append(f"mul {i} {j} : " + " ".join(str(int(x)) for x in c))
    return "\n".join(lines) + "\n"


def dump_ring(R: FiniteRing, path) -> None:
    Path(path).write_bytes(dumps(R).encode("utf-8"))


def to_json(R: FiniteRing) -> str:
    mul = [[i, j, [int(x) for x in R.sc[i, j]]]
           for i in range(R.r) for j in range(R.r) if R.sc[i, j].any()]
    return json.dumps({"name": R.name, "moduli": list(R.moduli), "mul": mul}, sort_keys=True)


def canonicalize(text: str) -> str:
    return dumps(loads(text))
