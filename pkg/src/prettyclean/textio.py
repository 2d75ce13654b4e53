"""Parsing and printing of ideals, faces, multicomplexes and filtrations.

Ideal grammar (whitespace insignificant)::

    ideal     := generator (',' generator)* | '0'
    generator := factor ('*' factor)* | '1'
    factor    := 'x' INDEX ('^' NAT)?

Infinity is written ``"inf"`` in JSON faces.
"""
from __future__ import annotations

import json
import re
from typing import Any, List, Optional, Sequence

from .core import INF, Face, MonomialIdeal, MonomialPrime

INF_TOKEN = "inf"


class ParseError(ValueError):
    def __init__(self, message: str, pos: Optional[int] = None):
        self.pos = pos
        super().__init__(message if pos is None else f"{message} at position {pos}")


_TOKEN = re.compile(r"\s*(?:(?P<x>x)|(?P<num>\d+)|(?P<op>[\^*,])|(?P<bad>\S))")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.lastgroup == "bad":
            raise ParseError(f"unexpected character {m.group('bad')!r}", m.start("bad"))
        out.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def parse_monomials(text: str) -> List[dict]:
    """Parse to a list of ``{index: exponent}`` dicts (index 1-based)."""
    toks = _tokens(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind, value=None):
        nonlocal i
        k, v, p = toks[i]
        if k != kind or (value is not None and v != value):
            what = value or kind
            raise ParseError(f"expected {what!r}", p)
        i += 1
        return v, p

    if peek()[0] == "num" and peek()[1] == "0" and toks[1][0] == "end":
        return []
    if peek()[0] == "end":
        raise ParseError("empty ideal; write 0 for the zero ideal", peek()[2])
    gens = []
    while True:
        mono: dict = {}
        if peek()[0] == "num":
            v, p = take("num")
            if v != "1":
                raise ParseError("only the constant 1 may appear as a generator", p)
        else:
            while True:
                take("x")
                idx, p = take("num")
                idx = int(idx)
                if idx == 0:
                    raise ParseError("variable index 0 is not allowed", p)
                exp = 1
                if peek()[:2] == ("op", "^"):
                    _, caret = take("op", "^")
                    if peek()[0] != "num":
                        raise ParseError("expected an exponent after '^'", caret)
                    e, p = take("num")
                    exp = int(e)
                    if exp == 0:
                        raise ParseError("exponent 0 is not allowed", p)
                mono[idx] = mono.get(idx, 0) + exp
                if peek()[:2] == ("op", "*"):
                    take("op", "*")
                    continue
                break
        gens.append(mono)
        if peek()[:2] == ("op", ","):
            take("op", ",")
            continue
        k, v, p = peek()
        if k != "end":
            raise ParseError(f"unexpected {v!r}", p)
        return gens


def parse_ideal(text: str, n: Optional[int] = None) -> MonomialIdeal:
    monos = parse_monomials(text)
    top = max((max(m) for m in monos if m), default=0)
    if n is None:
        n = top
    elif top > n:
        raise ParseError(f"variable x{top} exceeds the {n} declared variables")
    gens = []
    for m in monos:
        v = [0] * n
        for k, e in m.items():
            v[k - 1] = e
        gens.append(tuple(v))
    return MonomialIdeal(n, gens)


def parse_monomial(text: str, n: int) -> tuple:
    I = parse_ideal(text, n)
    if len(I.gens) != 1:
        raise ParseError(f"expected a single monomial, got {text!r}")
    return I.gens[0]


def format_monomial(b: Sequence[int]) -> str:
    parts = [f"x{k + 1}" if e == 1 else f"x{k + 1}^{e}" for k, e in enumerate(b) if e]
    return "*".join(parts) if parts else "1"


def format_ideal(I: MonomialIdeal) -> str:
    if I.is_zero():
        return "0"
    return ", ".join(format_monomial(g) for g in reversed(I.gens))


def format_prime(P: MonomialPrime) -> str:
    return str(P)


def format_face(a: Face) -> str:
    return "(" + ",".join(INF_TOKEN if v is INF else str(v) for v in a) + ")"


def face_to_json(a: Face) -> list:
    return [INF_TOKEN if v is INF else v for v in a]


def face_from_json(entries: Sequence[Any]) -> Face:
    out = []
    for v in entries:
        if v == INF_TOKEN:
            out.append(INF)
        elif isinstance(v, int) and not isinstance(v, bool):
            if v < 0:
                raise ValueError(f"negative face entry {v}")
            out.append(v)
        else:
            raise ValueError(f"face entries must be naturals or {INF_TOKEN!r}, got {v!r}")
    return tuple(out)


def faces_from_json(data, n: Optional[int] = None) -> List[Face]:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, list) or not all(isinstance(a, list) for a in data):
        raise ValueError("expected a JSON array of faces")
    faces = [face_from_json(a) for a in data]
    lengths = {len(a) for a in faces}
    if len(lengths) > 1:
        raise ValueError("ragged face arrays")
    if n is not None and lengths and lengths != {n}:
        raise ValueError(f"faces must have length {n}")
    return faces


def parse_multicomplex(data, n: Optional[int] = None):
    from .multicomplex import Multicomplex
    faces = faces_from_json(data, n)
    if not faces:
        raise ValueError("a multicomplex needs at least one face")
    return Multicomplex(len(faces[0]), tuple(faces))


def multicomplex_to_json(G) -> list:
    return [face_to_json(m) for m in G.maximal_facets]


def prime_to_json(P: MonomialPrime) -> list:
    return sorted(P.vars)


def ideal_to_json(I: MonomialIdeal) -> list:
    return [format_monomial(g) for g in reversed(I.gens)]


def ideal_from_json(gens: Sequence[str], n: int) -> MonomialIdeal:
    if not gens:
        return MonomialIdeal.zero(n)
    return parse_ideal(", ".join(gens), n)


def filtration_to_json(f) -> dict:
    return {
        "kind": "filtration",
        "n": f.base.n,
        "base": ideal_to_json(f.base),
        "steps": [
            {
                "before": ideal_to_json(s.ideal_before),
                "witness": format_monomial(s.witness),
                "prime": prime_to_json(s.prime),
                "shift": list(s.shift),
            }
            for s in f.steps
        ],
    }


def filtration_from_json(doc: dict):
    from .filtration import FiltrationStep, PrimeFiltration
    n = doc["n"]
    base = ideal_from_json(doc["base"], n)
    steps = []
    for rec in doc["steps"]:
        shift = tuple(rec["shift"])
        if len(shift) != n:
            raise ValueError("shift has the wrong length")
        steps.append(FiltrationStep(
            ideal_from_json(rec["before"], n),
            parse_monomial(rec["witness"], n),
            MonomialPrime(n, frozenset(rec["prime"])),
            shift,
        ))
    return PrimeFiltration(base, steps)
