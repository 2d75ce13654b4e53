"""Multicomplexes in the extended lattice and their facets.

A multicomplex is stored as its antichain of maximal facets; ``a`` is a face
iff ``a <= m`` for some maximal facet ``m``.  Its ideal ``I(Γ)`` is spanned by
the monomials outside the multicomplex.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

from .core import (
    INF,
    DimensionMismatch,
    Face,
    ImproperIdealError,
    MonomialIdeal,
    MonomialPrime,
    colon_monomial,
    gcd,
    intersect_all,
    is_finite,
    leq,
    maximal_elements,
    membership,
    substitute_ones,
    support,
    unit_vector,
)
from .decomposition import irreducible_decomposition


def face_sort_key(a: Face):
    return tuple(a)


def _as_face(a) -> Face:
    out = []
    for v in a:
        if v is INF:
            out.append(INF)
        elif isinstance(v, int) and not isinstance(v, bool) and v >= 0:
            out.append(v)
        else:
            raise ValueError(f"face entries must be naturals or INF, got {v!r}")
    return tuple(out)


@dataclass(frozen=True)
class Multicomplex:
    n: int
    maximal_facets: Tuple[Face, ...]

    def __post_init__(self):
        faces = [_as_face(a) for a in self.maximal_facets]
        if not faces:
            raise ValueError("a multicomplex needs at least one maximal facet")
        for a in faces:
            if len(a) != self.n:
                raise DimensionMismatch(f"face {a} has length {len(a)}, expected {self.n}")
        object.__setattr__(self, "maximal_facets", maximal_elements(faces))

    def __contains__(self, a) -> bool:
        return any(leq(a, m) for m in self.maximal_facets)

    def finite_bound(self) -> int:
        """Largest finite coordinate over all maximal facets."""
        return max((v for m in self.maximal_facets for v in m if is_finite(v)), default=0)

    def __str__(self):
        from .textio import format_face
        return "<" + ", ".join(format_face(m) for m in self.maximal_facets) + ">"


def generated(n: int, faces: Iterable[Face]) -> Multicomplex:
    """``Γ(a_1, ..., a_r)``: the multicomplex generated by the given faces."""
    return Multicomplex(n, tuple(faces))


def infinite_part(a: Face) -> frozenset:
    """1-based coordinates where ``a`` is infinite."""
    return frozenset(i + 1 for i, v in enumerate(a) if v is INF)


def face_prime(a: Face) -> MonomialPrime:
    """The prime generated by the variables outside the infinite part."""
    n = len(a)
    return MonomialPrime(n, frozenset(range(1, n + 1)) - infinite_part(a))


def flatten(a: Face) -> Tuple[int, ...]:
    return tuple(0 if v is INF else v for v in a)


def irreducible_ideal_of_face(m: Face) -> MonomialIdeal:
    """``I(Γ(m)) = (x_j^{m(j)+1} : m(j) finite)``."""
    n = len(m)
    return MonomialIdeal(n, [unit_vector(n, j + 1, v + 1) for j, v in enumerate(m) if is_finite(v)])


def multicomplex_from_ideal(I: MonomialIdeal) -> Multicomplex:
    if I.is_unit():
        raise ImproperIdealError("improper ideal: the unit ideal has the empty multicomplex")
    if I.is_zero():
        return Multicomplex(I.n, ((INF,) * I.n,))
    facets = []
    for C in irreducible_decomposition(I):
        m = [INF] * I.n
        for g in C.gens:
            (j,) = support(g)
            m[j - 1] = g[j - 1] - 1
        facets.append(tuple(m))
    return Multicomplex(I.n, tuple(facets))


def ideal_from_multicomplex(G: Multicomplex) -> MonomialIdeal:
    return intersect_all(G.n, (irreducible_ideal_of_face(m) for m in G.maximal_facets))


def intersect(G1: Multicomplex, G2: Multicomplex) -> Multicomplex:
    if G1.n != G2.n:
        raise DimensionMismatch(f"ambient mismatch: {G1.n} vs {G2.n}")
    return Multicomplex(G1.n, tuple(gcd(u, v) for u in G1.maximal_facets for v in G2.maximal_facets))


def intersection_facets(previous: Iterable[Face], a: Face) -> Tuple[Face, ...]:
    """Maximal facets of ``Γ(previous) ∩ Γ(a)``; empty if ``previous`` is."""
    return maximal_elements(gcd(p, a) for p in previous)


def is_facet(G: Multicomplex, a: Face) -> bool:
    """``a`` is a face and every maximal facet above it has the same infinite part."""
    above = [m for m in G.maximal_facets if leq(a, m)]
    ip = infinite_part(a)
    return bool(above) and all(infinite_part(m) == ip for m in above)


@dataclass
class FacetSet:
    facets: Tuple[Face, ...]
    by_prime: Dict[MonomialPrime, Tuple[Face, ...]] = field(default_factory=dict)

    def __len__(self):
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)


def _candidates(G: Multicomplex, ip: frozenset):
    same = [m for m in G.maximal_facets if infinite_part(m) == ip]
    ranges = []
    for k in range(G.n):
        if k + 1 in ip:
            ranges.append((INF,))
        else:
            ranges.append(range(max(m[k] for m in same) + 1))
    return itertools.product(*ranges)


def enumerate_facets(G: Multicomplex) -> FacetSet:
    """All facets of ``G``.

    A facet with infinite part ``F`` lies below a maximal facet with the same
    infinite part, so for each such ``F`` the finite coordinates range over
    ``0..max m(k)`` among those maximal facets.
    """
    found = set()
    for ip in sorted({infinite_part(m) for m in G.maximal_facets}, key=sorted):
        for a in _candidates(G, ip):
            if is_facet(G, a):
                found.add(a)
    facets = tuple(sorted(found))
    groups: Dict[MonomialPrime, List[Face]] = {}
    for a in facets:
        groups.setdefault(face_prime(a), []).append(a)
    by_prime = {P: tuple(groups[P]) for P in sorted(groups, key=MonomialPrime.sort_key)}
    return FacetSet(facets, by_prime)


def facet_test_algebraic(G: Multicomplex, u: Face, ideal: MonomialIdeal = None) -> bool:
    """Facet test through the ideal: ``(I(Γ) : x^ũ)`` localized at ``P_u`` is
    ``P_u``-primary, with ``ũ`` the flattening of ``u``."""
    u = _as_face(u)
    if u not in G:
        raise ValueError(f"{u} is not a face of the multicomplex")
    I = ideal if ideal is not None else ideal_from_multicomplex(G)
    ip = infinite_part(u)
    J = substitute_ones(colon_monomial(I, flatten(u)), ip)
    if J.is_unit():
        return False
    pure = set()
    for g in J.gens:
        s = support(g)
        if len(s) == 1:
            pure |= s
    return pure >= set(range(1, G.n + 1)) - ip


def arithmetic_degree_report(G: Multicomplex) -> Dict[MonomialPrime, int]:
    """Facet counts per prime; their total is the arithmetic degree of ``S/I(Γ)``."""
    counts = Counter(face_prime(a) for a in enumerate_facets(G))
    return {P: counts[P] for P in sorted(counts, key=MonomialPrime.sort_key)}


def faces_in_box(G: Multicomplex, bound: int):
    """Finite faces of ``G`` with every coordinate ``<= bound``."""
    for b in itertools.product(range(bound + 1), repeat=G.n):
        if b in G:
            yield b


def local_socle_count(I: MonomialIdeal, P: MonomialPrime) -> int:
    """``dim H^0_P((S/I)_P)`` over the residue field, by brute force.

    Counts monomials ``x^b`` in the variables of ``P`` outside the localized
    ideal that are killed by a power of every variable of ``P``.
    """
    outside = set(range(1, I.n + 1)) - P.vars
    IP = substitute_ones(I, outside)
    if IP.is_unit():
        return 0
    top = IP.max_exponents()
    big = max(top, default=0) + 1
    count = 0
    ranges = [range(top[k] + 1) if k + 1 in P.vars else (0,) for k in range(I.n)]
    for b in itertools.product(*ranges):
        if membership(IP, b):
            continue
        if all(membership(IP, tuple(e + big if k + 1 == j else e for k, e in enumerate(b)))
               for j in P.vars):
            count += 1
    return count
