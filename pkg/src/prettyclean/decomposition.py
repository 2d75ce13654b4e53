"""Irreducible and primary decomposition of monomial ideals.

Also home to the pretty-cleanness sufficiency criteria that only look at the
associated primes: the dimension-stratified union bound, the chain condition
on ``Ass``, and the Borel-type test.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .core import (
    ImproperIdealError,
    MonomialIdeal,
    MonomialPrime,
    colon_monomial,
    ideal_sum,
    intersect_all,
    intersection,
    membership,
    prime_of,
    radical,
    saturation_ideal,
    saturation_var,
    support,
    unit_vector,
)


def _require_proper(I: MonomialIdeal):
    if not I.is_proper_nonzero():
        raise ImproperIdealError("improper ideal: expected a proper nonzero monomial ideal")


def component_sort_key(Q: MonomialIdeal):
    P = prime_of(radical(Q))
    return (P.sort_key(), Q.gens)


def _split_target(I: MonomialIdeal):
    # lexicographically first generator that is not a pure power
    for g in I.gens:
        if len(support(g)) > 1:
            return g
    return None


def irreducible_decomposition(I: MonomialIdeal) -> List[MonomialIdeal]:
    """Irredundant list of irreducible ideals intersecting to ``I``.

    Splits ``x^g = x_j^{g_j} * x^{g''}`` on the lowest variable of the first
    non-pure-power generator until every leaf is generated by pure powers.
    """
    _require_proper(I)
    n = I.n
    leaves = set()
    stack = [I]
    seen = set()
    while stack:
        J = stack.pop()
        if J in seen:
            continue
        seen.add(J)
        g = _split_target(J)
        if g is None:
            leaves.add(J)
            continue
        j = min(support(g))
        head = unit_vector(n, j, g[j - 1])
        tail = tuple(0 if k == j - 1 else e for k, e in enumerate(g))
        stack.append(ideal_sum(J, MonomialIdeal(n, [head])))
        stack.append(ideal_sum(J, MonomialIdeal(n, [tail])))
    # a component containing another one is redundant
    comps = sorted(leaves, key=component_sort_key)
    comps = [C for C in comps if not any(D != C and D <= C for D in comps)]
    comps = _irredundant(n, comps)
    assert intersect_all(n, comps) == I
    return sorted(comps, key=component_sort_key)


def _irredundant(n: int, comps: List[MonomialIdeal]) -> List[MonomialIdeal]:
    out = list(comps)
    i = 0
    while i < len(out):
        others = out[:i] + out[i + 1:]
        if others and intersect_all(n, others) <= out[i]:
            del out[i]
        else:
            i += 1
    return out


@dataclass
class DecompositionReport:
    ideal: MonomialIdeal
    irreducible_components: List[MonomialIdeal]
    primary_components: List[Tuple[MonomialIdeal, MonomialPrime]]
    ass: List[MonomialPrime] = field(default_factory=list)
    min_primes: List[MonomialPrime] = field(default_factory=list)
    ass_by_dim: Dict[int, List[MonomialPrime]] = field(default_factory=dict)

    def component(self, P: MonomialPrime) -> MonomialIdeal:
        for Q, R in self.primary_components:
            if R == P:
                return Q
        raise KeyError(str(P))


def primary_decomposition(I: MonomialIdeal) -> DecompositionReport:
    """Irredundant primary decomposition, one component per associated prime.

    Components come in descending height order (ties lexicographic on the
    variable sets), which is the order the almost-clean chain needs.
    """
    irr = irreducible_decomposition(I)
    groups: Dict[MonomialPrime, List[MonomialIdeal]] = {}
    for C in irr:
        groups.setdefault(prime_of(radical(C)), []).append(C)
    primary = [(intersect_all(I.n, Cs), P) for P, Cs in groups.items()]
    primary.sort(key=lambda QP: QP[1].sort_key())
    kept = _irredundant(I.n, [Q for Q, _ in primary])
    primary = [(Q, P) for Q, P in primary if Q in kept]
    assert intersect_all(I.n, [Q for Q, _ in primary]) == I

    ass = [P for _, P in primary]
    mins = [P for P in ass if not any(R < P for R in ass)]
    by_dim: Dict[int, List[MonomialPrime]] = {}
    for P in ass:
        by_dim.setdefault(P.dim, []).append(P)
    return DecompositionReport(I, irr, primary, ass, mins, dict(sorted(by_dim.items())))


def associated_primes(I: MonomialIdeal) -> List[MonomialPrime]:
    return primary_decomposition(I).ass


def quotient_associated_primes(big: MonomialIdeal, small: MonomialIdeal) -> List[MonomialPrime]:
    """``Ass(big/small)`` for monomial ideals ``small ⊆ big``.

    Multigraded associated primes are annihilators of monomials, so it is
    enough to scan ``x^b in big \\ small`` over the degree box of both ideals.
    """
    if not small <= big:
        raise ValueError("expected small ⊆ big")
    top = [max(a, b) for a, b in zip(big.max_exponents(), small.max_exponents())]
    found = set()
    for b in itertools.product(*(range(t + 1) for t in top)):
        if membership(big, b) and not membership(small, b):
            P = prime_of(colon_monomial(small, b))
            if P is not None:
                found.add(P)
    return sorted(found, key=MonomialPrime.sort_key)


@dataclass
class PretRow:
    dim: int
    union: frozenset
    bound: int

    @property
    def ok(self) -> bool:
        return len(self.union) <= self.bound


def pret_criterion(I: MonomialIdeal) -> Tuple[bool, List[PretRow]]:
    """For every ``d > 0`` with primes of dimension ``d``: ``|union of their
    variable sets| <= n - d + 1``.  Sufficient for pretty cleanness."""
    report = primary_decomposition(I)
    rows = []
    for d, primes in sorted(report.ass_by_dim.items(), reverse=True):
        if d <= 0:
            continue
        union = frozenset().union(*(P.vars for P in primes))
        rows.append(PretRow(d, union, I.n - d + 1))
    return all(r.ok for r in rows), rows


@dataclass
class DimensionFiltration:
    """Levels ``(d_i, U_i)`` with ``U_i`` the intersection of the primary
    components whose prime has dimension ``> d_i``; ``U_i / I`` is the
    largest submodule of ``S/I`` of dimension ``<= d_i``."""

    ideal: MonomialIdeal
    levels: List[Tuple[int, MonomialIdeal]]


def dimension_filtration(I: MonomialIdeal) -> DimensionFiltration:
    report = primary_decomposition(I)
    dims = sorted(report.ass_by_dim)
    levels = []
    for d in dims:
        U = intersect_all(I.n, (Q for Q, P in report.primary_components if P.dim > d))
        levels.append((d, U))
    return DimensionFiltration(I, levels)


def is_borel_type(I: MonomialIdeal) -> bool:
    """``I : (x1..xj)^inf == I : xj^inf`` for every ``j``."""
    _require_proper(I)
    for j in range(1, I.n + 1):
        gens = MonomialIdeal(I.n, [unit_vector(I.n, k) for k in range(1, j + 1)])
        if saturation_ideal(I, gens) != saturation_var(I, j):
            return False
    return True


def ass_totally_ordered(I: MonomialIdeal) -> bool:
    ass = associated_primes(I)
    return all(P <= R or R <= P for P, R in itertools.combinations(ass, 2))


def almost_clean_chain(I: MonomialIdeal) -> List[MonomialIdeal]:
    """``[U_0, U_1, ..., U_t]`` with ``U_0 = S`` and ``U_j`` the intersection
    of the first ``j`` primary components (largest primes first).

    Each ``U_{j-1}/U_j`` has the single associated prime ``P_j``.
    """
    report = primary_decomposition(I)
    chain = [MonomialIdeal.unit(I.n)]
    for Q, _ in report.primary_components:
        chain.append(intersection(chain[-1], Q))
    return chain
