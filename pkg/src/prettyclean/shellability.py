"""Shelling orders of multicomplexes.

A facet order ``a_1, ..., a_r`` is a shelling when

1. ``a_1`` lies in ``{0, inf}^n``;
2. for ``i >= 2`` every maximal facet of ``Γ(a_1..a_{i-1}) ∩ Γ(a_i)`` is a
   lower neighbour of ``a_i``;
3. every finite coordinate ``k`` with ``a_i(k) > 0`` is cut down by some
   maximal facet ``w`` of that intersection (``w(k) < a_i(k)``);
4. no earlier facet has an infinite part properly contained in a later one.

(1)-(3) say that each difference ``Γ(a_i) \\ Γ(a_1..a_{i-1})`` is a Stanley
set; (4) is the ordering condition on their directions.  The Stanley property
is independently checked on a truncated box by :func:`stanley_oracle`.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .core import INF, Face, is_finite, leq
from .multicomplex import (
    Multicomplex,
    _as_face,
    enumerate_facets,
    face_prime,
    infinite_part,
    intersection_facets,
)

DEFAULT_MAX_FACETS = 12
DEFAULT_MAX_NODES = 2_000_000


class SearchCapExceeded(RuntimeError):
    pass


class OrderError(ValueError):
    """The proposed order is not a permutation of the expected faces."""


def is_lower_neighbour(a: Face, b: Face) -> bool:
    """``a`` and ``b`` differ in exactly one coordinate ``k`` where either
    ``a(k) + 1 == b(k) < inf`` or ``a(k) < inf == b(k)``."""
    if len(a) != len(b):
        return False
    diff = [k for k in range(len(a)) if a[k] != b[k]]
    if len(diff) != 1:
        return False
    k = diff[0]
    if b[k] is INF:
        return is_finite(a[k])
    return is_finite(a[k]) and a[k] + 1 == b[k]


def differing_coordinates(a: Face, b: Face) -> List[int]:
    """1-based coordinates where ``a`` and ``b`` differ."""
    return [k + 1 for k in range(len(a)) if a[k] != b[k]]


@dataclass
class StepCheck:
    index: int
    face: Face
    intersection: Tuple[Face, ...] = ()
    cond1: Optional[bool] = None
    cond2: Optional[bool] = None
    bad_neighbours: Tuple[Face, ...] = ()
    cond3: Optional[bool] = None
    bad_coordinates: Tuple[int, ...] = ()
    cond4: bool = True
    bad_pairs: Tuple[Tuple[int, int], ...] = ()

    @property
    def ok(self) -> bool:
        return all(c is not False for c in (self.cond1, self.cond2, self.cond3, self.cond4))

    @property
    def stanley_ok(self) -> bool:
        return all(c is not False for c in (self.cond1, self.cond2, self.cond3))


@dataclass
class ShellingVerdict:
    order: Tuple[Face, ...]
    steps: List[StepCheck]

    @property
    def overall(self) -> bool:
        return all(s.ok for s in self.steps)

    def failures(self) -> List[str]:
        out = []
        for s in self.steps:
            if s.cond1 is False:
                out.append(f"i={s.index}: (1) first facet not in {{0,inf}}^n")
            if s.cond2 is False:
                out.append(f"i={s.index}: (2) not lower neighbours: {list(s.bad_neighbours)}")
            if s.cond3 is False:
                out.append(f"i={s.index}: (3) uncut coordinates {list(s.bad_coordinates)}")
            if s.cond4 is False:
                out.append(f"i={s.index}: (4) infinite parts properly nested at {list(s.bad_pairs)}")
        return out


def _check_step(prefix: Sequence[Face], a: Face, index: int) -> StepCheck:
    step = StepCheck(index, a)
    if not prefix:
        step.cond1 = all(v == 0 or v is INF for v in a)
    else:
        W = intersection_facets(prefix, a)
        step.intersection = W
        bad = tuple(w for w in W if not is_lower_neighbour(w, a))
        step.cond2 = not bad
        step.bad_neighbours = bad
        ip = infinite_part(a)
        uncut = tuple(k + 1 for k in range(len(a))
                      if k + 1 not in ip and a[k] > 0 and not any(w[k] < a[k] for w in W))
        step.cond3 = not uncut
        step.bad_coordinates = uncut
    ip = infinite_part(a)
    pairs = tuple((j + 1, index) for j, b in enumerate(prefix) if infinite_part(b) < ip)
    step.cond4 = not pairs
    step.bad_pairs = pairs
    return step


def _step_ok(prefix: Sequence[Face], a: Face) -> bool:
    ip = infinite_part(a)
    if any(infinite_part(b) < ip for b in prefix):
        return False
    if not prefix:
        return all(v == 0 or v is INF for v in a)
    W = intersection_facets(prefix, a)
    if not all(is_lower_neighbour(w, a) for w in W):
        return False
    return all(any(w[k] < a[k] for w in W)
               for k in range(len(a)) if a[k] is not INF and a[k] > 0)


def _check_permutation(order, expected, what):
    order = tuple(_as_face(a) for a in order)
    if sorted(order) != sorted(expected):
        raise OrderError(f"order is not a permutation of the {what}")
    return order


def check_shelling_order(G: Multicomplex, order: Sequence[Face]) -> ShellingVerdict:
    order = _check_permutation(order, enumerate_facets(G).facets, "facets")
    steps = [_check_step(order[:i], a, i + 1) for i, a in enumerate(order)]
    return ShellingVerdict(order, steps)


def stanley_offset(prefix: Sequence[Face], a: Face) -> Tuple[int, ...]:
    """Offset of ``Γ(a) \\ Γ(prefix)`` assuming conditions (1)-(3) hold."""
    W = intersection_facets(prefix, a)
    out = []
    for k, v in enumerate(a):
        if is_finite(v):
            out.append(v)
        else:
            cut = [w[k] for w in W if is_finite(w[k])]
            out.append(max(cut) + 1 if cut else 0)
    return tuple(out)


@dataclass(frozen=True)
class StanleySet:
    """``offset + Γ(m)`` with ``m`` infinite exactly on ``directions``."""

    offset: Tuple[int, ...]
    directions: frozenset

    @property
    def dim(self) -> int:
        return len(self.directions)


def _truncate(a: Face, T: int) -> Tuple[int, ...]:
    return tuple(T if v is INF else v for v in a)


def _materialize(G: Multicomplex, order: Sequence[Face], i: int):
    T = G.finite_bound() + 1
    top = _truncate(order[i], T)
    prev = [_truncate(b, T) for b in order[:i]]
    pts = [p for p in itertools.product(*(range(t + 1) for t in top))
           if not any(leq(p, q) for q in prev)]
    return pts, T


def stanley_oracle(G: Multicomplex, order: Sequence[Face], i: int) -> bool:
    """Is ``S_i = Γ(a_i) \\ Γ(a_1..a_{i-1})`` a Stanley set?  (``i`` is 1-based.)

    Infinite coordinates are truncated one layer beyond the largest finite
    coordinate of the multicomplex and the set is materialized in that box.
    """
    return _stanley_from_box(G, order, i - 1) is not None


def _stanley_from_box(G, order, i) -> Optional[StanleySet]:
    order = [_as_face(a) for a in order]
    pts, T = _materialize(G, order, i)
    if not pts:
        return None
    a = order[i]
    n = G.n
    offset, directions, sizes = [], set(), 1
    for k in range(n):
        proj = sorted({p[k] for p in pts})
        if a[k] is INF:
            if proj != list(range(proj[0], T + 1)):
                return None
            directions.add(k + 1)
        elif len(proj) != 1:
            return None
        offset.append(proj[0])
        sizes *= len(proj)
    if sizes != len(pts):
        return None
    return StanleySet(tuple(offset), frozenset(directions))


def stanley_sets_of_order(G: Multicomplex, order: Sequence[Face]) -> List[StanleySet]:
    order = _check_permutation(order, enumerate_facets(G).facets, "facets")
    out = []
    for i in range(len(order)):
        S = _stanley_from_box(G, order, i)
        if S is None:
            pts, _ = _materialize(G, order, i)
            why = "empty" if not pts else "not a product set"
            raise ValueError(f"S_{i + 1} is not a Stanley set, {why}")
        out.append(S)
    return out


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("PRETTYCLEAN_THREADS", "1")))
    except ValueError:
        return 1


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise SearchCapExceeded(f"search exceeded {self.limit} nodes")


def _shelling_dfs(facets, strategy, first, budget) -> Optional[List[int]]:
    r = len(facets)
    dims = [len(infinite_part(a)) for a in facets]
    dead = set()
    order: List[int] = []

    def extend(used: frozenset) -> bool:
        if len(order) == r:
            return True
        if used in dead:
            return False
        budget.tick()
        prefix = [facets[j] for j in order]
        pool = [first] if not order and first is not None else range(r)
        for j in pool:
            if j in used:
                continue
            if strategy == "dimension" and order and dims[j] > dims[order[-1]]:
                continue
            if _step_ok(prefix, facets[j]):
                order.append(j)
                if extend(used | {j}):
                    return True
                order.pop()
        dead.add(used)
        return False

    return list(order) if extend(frozenset()) else None


def _shelling_branch(args):
    facets, strategy, first, limit = args
    return _shelling_dfs(facets, strategy, first, _Budget(limit))


def _facet_order_for(strategy, facets):
    if strategy == "dimension":
        # higher-dimensional facets first; within a dimension, canonical order
        return sorted(facets, key=lambda a: (-len(infinite_part(a)), a))
    return sorted(facets)


def find_shelling(G: Multicomplex, strategy: str = "exhaustive",
                  max_facets: int = DEFAULT_MAX_FACETS,
                  max_nodes: Optional[int] = DEFAULT_MAX_NODES,
                  workers: Optional[int] = None) -> Optional[Tuple[Tuple[Face, ...], ShellingVerdict]]:
    """Backtracking search for a shelling order.

    ``strategy="dimension"`` only tries orders whose Stanley sets have
    nonincreasing dimension, which loses no shellable multicomplex.  Failed
    prefixes are memoized by their facet set.  With ``workers > 1`` the first
    facet is fanned out to processes; the result is the same as the
    sequential search.
    """
    if strategy not in ("exhaustive", "dimension"):
        raise ValueError(f"unknown strategy {strategy!r}")
    facets = _facet_order_for(strategy, enumerate_facets(G).facets)
    if len(facets) > max_facets:
        raise SearchCapExceeded(f"{len(facets)} facets exceed the search cap {max_facets}")
    workers = workers or _default_workers()
    if workers > 1 and len(facets) > 1:
        firsts = [j for j, a in enumerate(facets) if _step_ok([], a)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_shelling_branch,
                                  [(facets, strategy, j, max_nodes) for j in firsts]))
        found = next((res for res in results if res is not None), None)
    else:
        found = _shelling_dfs(facets, strategy, None, _Budget(max_nodes))
    if found is None:
        return None
    order = tuple(facets[j] for j in found)
    verdict = check_shelling_order(G, order)
    assert verdict.overall
    return order, verdict


@dataclass
class MaximalStepCheck:
    index: int
    face: Face
    intersection: Tuple[Face, ...] = ()
    cond1: Optional[bool] = None
    cond2: Optional[bool] = None
    bad_facets: Tuple[Face, ...] = ()
    cond3: Optional[bool] = None
    bad_pairs: Tuple[Tuple[int, int], ...] = ()

    @property
    def ok(self) -> bool:
        return all(c is not False for c in (self.cond1, self.cond2, self.cond3))


@dataclass
class MaximalShellingVerdict:
    order: Tuple[Face, ...]
    split: int
    steps: List[MaximalStepCheck] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(s.ok for s in self.steps)

    def failures(self) -> List[str]:
        out = []
        for s in self.steps:
            if s.cond1 is False:
                out.append(f"i={s.index}: (1) infinite part differs from the first facet")
            if s.cond2 is False:
                out.append(f"i={s.index}: (2) intersection facets differing in more than one"
                           f" coordinate: {list(s.bad_facets)}")
            if s.cond3 is False:
                out.append(f"i={s.index}: (3) infinite parts properly nested at {list(s.bad_pairs)}")
        return out


def check_maximal_shelling(G: Multicomplex, order: Sequence[Face], s: int) -> MaximalShellingVerdict:
    order = _check_permutation(order, G.maximal_facets, "maximal facets")
    r = len(order)
    if not 1 <= s <= r:
        raise ValueError(f"split index must lie in 1..{r}")
    steps = []
    ip0 = infinite_part(order[0])
    for i, u in enumerate(order, start=1):
        step = MaximalStepCheck(i, u)
        if i <= s:
            step.cond1 = infinite_part(u) == ip0
        else:
            W = intersection_facets(order[:i - 1], u)
            step.intersection = W
            bad = tuple(w for w in W if len(differing_coordinates(w, u)) != 1)
            step.cond2 = not bad
            step.bad_facets = bad
            ip = infinite_part(u)
            pairs = tuple((j, i) for j in range(s, i) if infinite_part(order[j - 1]) < ip)
            step.cond3 = not pairs
            step.bad_pairs = pairs
        steps.append(step)
    return MaximalShellingVerdict(order, s, steps)


def _maximal_ok(prefix: Sequence[Face], u: Face) -> bool:
    ip = infinite_part(u)
    if all(infinite_part(b) == infinite_part(prefix[0]) for b in prefix) and ip == infinite_part(prefix[0]):
        return True
    if any(infinite_part(b) < ip for b in prefix):
        return False
    return all(len(differing_coordinates(w, u)) == 1 for w in intersection_facets(prefix, u))


def _maximal_dfs(facets, first, budget) -> Optional[List[int]]:
    r = len(facets)
    dead = set()
    order: List[int] = []

    def extend(used: frozenset) -> bool:
        if len(order) == r:
            return True
        if used in dead:
            return False
        budget.tick()
        prefix = [facets[j] for j in order]
        pool = [first] if not order and first is not None else range(r)
        for j in pool:
            if j in used:
                continue
            if not prefix or _maximal_ok(prefix, facets[j]):
                order.append(j)
                if extend(used | {j}):
                    return True
                order.pop()
        dead.add(used)
        return False

    return list(order) if extend(frozenset()) else None


def _maximal_branch(args):
    facets, first, limit = args
    return _maximal_dfs(facets, first, _Budget(limit))


def split_index(order: Sequence[Face]) -> int:
    """Length of the longest prefix sharing the infinite part of the first facet."""
    ip0 = infinite_part(order[0])
    s = 0
    for u in order:
        if infinite_part(u) != ip0:
            break
        s += 1
    return s


def find_maximal_shelling(G: Multicomplex, max_facets: int = DEFAULT_MAX_FACETS,
                          max_nodes: Optional[int] = DEFAULT_MAX_NODES,
                          workers: Optional[int] = None):
    """Search all orders of the maximal facets for a maximal shelling.

    For a fixed order the split index is taken as large as possible; that
    choice only drops constraints, so no passing ``(order, s)`` is missed.
    Returns ``(order, s, verdict)`` or None.
    """
    facets = sorted(G.maximal_facets)
    if len(facets) > max_facets:
        raise SearchCapExceeded(f"{len(facets)} maximal facets exceed the search cap {max_facets}")
    workers = workers or _default_workers()
    if workers > 1 and len(facets) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_maximal_branch,
                                  [(facets, j, max_nodes) for j in range(len(facets))]))
        found = next((res for res in results if res is not None), None)
    else:
        found = _maximal_dfs(facets, None, _Budget(max_nodes))
    if found is None:
        return None
    order = tuple(facets[j] for j in found)
    s = split_index(order)
    verdict = check_maximal_shelling(G, order, s)
    assert verdict.overall
    return order, s, verdict


def dimension_sequence(order: Sequence[Face]) -> List[int]:
    return [len(infinite_part(a)) for a in order]


def prime_sequence(order: Sequence[Face]):
    return [face_prime(a) for a in order]
