import itertools
import random

import pytest

from prettyclean.core import INF, intersection
from prettyclean.multicomplex import Multicomplex, enumerate_facets, infinite_part, multicomplex_from_ideal
from prettyclean.shellability import (
    OrderError,
    SearchCapExceeded,
    check_maximal_shelling,
    check_shelling_order,
    dimension_sequence,
    find_maximal_shelling,
    find_shelling,
    is_lower_neighbour,
    stanley_offset,
    stanley_oracle,
    stanley_sets_of_order,
)
from prettyclean.textio import parse_ideal

SMALL = Multicomplex(2, ((0, INF), (2, 0)))
NONMONOTONE = Multicomplex(4, ((0, INF, 1, INF), (0, 0, 2, INF), (INF, INF, 1, 0)))
J6 = intersection(parse_ideal("x1^2,x2^2,x3,x4", 6), parse_ideal("x1,x2,x3^2,x4^2", 6))
UNSHELLABLE = multicomplex_from_ideal(intersection(J6, parse_ideal("x1,x2,x5^2,x6^2", 6)))
J5 = intersection(parse_ideal("x1^2,x2^2,x3,x4", 5), parse_ideal("x1,x2,x3^2,x4^2", 5))
SHELLABLE_ONLY = multicomplex_from_ideal(intersection(J5, parse_ideal("x1^2,x2,x3,x5^2", 5)))
MAXIMAL = multicomplex_from_ideal(intersection(J5, parse_ideal("x1,x2,x3,x5^2", 5)))


def test_lower_neighbour_examples():
    assert is_lower_neighbour((0, 0, INF, INF), (0, 1, INF, INF))
    assert is_lower_neighbour((0, INF, 0, 0), (0, INF, 0, INF))
    assert not is_lower_neighbour((0, 1), (0, 1))
    assert not is_lower_neighbour((0, 0), (0, 2))
    assert not is_lower_neighbour((0, 0), (1, 1))


def test_nonmonotone_order_passes():
    order = [(INF, INF, 0, 0), (0, INF, 0, INF), (0, INF, 1, INF), (0, 0, 2, INF), (INF, INF, 1, 0)]
    v = check_shelling_order(NONMONOTONE, order)
    assert v.overall
    assert [set(s.intersection) for s in v.steps[1:]] == [
        {(0, INF, 0, 0)}, {(0, INF, 0, INF)}, {(0, 0, 1, INF)}, {(INF, INF, 0, 0), (0, INF, 1, 0)}]
    assert dimension_sequence(order) == [2, 2, 2, 1, 2]


def test_small_example_and_stanley_sets():
    order = [(0, INF), (1, 0), (2, 0)]
    assert check_shelling_order(SMALL, order).overall
    sets = stanley_sets_of_order(SMALL, order)
    assert (sets[0].offset, sets[0].directions) == ((0, 0), {2})
    assert (sets[1].offset, sets[1].directions) == ((1, 0), set())
    assert sets[1].dim == 0 and sets[0].dim == 1
    bad = [(0, INF), (2, 0), (1, 0)]
    assert not stanley_oracle(SMALL, bad, 3)
    with pytest.raises(ValueError, match="S_2 is not a Stanley set"):
        stanley_sets_of_order(SMALL, bad)


def test_order_must_be_permutation():
    with pytest.raises(OrderError):
        check_shelling_order(SMALL, [(0, INF), (1, 0)])
    with pytest.raises(OrderError):
        check_maximal_shelling(SMALL, [(0, INF)], 1)


def test_failures_carry_witnesses():
    v = check_shelling_order(SMALL, [(1, 0), (0, INF), (2, 0)])
    assert not v.overall and v.steps[0].cond1 is False
    assert v.failures()


def test_search_examples():
    assert find_shelling(SHELLABLE_ONLY) is not None
    assert find_shelling(UNSHELLABLE) is None
    assert find_shelling(Multicomplex(3, ((0, INF, 0),)))[0] == ((0, INF, 0),)


def test_maximal_examples():
    v = check_maximal_shelling(MAXIMAL, [(1, 1, 0, 0, INF), (0, 0, 1, 1, INF), (0, 0, 0, INF, 1)], 2)
    assert v.overall and v.steps[2].intersection == ((0, 0, 0, 1, 1),)
    v = check_maximal_shelling(SHELLABLE_ONLY, [(1, 1, 0, 0, INF), (0, 0, 1, 1, INF), (1, 0, 0, INF, 1)], 2)
    assert not v.overall and v.steps[2].cond2 is False
    assert v.steps[2].bad_facets == ((0, 0, 0, 1, 1),)
    v = check_maximal_shelling(UNSHELLABLE, [(1, 1, 0, 0, INF, INF), (0, 0, 1, 1, INF, INF), (0, 0, INF, INF, 1, 1)], 2)
    assert not v.overall and v.steps[2].cond2 is False
    found = find_maximal_shelling(MAXIMAL)
    assert found is not None and found[1] == 2
    assert find_maximal_shelling(SHELLABLE_ONLY) is None
    primary = multicomplex_from_ideal(parse_ideal("x1^2, x1*x2, x2^3"))
    order, s, _ = find_maximal_shelling(primary)
    assert s == len(order)


def test_caps():
    with pytest.raises(SearchCapExceeded):
        find_shelling(SHELLABLE_ONLY, max_facets=5)
    with pytest.raises(SearchCapExceeded):
        find_shelling(SHELLABLE_ONLY, max_nodes=2)
    with pytest.raises(ValueError):
        find_shelling(SHELLABLE_ONLY, strategy="random")


def test_workers_match_sequential():
    for G in (SHELLABLE_ONLY, NONMONOTONE, SMALL):
        assert find_shelling(G, workers=2) == find_shelling(G, workers=1)
    assert find_maximal_shelling(MAXIMAL, workers=2) == find_maximal_shelling(MAXIMAL, workers=1)
    assert find_shelling(UNSHELLABLE, workers=2) is None


def test_corpus_search_consistency(corpus_outcomes):
    for o in corpus_outcomes:
        assert (o.shelling is None) == (o.shelling_dim is None), o.label
        if o.shelling_dim is not None:
            dims = dimension_sequence(o.shelling_dim[0])
            assert dims == sorted(dims, reverse=True)
        if o.maximal is not None:
            assert o.shelling is not None, o.label


def test_checker_agrees_with_stanley_oracle(corpus_outcomes):
    """Conditions (2),(3) at step i hold exactly when S_i is a Stanley set,
    and the analytic offset matches the materialized one."""
    rng = random.Random(5)
    checked = 0
    for o in corpus_outcomes:
        facets = list(enumerate_facets(o.mc))
        orders = [list(p) for p in itertools.islice(itertools.permutations(facets), 24)]
        rng.shuffle(facets)
        orders.append(facets)
        for order in orders:
            v = check_shelling_order(o.mc, order)
            for i, step in enumerate(v.steps, start=1):
                assert step.stanley_ok == stanley_oracle(o.mc, order, i), (o.label, order, i)
                checked += 1
            if all(s.stanley_ok for s in v.steps):
                sets = stanley_sets_of_order(o.mc, order)
                for i, S in enumerate(sets):
                    assert S.offset == stanley_offset(order[:i], order[i])
                    assert S.directions == infinite_part(order[i])
    assert checked > 1000
