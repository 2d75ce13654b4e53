"""Acceptance criteria 1-10.

Each test records one PASS/FAIL line, printed in the terminal summary, then
asserts.  Run alone with ``python3 tests/test_acceptance.py``.
"""
import io
import itertools
import json
import sys
import time
from collections import Counter

import pytest

import corpus
from prettyclean import (
    INF,
    MonomialIdeal,
    build_maximal_shelling_filtration,
    check_shelling_order,
    enumerate_facets,
    f_monomial,
    filtration_from_witnesses,
    find_pretty_clean_filtration,
    find_shelling,
    ideal_from_multicomplex,
    intersection,
    multicomplex_from_ideal,
    parse_ideal,
    parse_multicomplex,
    prime_filtration_from_primary,
    verify_colon_identity,
    verify_filtration,
)
from prettyclean.cli import run
from prettyclean.core import MonomialPrime, intersect_all
from prettyclean.multicomplex import arithmetic_degree_report, face_prime, facet_test_algebraic, local_socle_count
from prettyclean.shellability import dimension_sequence, prime_sequence
from prettyclean.textio import format_ideal, ideal_from_json

MIXED = "x1^2, x1*x2^2*x3, x1*x3^2, x2^2*x4^2, x2*x3^2*x4"
J6 = intersection(parse_ideal("x1^2,x2^2,x3,x4", 6), parse_ideal("x1,x2,x3^2,x4^2", 6))
UNSHELLABLE = intersection(J6, parse_ideal("x1,x2,x5^2,x6^2", 6))
J5 = intersection(parse_ideal("x1^2,x2^2,x3,x4", 5), parse_ideal("x1,x2,x3^2,x4^2", 5))
SHELLABLE_ONLY = intersection(J5, parse_ideal("x1^2,x2,x3,x5^2", 5))
MAXIMAL = intersection(J5, parse_ideal("x1,x2,x3,x5^2", 5))


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue()


def _cli_json(*argv):
    code, out = _cli(*argv, "--json")
    return code, json.loads(out)["result"]


def _settle(log, number, checks, started, limit):
    elapsed = time.perf_counter() - started
    failed = [name for name, ok in checks if not ok]
    if elapsed >= limit:
        failed.append(f"took {elapsed:.2f}s")
    status = "PASS" if not failed else "FAIL"
    detail = "" if not failed else "  failed: " + "; ".join(failed)
    log.append(f"criterion {number:2d}: {status}  {elapsed:6.2f}s (limit {limit}s){detail}")
    assert not failed, failed


def test_criterion_01_decompose_and_pret(acceptance_log):
    t = time.perf_counter()
    I = parse_ideal(MIXED)
    code, res = _cli_json("decompose", "-e", MIXED)
    comps = [ideal_from_json(c["component"], 4) for c in res["primary"]]
    pcode, pres = _cli_json("pret", "-e", MIXED)
    rows = {r["dim"]: (r["size"], r["bound"], r["ok"]) for r in pres["rows"]}
    checks = [
        ("decompose exit 0", code == 0),
        ("Ass", sorted(map(tuple, res["ass"])) == [(1, 2), (1, 2, 3), (1, 3, 4), (1, 4)]),
        ("components intersect to I", intersect_all(4, comps) == I),
        ("pret exit 0", pcode == 0 and pres["holds"]),
        ("pret rows", rows == {2: (3, 3, True), 1: (4, 4, True)}),
    ]
    _settle(acceptance_log, 1, checks, t, 1)


def test_criterion_02_facets_and_arithmetic_degree(acceptance_log):
    t = time.perf_counter()
    G = parse_multicomplex([[0, "inf"], [2, 0]])
    facets = set(enumerate_facets(G))
    report = arithmetic_degree_report(G)
    I = ideal_from_multicomplex(G)
    x1, x12 = MonomialPrime(2, frozenset({1})), MonomialPrime(2, frozenset({1, 2}))
    # independent count: faces in a box whose flattened colon is primary
    brute = Counter(face_prime(a) for a in itertools.product((0, 1, 2, 3, INF), repeat=2)
                    if a in G and facet_test_algebraic(G, a))
    checks = [
        ("facets", facets == {(0, INF), (2, 0), (1, 0)}),
        ("per prime", report == {x1: 1, x12: 2}),
        ("total", sum(report.values()) == 3),
        ("brute-force facet count", dict(brute) == report),
        ("local cohomology count", {P: local_socle_count(I, P) for P in report} == report),
    ]
    _settle(acceptance_log, 2, checks, t, 1)


def test_criterion_03_nested_infinite_parts(acceptance_log):
    t = time.perf_counter()
    G = parse_multicomplex([["inf", 0, "inf", "inf"], [1, 1, "inf", 0], [0, 2, "inf", "inf"]])
    order = [(INF, 0, INF, INF), (0, 1, INF, INF), (1, 1, INF, 0), (0, 2, INF, INF)]
    v = check_shelling_order(G, order)
    steps = v.steps
    checks = [
        ("(1)-(3) pass", all(s.cond1 is not False and s.cond2 is not False and s.cond3 is not False
                             for s in steps)),
        ("(4) fails only at step 4", [s.cond4 for s in steps] == [True, True, True, False]),
        ("bad pair (3,4)", list(steps[3].bad_pairs) == [(3, 4)]),
        ("intersections", [set(s.intersection) for s in steps[1:]] == [
            {(0, 0, INF, INF)}, {(1, 0, INF, 0), (0, 1, INF, 0)}, {(0, 1, INF, INF)}]),
        ("not a shelling", not v.overall),
    ]
    _settle(acceptance_log, 3, checks, t, 1)


def test_criterion_04_dimension_sequence(acceptance_log):
    t = time.perf_counter()
    faces = [[0, "inf", 1, "inf"], [0, 0, 2, "inf"], ["inf", "inf", 1, 0]]
    G = parse_multicomplex(faces)
    d, e = (INF, INF, 0, 0), (0, INF, 0, INF)
    a, b, c = (0, INF, 1, INF), (0, 0, 2, INF), (INF, INF, 1, 0)
    order = [d, e, a, b, c]
    v = check_shelling_order(G, order)
    dims = dimension_sequence(order)
    primes = [tuple(sorted(P.vars)) for P in prime_sequence(order)]
    code, res = _cli_json("shell", "--strategy", "dimension", "-e", json.dumps(faces))
    checks = [
        ("order passes", v.overall),
        ("primes", primes == [(3, 4), (1, 3), (1, 3), (1, 2, 3), (3, 4)]),
        ("dims", dims == [2, 2, 2, 1, 2]),
        ("dims not nonincreasing", any(x < y for x, y in zip(dims, dims[1:]))),
        ("dimension strategy exit 0", code == 0 and res["found"]),
        ("found order nonincreasing", res["dimensions"] == sorted(res["dimensions"], reverse=True)),
    ]
    _settle(acceptance_log, 4, checks, t, 5)


def test_criterion_05_maximal_shelling_triple(acceptance_log):
    t = time.perf_counter()
    unsh, only, maxi = (format_ideal(I) for I in (UNSHELLABLE, SHELLABLE_ONLY, MAXIMAL))
    c_unsh_max, _ = _cli("maxshell", "-e", unsh)
    c_unsh_sh, _ = _cli("shell", "-e", unsh)
    c_only_max, _ = _cli("maxshell", "-e", only)
    c_only_sh, _ = _cli("shell", "-e", only)
    c_fin, res = _cli_json("maxshell", "-e", maxi)
    inter = [w for s in res.get("steps", []) for w in s["intersection"]]
    checks = [
        ("unshellable maxshell exit 1", c_unsh_max == 1),
        ("unshellable shell exit 1", c_unsh_sh == 1),
        ("shellable-only maxshell exit 1", c_only_max == 1),
        ("shellable-only shell exit 0", c_only_sh == 0),
        ("maximal-shellable maxshell exit 0", c_fin == 0),
        ("split 2", res.get("split") == 2),
        ("single intersection facet", inter == [[0, 0, 0, 1, 1]]),
    ]
    _settle(acceptance_log, 5, checks, t, 30)


def test_criterion_06_filtration_from_maximal_shelling(acceptance_log):
    t = time.perf_counter()
    G = multicomplex_from_ideal(MAXIMAL)
    order = [(1, 1, 0, 0, INF), (0, 0, 1, 1, INF), (0, 0, 0, INF, 1)]
    f3, _ = f_monomial(G, order, 3)
    pf = build_maximal_shelling_filtration(G, order, 2)
    rep = verify_filtration(prime_filtration_from_primary(pf))
    checks = [
        ("f_3 = x4^2", f3 == (0, 0, 0, 2, 0)),
        ("colon identity", verify_colon_identity(G, order, 3)),
        ("verifies", rep.ok),
        ("pretty clean", rep.classification.pretty_clean),
        ("length = facets", rep.length == len(enumerate_facets(G)) == 9),
    ]
    _settle(acceptance_log, 6, checks, t, 2)


def test_criterion_07_shelling_iff_pretty_clean(acceptance_log):
    t = time.perf_counter()
    instances = corpus.build_corpus()
    bad = []
    for label, I, G in instances:
        if (find_shelling(G) is not None) != (find_pretty_clean_filtration(I) is not None):
            bad.append(label)
    checks = [(f"at least 200 instances ({len(instances)})", len(instances) >= 200),
              (f"discrepancies {bad}", not bad)]
    _settle(acceptance_log, 7, checks, t, 60)


def test_criterion_08_lengths_equal_facet_count(acceptance_log, corpus_outcomes):
    t = time.perf_counter()
    bad = []
    built = 0
    for o in corpus_outcomes:
        for f in (o.search_filtration, o.maxshell_filtration):
            if f is None:
                continue
            built += 1
            rep = verify_filtration(f)
            if not (rep.ok and rep.classification.pretty_clean and rep.length == o.facet_count):
                bad.append(o.label)
    checks = [("some filtrations built", built > 0), (f"violations {bad}", not bad)]
    _settle(acceptance_log, 8, checks, t, 60)


def test_criterion_09_sufficient_conditions(acceptance_log, corpus_outcomes):
    t = time.perf_counter()
    bad = [o.label for o in corpus_outcomes
           if (o.pret or o.totally_ordered or o.borel) and o.search_filtration is None]
    covered = sum(o.pret or o.totally_ordered or o.borel for o in corpus_outcomes)
    checks = [("conditions fire somewhere", covered > 0), (f"violations {bad}", not bad)]
    _settle(acceptance_log, 9, checks, t, 60)


def test_criterion_10_negative_fixtures(acceptance_log):
    t = time.perf_counter()
    I = MonomialIdeal(2, [(2, 0), (1, 1)])
    good = verify_filtration(filtration_from_witnesses(I, [(1, 0), (0, 0)]))
    other = verify_filtration(filtration_from_witnesses(I, [(0, 1), (1, 0), (0, 0)]))
    split = parse_ideal("x1*x3, x1*x4, x2*x3, x2*x4")
    checks = [
        ("(x) chain verifies", good.ok),
        ("(x) chain pretty clean", good.classification.pretty_clean),
        ("(x) chain primes", [sorted(P.vars) for P in good.filtration.primes] == [[1, 2], [1]]),
        ("(y) chain is a prime filtration", other.ok and other.classification.prime),
        ("(y) chain not pretty clean", not other.classification.pretty_clean),
        ("(x1,x2)∩(x3,x4) has none", split == intersection(parse_ideal("x1,x2", 4), parse_ideal("x3,x4", 4))
         and find_pretty_clean_filtration(split) is None),
    ]
    _settle(acceptance_log, 10, checks, t, 1)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
