"""Command line interface.

Exit codes: 0 affirmative or constructed, 1 decided negative, 2 input error,
3 search cap exceeded.  ``--json`` prints ``{"command", "exit_code",
"result"}``; otherwise aligned text.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

import jsonschema

from . import shellability as sh
from .core import MonomialIdeal, saturation_ideal, saturation_var, unit_vector
from .decomposition import (
    dimension_filtration,
    pret_criterion,
    primary_decomposition,
)
from .filtration import (
    FiltrationError,
    filtration_via_maximal_shelling,
    find_pretty_clean_filtration,
    simplicial_clean_filtration,
    stanley_reisner_ideal,
    verify_filtration,
)
from .multicomplex import (
    Multicomplex,
    arithmetic_degree_report,
    enumerate_facets,
    ideal_from_multicomplex,
    multicomplex_from_ideal,
)
from .textio import (
    face_to_json,
    faces_from_json,
    filtration_from_json,
    filtration_to_json,
    format_face,
    format_ideal,
    format_monomial,
    ideal_from_json,
    ideal_to_json,
    parse_ideal,
    prime_to_json,
)

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

_FACE = {"type": "array", "items": {"anyOf": [{"type": "integer", "minimum": 0}, {"const": "inf"}]}}
_GENS = {"type": "array", "items": {"type": "string"}}

INPUT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["kind"],
    "oneOf": [
        {"properties": {"kind": {"const": "ideal"}, "n": {"type": "integer", "minimum": 1},
                        "gens": _GENS},
         "required": ["kind", "gens"]},
        {"properties": {"kind": {"const": "multicomplex"}, "n": {"type": "integer", "minimum": 1},
                        "faces": {"type": "array", "items": _FACE, "minItems": 1}},
         "required": ["kind", "faces"]},
        {"properties": {"kind": {"const": "simplicial"}, "n": {"type": "integer", "minimum": 1},
                        "facets": {"type": "array", "items": {
                            "type": "array", "items": {"type": "integer", "minimum": 1}}}},
         "required": ["kind", "facets"]},
        {"properties": {"kind": {"const": "filtration"}, "n": {"type": "integer", "minimum": 1},
                        "base": _GENS,
                        "steps": {"type": "array", "items": {
                            "type": "object",
                            "required": ["before", "witness", "prime", "shift"],
                            "properties": {
                                "before": _GENS,
                                "witness": {"type": "string"},
                                "prime": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                                "shift": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                            }}}},
         "required": ["kind", "n", "base", "steps"]},
    ],
}

OUTPUT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "exit_code", "result"],
    "properties": {
        "command": {"type": "string"},
        "exit_code": {"enum": [0, 1, 2, 3]},
        "result": {"type": "object"},
    },
    "additionalProperties": False,
}

# keys every successful result carries, per command
RESULT_KEYS = {
    "decompose": ["ideal", "irreducible", "primary", "ass", "min", "ass_by_dim"],
    "ass": ["ass", "ass_by_dim"],
    "dimfilt": ["levels"],
    "borel": ["borel_type", "per_variable"],
    "pret": ["holds", "rows"],
    "facets": ["facets", "by_prime", "count"],
    "maxfacets": ["maximal_facets"],
    "arithdeg": ["per_prime", "total"],
    "check-shelling": ["overall", "steps"],
    "shell": ["found"],
    "check-maxshelling": ["overall", "split", "steps"],
    "maxshell": ["found"],
    "filtration": ["found"],
    "verify-filtration": ["ok", "errors", "classification", "length"],
    "simplicial-clean": ["constructed"],
}


class InputError(ValueError):
    pass


class Document:
    """A parsed input: one of ideal, multicomplex, simplicial, filtration."""

    def __init__(self, kind, value, n):
        self.kind = kind
        self.value = value
        self.n = n

    def ideal(self) -> MonomialIdeal:
        if self.kind == "ideal":
            return self.value
        if self.kind == "multicomplex":
            return ideal_from_multicomplex(self.value)
        if self.kind == "simplicial":
            return stanley_reisner_ideal(self.n, self.value)
        raise InputError(f"a {self.kind} document cannot be used as an ideal")

    def multicomplex(self) -> Multicomplex:
        if self.kind == "multicomplex":
            return self.value
        return multicomplex_from_ideal(self.ideal())


def load_document(text: str, n: Optional[int] = None) -> Document:
    stripped = text.strip()
    if stripped.startswith("{"):
        doc = json.loads(stripped)
        try:
            jsonschema.validate(doc, INPUT_SCHEMA)
        except jsonschema.ValidationError as e:
            raise InputError(f"invalid input document: {e.message}") from None
        n = doc.get("n", n)
        kind = doc["kind"]
        if kind == "ideal":
            if n is None:
                return Document(kind, parse_ideal(", ".join(doc["gens"]) or "0"), None)
            return Document(kind, ideal_from_json(doc["gens"], n), n)
        if kind == "multicomplex":
            faces = faces_from_json(doc["faces"], n)
            return Document(kind, Multicomplex(len(faces[0]), tuple(faces)), len(faces[0]))
        if kind == "simplicial":
            facets = [frozenset(F) for F in doc["facets"]]
            if n is None:
                n = max((max(F) for F in facets if F), default=0)
            return Document(kind, facets, n)
        return Document(kind, filtration_from_json(doc), doc["n"])
    if stripped.startswith("["):
        faces = faces_from_json(stripped, n)
        if not faces:
            raise InputError("empty face list")
        return Document("multicomplex", Multicomplex(len(faces[0]), tuple(faces)), len(faces[0]))
    I = parse_ideal(stripped, n)
    return Document("ideal", I, I.n)


# --- helpers ------------------------------------------------------------

def _faces(fs) -> List[list]:
    return [face_to_json(a) for a in fs]


def _primes(ps) -> List[list]:
    return [prime_to_json(P) for P in ps]


def _table(rows: List[List[str]]) -> List[str]:
    if not rows:
        return []
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]


def _order_arg(args, n) -> list:
    if not args.order:
        raise InputError("--order is required")
    return faces_from_json(args.order, n)


def _search_opts(args) -> dict:
    return {"max_facets": args.max_facets, "max_nodes": args.max_perms, "workers": args.threads}


def _stanley_json(sets):
    return [{"offset": list(S.offset), "directions": sorted(S.directions), "dim": S.dim} for S in sets]


def _step_json(step) -> dict:
    return {
        "index": step.index,
        "face": face_to_json(step.face),
        "intersection": _faces(step.intersection),
        "cond1": step.cond1,
        "cond2": step.cond2,
        "bad_neighbours": _faces(step.bad_neighbours),
        "cond3": step.cond3,
        "bad_coordinates": list(step.bad_coordinates),
        "cond4": step.cond4,
        "bad_pairs": [list(p) for p in step.bad_pairs],
    }


def _flag(v) -> str:
    return "-" if v is None else ("pass" if v else "FAIL")


def _steps_text(steps) -> List[str]:
    rows = [["i", "face", "(1)", "(2)", "(3)", "(4)", "intersection facets"]]
    for s in steps:
        rows.append([str(s.index), format_face(s.face), _flag(s.cond1), _flag(s.cond2),
                     _flag(s.cond3), _flag(s.cond4), " ".join(format_face(w) for w in s.intersection)])
    return _table(rows)


def _maxstep_json(step) -> dict:
    return {
        "index": step.index,
        "face": face_to_json(step.face),
        "intersection": _faces(step.intersection),
        "cond1": step.cond1,
        "cond2": step.cond2,
        "bad_facets": _faces(step.bad_facets),
        "cond3": step.cond3,
        "bad_pairs": [list(p) for p in step.bad_pairs],
    }


def _maxsteps_text(steps) -> List[str]:
    rows = [["i", "face", "(1)", "(2)", "(3)", "intersection facets"]]
    for s in steps:
        rows.append([str(s.index), format_face(s.face), _flag(s.cond1), _flag(s.cond2),
                     _flag(s.cond3), " ".join(format_face(w) for w in s.intersection)])
    return _table(rows)


def _classification_json(c) -> dict:
    return {"prime": c.prime, "clean": c.clean, "pretty_clean": c.pretty_clean,
            "almost_clean": c.almost_clean}


def _filtration_text(f) -> List[str]:
    rows = [["step", "witness", "prime", "before"]]
    for i, s in enumerate(f.steps, start=1):
        rows.append([str(i), format_monomial(s.witness), str(s.prime), format_ideal(s.ideal_before)])
    return _table(rows)


# --- commands -----------------------------------------------------------

def cmd_decompose(doc, args):
    I = doc.ideal()
    rep = primary_decomposition(I)
    res = {
        "n": I.n,
        "ideal": ideal_to_json(I),
        "irreducible": [ideal_to_json(C) for C in rep.irreducible_components],
        "primary": [{"component": ideal_to_json(Q), "prime": prime_to_json(P), "dim": P.dim}
                    for Q, P in rep.primary_components],
        "ass": _primes(rep.ass),
        "min": _primes(rep.min_primes),
        "ass_by_dim": {str(d): _primes(ps) for d, ps in rep.ass_by_dim.items()},
    }
    lines = [f"ideal: {format_ideal(I)}", "irreducible components:"]
    lines += ["  (" + format_ideal(C) + ")" for C in rep.irreducible_components]
    lines.append("primary components:")
    lines += ["  " + r for r in _table([["(" + format_ideal(Q) + ")", str(P), f"dim {P.dim}"]
                                        for Q, P in rep.primary_components])]
    lines.append("Ass: " + " ".join(str(P) for P in rep.ass))
    lines.append("Min: " + " ".join(str(P) for P in rep.min_primes))
    return EXIT_OK, res, lines


def cmd_ass(doc, args):
    rep = primary_decomposition(doc.ideal())
    res = {"ass": _primes(rep.ass),
           "ass_by_dim": {str(d): _primes(ps) for d, ps in rep.ass_by_dim.items()}}
    lines = _table([["dim", "primes"]] + [[str(d), " ".join(str(P) for P in ps)]
                                          for d, ps in rep.ass_by_dim.items()])
    return EXIT_OK, res, lines


def cmd_dimfilt(doc, args):
    df = dimension_filtration(doc.ideal())
    res = {"levels": [{"dim": d, "ideal": ideal_to_json(U)} for d, U in df.levels]}
    lines = _table([["dim", "U"]] + [[str(d), "(" + format_ideal(U) + ")"] for d, U in df.levels])
    return EXIT_OK, res, lines


def cmd_borel(doc, args):
    I = doc.ideal()
    if not I.is_proper_nonzero():
        raise InputError("improper ideal")
    per = []
    ok = True
    for j in range(1, I.n + 1):
        head = MonomialIdeal(I.n, [unit_vector(I.n, k) for k in range(1, j + 1)])
        a, b = saturation_ideal(I, head), saturation_var(I, j)
        per.append({"j": j, "saturation_by_ideal": ideal_to_json(a),
                    "saturation_by_variable": ideal_to_json(b), "equal": a == b})
        ok = ok and a == b
    res = {"borel_type": ok, "per_variable": per}
    rows = [["j", "I:(x1..xj)^inf", "I:xj^inf", "equal"]]
    rows += [[str(p["j"]), ", ".join(p["saturation_by_ideal"]) or "0",
              ", ".join(p["saturation_by_variable"]) or "0", str(p["equal"])] for p in per]
    lines = _table(rows) + [f"Borel type: {ok}"]
    return (EXIT_OK if ok else EXIT_NO), res, lines


def cmd_pret(doc, args):
    holds, rows = pret_criterion(doc.ideal())
    res = {"holds": holds,
           "rows": [{"dim": r.dim, "union": sorted(r.union), "size": len(r.union),
                     "bound": r.bound, "ok": r.ok} for r in rows]}
    table = [["d", "union of variable sets", "size", "bound n-d+1", "ok"]]
    table += [[str(r.dim), "{" + ",".join(map(str, sorted(r.union))) + "}", str(len(r.union)),
               str(r.bound), str(r.ok)] for r in rows]
    lines = _table(table) + [f"criterion holds: {holds}"]
    return (EXIT_OK if holds else EXIT_NO), res, lines


def cmd_facets(doc, args):
    fs = enumerate_facets(doc.multicomplex())
    res = {"facets": _faces(fs.facets),
           "by_prime": [{"prime": prime_to_json(P), "facets": _faces(v)} for P, v in fs.by_prime.items()],
           "count": len(fs)}
    lines = _table([["prime", "facets"]] + [[str(P), " ".join(format_face(a) for a in v)]
                                            for P, v in fs.by_prime.items()])
    lines.append(f"total: {len(fs)}")
    return EXIT_OK, res, lines


def cmd_maxfacets(doc, args):
    G = doc.multicomplex()
    res = {"maximal_facets": _faces(G.maximal_facets)}
    return EXIT_OK, res, [format_face(m) for m in G.maximal_facets]


def cmd_arithdeg(doc, args):
    rep = arithmetic_degree_report(doc.multicomplex())
    total = sum(rep.values())
    res = {"per_prime": [{"prime": prime_to_json(P), "count": c} for P, c in rep.items()],
           "total": total}
    lines = _table([["prime", "facets"]] + [[str(P), str(c)] for P, c in rep.items()])
    lines.append(f"arithmetic degree: {total}")
    return EXIT_OK, res, lines


def cmd_check_shelling(doc, args):
    G = doc.multicomplex()
    verdict = sh.check_shelling_order(G, _order_arg(args, G.n))
    res = {"overall": verdict.overall, "steps": [_step_json(s) for s in verdict.steps],
           "failures": verdict.failures()}
    if verdict.overall:
        res["stanley_sets"] = _stanley_json(sh.stanley_sets_of_order(G, verdict.order))
    lines = _steps_text(verdict.steps) + verdict.failures() + [f"shelling: {verdict.overall}"]
    return (EXIT_OK if verdict.overall else EXIT_NO), res, lines


def cmd_shell(doc, args):
    G = doc.multicomplex()
    found = sh.find_shelling(G, strategy=args.strategy, **_search_opts(args))
    if found is None:
        return EXIT_NO, {"found": False}, ["not shellable"]
    order, verdict = found
    res = {"found": True, "order": _faces(order),
           "dimensions": sh.dimension_sequence(order),
           "primes": _primes(sh.prime_sequence(order)),
           "steps": [_step_json(s) for s in verdict.steps],
           "stanley_sets": _stanley_json(sh.stanley_sets_of_order(G, order))}
    lines = _steps_text(verdict.steps) + ["shellable"]
    return EXIT_OK, res, lines


def cmd_check_maxshelling(doc, args):
    G = doc.multicomplex()
    if args.split is None:
        raise InputError("--split is required")
    verdict = sh.check_maximal_shelling(G, _order_arg(args, G.n), args.split)
    res = {"overall": verdict.overall, "split": verdict.split,
           "steps": [_maxstep_json(s) for s in verdict.steps], "failures": verdict.failures()}
    lines = _maxsteps_text(verdict.steps) + verdict.failures() + [f"maximal shelling: {verdict.overall}"]
    return (EXIT_OK if verdict.overall else EXIT_NO), res, lines


def cmd_maxshell(doc, args):
    G = doc.multicomplex()
    found = sh.find_maximal_shelling(G, **_search_opts(args))
    if found is None:
        return EXIT_NO, {"found": False}, ["not maximal shellable"]
    order, s, verdict = found
    res = {"found": True, "order": _faces(order), "split": s,
           "steps": [_maxstep_json(st) for st in verdict.steps]}
    lines = _maxsteps_text(verdict.steps) + [f"maximal shellable with s={s}"]
    return EXIT_OK, res, lines


def cmd_filtration(doc, args):
    I = doc.ideal()
    if args.via == "maxshell":
        f = filtration_via_maximal_shelling(I, **_search_opts(args))
    else:
        f = find_pretty_clean_filtration(I, max_nodes=args.max_perms)
    if f is None:
        return EXIT_NO, {"found": False}, ["no pretty clean filtration"]
    rep = verify_filtration(f)
    res = {"found": True, "filtration": filtration_to_json(f),
           "classification": _classification_json(rep.classification), "length": rep.length}
    lines = _filtration_text(f) + [f"length {rep.length}, pretty clean: {rep.classification.pretty_clean}"]
    return EXIT_OK, res, lines


def cmd_verify_filtration(doc, args):
    if doc.kind != "filtration":
        raise InputError("verify-filtration needs a filtration document")
    rep = verify_filtration(doc.value)
    res = {"ok": rep.ok, "errors": [{"step": i, "message": m} for i, m in rep.errors],
           "classification": _classification_json(rep.classification),
           "length": rep.length, "facet_count": rep.facet_count}
    c = rep.classification
    lines = [f"{i}: {m}" for i, m in rep.errors]
    lines += _table([["prime filtration", "clean", "pretty clean", "almost clean", "length"],
                     [str(c.prime), str(c.clean), str(c.pretty_clean), str(c.almost_clean), str(rep.length)]])
    return (EXIT_OK if rep.ok else EXIT_NO), res, lines


def cmd_simplicial_clean(doc, args):
    if doc.kind != "simplicial":
        raise InputError("simplicial-clean needs a simplicial document")
    order = json.loads(args.order) if args.order else None
    try:
        out = simplicial_clean_filtration(doc.value, order, n=doc.n)
    except FiltrationError as e:
        return EXIT_NO, {"constructed": False, "reason": str(e)}, [f"not constructed: {e}"]
    res = {"constructed": True, "filtration": filtration_to_json(out.filtration),
           "shelling_numbers": out.shelling_numbers, "shifts": out.shifts}
    lines = _filtration_text(out.filtration)
    lines.append("shelling numbers: " + " ".join(map(str, out.shelling_numbers)))
    return EXIT_OK, res, lines


COMMANDS = {
    "decompose": cmd_decompose,
    "ass": cmd_ass,
    "dimfilt": cmd_dimfilt,
    "borel": cmd_borel,
    "pret": cmd_pret,
    "facets": cmd_facets,
    "maxfacets": cmd_maxfacets,
    "arithdeg": cmd_arithdeg,
    "check-shelling": cmd_check_shelling,
    "shell": cmd_shell,
    "check-maxshelling": cmd_check_maxshelling,
    "maxshell": cmd_maxshell,
    "filtration": cmd_filtration,
    "verify-filtration": cmd_verify_filtration,
    "simplicial-clean": cmd_simplicial_clean,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", default="-",
                        help="input file, or - for stdin (ideal text, face array, or JSON document)")
    common.add_argument("-e", "--expr", help="inline input instead of a file")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--vars", type=int, help="number of variables (default: largest index)")
    common.add_argument("--max-facets", type=int, default=sh.DEFAULT_MAX_FACETS)
    common.add_argument("--max-perms", type=int, default=sh.DEFAULT_MAX_NODES,
                        help="node budget for the backtracking searches")
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes for shelling searches (env PRETTYCLEAN_THREADS)")

    parser = argparse.ArgumentParser(
        prog="prettyclean",
        description="Shellability of multicomplexes and pretty clean filtrations of monomial ideals.",
        epilog="exit codes: 0 affirmative, 1 negative, 2 input error, 3 search cap exceeded",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in ("check-shelling", "check-maxshelling", "simplicial-clean"):
            p.add_argument("--order", help="JSON array of faces (vertex lists for simplicial-clean)")
        if name == "check-maxshelling":
            p.add_argument("--split", type=int)
        if name == "shell":
            p.add_argument("--strategy", choices=("exhaustive", "dimension"), default="exhaustive")
        if name == "filtration":
            p.add_argument("--via", choices=("search", "maxshell"), default="search")
    return parser


def run(argv: Optional[List[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        if args.expr is not None:
            text = args.expr
        elif args.input == "-":
            text = stdin.read()
        else:
            with open(args.input) as fh:
                text = fh.read()
        doc = load_document(text, args.vars)
        code, result, lines = COMMANDS[args.command](doc, args)
    except sh.SearchCapExceeded as e:
        print(f"error: {e}", file=stderr)
        return EXIT_CAP
    except (ValueError, OSError, KeyError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_INPUT
    if args.json:
        json.dump({"command": args.command, "exit_code": code, "result": result}, stdout, indent=2)
        stdout.write("\n")
    else:
        for line in lines:
            print(line, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
