"""Command-line surface.

Exit codes: 0 answer produced; 1 verification or axiom check failed;
2 invalid input; 3 resource bound exceeded; 4 honest not-found at this
truncation (search exhausted, witness absent, or value outside a map's
image).  Answers go to stdout, diagnostics to stderr; ``--format jsonl``
emits one JSON object per line.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import axioms as axioms_mod
from . import engine, maps, words
from .core import (
    Connection,
    MODE_CONNECTIONS,
    MODE_INJECTIONS,
    MODE_SURJECTIONS,
    RigidSurjection,
    SpaceSpec,
    compose,
    connection_to_json,
    enumerate_space,
    format_connection,
    format_tokens,
    nth_initial_segment,
    nth_segment_set,
    parse_connection,
    reduct_witness,
)
from .errors import (
    BudgetExceededError,
    DomainError,
    EnumerationGuardError,
    FrozenWitnessInvalidError,
    FusionIncoherentError,
    InputError,
    InvariantError,
    NotInRangeError,
)
from .search import (
    Coloring,
    coloring_to_json,
    copy_family,
    find_mono_copy,
    min_witness_n,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_NOT_FOUND = 4

_MODE_SHORT = {"conn": MODE_CONNECTIONS, "surj": MODE_SURJECTIONS, "inj": MODE_INJECTIONS}
_SEARCH_MODES = {"sd": MODE_CONNECTIONS, "ramsey": MODE_INJECTIONS, "dual": MODE_SURJECTIONS}


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _element_text(el) -> str:
    if isinstance(el, Connection):
        return format_connection(el)
    if isinstance(el, RigidSurjection):
        return format_tokens(el.tokens)
    return ",".join(str(v) for v in el.values)


def _element_json(el) -> dict:
    if isinstance(el, Connection):
        return connection_to_json(el)
    if isinstance(el, RigidSurjection):
        return {"alphabet": el.alphabet, "t": [format_tokens((t,)) for t in el.tokens]}
    return {"i": list(el.values)}


def _space_from_json(data: dict):
    mode = data.get("mode")
    if mode == "hj_words":
        return words.WordSpace(data["alphabet"], data["length"])
    return SpaceSpec(data["alphabet"], data["L"], data["K"], mode)


def _load_coloring(path: str) -> Coloring:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return Coloring(_space_from_json(data["space"]), data["l"], tuple(data["colors"]))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sdramsey", description=__doc__)
    sub = p.add_subparsers(dest="verb", required=True)

    def add_fmt(sp):
        sp.add_argument("--format", choices=("text", "jsonl"), default="text")

    sp = sub.add_parser("enumerate", help="list every element of a space")
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--K", type=int, required=True)
    sp.add_argument("--alphabet", type=int, default=0)
    sp.add_argument("--mode", choices=tuple(_MODE_SHORT), default="conn")
    add_fmt(sp)

    sp = sub.add_parser("count", help="count the elements of a space")
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--K", type=int, required=True)
    sp.add_argument("--alphabet", type=int, default=0)
    sp.add_argument("--mode", choices=tuple(_MODE_SHORT), default="conn")
    add_fmt(sp)

    sp = sub.add_parser("validate", help="check a connection and echo its canonical form")
    sp.add_argument("text")
    sp.add_argument("--alphabet", type=int, default=None)
    add_fmt(sp)

    sp = sub.add_parser("compose", help="compose two connections (outer inner)")
    sp.add_argument("outer")
    sp.add_argument("inner")
    sp.add_argument("--alphabet", type=int, default=None)
    add_fmt(sp)

    sp = sub.add_parser("segment", help="initial segment at a class index")
    sp.add_argument("text")
    sp.add_argument("n", type=int)
    sp.add_argument("--alphabet", type=int, default=None)
    add_fmt(sp)

    sp = sub.add_parser("reduct", help="witness making candidate a reduct of base")
    sp.add_argument("candidate")
    sp.add_argument("base")
    sp.add_argument("--alphabet", type=int, default=None)
    add_fmt(sp)

    sp = sub.add_parser("segments-at", help="all n-segments of all reducts of a base")
    sp.add_argument("base")
    sp.add_argument("n", type=int)
    sp.add_argument("--alphabet", type=int, default=None)
    add_fmt(sp)

    sp = sub.add_parser("search", help="minimal witness search")
    ss = sp.add_subparsers(dest="family", required=True)
    for name in ("sd", "ramsey", "dual"):
        q = ss.add_parser(name)
        q.add_argument("--K", type=int, required=True)
        q.add_argument("--M", type=int, required=True)
        q.add_argument("--colors", type=int, required=True)
        q.add_argument("--max-N", dest="max_n", type=int, default=8)
        q.add_argument("--node-budget", type=int, default=engine.DEFAULT_NODE_BUDGET)
        q.add_argument("--threads", type=int, default=1)
        q.add_argument("--certificate", help="write the last bad coloring found to this path")
        q.add_argument("--verify", help="re-check a coloring JSON file instead of searching")
        add_fmt(q)
    q = ss.add_parser("hj")
    q.add_argument("--alphabet", type=int, required=True)
    q.add_argument("--colors", type=int, required=True)
    q.add_argument("--max-N", dest="max_n", type=int, default=4)
    q.add_argument("--node-budget", type=int, default=engine.DEFAULT_NODE_BUDGET)
    q.add_argument("--threads", type=int, default=1)
    q.add_argument("--certificate")
    q.add_argument("--verify")
    add_fmt(q)

    sp = sub.add_parser("axioms", help="exhaustive finite axiom check")
    sp.add_argument("--max-L", dest="max_l", type=int, default=4)
    sp.add_argument("--alphabet", type=int, default=1)
    add_fmt(sp)

    sp = sub.add_parser("maps", help="proof-map gadgets")
    ms = sp.add_subparsers(dest="gadget", required=True)

    q = ms.add_parser("word-segment", help="encode a word as a 0-segment over a base")
    q.add_argument("--base", required=True)
    q.add_argument("--word", required=True)
    q.add_argument("--alphabet", type=int, required=True)
    add_fmt(q)

    q = ms.add_parser("segment-word", help="decode a 0-segment back to its word")
    q.add_argument("--base", required=True)
    q.add_argument("segment")
    q.add_argument("--alphabet", type=int, required=True)
    add_fmt(q)

    q = ms.add_parser("shift", help="conjugate a connection by an alphabet shift")
    q.add_argument("text")
    q.add_argument("--base-alphabet", type=int, default=0)
    q.add_argument("--absorbed", type=int, default=1)
    q.add_argument("--inverse", action="store_true")
    add_fmt(q)

    q = ms.add_parser("cylinder", help="embed into (or solve out of) a cylinder")
    q.add_argument("text")
    q.add_argument("--base", required=True)
    q.add_argument("--variant", choices=("extend", "absorb"), default="extend")
    q.add_argument("--letters", type=int, default=None)
    q.add_argument("--inverse", action="store_true")
    q.add_argument("--alphabet", type=int, default=None, help="alphabet of the input connection")
    q.add_argument("--base-alphabet", type=int, default=None)
    add_fmt(q)

    q = ms.add_parser("left-word", help="flatten left-variable words into a surjection")
    q.add_argument("--w0", required=True)
    q.add_argument("--x", action="append", default=[], help="left-variable factor (repeatable)")
    q.add_argument("--alphabet", type=int, required=True)
    add_fmt(q)

    q = ms.add_parser("freeze", help="pin a witness to the identity below a cut")
    q.add_argument("text")
    q.add_argument("n", type=int)
    q.add_argument("--alphabet", type=int, default=None)
    add_fmt(q)

    q = ms.add_parser("fuse", help="stable segments of a coherent chain")
    q.add_argument("texts", nargs="+")
    q.add_argument("--alphabet", type=int, default=None)
    add_fmt(q)

    q = ms.add_parser("project", help="canonical projection onto the first K positions")
    q.add_argument("--N", type=int, required=True)
    q.add_argument("--K", type=int, required=True)
    add_fmt(q)

    return p


def _emit_connection(conn: Connection, fmt: str) -> None:
    if fmt == "jsonl":
        print(_dump(connection_to_json(conn)))
    else:
        print(format_connection(conn))


def _cmd_search(args) -> int:
    if args.family == "hj":
        if args.verify:
            coloring = _load_coloring(args.verify)
            space = coloring.space
            if not isinstance(space, words.WordSpace) or space.alphabet != args.alphabet:
                raise InputError("certificate space does not match the requested parameters")
            index = {w: i for i, w in enumerate(space.elements())}
            for x, line in words.enumerate_lines(space.length, space.alphabet):
                seen = {coloring.assignment[index[w]] for w in line}
                if len(seen) == 1:
                    print(f"monochromatic line: {words.format_word(x.symbols)} color {seen.pop()}")
                    return EXIT_CHECK_FAILED
            print("no monochromatic copy")
            return EXIT_OK
        result = words.hj_min_n(
            args.alphabet, args.colors, args.max_n,
            node_budget=args.node_budget, threads=args.threads,
        )
    else:
        mode = _SEARCH_MODES[args.family]
        if args.verify:
            coloring = _load_coloring(args.verify)
            space = coloring.space
            if not isinstance(space, SpaceSpec) or space.mode != mode or space.K != args.K:
                raise InputError("certificate space does not match the requested parameters")
            family = copy_family(space.L, space.K, args.M, mode)
            hit = find_mono_copy(coloring, family)
            if hit is None:
                print("no monochromatic copy")
                return EXIT_OK
            anchor, color = hit
            print(f"monochromatic copy: anchor {_element_text(anchor)} color {color}")
            return EXIT_CHECK_FAILED
        result = min_witness_n(
            args.K, args.M, args.colors, mode, max_n=args.max_n,
            node_budget=args.node_budget, threads=args.threads,
        )

    if args.certificate and result.last_bad is not None:
        with open(args.certificate, "w", encoding="utf-8") as fh:
            fh.write(_dump(coloring_to_json(result.last_bad)) + "\n")
    if args.format == "jsonl":
        payload = {
            "found": result.found,
            "max_checked": result.max_checked,
            "certificate": coloring_to_json(result.last_bad) if result.last_bad else None,
        }
        print(_dump(payload))
    else:
        print(result.found if result.found is not None else "none")
    return EXIT_OK if result.found is not None else EXIT_NOT_FOUND


def _cmd_axioms(args) -> int:
    report = axioms_mod.check_axioms(args.max_l, args.alphabet)
    if args.format == "jsonl":
        for c in report.clauses:
            print(
                _dump(
                    {
                        "clause": c.clause,
                        "passed": c.passed,
                        "instances": c.instances,
                        "counterexample": c.counterexample,
                    }
                )
            )
    else:
        for c in report.clauses:
            line = f"{c.clause:5s} {'pass' if c.passed else 'FAIL'}  ({c.instances} instances)  {c.statement}"
            if c.counterexample:
                line += f"  counterexample: {c.counterexample}"
            print(line)
    return EXIT_OK if report.all_passed else EXIT_CHECK_FAILED


def _cmd_maps(args) -> int:
    fmt = args.format
    if args.gadget == "word-segment":
        base = parse_connection(args.base, args.alphabet)
        w = words.parse_word(args.word, args.alphabet)
        _emit_connection(maps.word_to_zero_segment(w, base), fmt)
        return EXIT_OK
    if args.gadget == "segment-word":
        base = parse_connection(args.base, args.alphabet)
        seg = parse_connection(args.segment, args.alphabet)
        w = maps.zero_segment_to_word(seg, base)
        print(words.format_word(w.symbols) if fmt == "text" else _dump({"word": words.format_word(w.symbols)}))
        return EXIT_OK
    if args.gadget == "shift":
        shift = maps.AlphabetShift(args.base_alphabet, args.absorbed)
        alpha = shift.small_alphabet if args.inverse else shift.big_alphabet
        conn = parse_connection(args.text, alpha)
        _emit_connection(maps.apply_shift(shift, conn, inverse=args.inverse), fmt)
        return EXIT_OK
    if args.gadget == "cylinder":
        variant = maps.VARIANT_EXTEND if args.variant == "extend" else maps.VARIANT_ABSORB
        base_alpha = args.base_alphabet
        if base_alpha is None:
            base_alpha = 0 if variant == maps.VARIANT_ABSORB else None
        base = parse_connection(args.base, base_alpha)
        conn = parse_connection(args.text, args.alphabet)
        out = maps.cylinder_map(conn, base, variant, inverse=args.inverse, letters=args.letters)
        _emit_connection(out, fmt)
        return EXIT_OK
    if args.gadget == "left-word":
        w0 = words.parse_word(args.w0, args.alphabet)
        xs = [words.parse_word(t, args.alphabet, allow_variable=True) for t in args.x]
        surj = maps.left_words_to_surjection(w0, xs)
        print(format_tokens(surj.tokens) if fmt == "text" else _dump({"t": [format_tokens((t,)) for t in surj.tokens]}))
        return EXIT_OK
    if args.gadget == "freeze":
        conn = parse_connection(args.text, args.alphabet)
        _emit_connection(maps.freeze_below(conn, args.n), fmt)
        return EXIT_OK
    if args.gadget == "fuse":
        chain = [parse_connection(t, args.alphabet) for t in args.texts]
        for seg in maps.fuse(chain):
            _emit_connection(seg, fmt)
        return EXIT_OK
    if args.gadget == "project":
        _emit_connection(maps.canonical_projection(args.N, args.K), fmt)
        return EXIT_OK
    raise InputError(f"unknown gadget {args.gadget!r}")


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        if args.verb == "enumerate":
            spec = SpaceSpec(args.alphabet, args.L, args.K, _MODE_SHORT[args.mode])
            for el in enumerate_space(spec):
                print(_dump(_element_json(el)) if args.format == "jsonl" else _element_text(el))
            return EXIT_OK
        if args.verb == "count":
            spec = SpaceSpec(args.alphabet, args.L, args.K, _MODE_SHORT[args.mode])
            n = spec.count()
            print(_dump({"count": n}) if args.format == "jsonl" else n)
            return EXIT_OK
        if args.verb == "validate":
            conn = parse_connection(args.text, args.alphabet)
            if args.format == "jsonl":
                print(_dump({"ok": True, "canonical": format_connection(conn)}))
            else:
                print(format_connection(conn))
            return EXIT_OK
        if args.verb == "compose":
            outer = parse_connection(args.outer, args.alphabet)
            inner = parse_connection(args.inner, args.alphabet)
            _emit_connection(compose(outer, inner), args.format)
            return EXIT_OK
        if args.verb == "segment":
            conn = parse_connection(args.text, args.alphabet)
            _emit_connection(nth_initial_segment(conn, args.n), args.format)
            return EXIT_OK
        if args.verb == "reduct":
            cand = parse_connection(args.candidate, args.alphabet)
            base = parse_connection(args.base, args.alphabet)
            wit = reduct_witness(cand, base)
            if wit is None:
                print("none")
                return EXIT_NOT_FOUND
            _emit_connection(wit, args.format)
            return EXIT_OK
        if args.verb == "segments-at":
            base = parse_connection(args.base, args.alphabet)
            for seg in nth_segment_set(base, args.n):
                _emit_connection(seg, args.format)
            return EXIT_OK
        if args.verb == "search":
            return _cmd_search(args)
        if args.verb == "axioms":
            return _cmd_axioms(args)
        if args.verb == "maps":
            return _cmd_maps(args)
        raise InputError(f"unknown verb {args.verb!r}")
    except InvariantError as exc:
        print(f"invariant violation: {exc.report.summary()}", file=sys.stderr)
        return EXIT_INVALID
    except (InputError, DomainError, FusionIncoherentError, FrozenWitnessInvalidError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (BudgetExceededError, EnumerationGuardError) as exc:
        print(f"resource bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NotInRangeError as exc:
        print(f"not in range at this truncation: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
