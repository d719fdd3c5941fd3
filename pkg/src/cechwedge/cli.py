"""Command-line front end.

Every computation the library offers, with deterministic output:

    cechwedge cech earring -m 2 -n 4
    cechwedge cech wedge --grading 1,2;3 -n 3
    cechwedge hall -k 2 -J 3
    cechwedge count -k 3 -j 3
    cechwedge hm -n 4 -k 2 -m 2
    cechwedge verify edge --random --seed 7 --m 2 --levels 6
    cechwedge verify theta --random --seed 7 --n 4 --m 2 --levels 5
    cechwedge verify coherence --file elem.txt --levels 5
    cechwedge verify stabilize -s 1 --m-range 3..6

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
The default formula output is a single bare line so scripts can consume
it; --annotate adds the per-summand breakdown, --format json switches
to the machine encoding.  Identical flags and seed give byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .elements import (check_coherence, composition_realization,
                       parse_element_file, random_min_letter_element,
                       random_sparse_epsilon, verify_composition_additivity,
                       verify_weight2_realization, weight_one_part_vanishes,
                       weight_two_element, MinLetterFamilies, Weight2Family)
from .groups import render_text, to_machine
from .hall import GradingSequence, generate, height, necklace_count
from .hilton import (cech_decompose, decompose_wedge, earring_formula,
                     stabilization_report, weight_summand)
from .spheres import load_table
from .whitehead import project_level


class CommandError(Exception):
    """Bad flags or unreadable input; maps to exit code 2."""


def _table(args):
    try:
        return load_table(getattr(args, "table", None))
    except OSError as exc:
        raise CommandError("cannot read table: %s" % exc) from None
    except Exception as exc:
        raise CommandError(str(exc)) from None


def _grading_of(args) -> GradingSequence:
    spec = getattr(args, "grading", None)
    if spec:
        try:
            return GradingSequence.parse(spec)
        except Exception as exc:
            raise CommandError("bad grading %r: %s" % (spec, exc)) from None
    m = getattr(args, "m", None)
    if m is None:
        raise CommandError("need -m or --grading")
    if m < 2:
        raise CommandError("sphere dimension must be >= 2")
    return GradingSequence.for_wedge_of_fixed_dimension(m)


def _emit(text_lines, machine, fmt):
    if fmt == "json":
        print(json.dumps(machine, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# cech


def _formula_line(expr, trivial: bool) -> str:
    line = render_text(expr)
    if trivial:
        line += " (trivial by connectivity)"
    return line


def cmd_cech_earring(args) -> int:
    if args.n < 2 or args.m < 2:
        raise CommandError("need n >= 2 and m >= 2")
    table = _table(args)
    expr = earring_formula(args.n, args.m, table)
    trivial = args.n <= args.m - 1
    lines = [_formula_line(expr, trivial)]
    if args.annotate:
        j = 1
        while (args.m - 1) * j <= args.n - 1:
            q = (args.m - 1) * j + 1
            lines.append("weight %d: pi_%d(S^%d) per stage, %s"
                         % (j, args.n, q,
                            render_text(weight_summand(args.n, args.m, j, table))))
            j += 1
    _emit(lines, to_machine(expr), args.format)
    return 0


def cmd_cech_wedge(args) -> int:
    if args.n < 2:
        raise CommandError("need n >= 2")
    grading = _grading_of(args)
    table = _table(args)
    expr = cech_decompose(args.n, grading, table)
    trivial = args.n <= grading.r(1)
    _emit([_formula_line(expr, trivial)], to_machine(expr), args.format)
    return 0


# ---------------------------------------------------------------------------
# hall / count / hm


def cmd_hall(args) -> int:
    if args.k < 1 or args.J < 1:
        raise CommandError("need k >= 1 and J >= 1")
    grading = (GradingSequence.parse(args.grading) if args.grading
               else GradingSequence.constant(1))
    hs = generate(args.k, args.J)
    rows = [(w, w.length, height(w, grading)) for w in hs]
    lines = ["%s\t%d\t%d" % (str(w), j, h) for w, j, h in rows]
    machine = {"k": args.k, "max_weight": args.J,
               "grading": grading.spec_string(),
               "words": [{"word": str(w), "weight": j, "height": h}
                         for w, j, h in rows]}
    _emit(lines, machine, args.format)
    return 0


def cmd_count(args) -> int:
    if args.k < 1 or args.j < 1:
        raise CommandError("need k >= 1 and j >= 1")
    c = necklace_count(args.k, args.j)
    _emit([str(c)], {"k": args.k, "weight": args.j, "count": c}, args.format)
    return 0


def cmd_hm(args) -> int:
    if args.n < 2 or args.k < 1:
        raise CommandError("need n >= 2 and k >= 1")
    grading = _grading_of(args)
    table = _table(args)
    dec = decompose_wedge(args.n, args.k, grading, table)
    if dec.trivial_by_connectivity:
        lines = ["0 (trivial by connectivity)"]
    else:
        lines = ["%s\tpi_%d(S^%d)\t%s"
                 % (str(w), args.n, height(w, grading) + 1, render_text(g))
                 for w, g in dec.summands]
        if args.annotate:
            lines.append("total\t%s" % render_text(dec.total()))
    machine = {"n": args.n, "k": args.k, "grading": grading.spec_string(),
               "trivial_by_connectivity": dec.trivial_by_connectivity,
               "summands": [{"word": str(w),
                             "sphere": height(w, grading) + 1,
                             "group": to_machine(g)} for w, g in dec.summands],
               "total": to_machine(dec.total())}
    _emit(lines, machine, args.format)
    return 0


# ---------------------------------------------------------------------------
# verify


def _emit_verdict(ok: bool, detail: dict, failures, args) -> int:
    if args.format == "json":
        detail = dict(detail)
        detail["ok"] = ok
        detail["failures"] = list(failures)
        print(json.dumps(detail, sort_keys=True))
    else:
        print("PASS" if ok else "FAIL")
        for f in failures:
            print(f, file=sys.stderr)
    return 0 if ok else 1


def _element_from_file(path, table):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CommandError("cannot read %s: %s" % (path, exc)) from None
    try:
        return parse_element_file(text, table)
    except Exception as exc:
        raise CommandError("bad element file %s: %s" % (path, exc)) from None


def cmd_verify_edge(args) -> int:
    if args.m < 2:
        raise CommandError("sphere dimension must be >= 2")
    table = _table(args)
    failures = []
    runs = 0
    if args.file:
        e = _element_from_file(args.file, table)
        if not isinstance(e.oracle, Weight2Family):
            raise CommandError("element file must describe a pure weight-2 "
                               "family (eps lines only)")
        runs = 1
        rep = verify_weight2_realization(e.oracle.eps, e.m, args.levels, table)
        failures.extend(rep.failures)
    elif args.random:
        rng = random.Random(args.seed)
        for t in range(args.count):
            eps = random_sparse_epsilon(rng, max_index=6, bound=3)
            delta = random_sparse_epsilon(rng, max_index=6, bound=3)
            runs += 1
            rep = verify_weight2_realization(eps, args.m, args.levels, table)
            if not rep.ok:
                failures.append("run %d: %s" % (t, "; ".join(rep.failures)))
            added = (weight_two_element(args.m, eps)
                     + weight_two_element(args.m, delta))
            combined = weight_two_element(args.m, eps + delta)
            for k in range(1, args.levels + 1):
                if added.level(k).coords != combined.level(k).coords:
                    failures.append("run %d: additivity fails at level %d" % (t, k))
    else:
        raise CommandError("need --file or --random")
    return _emit_verdict(not failures,
                         {"check": "edge", "m": args.m, "levels": args.levels,
                          "runs": runs}, failures, args)


def cmd_verify_theta(args) -> int:
    if args.n < 2 or args.m < 2:
        raise CommandError("need n >= 2 and m >= 2")
    table = _table(args)
    failures = []
    runs = 0
    if args.file:
        e = _element_from_file(args.file, table)
        if not isinstance(e.oracle, MinLetterFamilies):
            raise CommandError("element file must describe a pure least-letter "
                               "family (gtuple lines only)")
        runs = 1
        expr = composition_realization(e)
        for k in range(1, args.levels + 1):
            if project_level(expr, k, table) != e.level(k).coords:
                failures.append("level %d: realization disagrees with "
                                "coordinates" % k)
        if not weight_one_part_vanishes(e, args.levels):
            failures.append("weight-1 part does not vanish")
    elif args.random:
        rng = random.Random(args.seed)
        for t in range(args.count):
            e1 = random_min_letter_element(rng, args.n, args.m, table)
            e2 = random_min_letter_element(rng, args.n, args.m, table)
            runs += 1
            rep = verify_composition_additivity(e1, e2, args.levels, table)
            if not rep.ok:
                failures.append("run %d: %s" % (t, "; ".join(rep.failures)))
            if not weight_one_part_vanishes(e1 + e2, args.levels):
                failures.append("run %d: weight-1 part does not vanish" % t)
    else:
        raise CommandError("need --file or --random")
    return _emit_verdict(not failures,
                         {"check": "theta", "n": args.n, "m": args.m,
                          "levels": args.levels, "runs": runs}, failures, args)


def cmd_verify_coherence(args) -> int:
    table = _table(args)
    if not args.file:
        raise CommandError("need --file")
    e = _element_from_file(args.file, table)
    rep = check_coherence(e, args.levels)
    failures = ["level %d, word %s" % (k, w) for k, w in rep.failures]
    return _emit_verdict(rep.ok,
                         {"check": "coherence", "n": e.n, "m": e.m,
                          "levels": args.levels}, failures, args)


def _parse_m_range(text: str):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise CommandError("m-range looks like 3..6")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise CommandError("m-range looks like 3..6") from None
    if lo > hi:
        raise CommandError("empty m-range %r" % text)
    return range(lo, hi + 1)


def cmd_verify_stabilize(args) -> int:
    table = _table(args)
    try:
        rep = stabilization_report(args.s, _parse_m_range(args.m_range), table)
    except ValueError as exc:
        raise CommandError(str(exc)) from None
    for w in rep.warnings:
        print(w, file=sys.stderr)
    if args.format == "json":
        print(json.dumps({"ok": rep.stable, "offset": rep.offset,
                          "stable_value": (to_machine(rep.stable_value)
                                           if rep.stable_value is not None else None),
                          "entries": [{"m": m, "group": to_machine(g)}
                                      for m, g in rep.entries]},
                         sort_keys=True))
    else:
        if rep.stable:
            print("stable: %s" % rep.render_stable_value())
        else:
            print("not stable")
        if args.annotate or not rep.stable:
            for m, g in rep.entries:
                print("m=%d: %s" % (m, render_text(g)))
    return 0 if rep.stable else 1


# ---------------------------------------------------------------------------
# parser


def _add_common(p, table=True):
    p.add_argument("--format", choices=("text", "json"), default="text")
    if table:
        p.add_argument("--table", default=None,
                       help="sphere table file, or 'seed' (default: "
                            "$CECHWEDGE_TABLE, else seed)")
    p.add_argument("--annotate", action="store_true",
                   help="add per-summand detail lines")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cechwedge",
        description="Limit homotopy of shrinking wedges of spheres: Hall "
                    "bases, wedge decompositions, closed formulas, and "
                    "element-level verification.")
    sub = ap.add_subparsers(dest="command", required=True)

    cech = sub.add_parser("cech", help="limit group formulas")
    cech_sub = cech.add_subparsers(dest="variant", required=True)
    pe = cech_sub.add_parser("earring", help="shrinking wedge of m-spheres")
    pe.add_argument("-m", type=int, required=True, help="sphere dimension")
    pe.add_argument("-n", type=int, required=True, help="homotopy degree")
    _add_common(pe)
    pe.set_defaults(func=cmd_cech_earring)
    pw = cech_sub.add_parser("wedge", help="general shrinking wedge by grading")
    pw.add_argument("--grading", required=True, help="p1,...,pk;t")
    pw.add_argument("-n", type=int, required=True)
    _add_common(pw)
    pw.set_defaults(func=cmd_cech_wedge)

    ph = sub.add_parser("hall", help="list Hall words")
    ph.add_argument("-k", type=int, required=True, help="letters")
    ph.add_argument("-J", type=int, required=True, help="maximum weight")
    ph.add_argument("--grading", default=None,
                    help="grading for the height column (default constant 1)")
    _add_common(ph, table=False)
    ph.set_defaults(func=cmd_hall)

    pc = sub.add_parser("count", help="Hall words of one weight")
    pc.add_argument("-k", type=int, required=True)
    pc.add_argument("-j", type=int, required=True)
    _add_common(pc, table=False)
    pc.set_defaults(func=cmd_count)

    pm = sub.add_parser("hm", help="wedge decomposition at a finite stage")
    pm.add_argument("-n", type=int, required=True)
    pm.add_argument("-k", type=int, required=True)
    pm.add_argument("-m", type=int, default=None)
    pm.add_argument("--grading", default=None)
    _add_common(pm)
    pm.set_defaults(func=cmd_hm)

    pv = sub.add_parser("verify", help="run a verification suite")
    vsub = pv.add_subparsers(dest="variant", required=True)

    ve = vsub.add_parser("edge", help="weight-2 realization identity")
    ve.add_argument("--m", type=int, required=True)
    ve.add_argument("--levels", type=int, default=6)
    ve.add_argument("--random", action="store_true")
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--count", type=int, default=20)
    ve.add_argument("--file", default=None)
    _add_common(ve)
    ve.set_defaults(func=cmd_verify_edge)

    vt = vsub.add_parser("theta", help="composition realization identities")
    vt.add_argument("--n", type=int, required=True)
    vt.add_argument("--m", type=int, required=True)
    vt.add_argument("--levels", type=int, default=5)
    vt.add_argument("--random", action="store_true")
    vt.add_argument("--seed", type=int, default=0)
    vt.add_argument("--count", type=int, default=20)
    vt.add_argument("--file", default=None)
    _add_common(vt)
    vt.set_defaults(func=cmd_verify_theta)

    vc = vsub.add_parser("coherence", help="tower compatibility of an element")
    vc.add_argument("--file", required=True)
    vc.add_argument("--levels", type=int, default=5)
    _add_common(vc)
    vc.set_defaults(func=cmd_verify_coherence)

    vs = vsub.add_parser("stabilize", help="closed forms across dimensions")
    vs.add_argument("-s", type=int, required=True, help="degree offset")
    vs.add_argument("--m-range", required=True, help="lo..hi")
    _add_common(vs)
    vs.set_defaults(func=cmd_verify_stabilize)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
