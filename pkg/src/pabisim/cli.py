"""Command-line interface.

Exit status: 0 for success (or a positive decision), 1 for a negative
decision, 2 for any error.
"""

from __future__ import annotations

import argparse
import contextlib
import sys

from .automaton import reachable_fraction, rescale, quotient
from .bisim import BisimKind, bisimilar, coarsest_partition
from .errors import PAError
from .lattice import QuotientSet, join, leq, meet, normal_form, verify_lattice
from .pafile import dumps, export_dot, load
from .partition import state_key


class _Fail(Exception):
    pass


def _load(path):
    try:
        return load(path)
    except OSError as exc:
        raise _Fail(f"{path}: {exc.strerror or exc}") from None
    except PAError as exc:
        raise _Fail(f"{path}: {type(exc).__name__}: {exc}") from None


def _emit(out, automaton, name):
    out.write(dumps(automaton, name))


def _kind_arg(sp):
    sp.add_argument("--kind", choices=["strong", "weak"], default="strong")


def build_parser():
    ap = argparse.ArgumentParser(prog="pabisim", description="Bisimulation quotients and normal forms of probabilistic automata.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check-bisim", help="decide bisimilarity of two automata")
    _kind_arg(sp)
    sp.add_argument("a")
    sp.add_argument("b")

    for cmd, helptext in (("quotient", "quotient by the coarsest bisimulation"), ("normalform", "minimal normal form")):
        sp = sub.add_parser(cmd, help=helptext)
        _kind_arg(sp)
        sp.add_argument("a")
        sp.add_argument("--name")

    for cmd, helptext in (("rescale", "rescale tau-transitions"), ("reach", "reachable fraction")):
        sp = sub.add_parser(cmd, help=helptext)
        sp.add_argument("a")
        sp.add_argument("--name")

    for cmd in ("meet", "join"):
        sp = sub.add_parser(cmd, help=f"{cmd} of two bisimilar quotients")
        _kind_arg(sp)
        sp.add_argument("a")
        sp.add_argument("b")
        sp.add_argument("--name")

    sp = sub.add_parser("leq", help="order test on two bisimilar quotients")
    _kind_arg(sp)
    sp.add_argument("a")
    sp.add_argument("b")

    sp = sub.add_parser("verify-lattice", help="check lattice laws on a finite quotient set")
    _kind_arg(sp)
    sp.add_argument("files", nargs="+")
    sp.add_argument("--figure", help="write a Hasse diagram to this image file")

    sp = sub.add_parser("export-dot", help="render an automaton as Graphviz DOT")
    sp.add_argument("a")
    sp.add_argument("-o", "--output")

    sp = sub.add_parser("plot", help="plot the one-step distributions of a state/action")
    sp.add_argument("a")
    sp.add_argument("--state", required=True)
    sp.add_argument("--action", default="tau")
    sp.add_argument("-o", "--output", required=True)
    return ap


def _partition_lines(res, names):
    inj1, inj2 = res.injections
    label = {}
    for s, u in inj1.items():
        label[u] = f"{names[0]}:{s}"
    for s, u in inj2.items():
        label[u] = f"{names[1]}:{s}"
    lines = []
    for block in res.partition.as_sorted_lists():
        lines.append("{" + ", ".join(label[u] for u in block) + "}")
    return lines


def _run(args, out):
    kind = BisimKind.parse(getattr(args, "kind", "strong"))
    cmd = args.command

    if cmd == "check-bisim":
        a, b = _load(args.a), _load(args.b)
        res = bisimilar(a.automaton, b.automaton, kind)
        out.write(("bisimilar" if res.bisimilar else "not bisimilar") + f" ({kind})\n")
        for line in _partition_lines(res, ("A", "B")):
            out.write(line + "\n")
        return 0 if res.bisimilar else 1

    if cmd in ("quotient", "normalform", "rescale", "reach"):
        doc = _load(args.a)
        p = doc.automaton
        if cmd == "quotient":
            result = quotient(p, coarsest_partition(p, kind).partition)
        elif cmd == "normalform":
            result = normal_form(p, kind)
        elif cmd == "rescale":
            result = rescale(p)
        else:
            result = reachable_fraction(p)
        _emit(out, result, args.name or doc.name)
        return 0

    if cmd in ("meet", "join", "leq"):
        a, b = _load(args.a), _load(args.b)
        if cmd == "leq":
            ok = leq(a.automaton, b.automaton, kind)
            out.write(("true" if ok else "false") + "\n")
            return 0 if ok else 1
        op = meet if cmd == "meet" else join
        result = op(a.automaton, b.automaton, kind)
        _emit(out, result, args.name or f"{a.name}_{cmd}_{b.name}")
        return 0

    if cmd == "verify-lattice":
        docs = [_load(f) for f in args.files]
        names = [d.name for d in docs]
        if len(set(names)) != len(names):
            names = [f"{d.name}@{i + 1}" for i, d in enumerate(docs)]
        qs = QuotientSet([d.automaton for d in docs], kind, names)
        report = verify_lattice(qs)
        for row in report.rows():
            out.write(row + "\n")
        if args.figure:
            from .figures import plot_hasse

            plot_hasse(report, args.figure)
            out.write(f"figure\t{args.figure}\t\n")
        return 0 if report.ok else 1

    if cmd == "export-dot":
        doc = _load(args.a)
        text = export_dot(doc.automaton, doc.name)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            out.write(text)
        return 0

    if cmd == "plot":
        from .figures import plot_reachable_set

        doc = _load(args.a)
        p = doc.automaton
        state = next((s for s in p.states if str(s) == args.state), None)
        if state is None:
            raise _Fail(f"{args.a}: unknown state {args.state}")
        ext = plot_reachable_set(p, state, args.action, args.output)
        for pt in sorted(ext, key=lambda d: d.sort_key()):
            out.write(f"extreme\t{pt!r}\n")
        out.write(f"figure\t{args.output}\n")
        return 0

    raise _Fail(f"unknown command {cmd}")


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return _run(args, out)
    except _Fail as exc:
        err.write(f"error: {exc}\n")
    except PAError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
    except (OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
    return 2


if __name__ == "__main__":
    sys.exit(main())
