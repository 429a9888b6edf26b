"""Command line front end.

Exit codes are uniform across subcommands: 0 for success (membership holds,
descriptions agree, resolution complete), 1 for a checked failure (not a
member, descriptions differ, bounds too small to certify), 2 for unusable
input (bad flags, malformed files).

Tables travel in a small line format:

    betti v1
    mode canonical        (or explicit)
    entry 0 0 1
    entry 1 2 3
    entry 2 3 13/2

Blank lines and # comments are skipped; parsing stops at the first line that
is not an entry, so the stat lines `resolve` appends after a table are
harmless and its output pipes straight into `check -`.

Modules for `resolve` and `hilbert` are described either by a builtin name or
by generator degrees plus relation rows:

    field Fp 32003        (optional; also: field QQ)
    gens 0 0
    rel -z, 0
    rel y, -y
    rel 0, x

or simply `builtin omega`.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .cone import (
    BettiSequence,
    NotInConeError,
    DecompositionLoopError,
    check_finite_length,
    check_graded,
    check_local,
    decompose_local,
)
from .linalg import QQ, FP_DEFAULT, PrimeField
from .resolve import (
    BoundsError,
    GradedModuleB,
    PolyParseError,
    StabilizationError,
    builtin,
    hilbert_data,
    min_free_resolution,
    parse_poly,
)
from .tables import (
    CANONICAL,
    EXPLICIT,
    BettiTable,
    DegreeSequence,
    Functional,
    eval_functional,
    make_pure_diagram,
)
from .window import Window, WindowCapError, cross_check


class TableFormatError(ValueError):
    pass


class ModuleFormatError(ValueError):
    pass


def parse_table_text(text: str) -> BettiTable:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or lines[0] != "betti v1":
        raise TableFormatError("first line must be: betti v1")
    if len(lines) < 2 or lines[1] not in ("mode canonical", "mode explicit"):
        raise TableFormatError("second line must be: mode canonical|explicit")
    mode = CANONICAL if lines[1].endswith("canonical") else EXPLICIT
    entries = {}
    for line in lines[2:]:
        parts = line.split()
        if parts[0] != "entry":
            break  # trailing stat lines are not part of the table
        if len(parts) != 4:
            raise TableFormatError(f"bad entry line: {line!r}")
        try:
            i, j, val = int(parts[1]), int(parts[2]), Fraction(parts[3])
        except (ValueError, ZeroDivisionError) as exc:
            raise TableFormatError(f"bad entry line: {line!r}") from exc
        if (i, j) in entries:
            raise TableFormatError(f"duplicate entry at ({i}, {j})")
        entries[(i, j)] = val
    try:
        return BettiTable(entries, tail_mode=mode)
    except ValueError as exc:
        raise TableFormatError(str(exc)) from exc


def format_table_text(table: BettiTable) -> str:
    out = ["betti v1", f"mode {table.tail_mode}"]
    for (i, j), val in table.items():
        out.append(f"entry {i} {j} {val}")
    return "\n".join(out)


def parse_module_text(text: str, field=None) -> GradedModuleB:
    file_field = None
    gens = None
    rels = []
    builtin_name = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "field":
            parts = rest.split()
            if parts == ["QQ"]:
                file_field = QQ
            elif len(parts) == 2 and parts[0] == "Fp":
                try:
                    file_field = PrimeField(int(parts[1]))
                except ValueError as exc:
                    raise ModuleFormatError(str(exc)) from exc
            else:
                raise ModuleFormatError(f"bad field line: {line!r} (use: field QQ | field Fp P)")
        elif key == "gens":
            try:
                gens = tuple(int(t) for t in rest.split())
            except ValueError as exc:
                raise ModuleFormatError(f"bad gens line: {line!r}") from exc
        elif key == "rel":
            try:
                rels.append(tuple(parse_poly(t) for t in rest.split(",")))
            except PolyParseError as exc:
                raise ModuleFormatError(str(exc)) from exc
        elif key == "builtin":
            builtin_name = rest
        else:
            raise ModuleFormatError(f"unknown keyword {key!r}")
    if field is None:
        field = file_field if file_field is not None else FP_DEFAULT
    try:
        if builtin_name is not None:
            if gens is not None or rels:
                raise ModuleFormatError("builtin cannot be combined with gens/rel lines")
            return builtin(builtin_name, field)
        if gens is None:
            raise ModuleFormatError("missing gens line (or builtin NAME)")
        return GradedModuleB(gens, tuple(rels), field)
    except ValueError as exc:
        if isinstance(exc, ModuleFormatError):
            raise
        raise ModuleFormatError(str(exc)) from exc


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _parse_field(spec: str):
    if spec == "qq":
        return QQ
    if spec == "fp":
        return FP_DEFAULT
    if spec.startswith("fp:"):
        return PrimeField(int(spec[3:]))
    raise ValueError(f"bad field {spec!r} (use qq, fp, or fp:P)")


def _print_verdict(verdict, show_member=True) -> int:
    if not verdict.member:
        if show_member:
            print("member: no")
        v = verdict.violation
        print(f"violated: {v.label} value: {v.value}")
        return 1
    if show_member:
        print("member: yes")
    deco = verdict.decomposition
    print(f"terms: {len(deco.terms)}")
    for d, coeff in deco.terms:
        print(f"term: {d} coeff: {coeff}")
    return 0


def cmd_rays(args) -> int:
    if args.d1 == "inf":
        if args.tail:
            print("error: a tail needs a finite d1", file=sys.stderr)
            return 2
        d = DegreeSequence.free(args.d0)
    else:
        d1 = int(args.d1)
        d = DegreeSequence.tail(args.d0, d1) if args.tail else DegreeSequence.two_step(args.d0, d1)
    pd = make_pure_diagram(d)
    print(format_table_text(pd.table))
    print(f"degree_sequence: {d}")
    return 0


def cmd_check(args) -> int:
    table = parse_table_text(_read_text(args.file))
    checker = check_finite_length if args.finite_length else check_graded
    return _print_verdict(checker(table))


def cmd_decompose(args) -> int:
    table = parse_table_text(_read_text(args.file))
    checker = check_finite_length if args.finite_length else check_graded
    return _print_verdict(checker(table), show_member=False)


def cmd_resolve(args) -> int:
    M = parse_module_text(_read_text(args.file), field=args.field)
    res = min_free_resolution(M, args.deg_bound, args.hom_bound)
    print(format_table_text(res.betti))
    print(f"tail_consistent: {'yes' if res.tail_consistent else 'no'}")
    rows = " ".join(str(i) for i in res.truncated_rows) if res.truncated_rows else "none"
    print(f"truncated_rows: {rows}")
    print(f"gamma_inf: {eval_functional(Functional.gamma_inf(), res.betti)}")
    code = 0
    try:
        hd = hilbert_data(M, args.deg_bound)
        print(f"e: {hd.e}")
    except StabilizationError as exc:
        print(f"warning: {exc}", file=sys.stderr)
        code = 1
    if res.truncated_rows:
        print(f"warning: rows {rows} still have mass at deg_bound {res.deg_bound}", file=sys.stderr)
        code = 1
    return code


def cmd_hilbert(args) -> int:
    M = parse_module_text(_read_text(args.file), field=args.field)
    hd = hilbert_data(M, args.deg_bound)
    print(f"offset: {hd.offset}")
    print(f"numerator: {' '.join(str(c) for c in hd.numerator) if hd.numerator else '0'}")
    print(f"e: {hd.e}")
    return 0


def cmd_verify_window(args) -> int:
    report = cross_check(
        Window(args.jmin, args.jmax),
        finite_length=args.finite_length,
        include_alpha=not args.drop_alpha,
        include_gamma=not args.drop_gamma,
    )
    print(f"window: {args.jmin} {args.jmax}")
    print(f"generators: {report.n_generators}")
    print(f"facets: {report.n_facets}")
    print(f"rays: {report.n_rays}")
    print(f"equal: {'yes' if report.equal else 'no'}")
    for line in report.witnesses:
        print(f"witness: {line}")
    return 0 if report.equal else 1


def cmd_local(args) -> int:
    s = BettiSequence.of(Fraction(args.b0), Fraction(args.b1), Fraction(args.b2))
    if args.mode == "check":
        verdict = check_local(s, finite_length=args.finite_length)
        if verdict.member:
            print("member: yes")
            return 0
        print("member: no")
        v = verdict.violation
        print(f"violated: {v.label} value: {v.value}")
        return 1
    try:
        deco = decompose_local(s, finite_length=args.finite_length)
    except NotInConeError as exc:
        print("not in local cone")
        print(f"violated: {exc.violation.label} value: {exc.violation.value}")
        return 1
    print(f"a: {deco.a}")
    print(f"b: {deco.b}")
    print(f"c: {deco.c}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="betticone",
        description="Betti cone toolkit for the ring k[x,y,z]/(xy,yz,xz)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rays", help="print the pure diagram of a degree sequence")
    p.add_argument("--d0", type=int, required=True)
    p.add_argument("--d1", default="inf", help="int or inf (default inf)")
    p.add_argument("--tail", action="store_true", help="tail shape (d0, d1, d1+1, ...)")
    p.set_defaults(func=cmd_rays)

    p = sub.add_parser("check", help="cone membership of a table, with certificate")
    p.add_argument("file", nargs="?", default="-", help="table file or - for stdin")
    p.add_argument("--finite-length", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", help="like check, but prints only the decomposition")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--finite-length", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("resolve", help="Betti table of a module by minimal free resolution")
    p.add_argument("file", nargs="?", default="-", help="module file or - for stdin")
    p.add_argument("--deg-bound", type=int, required=True)
    p.add_argument("--hom-bound", type=int, required=True)
    p.add_argument("--field", type=_parse_field, default=None, help="qq, fp, or fp:P")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("hilbert", help="Hilbert series numerator and multiplicity")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--deg-bound", type=int, required=True)
    p.add_argument("--field", type=_parse_field, default=None)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("verify-window", help="compare generators and facets on a window")
    p.add_argument("--jmin", type=int, required=True)
    p.add_argument("--jmax", type=int, required=True)
    p.add_argument("--finite-length", action="store_true")
    p.add_argument("--drop-alpha", action="store_true", help="ablation: omit alpha facets")
    p.add_argument("--drop-gamma", action="store_true", help="ablation: omit gamma facets")
    p.set_defaults(func=cmd_verify_window)

    p = sub.add_parser("local", help="membership and decomposition for (b0, b1, b2)")
    p.add_argument("mode", choices=("check", "decompose"))
    p.add_argument("b0")
    p.add_argument("b1")
    p.add_argument("b2")
    p.add_argument("--finite-length", action="store_true")
    p.set_defaults(func=cmd_local)

    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (TableFormatError, ModuleFormatError, PolyParseError, WindowCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (StabilizationError, BoundsError, DecompositionLoopError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run())
