"""Command-line front end.

Exit codes: 0 all checks hold, 1 usage error, 2 counterexample or oracle
disagreement, 3 resource-limited.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from .atoms import (DEFAULT_MAX_N, PreconditionError, atoms_bruteforce, atoms_characterized,
                    default_workers, phi_reduction, run_scan, structure_of)
from .diagrams import NotConsecutiveError, render
from .perm import (PermutationParseError, all_permutations, apply_word, format_one_line,
                   parse_permutation, Permutation)
from .report import VerificationReport, combined_exit_code, stopwatch
from .typeb import DEFAULT_B_MAX_N, b_scan
from .verify import (DEFAULT_CLASS_MAX_N, REFERENCE_TABLE, check_big_class, check_big_class_all,
                     check_bound, check_class_inequality, check_equivalence, check_spectrum,
                     check_structure, check_tenner_insufficiency, check_tenner_necessity,
                     format_table, table_atoms)
from .words import (DEFAULT_CEILING, ResourceLimitError, commutation_classes, count_reduced_words,
                    format_word, parse_word, reduced_words, shift, shift_permutation)

CHECKS = ["bound", "spectrum", "class-inequality", "big-class", "equivalence",
          "tenner-necessity", "tenner-insufficiency", "structure", "oracle", "all"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: $COMMCLASS_WORKERS or CPU count)")
    common.add_argument("--ceiling", type=int, default=DEFAULT_CEILING,
                        help="refuse to materialize more reduced words than this")
    common.add_argument("--format", dest="fmt", default="text",
                        choices=["text", "json", "csv", "md", "ascii", "svg"])
    common.add_argument("--output", "-o", default=None, help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--no-timing", action="store_true",
                        help="omit elapsed times so reports are byte-reproducible")

    parser = _Parser(prog="commclass", description="Reduced words, commutation classes and "
                     "one-element commutation classes of permutations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def perm_cmd(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("perm", help='one-line "3,4,2,1" or cycles "(1 3)(2 4 5)"')
        p.add_argument("--degree", type=int, default=None, help="degree for cycle notation")
        return p

    perm_cmd("words", "list the reduced words")
    perm_cmd("count", "count the reduced words")
    perm_cmd("classes", "list the commutation classes")
    p = perm_cmd("atoms", "list the one-element commutation classes")
    p.add_argument("--method", choices=["brute", "characterized", "both"], default="characterized")
    p = perm_cmd("structure", "segment structure of an atom, and its phi image when defined")
    p.add_argument("word")

    p = sub.add_parser("render", parents=[common], help="draw the line diagram of a word")
    p.add_argument("word")

    p = sub.add_parser("shift", parents=[common], help="add k to every letter of a word")
    p.add_argument("word")
    p.add_argument("k", type=int)

    p = sub.add_parser("table", parents=[common], help="histogram of atom counts per n")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--budget", type=int, default=DEFAULT_MAX_N, help="largest n allowed")
    p.add_argument("--scan-dir", default=None, help="persist resumable scan files here")
    p.add_argument("--compare-reference", action="store_true",
                   help="also match every computed row against the reference counts")

    p = sub.add_parser("verify", parents=[common], help="run a verification check")
    p.add_argument("check", choices=CHECKS)
    p.add_argument("--n", type=int, default=None, help="n (degree n+1), or n_max for scans")
    p.add_argument("--max-letter", type=int, default=5)
    p.add_argument("--max-len", type=int, default=15)
    p.add_argument("--perm", default=None, help="permutation for big-class")
    p.add_argument("--samples", type=int, default=200, help="random permutations for oracle")
    p.add_argument("--budget", type=int, default=None, help="override the default n budget")

    p = sub.add_parser("bscan", parents=[common], help="atom counts over the type B group B_n")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--budget", type=int, default=DEFAULT_B_MAX_N)
    return parser


def _perm(args) -> Permutation:
    return parse_permutation(args.perm, args.degree)


def _emit_reports(reports: Sequence[VerificationReport], args, out) -> int:
    for r in reports:
        if args.fmt == "json":
            out.write(r.record(timing=not args.no_timing) + "\n")
        else:
            out.write(r.text(timing=not args.no_timing) + "\n")
    return combined_exit_code(reports)


def _words_out(words, args, out, key="word"):
    if args.fmt == "json":
        for w in words:
            out.write(json.dumps({key: format_word(w)}) + "\n")
    else:
        for w in words:
            out.write(format_word(w) + "\n")


def cmd_words(args, out):
    _words_out(reduced_words(_perm(args), args.ceiling), args, out)
    return 0


def cmd_count(args, out):
    p = _perm(args)
    c = count_reduced_words(p)
    out.write((json.dumps({"permutation": format_one_line(p), "count": c}) if args.fmt == "json"
               else str(c)) + "\n")
    return 0


def cmd_classes(args, out):
    part = commutation_classes(_perm(args), args.ceiling)
    for cl in part.classes:
        if args.fmt == "json":
            out.write(json.dumps({"representative": format_word(cl[0]), "size": len(cl),
                                  "words": [format_word(w) for w in cl]}) + "\n")
        else:
            out.write(" ".join(format_word(w) for w in cl) + "\n")
    return 0


def cmd_atoms(args, out):
    p = _perm(args)
    if args.method == "brute":
        _words_out(atoms_bruteforce(p, args.ceiling), args, out)
        return 0
    chars = atoms_characterized(p)
    if args.method == "characterized":
        _words_out(chars, args, out)
        return 0
    brute = atoms_bruteforce(p, args.ceiling)
    _words_out(chars, args, out)
    if brute != chars:
        sys.stderr.write(f"oracle disagreement for {format_one_line(p)}: brute force "
                         f"{[format_word(w) for w in brute]} vs characterization "
                         f"{[format_word(w) for w in chars]}\n")
        return 2
    if args.fmt != "json":
        noun = "atom" if len(chars) == 1 else "atoms"
        out.write(f"# brute force and characterization agree ({len(chars)} {noun})\n")
    return 0


def cmd_structure(args, out):
    p, w = _perm(args), parse_word(args.word)
    s = structure_of(p, w)
    fields = {"case": s.case, "m": s.m, "M": s.M, "i": s.i, "j": s.j, "oscillating": s.oscillating}
    if not s.oscillating and s.case == "seg_up" and s.j is not None and s.j >= s.i:
        img, target = phi_reduction(p, w)
        fields["phi"] = format_word(img)
        fields["phi_permutation"] = format_one_line(target)
    if args.fmt == "json":
        out.write(json.dumps(fields) + "\n")
    else:
        for k, v in fields.items():
            out.write(f"{k}: {v}\n")
    return 0


def cmd_render(args, out):
    fmt = args.fmt if args.fmt in ("ascii", "svg") else "ascii"
    out.write(render(parse_word(args.word), fmt))
    return 0


def cmd_shift(args, out):
    if args.k < 1:
        raise UsageError("k must be positive")
    w = parse_word(args.word)
    shifted = shift(w, args.k)
    out.write(format_word(shifted) + "\n")
    if args.fmt == "text" and w:
        p = apply_word(w, max(w) + 1)
        out.write(f"# {format_one_line(p)} -> {format_one_line(shift_permutation(p, args.k))}\n")
    return 0


def cmd_table(args, out, workers):
    if args.max_n > args.budget:
        out.write(f"# n={args.max_n} exceeds budget {args.budget}\n")
        return 3
    if args.scan_dir:
        from pathlib import Path
        Path(args.scan_dir).mkdir(parents=True, exist_ok=True)
        cache = {n: run_scan(n, Path(args.scan_dir) / f"atoms-n{n}.tsv", workers, args.budget)
                 for n in range(1, args.max_n + 1)}
    else:
        cache = {}
    rows = table_atoms(args.max_n, workers=workers, max_n=args.budget, cache=cache)
    fmt = args.fmt if args.fmt in ("csv", "md") else "text"
    if args.fmt == "json":
        for n, hist in rows:
            out.write(json.dumps({"n": n, "counts": hist}) + "\n")
    else:
        out.write(format_table(rows, fmt))
    if args.compare_reference:
        for n, hist in rows:
            matches = [k for k, ref in REFERENCE_TABLE.items() if tuple(hist[:5]) == ref]
            label = ", ".join(f"reference row n={k}" for k in matches) or "no reference row"
            out.write(f"# computed n={n} matches {label}\n")
    return 0


def _oracle_report(samples: int, seed: int, ceiling: int) -> VerificationReport:
    """Brute force against characterization on every permutation of degree <= 6
    and on random permutations of degree 7 and 8."""
    with stopwatch() as elapsed:
        rng = random.Random(seed)
        checked = skipped = 0
        perms = [p for d in range(1, 7) for p in all_permutations(d)]
        for _ in range(samples):
            d = rng.choice((7, 8))
            images = list(range(1, d + 1))
            rng.shuffle(images)
            perms.append(Permutation(tuple(images)))
        for p in perms:
            if count_reduced_words(p) > ceiling:
                skipped += 1
                continue
            brute, chars = atoms_bruteforce(p, ceiling), atoms_characterized(p)
            checked += 1
            if brute != chars:
                witness = {"permutation": format_one_line(p),
                           "brute": [format_word(w) for w in brute],
                           "characterized": [format_word(w) for w in chars]}
                return VerificationReport("oracle", f"samples={samples},seed={seed}",
                                          "counterexample", witness, {"checked": checked}, elapsed())
        return VerificationReport("oracle", f"samples={samples},seed={seed}", "holds", None,
                                  {"checked": checked, "skipped_over_ceiling": skipped}, elapsed())


def cmd_verify(args, out, workers):
    check = args.check
    budget = args.budget if args.budget is not None else DEFAULT_MAX_N
    reports: list[VerificationReport] = []
    cache: dict = {}
    todo = CHECKS[:-1] if check == "all" else [check]
    for name in todo:
        if name in ("bound", "spectrum"):
            n = args.n if args.n is not None else 8
            if n > budget:
                reports.append(VerificationReport(name, f"n={n}", "resource-limited",
                                                  totals={"budget": budget}))
                continue
            table_atoms(n, workers=workers, max_n=budget, cache=cache)
            fn = check_bound if name == "bound" else check_spectrum
            reports += [fn(k, atom_map=cache[k]) for k in range(1, n + 1)]
        elif name == "class-inequality":
            n = args.n if args.n is not None else DEFAULT_CLASS_MAX_N
            cbudget = args.budget if args.budget is not None else DEFAULT_CLASS_MAX_N
            reports += [check_class_inequality(k, args.ceiling, cbudget) for k in range(1, n + 1)]
        elif name == "big-class":
            if args.perm:
                reports.append(check_big_class(parse_permutation(args.perm)))
            else:
                reports.append(check_big_class_all(args.n if args.n is not None else 6,
                                                   workers, cache))
        elif name == "equivalence":
            reports.append(check_equivalence(args.max_letter, args.max_len))
        elif name == "tenner-necessity":
            reports.append(check_tenner_necessity(args.n if args.n is not None else 7, workers, cache))
        elif name == "tenner-insufficiency":
            reports.append(check_tenner_insufficiency(args.max_letter, args.max_len))
        elif name == "structure":
            reports += check_structure(args.n if args.n is not None else 6, workers, cache)
        elif name == "oracle":
            reports.append(_oracle_report(args.samples, args.seed, min(args.ceiling, 20000)))
    return _emit_reports(reports, args, out)


def cmd_bscan(args, out):
    return _emit_reports([b_scan(args.n, args.budget)], args, out)


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    workers = args.workers if args.workers is not None else default_workers()
    if workers < 1 or args.ceiling < 1:
        parser.error("--workers and --ceiling must be positive")
    out = stdout or sys.stdout
    handle = open(args.output, "w") if args.output else None
    if handle:
        out = handle
    try:
        cmd = args.command
        if cmd == "table":
            return cmd_table(args, out, workers)
        if cmd == "verify":
            return cmd_verify(args, out, workers)
        return globals()[f"cmd_{cmd}"](args, out)
    except (PermutationParseError, NotConsecutiveError, PreconditionError, UsageError,
            ValueError) as exc:
        sys.stderr.write(f"commclass: error: {exc}\n")
        return 1
    except ResourceLimitError as exc:
        sys.stderr.write(f"commclass: {exc}\n")
        return 3
    finally:
        if handle:
            handle.close()


def main() -> None:
    sys.exit(run())
