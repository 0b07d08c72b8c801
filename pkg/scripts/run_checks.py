"""Run every verification at its default range and write one JSON record per line.

    python3 scripts/run_checks.py --out results/checks.jsonl
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from commclass.atoms import default_workers
from commclass.report import combined_exit_code
from commclass.typeb import b_scan
from commclass.verify import (check_big_class_all, check_bound, check_class_inequality,
                              check_equivalence, check_spectrum, check_structure,
                              check_tenner_insufficiency, check_tenner_necessity, table_atoms)


@dataclass
class CheckConfig:
    out: Path | None = None
    workers: int = 1
    scan_n: int = 8        # bound and spectrum over S_{n+1}
    class_n: int = 5       # class inequality
    structure_n: int = 6
    max_letter: int = 5
    max_len: int = 15
    b_n: int = 4
    timing: bool = True


def run(cfg: CheckConfig):
    cache = {}
    table_atoms(cfg.scan_n, workers=cfg.workers, cache=cache)
    reports = [check_bound(n, atom_map=cache[n]) for n in range(1, cfg.scan_n + 1)]
    reports += [check_spectrum(n, atom_map=cache[n]) for n in range(1, cfg.scan_n + 1)]
    reports += [check_class_inequality(n) for n in range(1, cfg.class_n + 1)]
    reports.append(check_equivalence(cfg.max_letter, cfg.max_len))
    reports.append(check_tenner_necessity(min(7, cfg.scan_n), cfg.workers, cache))
    reports.append(check_tenner_insufficiency(cfg.max_letter, cfg.max_len))
    reports += check_structure(cfg.structure_n, cfg.workers, cache)
    reports.append(check_big_class_all(cfg.structure_n, cfg.workers, cache))
    reports += [b_scan(n) for n in range(2, cfg.b_n + 1)]
    return reports


def main(cfg: CheckConfig) -> int:
    reports = run(cfg)
    lines = [r.record(timing=cfg.timing) for r in reports]
    if cfg.out is None:
        print("\n".join(lines))
    else:
        cfg.out.parent.mkdir(parents=True, exist_ok=True)
        cfg.out.write_text("\n".join(lines) + "\n")
    for r in reports:
        print(r.text(timing=cfg.timing), file=sys.stderr)
    return combined_exit_code(reports)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=None)
    ap.add_argument("--workers", type=int, default=default_workers())
    ap.add_argument("--scan-n", type=int, default=8)
    ap.add_argument("--class-n", type=int, default=5)
    ap.add_argument("--structure-n", type=int, default=6)
    ap.add_argument("--no-timing", dest="timing", action="store_false")
    sys.exit(main(CheckConfig(**vars(ap.parse_args()))))
