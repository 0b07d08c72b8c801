"""Histogram of atom counts over S_{n+1} for n = 1..max_n.

    python3 scripts/atom_table.py --max-n 9 --workers 4 --scan-dir scans/
"""

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from commclass.atoms import default_workers, run_scan
from commclass.verify import REFERENCE_TABLE, format_table, table_atoms


@dataclass
class TableConfig:
    max_n: int = 9
    workers: int = 1
    scan_dir: Path | None = None
    fmt: str = "md"


def main(cfg: TableConfig) -> None:
    cache = {}
    start = time.perf_counter()
    if cfg.scan_dir is not None:
        cfg.scan_dir.mkdir(parents=True, exist_ok=True)
        for n in range(1, cfg.max_n + 1):
            cache[n] = run_scan(n, cfg.scan_dir / f"atoms-n{n}.tsv", cfg.workers, cfg.max_n)
    rows = table_atoms(cfg.max_n, workers=cfg.workers, max_n=cfg.max_n, cache=cache)
    print(format_table(rows, cfg.fmt), end="")
    for n, hist in rows:
        hits = [k for k, ref in REFERENCE_TABLE.items() if tuple(hist[:5]) == ref]
        print(f"# n={n}: reference rows matching {hits or 'none'}")
    print(f"# {time.perf_counter() - start:.1f} s with {cfg.workers} worker(s)")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=9)
    ap.add_argument("--workers", type=int, default=default_workers())
    ap.add_argument("--scan-dir", type=Path, default=None)
    ap.add_argument("--format", dest="fmt", choices=["md", "csv", "text"], default="md")
    main(TableConfig(**vars(ap.parse_args())))
