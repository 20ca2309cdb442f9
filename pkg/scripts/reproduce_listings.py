#!/usr/bin/env python3
"""Recompute every bundled listing output and time each check."""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field

from tropkit.reproduce import CHECKS, run_checks


@dataclass
class Config:
    only: list[str] = field(default_factory=list)


def main(cfg: Config) -> int:
    names = cfg.only or list(CHECKS)
    width = max(map(len, names))
    failed = 0
    for name in names:
        t = time.perf_counter()
        (res,) = run_checks([name])
        dt = time.perf_counter() - t
        failed += res.status != "pass"
        print(f"{res.status.upper():4}  {name:<{width}}  {dt:7.2f}s  {res.detail}")
    return 1 if failed else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("only", nargs="*", help=f"checks to run (default: all of {', '.join(CHECKS)})")
    sys.exit(main(Config(ap.parse_args().only)))
