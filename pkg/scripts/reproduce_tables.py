#!/usr/bin/env python3
"""Regenerate the three reference tables and print them.

Usage: python3 scripts/reproduce_tables.py [--workers W]
"""

import argparse
import sys
import time

from flatiso.search import reproduce_table


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()
    for table_id in (1, 2, 3):
        t0 = time.monotonic()
        text, families = reproduce_table(table_id, workers=args.workers)
        dt = time.monotonic() - t0
        print(f"=== table {table_id}: {len(families)} families in {dt:.1f}s ===")
        print(text)
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
