"""Run every builtin claim over all trees in an order range and summarise.

    python scripts/full_audit.py --order-range 2..12 --workers 4 --out audit.json
"""

from __future__ import annotations

import argparse
import time
from fractions import Fraction
from pathlib import Path

from treedex.audit import audit, builtin_claims, export_report
from treedex.enumeration import CorpusSpec
from treedex.indices import to_csv_value


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--order-range", default="2..10")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--alpha", type=Fraction, default=Fraction(2))
    p.add_argument("--beta", type=Fraction, default=Fraction(4))
    p.add_argument("--out", type=Path)
    args = p.parse_args()
    lo, hi = (int(s) for s in args.order_range.split(".."))

    start = time.perf_counter()
    report = audit(builtin_claims(args.alpha, args.beta), CorpusSpec.all_trees(lo, hi), workers=args.workers, include_examples=True)
    elapsed = time.perf_counter() - start

    print(f"{report.corpus}: {report.trees} trees in {elapsed:.1f}s")
    print(f"{'row':<34}{'tested':>8}{'violated':>10}{'undef':>7}  min slack")
    for c in report.claims:
        tested = c.tested if c.tested or not c.info else c.info
        print(f"{c.id:<34}{tested:>8}{c.violated:>10}{c.undefined:>7}  {to_csv_value(c.min_slack)}")
    if args.out:
        args.out.write_bytes(export_report(report, "csv" if args.out.suffix == ".csv" else "json"))
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
