#!/usr/bin/env python3
"""Propagation experiment: embed the degree-6 kernel generator into
higher ranks and certify independence of the embedded family.

Usage:
    python scripts/propagation_report.py [--max-n N]

For each n the report lists the family size binom(n, 3) and the three
checks (nonzero, killed by tau over L[n], identity projection grid).
"""

import argparse
import json
import sys

from mccool.stabilization import independence_certificate


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=5)
    args = parser.parse_args()
    ok = True
    for n in range(3, args.max_n + 1):
        cert = independence_certificate(n)
        print(json.dumps(cert.to_json_dict(), sort_keys=True))
        ok = ok and cert.verified
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
