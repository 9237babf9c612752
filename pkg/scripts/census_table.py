#!/usr/bin/env python3
"""Print a census of real quadratic discriminants: class numbers, units,
regulators and geodesic lengths.

Usage: python scripts/census_table.py [DMAX]
"""

import sys

from modgeo.exact import log_decimal
from modgeo.parse import format_value
from modgeo.qforms import (
    class_to_geodesic,
    order_unit,
    valid_discriminant,
    wide_class_group,
)


def main():
    dmax = int(sys.argv[1]) if len(sys.argv) > 1 else 100
    header = f"{'D':>4} {'h+':>3} {'h':>3} {'N(eps)':>6}  {'epsilon':<18} {'regulator':<22} {'length':<22}"
    print(header)
    print("-" * len(header))
    for D in range(5, dmax + 1):
        if not valid_discriminant(D):
            continue
        h, _, grp = wide_class_group(D)
        eps, norm, _ = order_unit(D)
        geo = class_to_geodesic(D, grp.representatives[0])
        print(
            f"{D:>4} {grp.h_plus:>3} {h:>3} {norm:>6}  "
            f"{format_value(eps):<18} {log_decimal(eps, 18):<22} "
            f"{geo.length_numeric(18):<22}"
        )


if __name__ == "__main__":
    main()
