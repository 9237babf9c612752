#!/usr/bin/env python3
"""Walk through the library's showcase computations end to end:
the stabilizer classification of sample points, the class-group to
closed-geodesic dictionary for a few discriminants, Morita classes of
lattice lines, and the two quartic special points.
"""

from fractions import Fraction

from modgeo.cfrac import cf_expand, gl2z_equivalent
from modgeo.exact import make_quad, normalize_quad
from modgeo.fields import (
    enumerate_rm_types,
    find_compatible_symplectic,
    hilbert_special_point,
    number_field,
    siegel_special_point,
    subfield_embed,
    verify_hilbert_lilac,
)
from modgeo.mtgroups import (
    GeodesicPoint,
    classify_bmt,
    classify_mt,
    dynamical_type,
    point_from_conjugator,
)
from modgeo.nctorus import morita_equivalent, pseudolattice_member
from modgeo.parse import format_value
from modgeo.qforms import class_to_geodesic, proper_classes
from modgeo.slopes import GenericSlope


def banner(title):
    print()
    print(f"== {title} " + "=" * max(0, 60 - len(title)))


def show_point(label, p):
    bmt, mt = classify_bmt(p), classify_mt(p)
    extra = f" d={bmt.d}" if bmt.d is not None else ""
    print(f"  {label:<28} bmt={bmt.kind}{extra:<5} mt={mt.kind:<12} "
          f"{dynamical_type(p)}")


def main():
    s2, s5 = normalize_quad(2), normalize_quad(5)

    banner("classification of sample points")
    show_point("identity conjugator", point_from_conjugator(((1, 0), (0, 1))))
    show_point("unipotent, u = 1/2", point_from_conjugator(((1, Fraction(1, 2)), (0, 1))))
    show_point("unipotent, u = sqrt(2)", point_from_conjugator(((1, s2), (0, 1))))
    show_point("conjugate pair sqrt(5)", GeodesicPoint(s5, -s5))
    show_point("generic pair e, -e", GeodesicPoint(GenericSlope("e"), GenericSlope("-e")))

    banner("class groups and closed geodesics")
    for D in (5, 12, 40, 60):
        cycles = proper_classes(D)
        geo = class_to_geodesic(D, cycles[0][0])
        slopes = ", ".join(format_value(s) for s in geo.slope_pair)
        print(f"  D={D:<3} h+={len(cycles)}  principal slopes: {slopes}  "
              f"length={geo.length_numeric(12)}")

    banner("lattice lines up to Morita equivalence")
    golden = make_quad(5, Fraction(1, 2), Fraction(1, 2))
    pairs = [(s2, 1 / s2), (s2, normalize_quad(3)), (golden, s5)]
    for x, y in pairs:
        cf_x, cf_y = cf_expand(x), cf_expand(y)
        verdict = "equivalent" if morita_equivalent(x, y) else "inequivalent"
        print(f"  {format_value(x):<14} periods {cf_x.period} vs {cf_y.period}"
              f"  -> {verdict} to {format_value(y)}")
    print(f"  3 + 2*sqrt(2) in Z + Z*sqrt(2): "
          f"{pseudolattice_member(3 + 2 * s2, s2)}")
    assert gl2z_equivalent(s2, 1 / s2)

    banner("quartic special points")
    E = number_field((-2, 0, 1))
    F = number_field((1, 0, -10, 0, 1))
    s = subfield_embed(E, F)
    print(f"  sqrt(2) inside F: coordinates {tuple(map(str, s))}")
    types = enumerate_rm_types(F, E)
    print(f"  RM types for F/E: {len(types)}")
    for t in types:
        lilac = hilbert_special_point(F, E, t)
        cert = verify_hilbert_lilac(lilac)
        print(f"    chosen embeddings {t.chosen}: direct_sum={cert['direct_sum']} "
              f"stable={cert['stable']}")

    K = number_field((-2, 0, 0, 0, 1))
    pt = siegel_special_point(K)
    psi = find_compatible_symplectic(pt, 3)
    print(f"  x^4 - 2: signature (2,1), dims {pt.dims}")
    print(f"  first compatible alternating form (height 3): {psi}")


if __name__ == "__main__":
    main()
