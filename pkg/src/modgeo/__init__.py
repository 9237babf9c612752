"""Exact arithmetic for geodesics on the modular curve and friends:
quadratic fields, continued fractions, indefinite form class groups,
stabilizer-group classification, rank-2 lattice lines with their ordered
K0 shadow, and quartic special points."""

from .cfrac import (
    CFExpansion,
    QuadSurdState,
    cf_expand,
    convergent,
    convergents,
    gl2z_equivalent,
    pell_fundamental_unit,
)
from .exact import (
    QuadElem,
    exact_floor,
    make_quad,
    minpoly,
    normalize_quad,
    sign_of,
    sqrt_rational,
    squarefree_split,
    to_decimal,
)
from .fields import (
    EmbeddingSet,
    HilbertLilac,
    NumberField,
    RMType,
    SiegelPoint,
    enumerate_rm_types,
    find_compatible_symplectic,
    hilbert_special_point,
    isolate_real_roots,
    number_field,
    siegel_special_point,
    subfield_embed,
    verify_hilbert_lilac,
    verify_psi,
)
from .mtgroups import (
    BMTClass,
    GeodesicPoint,
    MTClass,
    classify_bmt,
    classify_mt,
    dynamical_type,
    point_from_conjugator,
    rm_point_count,
)
from .nctorus import (
    LevelStructure,
    OrderedK0,
    PreLilac,
    count_level_structures,
    k0_positive,
    leaf_equal,
    lilac_iso,
    morita_equivalent,
    pair_to_geodesic,
    pseudolattice_member,
)
from .parse import format_slope, format_value, parse_slope, parse_value
from .qforms import (
    ClosedGeodesic,
    FormClassGroup,
    IndefForm,
    class_group,
    class_to_geodesic,
    compose,
    enumerate_reduced,
    is_reduced,
    order_unit,
    proper_classes,
    reduce_form,
    rho,
    wide_class_group,
)
from .slopes import INF, GenericSlope

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
