"""Extended irreducible binary sextic Goppa codes and their orbit counts.

Library layout:

- gf2tower: exact arithmetic in GF(2) < GF(2^n) < GF(2^(6n)), Frobenius and
  trace machinery, linearized-equation solving.
- mobius: the projective semi-linear group over GF(2^n), its action on the
  degree-6 elements, orbits and canonical representatives.
- codes: alternant / Goppa / extended code construction as binary codes,
  polynomial transforms and permutation-equivalence verification.
- counting: closed-form fixed-point counts, the averaged orbit bound, and
  the brute-force oracles (census, root counts, class equations).
- cli: the goppa-orbits command.
"""

from .gf2tower import LinearizedMap, Tower, make_tower, solve_affine_linearized
from .mobius import (
    SemiLinearMap,
    apply_map,
    canonical_orbit_rep,
    compose,
    infinity,
    inverse,
    make_map,
    pgl_orbit,
    random_degree_six,
)
from .codes import (
    BinaryCode,
    GoppaInstance,
    check_extended_equivalence,
    extend_code,
    extended_goppa_code,
    goppa_code,
    goppa_instance,
    transform_polynomial,
    weight_enumerator,
)
from .counting import (
    InfeasibleError,
    OrbitCensus,
    burnside_bound,
    class_equation_check,
    closed_form_fixed_points,
    fixed_point_oracle,
    fixed_point_table,
    global_orbit_census,
    root_count_oracle,
    solve_artin_schreier_shift,
)

__version__ = "1.0.0"

__all__ = [
    "Tower", "make_tower", "LinearizedMap", "solve_affine_linearized",
    "SemiLinearMap", "make_map", "apply_map", "compose", "inverse",
    "infinity", "pgl_orbit", "canonical_orbit_rep", "random_degree_six",
    "BinaryCode", "GoppaInstance", "goppa_instance", "goppa_code",
    "extended_goppa_code", "extend_code", "transform_polynomial",
    "check_extended_equivalence", "weight_enumerator",
    "burnside_bound", "closed_form_fixed_points", "fixed_point_oracle",
    "fixed_point_table", "global_orbit_census", "root_count_oracle",
    "class_equation_check", "solve_artin_schreier_shift",
    "OrbitCensus", "InfeasibleError",
]
