"""Exact counts of self-reciprocal irreducible monic polynomials over finite fields
with prescribed leading coefficients, and of irreducible monic polynomials with
prescribed leading and ending coefficients."""

from .charsum import (
    CharPoly,
    CountResult,
    F_value,
    I_count,
    I_count_all,
    I_total,
    I_trace,
    c_coeff,
    char_poly,
    divisors,
    mobius,
    power_sum,
)
from .classgroup import (
    ClassLabel,
    GroupStructure,
    class_inv,
    class_mul,
    class_of,
    class_pow,
    classes_of_degree,
    decompose,
    default_group,
    exponent_of,
)
from .errors import (
    CountOverflowError,
    ExactRangeError,
    IntegralityError,
    PalcountError,
    SearchSpaceError,
)
from .ffpoly import (
    FieldElement,
    FieldSpec,
    Poly,
    ending_coeffs,
    enumerate_monic,
    is_irreducible,
    is_self_reciprocal,
    leading_coeffs,
    parse_poly,
    poly_mul,
    reciprocal,
)
from .oracle import OracleReport, brute_class_count, brute_I, brute_S
from .sripm import (
    BoundsReport,
    S2_trace,
    S2_two,
    S3_trace,
    S_count,
    S_total,
    SrimQuery,
    bounds,
    phi_inverse,
    phi_map,
    psi_inverse,
    psi_map,
)
from .tables import TableSpec, render_table

__version__ = "0.1.0"
