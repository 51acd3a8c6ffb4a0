"""Exact linear algebra for Borel envelopes, Grothendieck-resolution tangent
spaces and refinements of crystalline filtered phi-modules."""

from .errors import (
    DimensionError, DomainError, FernkitError, GeneratorExhausted, InvertibilityError,
    PreconditionError, SchemaError, UnsupportedError, ValidationError,
)
from .exactlin import (
    INFINITY, Flag, RMatrix, Subspace, dim_intersection, flag_of_matrix, format_rational,
    intersect, kernel, parse_rational, rref, subspace_sum, to_rational, vp,
)
from .weyl import (
    Permutation, all_permutations, bruhat_leq, cycle_count, full_cycle, full_cycles, identity,
    is_distinct_simple_product, length, longest, parse_permutation, reduced_word, relpos,
    simple_reflection, word_to_permutation,
)
from .borel import (
    BorelSubalgebra, EnvelopeReport, aij_matrix, borel_of, envelope_witness,
    graded_w0_intersection, uls_decompose, verify_envelope,
)
from .localmodel import (
    LocalModelPoint, TangentReport, formula_dim, in_kappa_fiber_Tw0, is_point, standard_point,
    stratum, tangent_fiber_dim, tangent_sweep,
)
from .phimod import (
    EXAMPLE4_NONCRITICAL, AdmissibilityVerdict, Embedding, FilteredPhiModule, Refinement,
    act, act_in_frame, cn_orbit_report, example4, induced_jumps, is_distinct_transposition_associated,
    is_irreducible, is_noncritical, numerically_noncritical, refinements, relative_position,
    sum_criterion_irreducible, tH, tN, weak_admissibility,
)
from .sampling import generate_random_wa

__version__ = "0.1.0"
