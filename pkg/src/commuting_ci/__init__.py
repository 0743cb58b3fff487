"""Exact decision procedure for complete-intersection commuting varieties.

The pipeline presents the (higher-genus) commuting variety of an upper
triangular matrix group by the entries of a product of matrix commutators,
then decides whether those generators cut out a complete intersection, via
two independent routes: Groebner-based codimension of the generator ideal,
and vanishing of degree-1 Koszul homology on graded slices.
"""

from .ordering import MonomialOrder
from .polyring import (
    BOTTOM_WEIGHT,
    DEFAULT_PRIME,
    Polynomial,
    PrimeField,
    QQ,
    Rationals,
    RingDescriptor,
    RingMismatchError,
    format_poly,
    parse_field_label,
    parse_poly,
    reduce_mod,
)
from .groupmat import (
    BOREL,
    UNIPOTENT,
    CommutatorSystem,
    PolyMatrix,
    ShapeError,
    VanishingPatternError,
    commutator_ring,
    commutator_word,
    coordinate_matrix,
    dump_generators,
    inverse,
)
from .groebner import (
    BuchbergerStats,
    GroebnerBasis,
    IdealStats,
    IncompleteComputation,
    buchberger,
    ideal_membership,
    krull_dimension,
    normal_form,
)
from .koszul import (
    KoszulComplex,
    KoszulSliceReport,
    build_complex,
    extend_with_zero_generators,
    homology_slice,
    kunneth_zero_check,
)
from .cidecide import (
    CIReport,
    WitnessReport,
    classify_table,
    decide_ci,
    u6_witness,
)

__version__ = "0.1.0"
