"""Magnus expansions of free-group words, filtration membership tests, and
kernel intersections of unipotent matrix representations."""

from .criteria import (
    LOWER_CENTRAL,
    FiltrationKind,
    LowerPCentral,
    Zassenhaus,
    filtration_generators,
    filtration_member,
    first_violation,
    in_L,
)
from .finite_series import (
    FiniteGroupTable,
    filtration_series_finite,
    generated_subgroup,
    nilpotency_probe,
)
from .kerint import (
    BatchedHoms,
    KerIntReport,
    cross_validate,
    cross_validate_words,
    enumerate_homs,
    kerint_finite,
    kerint_witness,
    witness_hom,
)
from .rings import (
    ZZ,
    IdealChain,
    Ring,
    RingElement,
    annihilator_test,
    integers,
    integers_mod,
    padic,
    parse_ring,
    prime_field,
    ring_arith,
    theta_reduce,
)
from .series import (
    TruncatedSeries,
    graded_component,
    magnus_expand,
    min_positive_degree,
    series_add,
    series_invert_unit,
    series_mul,
)
from .unipotent import (
    FullUnipotent,
    GroupHom,
    IdealUnipotent,
    SquareMatrix,
    enumerate_group,
    gnp,
    group_order,
    hom_eval,
    in_band,
    in_group,
    mat_mul,
    phi_hat,
    unipotent_group,
    unipotent_inverse,
)
from .words import (
    Alphabet,
    Word,
    commutator,
    enumerate_reduced,
    invert,
    multiply,
    parse,
    reduce,
)

__version__ = "0.1.0"
