"""powerclass: exact arithmetic for modular group rings, chain-ring linear
algebra, norm-pair combinatorics, and cyclotomic norm towers."""

from ._kernels import BACKEND
from .extint import INF, NEG_INF
from .groupring import (
    GroupRingElement,
    GroupRingParams,
    eval_phi,
    format_element,
    parse_element,
    poly_P,
    poly_Q,
    poly_T,
    poly_T_projection,
    project,
    ring_add,
    ring_mul,
)
from .ideals import (
    IdealPresentation,
    ResidueMatrix,
    annihilator,
    canonical_form,
    ideal_equal,
    ideal_membership,
    ideal_size,
)
from .normpair import (
    BVector,
    NormPair,
    NormVector,
    Ordering,
    TowerConstants,
    a_bounds_report,
    a_from_b,
    check_minimality_conditions,
    compare_norm_pairs,
    embedding_statement,
    expand_power,
    interpolate,
    last_nonneg_index,
    power_u_level,
    recover_from_interpolated,
    u_level,
)
from .fpmod import (
    ModuleElement,
    ModulePresentation,
    PropertyPCertificate,
    SubgroupSpec,
    element_equal,
    exceptional_module,
    fp_dimension,
    free_rank_over_quotient,
    has_eigenvalue,
    has_property_P,
    is_eigenmodule,
    is_free_over_quotient,
    is_trivial_under,
    refute_property_P,
    scalar_conductor,
    verify_property_P_certificate,
)
from .cyclotower import (
    CycloNumber,
    NormCertificate,
    TowerData,
    TowerSpec,
    WitnessTuple,
    b_vector_cyclotomic,
    cyclopair_witness,
    galois_act,
    is_primitive_root,
    norm,
    shift_representative,
    tower_data,
    verify_norm_pair,
)

__version__ = "0.1.0"
