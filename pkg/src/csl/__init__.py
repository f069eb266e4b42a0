"""Chromatic sumsets, covering certificates and their brute-force verification."""

from .covering import (
    CoveringCertificate,
    approx_submonoid_cover,
    chromatic_finite_cover,
    chromatic_semilinear_cover,
    finite_plus_monoid_cover,
    finite_set_cover,
    free_monochrome_cover,
    inhomogeneous_cover,
    lambda_bound,
    lift_colorwise,
    positive_shell_cover,
    simplex_lattice_cover,
    submonoid_exact_cover,
    transport_affine,
    transport_hom,
    union_linear_cover,
)
from .group import AffineMap, AmbientGroup, Homomorphism, Z, cyclic, element_add, element_scale, free_group, hom_apply
from .layers import (
    LayerStructure,
    RepProfile,
    decompose_layer,
    detect_stabilization,
    interval_cover_translates,
    layer_cover,
    layer_cover_general,
    representation_function,
    threshold_layer,
)
from .oracle import brute_rep_function, min_translate_cover, verify_certificate, verify_cover
from .sets import (
    ColorTuple,
    Finite,
    FinitePlusMonoid,
    FiniteSet,
    HVector,
    LinearSet,
    MonoidDesc,
    Semilinear,
    SemilinearSet,
    TranslatedMonoid,
    Window,
    enumerate_window,
    finite,
    finite_plus_monoid,
    member_up_to_bound,
    normalize_tuple,
    refine_to_unbounded,
    semilinear,
    translated_monoid,
)
from .sumsets import chromatic_sumset, chromatic_sumset_window, h_fold, minkowski_sum

__version__ = "0.1.0"
