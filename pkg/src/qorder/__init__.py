"""qorder: quotient orders for chords, scales, and timbral brightness."""

from .orders import (
    ActionProperties,
    Comparison,
    FiniteRelation,
    GroupAction,
    QuotientStructure,
    RelationAxioms,
    action_properties,
    induced_relation,
    minimal_elements,
    orbits,
    relation_axioms,
    submajorize_compare,
    transitive_closure,
    transitive_reduction,
)
from .setclass import (
    PitchClassSet,
    SetClass,
    SpanProfile,
    burnside_count,
    canonical_form,
    class_from_json,
    class_leq,
    class_to_json,
    enumerate_set_classes,
    span_limited_classes,
    span_limited_minimal,
    span_profile,
    subset_order,
    thirds_criterion_holds,
)
from .timbre import (
    BrightnessHasse,
    TimbralVector,
    brightness_compare,
    brightness_hasse,
    brightness_matrix,
    h_compare,
    infimum,
    suffix_profile,
    tv_distance,
)
from .simplex import LPResult, LPStandardForm, LPStatus, lp_solve
from .design import (
    DesignProblem,
    DesignSolution,
    DesignStatus,
    SearchReport,
    Variant,
    counterexample_search,
    oracle_solve,
    solution_no_brighter_than_target,
    solve_closest_to_bound,
    solve_design,
    to_lp,
)
from .spectra import (
    RawSpectrum,
    SpectrumFormatError,
    export_dot,
    load_fixture_collection,
    load_spectrum,
    normalize,
)

__version__ = "0.1.0"

__all__ = [
    "ActionProperties",
    "BrightnessHasse",
    "Comparison",
    "DesignProblem",
    "DesignSolution",
    "DesignStatus",
    "FiniteRelation",
    "GroupAction",
    "LPResult",
    "LPStandardForm",
    "LPStatus",
    "PitchClassSet",
    "QuotientStructure",
    "RawSpectrum",
    "RelationAxioms",
    "SearchReport",
    "SetClass",
    "SpanProfile",
    "SpectrumFormatError",
    "TimbralVector",
    "Variant",
    "action_properties",
    "brightness_compare",
    "brightness_hasse",
    "brightness_matrix",
    "burnside_count",
    "canonical_form",
    "class_from_json",
    "class_leq",
    "class_to_json",
    "counterexample_search",
    "enumerate_set_classes",
    "export_dot",
    "h_compare",
    "induced_relation",
    "infimum",
    "load_fixture_collection",
    "load_spectrum",
    "lp_solve",
    "minimal_elements",
    "normalize",
    "oracle_solve",
    "orbits",
    "relation_axioms",
    "solution_no_brighter_than_target",
    "solve_closest_to_bound",
    "solve_design",
    "span_limited_classes",
    "span_limited_minimal",
    "span_profile",
    "submajorize_compare",
    "subset_order",
    "suffix_profile",
    "thirds_criterion_holds",
    "to_lp",
    "transitive_closure",
    "transitive_reduction",
    "tv_distance",
]
