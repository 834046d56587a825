"""Exact geometry, Fourier analysis, and configuration counting over Z_{p^l}."""

from .configsets import (
    PointSet,
    difference_stratum_census,
    difference_stratum_counts,
    distance_set,
    dot_product_counts,
    dot_product_set,
    moment_bound,
    restricted_line_count,
    rotation_correlation,
    sumset,
    triangle_area_set,
)
from .fourier import (
    GridFunction,
    SpectrumTable,
    forward,
    forward_naive,
    inverse,
    inverse_naive,
    plancherel_gap,
)
from .geometry import (
    DimensionMismatch,
    Line,
    average_line_points,
    det2,
    dot,
    lines_in_stratum,
    lines_through,
    norm,
    spanned_line,
    sphere_points,
    stratum_of,
    stratum_points,
    stratum_size,
)
from .harness import (
    ExperimentConfig,
    Report,
    SetSource,
    conclusion_bound,
    generate_set,
    meets_hypothesis,
    random_subset,
    run_lemma_suite,
    run_theorem_experiment,
    size_threshold,
)
from .orthogroup import (
    Rotation,
    TriangleClass,
    canonical_pair,
    congruence_witness,
    so2_elements,
    stabilizer,
    triangle_classes,
)
from .ring import (
    Modulus,
    NonUnitError,
    NotARootError,
    Polynomial,
    SingularRootError,
    hensel_lift_root,
)

__version__ = "0.1.0"
