"""Entropy production of discretized torus maps.

Lattice dynamics of the cat-map family and its sawtooth generalization,
partition-of-unity (Alicki-Fannes style) entropies via two independent
engines, and Lyapunov-exponent extraction by compactified-time Lagrange
extrapolation.
"""

from .maps import (
    ELLIPTIC,
    HYPERBOLIC,
    PARABOLIC,
    MapParams,
    Regime,
    apply_S,
    apply_S_inverse,
    apply_T,
    apply_U_lattice,
    classify_regime,
    eigenvalues,
    elliptic_period,
    frac,
    trajectory_U,
)
from .weyl import (
    CoherentWeights,
    TrigPolynomial,
    coherent_weights,
    convergence_gap,
    reconstruct,
    sample,
)
from .entropy import (
    EntropySeries,
    FrequencyField,
    GramMatrix,
    Partition,
    entropy_series,
    frequencies,
    gram_entropy,
    gram_matrix,
    oracle_density_matrix,
    shannon_entropy,
    string_image,
    support_set,
)
from .lyapunov import (
    CompactifiedSeries,
    LyapunovEstimate,
    breaking_time,
    compactify,
    lagrange_extrapolate,
    naive_transition,
    theoretical_lyapunov,
)
from .partitions import (
    PartitionSpec,
    gen_partition,
    load_partition_file,
    parse_partition_spec,
    save_partition_file,
)

__version__ = "0.1.0"

__all__ = [
    "ELLIPTIC",
    "HYPERBOLIC",
    "PARABOLIC",
    "MapParams",
    "Regime",
    "apply_S",
    "apply_S_inverse",
    "apply_T",
    "apply_U_lattice",
    "classify_regime",
    "eigenvalues",
    "elliptic_period",
    "frac",
    "trajectory_U",
    "CoherentWeights",
    "TrigPolynomial",
    "coherent_weights",
    "convergence_gap",
    "reconstruct",
    "sample",
    "EntropySeries",
    "FrequencyField",
    "GramMatrix",
    "Partition",
    "entropy_series",
    "frequencies",
    "gram_entropy",
    "gram_matrix",
    "oracle_density_matrix",
    "shannon_entropy",
    "string_image",
    "support_set",
    "CompactifiedSeries",
    "LyapunovEstimate",
    "breaking_time",
    "compactify",
    "lagrange_extrapolate",
    "naive_transition",
    "theoretical_lyapunov",
    "PartitionSpec",
    "gen_partition",
    "load_partition_file",
    "parse_partition_spec",
    "save_partition_file",
    "__version__",
]
