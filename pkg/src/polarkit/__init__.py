"""Partial distances, exponents and SC-decoded polar codes for Kronecker-product kernels."""

from .distance import (
    CompositionIndex,
    ExponentReport,
    PartialDistanceProfile,
    dividing_point_decomposition,
    exponent,
    infer_factor_exponent,
    kron_exponent,
    kron_exponent_n,
    kron_partial_distances,
    kron_partial_distances_n,
    monotonicity_check,
    partial_distances,
)
from .errors import *  # noqa: F401,F403
from .gf2 import (
    BinaryMatrix,
    BitVector,
    inverse,
    is_invertible,
    kron_mat,
    kron_power,
    kron_vec,
    load_kernel,
    rank,
    read_kernel,
    span_min_weight,
    weight,
    write_kernel,
)
from .kernels import (
    KernelRegistry,
    NamedKernel,
    builtin,
    default_registry,
    evaluate_expression,
    format_expression,
    parse_expression,
    register_external,
)
from .polar import (
    CodeSpec,
    LayerStack,
    SCDecoder,
    SimConfig,
    SimResult,
    construct_code,
    density_evolution,
    encode,
    run_sweep,
    sc_decode,
    select_frozen,
    simulate_bler,
)

__version__ = "0.1.0"
