"""Polar code construction, SC decoding and block-error simulation."""

from .code import CodeSpec, LayerStack, embed_info, encode, encode_array, stack_matrix
from .construction import (
    SynthChannelParams,
    bec_channel_params,
    construct_code,
    density_evolution,
    select_frozen,
)
from .decoder import LLR_CAP, SCDecoder, sc_decode
from .simulation import SimConfig, SimResult, run_sweep, simulate_bler, wilson_interval, write_csv

__all__ = [
    "CodeSpec",
    "LayerStack",
    "LLR_CAP",
    "SCDecoder",
    "SimConfig",
    "SimResult",
    "SynthChannelParams",
    "bec_channel_params",
    "construct_code",
    "density_evolution",
    "embed_info",
    "encode",
    "encode_array",
    "run_sweep",
    "sc_decode",
    "select_frozen",
    "simulate_bler",
    "stack_matrix",
    "wilson_interval",
    "write_csv",
]
