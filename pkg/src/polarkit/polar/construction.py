"""Exact binary-erasure-channel construction for mixed-kernel stacks.

A kernel's synthesized channels over BEC(eps) are again erasure channels.
Bit ``u_i`` is lost under an erasure pattern exactly when row ``g_i``,
restricted to the surviving columns, lies in the span of the restricted
rows below it.  Enumerating all ``2^l`` patterns therefore gives each
synthesized erasure probability as a polynomial in ``eps``; stacking layers
composes those polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import ExceedsEnumerationBudget, InvalidRate, NotInvertible
from ..gf2 import BinaryMatrix, is_invertible
from ..kernels import KernelRegistry, parse_expression
from .code import CodeSpec, LayerStack

MAX_DE_KERNEL = 8
# Z values closer than this are treated as equal when ranking channels
_Z_TIE_DECIMALS = 12


def _int_rank(rows) -> int:
    rows = [r for r in rows if r]
    r = 0
    while rows:
        pivot = max(rows)
        top = pivot.bit_length() - 1
        rows = [x ^ pivot if (x >> top) & 1 else x for x in rows]
        rows = [x for x in rows if x]
        r += 1
    return r


@lru_cache(maxsize=64)
def erasure_counts(kernel: BinaryMatrix) -> np.ndarray:
    """``counts[i, s]``: erasure patterns of size ``s`` that lose ``u_i``."""
    if not is_invertible(kernel):
        raise NotInvertible("kernel is singular over GF(2)")
    l = kernel.nrows
    if l > MAX_DE_KERNEL:
        raise ExceedsEnumerationBudget(f"kernel size {l} exceeds the DE ceiling {MAX_DE_KERNEL}")
    arr = kernel.array
    counts = np.zeros((l, l + 1), dtype=np.int64)
    for erased in range(1 << l):
        keep = [c for c in range(l) if not (erased >> c) & 1]
        rows = [sum(int(arr[r, c]) << j for j, c in enumerate(keep)) for r in range(l)]
        s = l - len(keep)
        for i in range(l):
            if _int_rank(rows[i:]) == _int_rank(rows[i + 1 :]):
                counts[i, s] += 1
    counts.setflags(write=False)
    return counts


def _apply_kernel(kernel: BinaryMatrix, z: np.ndarray) -> np.ndarray:
    counts = erasure_counts(kernel)
    l = kernel.nrows
    s = np.arange(l + 1)
    z = np.asarray(z, dtype=float)[..., None]
    basis = z**s * (1 - z) ** (l - s)
    return basis @ counts.T.astype(float)


def bec_channel_params(kernel: BinaryMatrix, eps: float) -> list:
    """Erasure probability of each synthesized bit channel of one kernel."""
    if not 0 <= eps <= 1:
        raise ValueError(f"erasure rate {eps} outside [0, 1]")
    return [float(v) for v in _apply_kernel(kernel, eps)]


@dataclass(frozen=True)
class SynthChannelParams:
    eps: float
    erasure_probs: np.ndarray

    def __len__(self) -> int:
        return self.erasure_probs.size


def density_evolution(stack: LayerStack, eps: float) -> SynthChannelParams:
    """Per-bit erasure probabilities of ``stack`` over BEC(eps).

    Entry ``k`` (0-based) corresponds to the mixed-radix digits of ``k``
    over the layer sizes, outermost layer most significant.
    """
    if not 0 <= eps <= 1:
        raise ValueError(f"erasure rate {eps} outside [0, 1]")
    z = np.array([float(eps)])
    for g in stack.layers:
        z = _apply_kernel(g, z).ravel()
    z = np.clip(z, 0.0, 1.0)
    z.setflags(write=False)
    return SynthChannelParams(float(eps), z)


def select_frozen(params, rate: float) -> tuple:
    """1-based indices of the ``ceil(N (1 - rate))`` worst channels.

    Larger erasure probability is frozen first; ties go to the lower index.
    """
    if not 0 < rate < 1:
        raise InvalidRate(f"rate {rate} outside (0, 1)")
    z = np.asarray(getattr(params, "erasure_probs", params), dtype=float)
    n = z.size
    n_frozen = math.ceil(n * (1 - rate) - 1e-9)
    order = np.lexsort((np.arange(n), -np.round(z, _Z_TIE_DECIMALS)))
    return tuple(sorted(int(i) + 1 for i in order[:n_frozen]))


def construct_code(
    expression: str, rate: float, design_eps: float = 0.5, registry: KernelRegistry = None
) -> CodeSpec:
    """Build a polar code whose frozen set is optimised for BEC(design_eps)."""
    stack = LayerStack.from_expression(parse_expression(expression), registry)
    params = density_evolution(stack, design_eps)
    frozen = select_frozen(params, rate)
    return CodeSpec(
        stack,
        frozen,
        expression=expression,
        design_eps=design_eps,
        z_values=tuple(float(v) for v in params.erasure_probs),
    )
