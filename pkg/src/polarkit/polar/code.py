"""Layer stacks, code specifications and the layered encoder."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import FrozenViolation, LengthMismatch, MatrixUnavailable, NotInvertible
from ..gf2 import BinaryMatrix, BitVector, is_invertible
from ..kernels import KernelRegistry, parse_expression, resolve_kernels


@dataclass(frozen=True)
class LayerStack:
    """Generator ``G_1 (x) G_2 (x) ... (x) G_n`` kept as its factors."""

    layers: tuple

    def __post_init__(self):
        layers = tuple(self.layers)
        if not layers:
            raise ValueError("a layer stack needs at least one kernel")
        for k, g in enumerate(layers, 1):
            if not is_invertible(g):
                raise NotInvertible(f"layer {k} is not an invertible square matrix")
        object.__setattr__(self, "layers", layers)

    @classmethod
    def from_expression(cls, expr, registry: KernelRegistry = None) -> "LayerStack":
        kernels = resolve_kernels(expr, registry)
        missing = sorted({k.name for k in kernels if not k.has_matrix})
        if missing:
            raise MatrixUnavailable(f"no matrix for exponent-only kernel(s): {', '.join(missing)}")
        return cls(tuple(k.matrix for k in kernels))

    @property
    def sizes(self) -> tuple:
        return tuple(g.nrows for g in self.layers)

    @property
    def block_length(self) -> int:
        return math.prod(self.sizes)

    def __len__(self) -> int:
        return len(self.layers)


def encode_array(stack: LayerStack, u: np.ndarray) -> np.ndarray:
    """``u (G_1 (x) ... (x) G_n)`` for ``u`` of shape ``(..., N)``.

    Works one kernel per tensor axis, never forming the N x N matrix.
    """
    u = np.asarray(u, dtype=np.uint8)
    lead = u.shape[:-1]
    if u.shape[-1] != stack.block_length:
        raise LengthMismatch(f"input length {u.shape[-1]} != block length {stack.block_length}")
    x = u.reshape(lead + stack.sizes)
    base = len(lead)
    for k, g in enumerate(stack.layers):
        x = np.moveaxis(x, base + k, -1)
        x = (x @ g.array) & 1
        x = np.moveaxis(x, -1, base + k)
    return np.ascontiguousarray(x).reshape(lead + (stack.block_length,)).astype(np.uint8)


@dataclass(frozen=True)
class CodeSpec:
    """A polar code: generator stack plus frozen positions (1-based, sorted).

    Frozen bits are fixed to zero.
    """

    stack: LayerStack
    frozen_set: tuple
    expression: Optional[str] = None
    design_eps: Optional[float] = None
    z_values: Optional[tuple] = field(default=None, repr=False)

    def __post_init__(self):
        frozen = tuple(sorted({int(i) for i in self.frozen_set}))
        n = self.stack.block_length
        if frozen and not (1 <= frozen[0] and frozen[-1] <= n):
            raise ValueError(f"frozen indices must lie in 1..{n}")
        object.__setattr__(self, "frozen_set", frozen)

    @property
    def block_length(self) -> int:
        return self.stack.block_length

    @property
    def frozen_mask(self) -> np.ndarray:
        mask = np.zeros(self.block_length, dtype=bool)
        mask[np.asarray(self.frozen_set, dtype=np.int64) - 1] = True
        return mask

    @property
    def info_positions(self) -> np.ndarray:
        """0-based positions of the information bits."""
        return np.flatnonzero(~self.frozen_mask)

    @property
    def info_set(self) -> tuple:
        return tuple(int(i) + 1 for i in self.info_positions)

    @property
    def rate(self) -> float:
        return 1 - len(self.frozen_set) / self.block_length

    def to_dict(self) -> dict:
        return {
            "expression": self.expression,
            "block_length": self.block_length,
            "rate": self.rate,
            "design_eps": self.design_eps,
            "frozen_set": list(self.frozen_set),
            "Z_values": list(self.z_values) if self.z_values is not None else None,
        }

    @classmethod
    def from_dict(cls, data: dict, registry: KernelRegistry = None) -> "CodeSpec":
        stack = LayerStack.from_expression(parse_expression(data["expression"]), registry)
        if "block_length" in data and data["block_length"] != stack.block_length:
            raise LengthMismatch(
                f"spec block_length {data['block_length']} != {stack.block_length} from expression"
            )
        z = data.get("Z_values")
        return cls(
            stack,
            tuple(data["frozen_set"]),
            expression=data["expression"],
            design_eps=data.get("design_eps"),
            z_values=tuple(z) if z is not None else None,
        )


def encode(spec: CodeSpec, u) -> BitVector:
    bits = np.asarray(u.bits if isinstance(u, BitVector) else u, dtype=np.uint8)
    if bits.shape != (spec.block_length,):
        raise LengthMismatch(f"input length {bits.size} != block length {spec.block_length}")
    if bits[spec.frozen_mask].any():
        bad = int(np.flatnonzero(bits & spec.frozen_mask)[0]) + 1
        raise FrozenViolation(f"frozen position {bad} carries a nonzero bit")
    return BitVector(encode_array(spec.stack, bits))


def embed_info(spec: CodeSpec, info: np.ndarray) -> np.ndarray:
    """Scatter information bits (shape ``(..., K)``) into full-length inputs."""
    info = np.asarray(info, dtype=np.uint8)
    u = np.zeros(info.shape[:-1] + (spec.block_length,), dtype=np.uint8)
    u[..., spec.info_positions] = info
    return u


def stack_matrix(stack: LayerStack) -> BinaryMatrix:
    """Materialise the full generator (small stacks and tests only)."""
    return BinaryMatrix(encode_array(stack, np.eye(stack.block_length, dtype=np.uint8)))

