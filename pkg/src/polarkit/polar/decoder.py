"""Successive-cancellation decoding for mixed-kernel Kronecker stacks.

At a node whose remaining stack is ``G (x) rest`` (``G`` of size ``l``), the
received block splits into ``l`` contiguous chunks of ``M = N / l``
positions.  Child ``i`` sees, at each position, the channel to the ``i``-th
kernel input given the re-encoded outputs of children ``0..i-1``.  Its
likelihood marginalises over every completion of the later kernel inputs::

    W_i(v_i) = sum_{v_{i+1..l-1}} prod_a W_a[(v G)_a]

The products over all ``2^l`` kernel inputs are formed once per node; each
child then sums the ``2^(l-i)`` entries consistent with its prefix.  Sums
of products are evaluated after shifting by the per-position maximum
(log-sum-exp), so nothing underflows at length 7776.

Decoding is vectorised over a batch of received words.  Bits are decided
in natural order; frozen bits are forced to zero; a tie decides 0.
"""

from __future__ import annotations

import numpy as np

from ..errors import LengthMismatch
from ..gf2 import BitVector
from .code import CodeSpec, LayerStack

LLR_CAP = 300.0
# log-likelihood gap below which a decision counts as a tie
TIE_TOLERANCE = 1e-9


def _kernel_table(g: np.ndarray) -> np.ndarray:
    """Output bits for every kernel input; row index has u_0 as its MSB."""
    l = g.shape[0]
    u = (np.arange(1 << l)[:, None] >> np.arange(l - 1, -1, -1)) & 1
    return ((u @ g) & 1).astype(np.intp)


def _logsumexp(a: np.ndarray) -> np.ndarray:
    m = a.max(axis=-1)
    m = np.where(np.isfinite(m), m, 0.0)
    with np.errstate(divide="ignore"):
        return np.log(np.exp(a - m[..., None]).sum(axis=-1)) + m


def llr_to_logp(llrs: np.ndarray) -> np.ndarray:
    """Per-bit ``(log P(0), log P(1))`` from LLRs (positive favours 0)."""
    llrs = np.clip(np.asarray(llrs, dtype=float), -LLR_CAP, LLR_CAP)
    return np.stack([-np.logaddexp(0.0, -llrs), -np.logaddexp(0.0, llrs)], axis=-1)


class _Run:
    __slots__ = ("u", "next")

    def __init__(self, u):
        self.u = u
        self.next = 0


class SCDecoder:
    """Reusable SC decoder for one (stack, frozen set) pair; safe to share across threads."""

    def __init__(self, stack: LayerStack, frozen_mask: np.ndarray):
        self.stack = stack
        self.frozen = np.asarray(frozen_mask, dtype=bool)
        if self.frozen.shape != (stack.block_length,):
            raise LengthMismatch("frozen mask length differs from the block length")
        self._g = [g.array.astype(np.intp) for g in stack.layers]
        self._tables = [_kernel_table(g) for g in self._g]
        self._ar = [
            [np.arange(1 << (g.shape[0] - i)) for i in range(g.shape[0])] for g in self._g
        ]

    @classmethod
    def for_spec(cls, spec: CodeSpec) -> "SCDecoder":
        return cls(spec.stack, spec.frozen_mask)

    def decode_logp(self, logp: np.ndarray) -> np.ndarray:
        """Decide ``u`` from per-bit log-likelihoods of shape ``(B, N, 2)``."""
        logp = np.asarray(logp, dtype=float)
        b, n = logp.shape[:2]
        if n != self.stack.block_length:
            raise LengthMismatch(f"received length {n} != block length {self.stack.block_length}")
        run = _Run(np.zeros((b, n), dtype=np.uint8))
        self._node(logp, 0, run)
        return run.u

    def decode(self, llrs: np.ndarray) -> np.ndarray:
        """Decide ``u`` for LLRs of shape ``(N,)`` or ``(B, N)``."""
        llrs = np.asarray(llrs, dtype=float)
        single = llrs.ndim == 1
        u = self.decode_logp(llr_to_logp(np.atleast_2d(llrs)))
        return u[0] if single else u

    def _leaf(self, logp: np.ndarray, run) -> np.ndarray:
        k = run.next
        run.next += 1
        if self.frozen[k]:
            bit = np.zeros(logp.shape[0], dtype=np.uint8)
        else:
            bit = (logp[:, 0, 1] - logp[:, 0, 0] > TIE_TOLERANCE).astype(np.uint8)
        run.u[:, k] = bit
        return bit[:, None]

    def _node(self, logp: np.ndarray, depth: int, run) -> np.ndarray:
        if depth == len(self._g):
            return self._leaf(logp, run)
        g, table = self._g[depth], self._tables[depth]
        l = g.shape[0]
        b, n = logp.shape[:2]
        m = n // l
        start = run.next
        if self.frozen[start : start + n].all():
            run.next += n
            return np.zeros((b, n), dtype=np.uint8)

        chunks = logp.reshape(b, l, m, 2)
        # log prod_a W_a[(uG)_a] for all 2^l inputs u: shape (b, m, 2^l)
        logq = chunks[:, 0][..., table[:, 0]]
        for a in range(1, l):
            logq = logq + chunks[:, a][..., table[:, a]]

        prefix = np.zeros((b, m), dtype=np.intp)
        children = np.empty((b, l, m), dtype=np.uint8)
        for i in range(l):
            width = 1 << (l - i)
            if i == 0:
                block = logq
            else:
                idx = (prefix * width)[..., None] + self._ar[depth][i]
                block = np.take_along_axis(logq, idx, axis=-1)
            child = _logsumexp(block.reshape(b, m, 2, width // 2))
            v = self._node(child, depth + 1, run)
            children[:, i] = v
            prefix = 2 * prefix + v
        x = (np.einsum("bim,ia->bam", children.astype(np.intp), g) & 1).astype(np.uint8)
        return x.reshape(b, n)


def sc_decode(spec: CodeSpec, channel_llrs) -> BitVector:
    """Decide the input vector ``u`` for one received word of LLRs."""
    llrs = np.asarray(channel_llrs, dtype=float)
    if llrs.shape != (spec.block_length,):
        raise LengthMismatch(f"received length {llrs.size} != block length {spec.block_length}")
    return BitVector(SCDecoder.for_spec(spec).decode(llrs))
