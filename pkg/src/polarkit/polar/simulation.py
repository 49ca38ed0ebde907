"""Monte Carlo block-error-rate harness.

Reproducibility contract: trial ``t`` of a run with master seed ``s`` draws
from ``numpy.random.Generator(PCG64(SeedSequence(s, spawn_key=(t,))))``.
It first draws the ``K`` information bits (``integers(0, 2)``), then the
channel:

* BEC(eps): ``N`` uniforms, position erased when ``uniform < eps``;
* BPSK-AWGN: ``2 * ceil(N/2)`` uniforms turned into Gaussians by
  Box-Muller, ``sqrt(-2 ln(1-u1)) * (cos, sin)(2 pi u2)``, pairs taken in
  draw order.

BPSK maps bit 0 to +1.  With ``Es/N0 = rate * Eb/N0`` the channel LLR is
``4 Es/N0 * y``.  Erasures and noiseless symbols use LLRs of 0 and
``+-LLR_CAP``.  Trials are decoded in fixed index blocks, so the outcome
does not depend on how many worker threads run them.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
from scipy.stats import binomtest

from ..errors import InvalidTrials, UnsupportedChannel
from .code import CodeSpec, encode_array
from .decoder import LLR_CAP, SCDecoder

CHANNELS = ("bec", "awgn")
DEFAULT_BLOCK = 256
CSV_COLUMNS = ("param", "trials", "block_errors", "bler", "wilson_low", "wilson_high", "seed")


@dataclass(frozen=True)
class SimResult:
    channel: str
    param: float
    trials: int
    block_errors: int
    bler: float
    wilson_95_low: float
    wilson_95_high: float
    seed: int

    @property
    def eb_n0_db(self) -> Optional[float]:
        return self.param if self.channel == "awgn" else None

    def csv_row(self) -> dict:
        return {
            "param": self.param,
            "trials": self.trials,
            "block_errors": self.block_errors,
            "bler": self.bler,
            "wilson_low": self.wilson_95_low,
            "wilson_high": self.wilson_95_high,
            "seed": self.seed,
        }

    def to_dict(self) -> dict:
        return asdict(self)


def wilson_interval(errors: int, trials: int, confidence: float = 0.95) -> tuple:
    ci = binomtest(errors, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


def trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(master_seed), spawn_key=(int(trial_index),))
    return np.random.Generator(np.random.PCG64(ss))


def box_muller(rng: np.random.Generator, n: int) -> np.ndarray:
    pairs = (n + 1) // 2
    u = rng.random(2 * pairs).reshape(pairs, 2)
    r = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
    theta = 2.0 * np.pi * u[:, 1]
    return np.stack([r * np.cos(theta), r * np.sin(theta)], axis=1).ravel()[:n]


def channel_llrs(channel: str, param: float, x: np.ndarray, rate: float, rng) -> np.ndarray:
    """LLRs for one transmitted codeword ``x``."""
    sign = 1.0 - 2.0 * x
    if channel == "bec":
        erased = rng.random(x.size) < param
        return np.where(erased, 0.0, LLR_CAP * sign)
    if channel == "awgn":
        if math.isinf(param) and param > 0:
            return LLR_CAP * sign
        es_n0 = rate * 10.0 ** (param / 10.0)
        sigma = math.sqrt(1.0 / (2.0 * es_n0))
        y = sign + sigma * box_muller(rng, x.size)
        return 4.0 * es_n0 * y
    raise UnsupportedChannel(f"unsupported channel {channel!r}; choose from {CHANNELS}")


def _check_channel(channel: str, param: float) -> None:
    if channel not in CHANNELS:
        raise UnsupportedChannel(f"unsupported channel {channel!r}; choose from {CHANNELS}")
    if channel == "bec" and not 0 <= param <= 1:
        raise ValueError(f"erasure rate {param} outside [0, 1]")


def _run_block(spec, decoder, channel, param, master_seed, start, stop) -> int:
    info_pos = spec.info_positions
    k, n = info_pos.size, spec.block_length
    u = np.zeros((stop - start, n), dtype=np.uint8)
    llrs = np.empty((stop - start, n))
    draws = []
    for row, t in enumerate(range(start, stop)):
        rng = trial_rng(master_seed, t)
        u[row, info_pos] = rng.integers(0, 2, size=k, dtype=np.uint8)
        draws.append(rng)
    x = encode_array(spec.stack, u)
    for row, rng in enumerate(draws):
        llrs[row] = channel_llrs(channel, param, x[row], spec.rate, rng)
    u_hat = decoder.decode(llrs)
    return int((u_hat[:, info_pos] != u[:, info_pos]).any(axis=1).sum())


def simulate_bler(
    spec: CodeSpec,
    channel: str,
    param: float,
    trials: int,
    master_seed: int,
    threads: Optional[int] = None,
    block_size: int = DEFAULT_BLOCK,
) -> SimResult:
    """Block error rate of SC decoding over BEC(param) or BPSK-AWGN at Eb/N0 = param dB."""
    if int(trials) != trials or trials < 1:
        raise InvalidTrials(f"trials must be a positive integer, got {trials}")
    _check_channel(channel, param)
    decoder = SCDecoder.for_spec(spec)
    bounds = [(s, min(s + block_size, trials)) for s in range(0, trials, block_size)]
    threads = threads or int(os.environ.get("POLARKIT_THREADS", "1"))

    def work(bound):
        return _run_block(spec, decoder, channel, param, master_seed, *bound)

    if threads <= 1:
        errors = sum(map(work, bounds))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            errors = sum(pool.map(work, bounds))
    low, high = wilson_interval(errors, trials)
    return SimResult(channel, float(param), int(trials), errors, errors / trials, low, high, int(master_seed))


def write_csv(results, path_or_file) -> None:
    own = isinstance(path_or_file, (str, os.PathLike))
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for r in results:
            writer.writerow(r.csv_row())
    finally:
        if own:
            fh.close()


@dataclass(frozen=True)
class SimConfig:
    """Sweep description as stored in a simulation config file."""

    expression: str
    rate: float
    design_eps: float
    channel: str
    param_grid: tuple
    trials: int
    master_seed: int

    @classmethod
    def from_dict(cls, data: dict) -> "SimConfig":
        ch = data.get("channel", {})
        if isinstance(ch, str):
            ch = {"type": ch}
        kind = str(ch.get("type", "awgn")).lower()
        if kind not in CHANNELS:
            raise UnsupportedChannel(f"unsupported channel {kind!r}; choose from {CHANNELS}")
        grid = ch.get("param_grid", [])
        if not grid:
            raise ValueError("channel.param_grid must list at least one value")
        return cls(
            expression=data["expression"],
            rate=float(data["rate"]),
            design_eps=float(data.get("design_eps", 0.5)),
            channel=kind,
            param_grid=tuple(float(p) for p in grid),
            trials=int(data["trials"]),
            master_seed=int(data.get("master_seed", 0)),
        )

    def to_dict(self) -> dict:
        return {
            "expression": self.expression,
            "rate": self.rate,
            "design_eps": self.design_eps,
            "channel": {"type": self.channel, "param_grid": list(self.param_grid)},
            "trials": self.trials,
            "master_seed": self.master_seed,
        }


def run_sweep(spec: CodeSpec, channel: str, grid, trials: int, master_seed: int,
              threads: Optional[int] = None, on_result=None) -> list:
    """One SimResult per grid point, all with the same master seed.

    ``on_result`` is called after each point so callers can flush partial
    output.
    """
    results = []
    for p in grid:
        r = simulate_bler(spec, channel, p, trials, master_seed, threads=threads)
        results.append(r)
        if on_result is not None:
            on_result(r)
    return results
