"""Partial distances and exponents of polarizing kernels.

Brute force follows the definition directly: the i-th partial distance is
the distance from row ``i`` to the span of the rows below it, and the last
one is the weight of the last row.  The composition rules give the same
quantities for Kronecker products without any search:

* partial distances multiply along the mixed-radix index,
  ``D[A(x)B][(i-1) l2 + j] = D[A][i] * D[B][j]``;
* exponents combine as ``E(A1(x)...(x)AN) = sum E(Ai) / log_{li}(l1...lN)``.

The exponent of a size-``l`` kernel is ``(1/l) sum_i log_l D_i``; for a
code built from ``G^(x)n`` the SC block error probability decays like
``2^(-N^beta)`` for any ``beta`` below it.  That bound is not computed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

from .errors import (
    ExceedsEnumerationBudget,
    HypothesisViolated,
    InvalidExponent,
    InvalidProfile,
    InvalidSize,
    NotInvertible,
    NotSquare,
)
from .gf2 import BinaryMatrix, is_invertible, span_min_weight, weight

MAX_BRUTE_FORCE_SIZE = 24


@dataclass(frozen=True)
class PartialDistanceProfile:
    distances: tuple

    def __post_init__(self):
        object.__setattr__(self, "distances", tuple(int(d) for d in self.distances))
        if not self.distances:
            raise InvalidProfile("a profile needs at least one entry")

    @property
    def size(self) -> int:
        return len(self.distances)

    def __len__(self) -> int:
        return len(self.distances)

    def __iter__(self):
        return iter(self.distances)

    def __getitem__(self, i):
        return self.distances[i]


@dataclass(frozen=True)
class ExponentReport:
    size: int
    exponent: float
    profile: PartialDistanceProfile
    per_row_terms: tuple = field(default=())
    source: str = "bruteforce"

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "distances": list(self.profile.distances),
            "exponent": self.exponent,
            "per_row_terms": list(self.per_row_terms),
            "source": self.source,
        }


@dataclass(frozen=True)
class CompositionIndex:
    """Mixed-radix map between flat index ``k`` and digits ``(i_1..i_N)``, all 1-based."""

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(f) for f in self.factors))
        if not self.factors or min(self.factors) < 1:
            raise InvalidSize("factor sizes must be positive")

    @property
    def size(self) -> int:
        return math.prod(self.factors)

    def flat(self, digits: Sequence[int]) -> int:
        k = 0
        for d, l in zip(digits, self.factors):
            if not 1 <= d <= l:
                raise IndexError(f"digit {d} out of range 1..{l}")
            k = k * l + (d - 1)
        return k + 1

    def digits(self, k: int) -> tuple:
        if not 1 <= k <= self.size:
            raise IndexError(f"index {k} out of range 1..{self.size}")
        k -= 1
        out = []
        for l in reversed(self.factors):
            k, d = divmod(k, l)
            out.append(d + 1)
        return tuple(reversed(out))


def partial_distances(g: BinaryMatrix) -> PartialDistanceProfile:
    if not g.is_square:
        raise NotSquare(f"kernel is {g.nrows}x{g.ncols}, partial distances need a square matrix")
    l = g.nrows
    if l > MAX_BRUTE_FORCE_SIZE:
        raise ExceedsEnumerationBudget(
            f"size {l} exceeds the brute-force ceiling {MAX_BRUTE_FORCE_SIZE}; compose it instead"
        )
    if not is_invertible(g):
        raise NotInvertible("kernel is singular over GF(2)")
    rows = g.rows()
    dists = [span_min_weight(rows[i + 1 :], rows[i]) for i in range(l - 1)]
    dists.append(weight(rows[-1]))
    return PartialDistanceProfile(dists)


def exponent(profile) -> ExponentReport:
    """Exponent from a partial-distance profile.

    Logs are summed in natural base and divided by ``l log l`` once.
    """
    if not isinstance(profile, PartialDistanceProfile):
        profile = PartialDistanceProfile(profile)
    if min(profile.distances) < 1:
        raise InvalidProfile("partial distances must all be >= 1")
    l = profile.size
    if l == 1:
        return ExponentReport(1, 0.0, profile, (0.0,))
    log_l = math.log(l)
    logs = [math.log(d) for d in profile.distances]
    terms = tuple(x / log_l for x in logs)
    return ExponentReport(l, math.fsum(logs) / (l * log_l), profile, terms)


def kron_partial_distances(pa, pb) -> PartialDistanceProfile:
    return PartialDistanceProfile([da * db for da in pa for db in pb])


def kron_partial_distances_n(profiles: Sequence) -> PartialDistanceProfile:
    if not profiles:
        raise ValueError("need at least one profile")
    out = PartialDistanceProfile(profiles[0])
    for p in profiles[1:]:
        out = kron_partial_distances(out, p)
    return out


def _check_term(e: float, l: int) -> None:
    if int(l) != l or l < 2:
        raise InvalidSize(f"kernel size must be an integer >= 2, got {l}")
    if not 0 <= e < 1:
        raise InvalidSize(f"exponent {e} outside [0, 1)")


def kron_exponent(e_a: float, l_a: int, e_b: float, l_b: int) -> float:
    return kron_exponent_n([(e_a, l_a), (e_b, l_b)])


def kron_exponent_n(terms: Sequence) -> float:
    """``sum_i E_i / log_{l_i}(prod l)``, i.e. ``sum_i E_i ln(l_i) / ln(prod l)``."""
    terms = list(terms)
    if not terms:
        raise ValueError("need at least one (exponent, size) term")
    for e, l in terms:
        _check_term(e, l)
    log_total = math.fsum(math.log(l) for _, l in terms)
    return math.fsum(e * math.log(l) for e, l in terms) / log_total


def infer_factor_exponent(total: float, known: Sequence, size: int) -> float:
    """Exponent of the one unknown factor of size ``size`` in a product.

    ``total`` is the exponent of the whole product and ``known`` lists the
    ``(exponent, size)`` pairs of the other factors; this inverts
    :func:`kron_exponent_n`.
    """
    known = list(known)
    for e, l in known:
        _check_term(e, l)
    if int(size) != size or size < 2:
        raise InvalidSize(f"kernel size must be an integer >= 2, got {size}")
    log_total = math.log(size) + math.fsum(math.log(l) for _, l in known)
    value = (total * log_total - math.fsum(e * math.log(l) for e, l in known)) / math.log(size)
    if not 0 <= value < 1:
        raise InvalidExponent(f"inferred exponent {value} outside [0, 1)")
    return value


def dividing_point_decomposition(e_a: float, l_a: int, e_b: float, l_b: int) -> tuple:
    """``(alpha, alpha/(1+alpha) E_small + 1/(1+alpha) E_large)``, ``alpha = log_{l_large} l_small``."""
    _check_term(e_a, l_a)
    _check_term(e_b, l_b)
    if l_a > l_b:
        e_a, l_a, e_b, l_b = e_b, l_b, e_a, l_a
    alpha = math.log(l_a) / math.log(l_b)
    return alpha, alpha / (1 + alpha) * e_a + 1 / (1 + alpha) * e_b


def monotonicity_check(e_a1: float, e_a2: float, l1: int, e_b1: float, e_b2: float, l2: int) -> bool:
    """Does a componentwise-better pair of factors give a strictly larger exponent?"""
    if not ((e_a1 >= e_a2 and e_b1 > e_b2) or (e_a1 > e_a2 and e_b1 >= e_b2)):
        raise HypothesisViolated("factor exponents are not ordered as required")
    return kron_exponent(e_a1, l1, e_b1, l2) > kron_exponent(e_a2, l1, e_b2, l2)


def round_half_up(x: float, places: int) -> str:
    """Presentation rounding, e.g. ``round_half_up(0.45125, 3) == '0.451'``."""
    q = Decimal(1).scaleb(-places)
    return str(Decimal(repr(x)).quantize(q, rounding=ROUND_HALF_UP))
