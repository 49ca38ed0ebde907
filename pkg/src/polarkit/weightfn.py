"""Weight identities for sums, Hadamard and Kronecker products of bit vectors.

Every function here evaluates an inclusion-exclusion style expansion by
enumerating subsets.  They exist to be checked against direct evaluation,
so each one carries an explicit subset budget instead of silently blowing
up exponentially.

Notation: ``f_K(a1; a2..aK)`` is the weight exclusion function (weight of
``a1`` outside the supports of the others), ``g_K(a1; a2..aK; b1; b2..bK)``
is the weight difference ``w(sum a_i (x) b_i) - w(a1 (x) b1)``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .errors import (
    ExceedsEnumerationBudget,
    FamilySizeMismatch,
    HypothesisViolated,
    LengthMismatch,
)
from .gf2 import BitVector, complement, hadamard_all, kron_vec, vec_sum, weight

MAX_EXPANSION_TERMS = 20
MAX_DIFFERENCE_TERMS = 12


def _check_family(fam: Sequence[BitVector]) -> None:
    if len(fam) == 0:
        raise ValueError("a vector family needs at least one member")
    n = len(fam[0])
    if any(len(v) != n for v in fam):
        raise LengthMismatch("family members must share one length")


def _budget(k: int, limit: int) -> None:
    if k > limit:
        raise ExceedsEnumerationBudget(f"{k} vectors exceed the expansion budget of {limit}")


def _nonempty_subsets(k: int):
    for size in range(1, k + 1):
        for idx in combinations(range(k), size):
            yield idx


def weight_of_sum_expansion(fam: Sequence[BitVector]) -> int:
    """``w(a1+...+aK)`` via the alternating sum over Hadamard products."""
    _check_family(fam)
    _budget(len(fam), MAX_EXPANSION_TERMS)
    total = 0
    for idx in _nonempty_subsets(len(fam)):
        total += (-2) ** (len(idx) - 1) * weight(hadamard_all([fam[i] for i in idx]))
    return total


def _check_pair(a_fam, b_fam):
    if len(a_fam) != len(b_fam):
        raise FamilySizeMismatch(f"family sizes differ: {len(a_fam)} != {len(b_fam)}")
    _check_family(a_fam)
    _check_family(b_fam)


def hadamard_kron_factorization(a_fam: Sequence[BitVector], b_fam: Sequence[BitVector]) -> int:
    """``w((a1(x)b1) o ... o (aK(x)bK))`` as ``w(o a_i) * w(o b_i)``."""
    _check_pair(a_fam, b_fam)
    return weight(hadamard_all(a_fam)) * weight(hadamard_all(b_fam))


def weight_of_kron_sum_expansion(a_fam: Sequence[BitVector], b_fam: Sequence[BitVector]) -> int:
    """``w(sum a_i (x) b_i)`` via the alternating product expansion."""
    _check_pair(a_fam, b_fam)
    _budget(len(a_fam), MAX_EXPANSION_TERMS)
    total = 0
    for idx in _nonempty_subsets(len(a_fam)):
        wa = weight(hadamard_all([a_fam[i] for i in idx]))
        if wa:
            wb = weight(hadamard_all([b_fam[i] for i in idx]))
            total += (-2) ** (len(idx) - 1) * wa * wb
    return total


def weight_exclusion(a1: BitVector, rest: Sequence[BitVector] = ()) -> int:
    """``f_K(a1; rest)`` evaluated from its alternating definition."""
    rest = list(rest)
    _check_family([a1] + rest)
    _budget(len(rest), MAX_EXPANSION_TERMS)
    total = weight(a1)
    for idx in _nonempty_subsets(len(rest)):
        total += (-1) ** len(idx) * weight(hadamard_all([a1] + [rest[i] for i in idx]))
    return total


def weight_exclusion_closed_form(a1: BitVector, rest: Sequence[BitVector] = ()) -> int:
    """``w(a1 o ~a2 o ... o ~aK)``."""
    return weight(hadamard_all([a1] + [complement(v) for v in rest]))


def weight_exclusion_decomposition_check(fam: Sequence[BitVector]) -> bool:
    """Check ``w(a1) = sum_S f(a1 o (o_{i in S} a_i); a_j for j not in S)``.

    ``S`` ranges over all subsets of ``{2..K}``, including the empty one.
    """
    _check_family(fam)
    _budget(len(fam), MAX_DIFFERENCE_TERMS)
    a1, others = fam[0], list(fam[1:])
    total = 0
    for size in range(len(others) + 1):
        for idx in combinations(range(len(others)), size):
            head = hadamard_all([a1] + [others[i] for i in idx])
            tail = [others[j] for j in range(len(others)) if j not in idx]
            total += weight_exclusion(head, tail)
    return total == weight(a1)


def weight_difference(a1, a_rest, b1, b_rest) -> int:
    """``w(a1(x)b1 + sum_i a_i(x)b_i) - w(a1(x)b1)``; signed in general."""
    a_rest, b_rest = list(a_rest), list(b_rest)
    _check_pair([a1] + a_rest, [b1] + b_rest)
    base = kron_vec(a1, b1)
    if not a_rest:
        return 0
    full = vec_sum([base] + [kron_vec(a, b) for a, b in zip(a_rest, b_rest)])
    return weight(full) - weight(base)


def weight_difference_expansion(a1, a_rest, b1, b_rest) -> int:
    """``g_K`` as a linear combination of weight exclusion functions.

    For every nonempty index set ``T`` of ``{1..K}`` the columns ``q``
    whose pattern ``{i : b_i[q] = 1}`` equals ``T`` number
    ``f(o_{i in T} b_i; b_j for j not in T)``; each such column contributes
    ``w(sum_{i in T} a_i)`` minus ``w(a1)`` when ``1 in T``.
    """
    a_fam, b_fam = [a1] + list(a_rest), [b1] + list(b_rest)
    _check_pair(a_fam, b_fam)
    k = len(a_fam)
    _budget(k, MAX_DIFFERENCE_TERMS)
    w1 = weight(a1)
    total = 0
    for idx in _nonempty_subsets(k):
        if idx == (0,):
            continue
        coef = weight(vec_sum([a_fam[i] for i in idx]))
        if idx[0] == 0:
            coef -= w1
        if coef == 0:
            continue
        head = hadamard_all([b_fam[i] for i in idx])
        tail = [b_fam[j] for j in range(k) if j not in idx]
        total += coef * weight_exclusion(head, tail)
    return total


def weight_difference_g2(a1, a2, b1, b2) -> int:
    """Two-term closed form ``[w(a1+a2)-w(a1)] f1(b1 o b2) + w(a2) f2(b2; b1)``."""
    return (weight(a1 + a2) - weight(a1)) * weight_exclusion(b1 & b2) + weight(
        a2
    ) * weight_exclusion(b2, [b1])


def weight_difference_g3(a1, a2, a3, b1, b2, b3) -> int:
    """Three-term form written out term by term (six products)."""
    w = weight
    return (
        w(a2) * w(b2)
        + w(a3) * w(b3)
        - 2 * w(a1 & a2) * w(b1 & b2)
        - 2 * w(a1 & a3) * w(b1 & b3)
        - 2 * w(a2 & a3) * w(b2 & b3)
        + 4 * w(a1 & a2 & a3) * w(b1 & b2 & b3)
    )


def triple_hadamard_identity(a1, a2, a3) -> tuple:
    """Both sides of ``4 w(a1oa2oa3) = w(a1+a2+a3) - sum w(ai) + 2 sum w(aioaj)``."""
    w = weight
    lhs = 4 * w(a1 & a2 & a3)
    rhs = (
        w(a1 + a2 + a3)
        - w(a1)
        - w(a2)
        - w(a3)
        + 2 * (w(a1 & a2) + w(a2 & a3) + w(a1 & a3))
    )
    return lhs, rhs


def coset_minimality_holds(a1: BitVector, a_rest: Sequence[BitVector]) -> bool:
    """True iff ``w(a1) <= w(a1 + sum eps_i a_i)`` for every choice of eps."""
    w1 = weight(a1)
    for idx in _nonempty_subsets(len(a_rest)):
        if weight(vec_sum([a1] + [a_rest[i] for i in idx])) < w1:
            return False
    return True


def weight_difference_nonnegativity_check(a1, a_rest, b1, b_rest) -> bool:
    """Check ``g_K >= 0`` for a minimum-weight coset leader ``a1``.

    Raises HypothesisViolated when ``a1`` is not of minimum weight in
    ``a1 + span(a_rest)``, so generators can tell a bad sample from a
    failed identity.
    """
    a_rest = list(a_rest)
    _budget(len(a_rest) + 1, MAX_EXPANSION_TERMS)
    if not coset_minimality_holds(a1, a_rest):
        raise HypothesisViolated("a1 is not a minimum-weight member of its coset")
    return weight_difference(a1, a_rest, b1, b_rest) >= 0
