"""Seeded random oracle suite for the composition rules and weight identities.

Each property is checked on random inputs against an independent direct
evaluation (brute-force partial distances, explicit XOR/AND weights).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import weightfn as wf
from .distance import (
    MAX_BRUTE_FORCE_SIZE,
    exponent,
    kron_exponent,
    kron_exponent_n,
    kron_partial_distances,
    kron_partial_distances_n,
    partial_distances,
)
from .errors import ExceedsEnumerationBudget
from .gf2 import (
    BinaryMatrix,
    BitVector,
    hadamard_all,
    is_invertible,
    kron_mat,
    kron_vec,
    span_min_weight,
    vec_sum,
    weight,
)


def random_vector(rng: np.random.Generator, length: int) -> BitVector:
    return BitVector(rng.integers(0, 2, length, dtype=np.uint8))


def random_invertible(rng: np.random.Generator, size: int) -> BinaryMatrix:
    while True:
        m = BinaryMatrix(rng.integers(0, 2, (size, size), dtype=np.uint8))
        if is_invertible(m):
            return m


def coset_leader(a1: BitVector, rest) -> BitVector:
    """A minimum-weight member of ``a1 + span(rest)`` by explicit enumeration."""
    best = a1
    for mask in range(1, 1 << len(rest)):
        cand = vec_sum([a1] + [rest[i] for i in range(len(rest)) if (mask >> i) & 1])
        if weight(cand) < weight(best):
            best = cand
    return best


@dataclass
class PropertyResult:
    name: str
    passed: int = 0
    failed: int = 0
    counterexample: Optional[dict] = None
    _size: float = field(default=math.inf, repr=False)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, example: Callable[[], dict], size: float = 0) -> None:
        if ok:
            self.passed += 1
            return
        self.failed += 1
        # keep the smallest failing instance
        if size < self._size:
            self._size = size
            self.counterexample = example()


@dataclass
class VerifyReport:
    seed: int
    properties: list

    @property
    def ok(self) -> bool:
        return all(p.ok for p in self.properties)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "ok": self.ok,
            "properties": [
                {
                    "name": p.name,
                    "passed": p.passed,
                    "failed": p.failed,
                    "counterexample": p.counterexample,
                }
                for p in self.properties
            ],
        }


def _mat(m: BinaryMatrix) -> list:
    return m.array.tolist()


def _vecs(vs) -> list:
    return [str(v) for v in vs]


def check_kronecker_rules(rng, trials: int, sizes=(2, 3, 4)) -> list:
    """Partial-distance and exponent composition against brute force."""
    sizes = tuple(sizes)
    if max(sizes) ** 2 > MAX_BRUTE_FORCE_SIZE or min(sizes) < 2:
        raise ExceedsEnumerationBudget(
            f"kernel sizes {sizes}: products must stay within {MAX_BRUTE_FORCE_SIZE} "
            "for brute-force comparison (and sizes must be >= 2)"
        )
    pd12 = PropertyResult("partial distances of A(x)B")
    ex13 = PropertyResult("exponent of A(x)B")
    swap = PropertyResult("E(A(x)B) = E(B(x)A)")
    pd16 = PropertyResult("partial distances of A(x)B(x)C")
    ex17 = PropertyResult("exponent of A(x)B(x)C")
    triples = [t for t in itertools.product(sizes, repeat=3) if math.prod(t) <= MAX_BRUTE_FORCE_SIZE]
    for _ in range(trials):
        la, lb = rng.choice(sizes), rng.choice(sizes)
        a, b = random_invertible(rng, int(la)), random_invertible(rng, int(lb))
        pa, pb = partial_distances(a), partial_distances(b)
        brute = partial_distances(kron_mat(a, b))
        composed = kron_partial_distances(pa, pb)
        pd12.record(
            brute == composed,
            lambda: {"A": _mat(a), "B": _mat(b), "brute": list(brute), "composed": list(composed)},
            la * lb,
        )
        ea, eb = exponent(pa).exponent, exponent(pb).exponent
        closed = kron_exponent(ea, la, eb, lb)
        direct = exponent(brute).exponent
        ex13.record(
            abs(closed - direct) < 1e-12,
            lambda: {"A": _mat(a), "B": _mat(b), "closed": closed, "direct": direct},
            la * lb,
        )
        rev = exponent(partial_distances(kron_mat(b, a))).exponent
        swap.record(abs(rev - direct) < 1e-12, lambda: {"A": _mat(a), "B": _mat(b)}, la * lb)

        if triples:
            t = triples[rng.integers(len(triples))]
            ms = [random_invertible(rng, int(s)) for s in t]
            profiles = [partial_distances(m) for m in ms]
            brute3 = partial_distances(kron_mat(kron_mat(ms[0], ms[1]), ms[2]))
            comp3 = kron_partial_distances_n(profiles)
            pd16.record(
                brute3 == comp3,
                lambda: {"factors": [_mat(m) for m in ms], "brute": list(brute3), "composed": list(comp3)},
                math.prod(t),
            )
            closed3 = kron_exponent_n([(exponent(p).exponent, s) for p, s in zip(profiles, t)])
            ex17.record(
                abs(closed3 - exponent(brute3).exponent) < 1e-12,
                lambda: {"factors": [_mat(m) for m in ms]},
                math.prod(t),
            )
    return [pd12, ex13, swap, pd16, ex17]


def check_weight_identities(rng, trials: int, max_length: int = 16, max_k: int = 6) -> list:
    """Weight identities for sums, Hadamard and Kronecker products."""
    names = [
        "w(a+b) = w(a)+w(b)-2w(aob)",
        "w(a(x)b) = w(a)w(b)",
        "w(aob) <= min, equality iff nested supports",
        "w((a1(x)b1)o(a2(x)b2)) = w(a1oa2)w(b1ob2)",
        "w(a1(x)b1+a2(x)b2) two-term expansion",
        "w(a1+...+aK) alternating expansion",
        "Hadamard of Kronecker products factorises",
        "w(sum ai(x)bi) alternating expansion",
        "weight exclusion = w(a1 o ~a2 o ... o ~aK)",
        "weight exclusion decomposition of w(a1)",
        "4w(a1oa2oa3) identity",
        "two-term weight difference form",
        "three-term weight difference form",
        "weight difference as exclusion-function combination",
        "weight difference >= 0 for coset leaders",
    ]
    res = {n: PropertyResult(n) for n in names}
    r = list(res.values())

    for _ in range(trials):
        l = int(rng.integers(1, max_length + 1))
        m = int(rng.integers(1, max_length + 1))
        k = int(rng.integers(1, max_k + 1))
        a, b = random_vector(rng, l), random_vector(rng, l)
        c = random_vector(rng, m)
        a2, c2 = random_vector(rng, l), random_vector(rng, m)
        ex = lambda **kw: {key: str(v) if isinstance(v, BitVector) else _vecs(v) for key, v in kw.items()}

        r[0].record(weight(a + b) == weight(a) + weight(b) - 2 * weight(a & b), lambda: ex(a=a, b=b), l)
        r[1].record(weight(kron_vec(a, c)) == weight(a) * weight(c), lambda: ex(a=a, b=c), l + m)
        sa, sb = a.support(), b.support()
        eq = weight(a & b) == min(weight(a), weight(b))
        r[2].record(
            weight(a & b) <= min(weight(a), weight(b)) and eq == (sa <= sb or sb <= sa),
            lambda: ex(a=a, b=b),
            l,
        )
        r[3].record(
            weight(kron_vec(a, c) & kron_vec(a2, c2)) == weight(a & a2) * weight(c & c2),
            lambda: ex(a1=a, b1=c, a2=a2, b2=c2),
            l + m,
        )
        r[4].record(
            weight(kron_vec(a, c) + kron_vec(a2, c2))
            == weight(a) * weight(c) + weight(a2) * weight(c2) - 2 * weight(a & a2) * weight(c & c2),
            lambda: ex(a1=a, b1=c, a2=a2, b2=c2),
            l + m,
        )

        fam_a = [random_vector(rng, l) for _ in range(k)]
        fam_b = [random_vector(rng, m) for _ in range(k)]
        size = k * (l + m)
        r[5].record(
            wf.weight_of_sum_expansion(fam_a) == weight(vec_sum(fam_a)), lambda: ex(a=fam_a), size
        )
        direct = weight(hadamard_all([kron_vec(x, y) for x, y in zip(fam_a, fam_b)]))
        r[6].record(
            wf.hadamard_kron_factorization(fam_a, fam_b) == direct, lambda: ex(a=fam_a, b=fam_b), size
        )
        direct = weight(vec_sum([kron_vec(x, y) for x, y in zip(fam_a, fam_b)]))
        r[7].record(
            wf.weight_of_kron_sum_expansion(fam_a, fam_b) == direct, lambda: ex(a=fam_a, b=fam_b), size
        )
        f = wf.weight_exclusion(fam_a[0], fam_a[1:])
        r[8].record(
            f == wf.weight_exclusion_closed_form(fam_a[0], fam_a[1:]) and f >= 0, lambda: ex(a=fam_a), size
        )
        r[9].record(wf.weight_exclusion_decomposition_check(fam_a), lambda: ex(a=fam_a), size)
        x1, x2, x3 = (random_vector(rng, l) for _ in range(3))
        lhs, rhs = wf.triple_hadamard_identity(x1, x2, x3)
        r[10].record(lhs == rhs, lambda: ex(a=[x1, x2, x3]), l)

        y1, y2, y3 = (random_vector(rng, m) for _ in range(3))
        r[11].record(
            wf.weight_difference_g2(x1, x2, y1, y2) == wf.weight_difference(x1, [x2], y1, [y2]),
            lambda: ex(a=[x1, x2], b=[y1, y2]),
            l + m,
        )
        r[12].record(
            wf.weight_difference_g3(x1, x2, x3, y1, y2, y3)
            == wf.weight_difference(x1, [x2, x3], y1, [y2, y3]),
            lambda: ex(a=[x1, x2, x3], b=[y1, y2, y3]),
            l + m,
        )
        g = wf.weight_difference(fam_a[0], fam_a[1:], fam_b[0], fam_b[1:])
        r[13].record(
            wf.weight_difference_expansion(fam_a[0], fam_a[1:], fam_b[0], fam_b[1:]) == g,
            lambda: ex(a=fam_a, b=fam_b),
            size,
        )
        leader = coset_leader(fam_a[0], fam_a[1:])
        r[14].record(
            wf.weight_difference_nonnegativity_check(leader, fam_a[1:], fam_b[0], fam_b[1:]),
            lambda: ex(a=[leader] + fam_a[1:], b=fam_b),
            size,
        )
    return r


def check_span_enumeration(rng, trials: int) -> PropertyResult:
    """Vectorised coset search against a plain nested loop."""
    res = PropertyResult("coset minimum weight")
    for _ in range(trials):
        l = int(rng.integers(1, 20))
        k = int(rng.integers(0, 11))
        rows = [random_vector(rng, l) for _ in range(k)]
        t = random_vector(rng, l)
        naive = min(
            weight(vec_sum([t] + [rows[i] for i in range(k) if (mask >> i) & 1]))
            for mask in range(1 << k)
        )
        res.record(
            span_min_weight(rows, t) == naive, lambda: {"rows": _vecs(rows), "target": str(t)}, k
        )
    return res


def run_suite(seed: int = 0, trials: int = 100, sizes=(2, 3, 4), identity_trials: int = 1000) -> VerifyReport:
    rng = np.random.default_rng(seed)
    props = check_kronecker_rules(rng, trials, sizes)
    props += check_weight_identities(rng, identity_trials)
    props.append(check_span_enumeration(rng, trials))
    return VerifyReport(seed, props)
