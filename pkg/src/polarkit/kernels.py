"""Named kernels and Kronecker composition expressions.

Expression grammar (ASCII; ``x`` is the Kronecker product, ``^`` the
Kronecker power; whitespace is insignificant)::

    EXPR := TERM ("x" TERM)*
    TERM := NAME | NAME "^" INT | "file:" PATH | "(" EXPR ")" ["^" INT]

Names may not contain a lowercase ``x``.  A ``file:`` path runs up to the
next whitespace or closing parenthesis.  ``G2^2 x G3H`` reads as
``G2 (x) G2 (x) G3H``, factors in the order written.
"""

from __future__ import annotations

import json
import math
import re
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .distance import (
    PartialDistanceProfile,
    exponent,
    kron_exponent_n,
    kron_partial_distances_n,
    partial_distances,
)
from .errors import (
    DuplicateName,
    ExpressionSyntaxError,
    InvalidExponent,
    InvalidSize,
    MatrixUnavailable,
    SizeCapExceeded,
    UnknownKernel,
)
from .gf2 import BinaryMatrix, kron_mat, load_kernel

DEFAULT_SIZE_CAP = 4096

G2 = BinaryMatrix([[1, 0], [1, 1]])
G3L = BinaryMatrix([[1, 0, 0], [1, 0, 1], [1, 1, 1]])
G3H = BinaryMatrix([[1, 0, 0], [1, 1, 0], [0, 1, 1]])
G6L = kron_mat(G2, G3L)
G6H = kron_mat(G2, G3H)

BUILTIN_MATRICES = {"G2": G2, "G3L": G3L, "G3H": G3H, "G6L": G6L, "G6H": G6H}


@dataclass(frozen=True)
class NamedKernel:
    name: str
    known_size: int
    matrix: Optional[BinaryMatrix] = None
    known_exponent: Optional[float] = None

    def __post_init__(self):
        if self.matrix is None and self.known_exponent is None:
            raise ValueError(f"kernel {self.name!r} needs a matrix or a known exponent")
        if self.matrix is not None and self.matrix.nrows != self.known_size:
            raise InvalidSize(f"kernel {self.name!r}: size {self.known_size} != matrix size")
        if self.matrix is not None and self.known_exponent is not None:
            computed = self.exponent
            if abs(computed - self.known_exponent) > 1e-9:
                raise InvalidExponent(
                    f"kernel {self.name!r}: stated exponent {self.known_exponent} "
                    f"disagrees with computed {computed}"
                )

    @property
    def has_matrix(self) -> bool:
        return self.matrix is not None

    @property
    def profile(self) -> Optional[PartialDistanceProfile]:
        if self.matrix is None:
            return None
        return _profile_of(self.matrix)

    @property
    def exponent(self) -> float:
        if self.matrix is None:
            return self.known_exponent
        return exponent(_profile_of(self.matrix)).exponent


@lru_cache(maxsize=256)
def _profile_of(matrix: BinaryMatrix) -> PartialDistanceProfile:
    return partial_distances(matrix)


class KernelRegistry:
    """Case-sensitive name -> kernel table with the built-ins reserved."""

    def __init__(self):
        self._lock = threading.Lock()
        self._kernels = {
            name: NamedKernel(name, m.nrows, matrix=m) for name, m in BUILTIN_MATRICES.items()
        }

    def __contains__(self, name) -> bool:
        return name in self._kernels

    def names(self) -> list:
        return list(self._kernels)

    def get(self, name: str) -> NamedKernel:
        try:
            return self._kernels[name]
        except KeyError:
            raise UnknownKernel(f"unknown kernel {name!r}") from None

    def _add(self, kernel: NamedKernel) -> NamedKernel:
        with self._lock:
            if kernel.name in self._kernels:
                raise DuplicateName(f"kernel name {kernel.name!r} is already registered")
            self._kernels[kernel.name] = kernel
        return kernel

    def register_external(self, name: str, size: int, exponent: float) -> NamedKernel:
        """Add an exponent-only kernel (no matrix; usable in exponent arithmetic only)."""
        if int(size) != size or size < 2:
            raise InvalidSize(f"size must be an integer >= 2, got {size}")
        if not 0 <= exponent < 1:
            raise InvalidExponent(f"exponent {exponent} outside [0, 1)")
        return self._add(NamedKernel(name, int(size), known_exponent=float(exponent)))

    def register_matrix(self, name: str, matrix: BinaryMatrix) -> NamedKernel:
        return self._add(NamedKernel(name, matrix.nrows, matrix=matrix))

    def load_bootstrap(self, path) -> list:
        """Register every ``{name, size, exponent}`` entry of a JSON list."""
        with open(path) as fh:
            entries = json.load(fh)
        return [self.register_external(e["name"], e["size"], e["exponent"]) for e in entries]

    def copy(self) -> "KernelRegistry":
        out = KernelRegistry()
        out._kernels = dict(self._kernels)
        return out


default_registry = KernelRegistry()


def builtin(name: str) -> NamedKernel:
    if name not in BUILTIN_MATRICES:
        raise UnknownKernel(f"unknown built-in kernel {name!r}")
    return default_registry.get(name)


def register_external(name: str, size: int, exponent: float) -> NamedKernel:
    return default_registry.register_external(name, size, exponent)


# --- expression AST -------------------------------------------------------


@dataclass(frozen=True)
class KernelRef:
    name: str


@dataclass(frozen=True)
class FileRef:
    path: str


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Power:
    base: "KernelExpression"
    n: int


KernelExpression = Union[KernelRef, FileRef, Product, Power]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<file>file:[^\s()]+)
  | (?P<name>[A-Za-wyz_][A-Za-wyz0-9_]*)
  | (?P<int>\d+)
  | (?P<op>[x⊗^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list:
    tokens, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "op" and value == "⊗":
                value = "x"
            tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, value, pos = self.take()
        if kind != "op" or value != op:
            raise ExpressionSyntaxError(f"expected {op!r}, found {value or 'end of input'!r}", pos)

    def expr(self):
        factors = [self.term()]
        while self.peek()[:2] == ("op", "x"):
            self.take()
            factors.append(self.term())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def term(self):
        kind, value, pos = self.take()
        if kind == "name":
            node = KernelRef(value)
        elif kind == "file":
            node = FileRef(value[len("file:") :])
        elif (kind, value) == ("op", "("):
            node = self.expr()
            self.expect_op(")")
        else:
            raise ExpressionSyntaxError(f"expected a kernel, found {value or 'end of input'!r}", pos)
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, value, pos = self.take()
            if kind != "int":
                raise ExpressionSyntaxError("expected an integer power after '^'", pos)
            if int(value) < 1:
                raise ExpressionSyntaxError("Kronecker power must be >= 1", pos)
            node = Power(node, int(value))
        return node


def parse_expression(text: str) -> KernelExpression:
    parser = _Parser(text)
    tree = parser.expr()
    kind, value, pos = parser.peek()
    if kind != "end":
        raise ExpressionSyntaxError(f"unexpected {value!r}", pos)
    return tree


def format_expression(expr: KernelExpression) -> str:
    if isinstance(expr, KernelRef):
        return expr.name
    if isinstance(expr, FileRef):
        return f"file:{expr.path}"
    if isinstance(expr, Power):
        inner = format_expression(expr.base)
        if not isinstance(expr.base, KernelRef):
            inner = f"({inner})"
        return f"{inner}^{expr.n}"
    return " x ".join(
        f"({format_expression(f)})" if isinstance(f, Product) else format_expression(f)
        for f in expr.factors
    )


def expression_leaves(expr: KernelExpression) -> list:
    """Flatten to the ordered leaf list with powers expanded."""
    if isinstance(expr, (KernelRef, FileRef)):
        return [expr]
    if isinstance(expr, Power):
        return expression_leaves(expr.base) * expr.n
    out = []
    for f in expr.factors:
        out.extend(expression_leaves(f))
    return out


def resolve_leaf(leaf, registry: KernelRegistry = None) -> NamedKernel:
    registry = registry or default_registry
    if isinstance(leaf, KernelRef):
        return registry.get(leaf.name)
    m = load_kernel(leaf.path)
    return NamedKernel(f"file:{leaf.path}", m.nrows, matrix=m)


@dataclass(frozen=True)
class ExpressionResult:
    exponent: float
    size: int
    factors: tuple
    profile: Optional[PartialDistanceProfile] = None
    matrix: Optional[BinaryMatrix] = None

    @property
    def source(self) -> str:
        return "bruteforce" if len(self.factors) == 1 else "composed"

    def to_dict(self) -> dict:
        out = {
            "size": self.size,
            "distances": list(self.profile.distances) if self.profile else None,
            "exponent": self.exponent,
            "per_row_terms": None,
            "source": self.source,
            "factors": [k.name for k in self.factors],
        }
        if self.profile:
            out["per_row_terms"] = list(exponent(self.profile).per_row_terms)
        return out


def resolve_kernels(expr, registry: KernelRegistry = None) -> list:
    if isinstance(expr, str):
        expr = parse_expression(expr)
    cache = {}
    out = []
    for leaf in expression_leaves(expr):
        if leaf not in cache:
            cache[leaf] = resolve_leaf(leaf, registry)
        out.append(cache[leaf])
    return out


def evaluate_expression(
    expr,
    registry: KernelRegistry = None,
    size_cap: int = DEFAULT_SIZE_CAP,
    materialize: bool = False,
) -> ExpressionResult:
    """Exponent, and where possible profile and matrix, of a composition.

    The exponent always comes from the closed form over leaf exponents.
    The profile is composed from brute-forced leaf profiles whenever every
    leaf has a matrix.  The matrix is built only when every leaf has one
    and the total size is within ``size_cap``; with ``materialize=True``
    failing either condition raises instead of returning ``matrix=None``.
    """
    kernels = resolve_kernels(expr, registry)
    size = math.prod(k.known_size for k in kernels)
    if len(kernels) == 1:
        exp = kernels[0].exponent
    else:
        exp = kron_exponent_n([(k.exponent, k.known_size) for k in kernels])
    all_matrices = all(k.has_matrix for k in kernels)
    profile = kron_partial_distances_n([k.profile for k in kernels]) if all_matrices else None
    matrix = None
    if materialize and not all_matrices:
        missing = sorted({k.name for k in kernels if not k.has_matrix})
        raise MatrixUnavailable(f"no matrix for exponent-only kernel(s): {', '.join(missing)}")
    if all_matrices:
        if size <= size_cap:
            matrix = kernels[0].matrix
            for k in kernels[1:]:
                matrix = kron_mat(matrix, k.matrix)
        elif materialize:
            raise SizeCapExceeded(f"size {size} exceeds the materialization cap {size_cap}")
    return ExpressionResult(exp, size, tuple(kernels), profile, matrix)
