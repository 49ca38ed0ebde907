import json
import math

import pytest

from polarkit import kernels as K
from polarkit.errors import (
    DuplicateName,
    ExpressionSyntaxError,
    InvalidExponent,
    InvalidSize,
    MatrixUnavailable,
    SizeCapExceeded,
    UnknownKernel,
)
from polarkit.gf2 import BinaryMatrix, write_kernel


@pytest.fixture
def reg():
    return K.KernelRegistry()


def test_builtins():
    assert K.builtin("G2").matrix == BinaryMatrix([[1, 0], [1, 1]])
    assert K.builtin("G3H").matrix == BinaryMatrix([[1, 0, 0], [1, 1, 0], [0, 1, 1]])
    g6h = K.builtin("G6H")
    assert g6h.known_size == 6
    assert round(g6h.exponent, 3) == 0.451
    with pytest.raises(UnknownKernel) as exc:
        K.builtin("G7")
    assert "G7" in str(exc.value)


def test_registry_is_case_sensitive(reg):
    with pytest.raises(UnknownKernel):
        reg.get("g2")


def test_register_external(reg):
    k = reg.register_external("GS16", 16, 0.51825)
    assert not k.has_matrix
    assert k.exponent == 0.51825
    assert reg.get("GS16") is k
    with pytest.raises(InvalidExponent):
        reg.register_external("X", 2, 1.5)
    with pytest.raises(InvalidSize):
        reg.register_external("Y", 1, 0.1)
    with pytest.raises(DuplicateName):
        reg.register_external("G2", 2, 0.5)
    with pytest.raises(DuplicateName):
        reg.register_external("GS16", 16, 0.5)


def test_copy_is_independent(reg):
    other = reg.copy()
    other.register_external("Z", 4, 0.3)
    assert "Z" in other and "Z" not in reg


def test_named_kernel_checks_stated_exponent():
    with pytest.raises(InvalidExponent):
        K.NamedKernel("bad", 2, matrix=K.G2, known_exponent=0.4)
    assert K.NamedKernel("ok", 2, matrix=K.G2, known_exponent=0.5).exponent == 0.5


def test_bootstrap(tmp_path, reg):
    path = tmp_path / "boot.json"
    path.write_text(json.dumps([{"name": "GS16", "size": 16, "exponent": 0.51825}]))
    reg.load_bootstrap(path)
    assert reg.get("GS16").known_size == 16


@pytest.mark.parametrize(
    "text, shown",
    [
        ("G2 x G3H", "G2 x G3H"),
        ("G2⊗G3H", "G2 x G3H"),
        ("G2^2 x GS16", "G2^2 x GS16"),
        ("(G2 x G3H)^2", "(G2 x G3H)^2"),
        ("  G6H ", "G6H"),
    ],
)
def test_parse_and_format(text, shown):
    assert K.format_expression(K.parse_expression(text)) == shown


def test_parse_structure():
    expr = K.parse_expression("G2 x G3H")
    assert isinstance(expr, K.Product)
    assert [f.name for f in expr.factors] == ["G2", "G3H"]
    leaves = K.expression_leaves(K.parse_expression("(G2 x G3L)^2 x G2"))
    assert [leaf.name for leaf in leaves] == ["G2", "G3L", "G2", "G3L", "G2"]


@pytest.mark.parametrize("text", ["G2 ^", "G2 x", "x G2", "(G2", "G2 G3H", "G2^0", "", "G2 x ^2"])
def test_parse_errors_have_position(text):
    with pytest.raises(ExpressionSyntaxError) as exc:
        K.parse_expression(text)
    assert exc.value.position is not None


def test_evaluate_builtin_products():
    res = K.evaluate_expression("G2 x G3L")
    assert list(res.profile) == [1, 1, 3, 2, 2, 6]
    assert round(res.exponent, 3) == 0.398
    assert res.source == "composed"
    assert res.matrix == K.G6L
    res = K.evaluate_expression("G2^5")
    assert res.size == 32
    assert res.exponent == pytest.approx(0.5, abs=1e-15)
    assert K.evaluate_expression("G6H").source == "bruteforce"


def test_evaluate_exponent_only(reg):
    reg.register_external("GS16", 16, 0.51825)
    res = K.evaluate_expression("G2 x GS16", reg)
    assert res.profile is None and res.matrix is None
    assert res.exponent == pytest.approx(0.5146, abs=1e-12)
    res = K.evaluate_expression("G2^2 x GS16", reg)
    assert round(res.exponent, 4) == 0.5122
    with pytest.raises(MatrixUnavailable):
        K.evaluate_expression("G2 x GS16", reg, materialize=True)
    with pytest.raises(UnknownKernel):
        K.evaluate_expression("G2 x GS17", reg)


def test_size_cap():
    res = K.evaluate_expression("G6H^3", size_cap=100)
    assert res.matrix is None and res.profile is not None
    with pytest.raises(SizeCapExceeded):
        K.evaluate_expression("G6H^3", size_cap=100, materialize=True)


def test_file_leaf(tmp_path):
    path = tmp_path / "identity4.pm"
    path.write_text(write_kernel(BinaryMatrix.identity(4)))
    res = K.evaluate_expression(f"file:{path}")
    assert res.exponent == 0.0
    res = K.evaluate_expression(f"G2 x (file:{path})")
    assert res.size == 8
    assert res.exponent == pytest.approx(0.5 * math.log(2) / math.log(8))
