import math
import random

import pytest

from malcevlab import (
    IdentityError,
    IdentityParseError,
    MultidegreeError,
    builtin_catalog,
    linearize,
    parse_identity,
    parse_map,
)
from malcevlab.construct import cross_product_algebra, octonion_malcev
from malcevlab.engine import evaluate_identity, random_element


def side_as_dict(side):
    out = {}
    for coeff, term in side:
        out[term] = out.get(term, 0) + coeff
    return {t: c for t, c in out.items() if c}


def test_parse_first_type_4():
    ident = parse_identity("first_type_4 : x,y,u,v | J(x,y,u*v) = 0")
    assert ident.variables == ("x", "y", "u", "v")
    assert ident.multidegree == {"x": 1, "y": 1, "u": 1, "v": 1}
    assert ident.is_multilinear
    assert len(ident.lhs) == 3 and ident.rhs == ()


def test_parse_malcev_degrees():
    ident = parse_identity("malcev : x,y,z | J(x,y,x*z) = J(x,y,z)*x")
    assert ident.multidegree == {"x": 2, "y": 1, "z": 1}
    assert not ident.is_multilinear


def test_j_expansion():
    ident = parse_identity("jac : x,y,z | J(x,y,z) = 0")
    assert side_as_dict(ident.lhs) == {
        (("x", "y"), "z"): 1,
        (("y", "z"), "x"): 1,
        (("z", "x"), "y"): 1,
    }


def test_coefficients_and_signs():
    from fractions import Fraction

    ident = parse_identity("t : x,y | -2*x*y + 1/2*(y*x) = -3*(x*y)")
    assert side_as_dict(ident.lhs) == {("x", "y"): -2, ("y", "x"): Fraction(1, 2)}
    assert side_as_dict(ident.rhs) == {("x", "y"): -3}


def test_like_terms_combine():
    ident = parse_identity("t : x,y | x*y + x*y - 2*x*y = 0")
    assert ident.lhs == ()


def test_inconsistent_multidegree_rejected():
    with pytest.raises(MultidegreeError):
        parse_identity("bad : x | x*x = x")
    with pytest.raises(MultidegreeError):
        parse_identity("bad : x,y | x*y = y*y")


def test_unknown_variable_rejected():
    with pytest.raises(IdentityParseError) as info:
        parse_identity("bad : x,y | x*z = 0")
    assert "unknown variable" in str(info.value)
    assert info.value.pos > 0


def test_syntax_errors_carry_position():
    with pytest.raises(IdentityParseError):
        parse_identity("bad : x,y | x*y*x = 0")  # nested product needs parens
    with pytest.raises(IdentityParseError):
        parse_identity("bad : x,y | x+ = 0")
    with pytest.raises(IdentityParseError):
        parse_identity("bad : x,y | J(x,y) = 0")
    with pytest.raises(IdentityParseError):
        parse_identity("bad x,y | x*y = 0")
    with pytest.raises(IdentityParseError):
        parse_identity("bad : x,y | 2 = 0")
    with pytest.raises(IdentityParseError):
        parse_identity("bad : x,x | x*x = 0")


def test_zero_sides():
    ident = parse_identity("t : x,y | 0 = x*y")
    assert ident.lhs == () and len(ident.rhs) == 1
    assert parse_identity("t : x,y | 0 = 0").residual_terms() == ()


def test_nested_parenthesized_products():
    ident = parse_identity("t : x,y,z,w | (x*y)*(z*w) = ((x*y)*z)*w")
    assert side_as_dict(ident.lhs) == {(("x", "y"), ("z", "w")): 1}
    assert side_as_dict(ident.rhs) == {((("x", "y"), "z"), "w"): 1}


def test_serialization_round_trip_catalog():
    for name, entry in builtin_catalog().items():
        again = parse_identity(entry.identity.to_dsl())
        assert again == entry.identity, name


def test_catalog_size_and_names():
    catalog = builtin_catalog()
    assert len(catalog) >= 13
    for expected in (
        "anticommutative", "jacobi", "malcev", "first_type_1", "first_type_2",
        "second_type_3a", "second_type_3b", "first_type_4", "first_type_5",
        "malcev_linear", "sagle_2_14", "sagle_2_15", "jacobian_shift_6",
        "two_w_jacobian",
    ):
        assert expected in catalog
    for entry in catalog.values():
        assert entry.claim
        assert entry.characteristic


def test_linearize_malcev_golden():
    lin = linearize(builtin_catalog()["malcev"].identity)
    assert lin.variables == ("x1", "x2", "y", "z")
    assert lin.is_multilinear
    expected = parse_identity(
        "want : x1,x2,y,z | J(x1,y,x2*z) + J(x2,y,x1*z) = J(x1,y,z)*x2 + J(x2,y,z)*x1"
    )
    assert side_as_dict(lin.lhs) == side_as_dict(expected.lhs)
    assert side_as_dict(lin.rhs) == side_as_dict(expected.rhs)


def test_linearize_multilinear_is_identity():
    ident = builtin_catalog()["first_type_4"].identity
    assert linearize(ident) is ident


def test_linearize_square_polarizes():
    lin = linearize(parse_identity("sq : x | x*x = 0"))
    assert lin.variables == ("x1", "x2")
    assert side_as_dict(lin.lhs) == {("x1", "x2"): 1, ("x2", "x1"): 1}


def test_linearize_degree_three():
    lin = linearize(parse_identity("c3 : x,y | ((x*y)*x)*x = 0"))
    assert lin.variables == ("x1", "x2", "x3", "y")
    assert lin.is_multilinear
    assert len(lin.lhs) == 6  # 3! assignments


def test_linearize_fresh_name_collision():
    lin = linearize(parse_identity("t : x,x1 | (x*x1)*x = 0"))
    # plain x1/x2 collide with the declared variable x1
    assert lin.variables == ("x_1", "x_2", "x1")


def test_linearize_round_trips_through_dsl():
    lin = linearize(builtin_catalog()["malcev"].identity)
    assert parse_identity(lin.to_dsl()) == lin


@pytest.mark.parametrize("name", ["malcev", "second_type_3a", "second_type_3b"])
@pytest.mark.parametrize("make", [cross_product_algebra, octonion_malcev])
def test_linearization_semantic_oracle(name, make):
    """eval(linearized at equal fresh values) = prod(d_v!) * eval(original)."""
    algebra = make()
    ident = builtin_catalog()[name].identity
    lin = linearize(ident)
    factor = 1
    for d in ident.multidegree.values():
        factor *= math.factorial(d)
    rng = random.Random(f"oracle:{name}:{algebra.name}")
    for _ in range(15):
        assignment = {v: random_element(algebra, rng) for v in ident.variables}
        lin_assignment = {}
        for v in lin.variables:
            base = v.rstrip("0123456789")
            lin_assignment[v] = assignment[base if base in assignment else v]
        lhs = evaluate_identity(algebra, lin, lin_assignment)
        rhs = evaluate_identity(algebra, ident, assignment).scale(factor)
        assert lhs == rhs


def test_parse_map_and_multilinearity_guard():
    from malcevlab import check_skew_symmetric

    xi = parse_map("x1,x2,x3,x4 | J(x1,x2,x3*x4)", name="xi")
    assert xi.is_multilinear
    bad = parse_map("x,y | (x*y)*x", name="bad")
    with pytest.raises(IdentityError):
        check_skew_symmetric(cross_product_algebra(), bad)
