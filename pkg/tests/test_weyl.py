"""Operator algebra: rewriting, module actions, adjoints, the product identity."""

import random
from fractions import Fraction

import pytest

from socle.errors import DomainError
from socle.grammar import parse_operator, parse_poly
from socle.poly import MultiPoly
from socle.weyl import (
    EElement,
    PoleElement,
    WeylOp,
    check_euler_identity,
    formal_adjoint,
    normal_order,
    right_coefficients,
)


def random_op(rng, n, max_exp=2, max_terms=3):
    op = WeylOp.zero(n)
    for _ in range(rng.randint(1, max_terms)):
        xe = tuple(rng.randint(0, max_exp) for _ in range(n))
        de = tuple(rng.randint(0, max_exp) for _ in range(n))
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        if c:
            op = op + WeylOp(n, {(xe, de): c})
    return op


def random_poly(rng, n, max_deg=3):
    p = MultiPoly.zero(n)
    for _ in range(rng.randint(0, 4)):
        exp = tuple(rng.randint(0, max_deg) for _ in range(n))
        p = p + MultiPoly.monomial(n, exp, rng.randint(-3, 3))
    return p


# ---------------------------------------------------------------- rewriting


def test_basic_relation():
    # d x = x d + 1
    assert normal_order([(Fraction(1), [("d", 0), ("x", 0)])], 1) == parse_operator(
        "x*d0 + 1", 1
    )


def test_second_order_relation():
    # d^2 x = x d^2 + 2 d
    got = normal_order([(Fraction(1), [("d", 0), ("d", 0), ("x", 0)])], 1)
    assert got == parse_operator("x*d0^2 + 2*d0", 1)


def test_commutators_all_pairs():
    for n in range(1, 5):
        for i in range(n):
            for j in range(n):
                d = WeylOp.d_gen(n, i)
                x = WeylOp.x_gen(n, j)
                comm = d.commutator(x)
                want = WeylOp.one(n) if i == j else WeylOp.zero(n)
                assert comm == want
                # x's commute, d's commute
                assert WeylOp.x_gen(n, i).commutator(x) == WeylOp.zero(n)
                assert WeylOp.d_gen(n, i).commutator(WeylOp.d_gen(n, j)) == WeylOp.zero(n)


def test_rewriting_is_confluent():
    """Grouping a product arbitrarily cannot change the normal form."""
    rng = random.Random(17)
    for _ in range(30):
        n = rng.randint(1, 3)
        word = []
        for _ in range(rng.randint(2, 6)):
            kind = rng.choice(["x", "d"])
            word.append((kind, rng.randrange(n)))
        gens = [
            WeylOp.x_gen(n, i) if kind == "x" else WeylOp.d_gen(n, i)
            for kind, i in word
        ]
        left = gens[0]
        for g in gens[1:]:
            left = left * g
        right = gens[-1]
        for g in reversed(gens[:-1]):
            right = g * right
        assert left == right
        assert left == normal_order([(Fraction(1), word)], n)


def test_product_agrees_with_action_on_polynomials():
    rng = random.Random(71)
    for _ in range(40):
        n = rng.randint(1, 3)
        p_op, q_op = random_op(rng, n), random_op(rng, n)
        f = random_poly(rng, n)
        assert (p_op * q_op).act_on_poly(f) == p_op.act_on_poly(q_op.act_on_poly(f))


def test_action_is_linear():
    rng = random.Random(73)
    for _ in range(20):
        op = random_op(rng, 2)
        f, g = random_poly(rng, 2), random_poly(rng, 2)
        assert op.act_on_poly(f + g) == op.act_on_poly(f) + op.act_on_poly(g)


# ------------------------------------------------------- the E-module action


def test_e_action_basics():
    n = 2
    socle = EElement.socle(n)
    # every x_i kills the socle
    for i in range(n):
        assert WeylOp.x_gen(n, i).act_on_e(socle) == EElement.zero(n)
    # d_0 pushes the pole deeper: d_0 (x^-1 y^-1) = -x^-2 y^-1
    deeper = WeylOp.d_gen(n, 0).act_on_e(socle)
    assert deeper == EElement.inverse_monomial(n, (2, 1), -1)


def test_product_agrees_with_action_on_e():
    rng = random.Random(37)
    for _ in range(30):
        n = rng.randint(1, 2)
        p_op, q_op = random_op(rng, n), random_op(rng, n)
        v = EElement.inverse_monomial(
            n, tuple(rng.randint(1, 3) for _ in range(n)), rng.randint(1, 3)
        )
        assert (p_op * q_op).act_on_e(v) == p_op.act_on_e(q_op.act_on_e(v))


def test_e_is_generated_in_both_directions():
    """Multiplication drives any element down to the socle; partials climb back."""
    rng = random.Random(53)
    n = 2
    for _ in range(25):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            a = tuple(rng.randint(1, 4) for _ in range(n))
            terms[a] = Fraction(rng.randint(1, 5))
        v = EElement(n, terms)
        # multiply by x^(a*-1) for a* the lexicographically largest exponent
        a_star = max(terms)
        op = WeylOp.one(n)
        for i in range(n):
            op = op * (WeylOp.x_gen(n, i) ** (a_star[i] - 1))
        down = op.act_on_e(v)
        assert down.terms, "descent died"
        assert set(down.terms) == {(1,) * n}
    # climb: d^a applied to the socle reaches the inverse monomial x^-(a+1)
    for _ in range(10):
        a = tuple(rng.randint(0, 3) for _ in range(n))
        op = WeylOp.one(n)
        for i in range(n):
            op = op * (WeylOp.d_gen(n, i) ** a[i])
        up = op.act_on_e(EElement.socle(n))
        assert set(up.terms) == {tuple(ai + 1 for ai in a)}


# -------------------------------------------------------------- pole algebra


def test_pole_canonicalization():
    f = parse_poly("x", 1)
    v = PoleElement(f, 2, f)  # x / x^2 == 1 / x
    assert v.k == 1
    assert v.g == MultiPoly.one(1)


def test_quotient_mode_kills_polynomial_part():
    f = parse_poly("x", 1)
    v = PoleElement(f, 1, f, quotient_mod_A=True)  # x/x = 1 == 0 mod A
    assert not v.g


def test_derivative_of_simple_pole():
    f = parse_poly("x^2 + y^2", 2)
    v = PoleElement(f, 1, MultiPoly.one(2))
    dv = WeylOp.d_gen(2, 0).act_on_pole(v)
    # d/dx (1/f) = -f_x / f^2
    assert dv.k == 2
    assert dv.g == -f.partial_derivative(0)


def test_product_agrees_with_action_on_poles():
    rng = random.Random(61)
    f = parse_poly("x^2 + y^2", 2)
    for _ in range(25):
        p_op, q_op = random_op(rng, 2, max_exp=1), random_op(rng, 2, max_exp=1)
        g = random_poly(rng, 2, max_deg=2)
        v = PoleElement(f, rng.randint(1, 3), g)
        assert (p_op * q_op).act_on_pole(v) == p_op.act_on_pole(q_op.act_on_pole(v))


# ------------------------------------------------- adjoints and the identity


def test_adjoint_is_an_involution():
    rng = random.Random(83)
    for _ in range(30):
        op = random_op(rng, 1)
        assert formal_adjoint(formal_adjoint(op)) == op


def test_adjoint_is_an_antihomomorphism():
    rng = random.Random(89)
    for _ in range(30):
        a, b = random_op(rng, 1), random_op(rng, 1)
        assert formal_adjoint(a * b) == formal_adjoint(b) * formal_adjoint(a)


def test_adjoint_with_spectator_variables():
    # coefficients may involve other variables as long as only d0 appears
    q = parse_operator("x1^2 * d0 + x0*x1", 2)
    assert formal_adjoint(formal_adjoint(q)) == q
    with pytest.raises(DomainError):
        formal_adjoint(parse_operator("d1", 2))


def test_right_coefficients_reconstruct():
    rng = random.Random(97)
    d = WeylOp.d_gen(1, 0)
    for _ in range(30):
        q = random_op(rng, 1)
        coeffs = right_coefficients(q)
        rebuilt = WeylOp.zero(1)
        for i, a in enumerate(coeffs):
            rebuilt = rebuilt + (d ** i) * WeylOp.from_poly(a) * ((-1) ** i)
        assert rebuilt == q


def test_euler_identity_frozen_example():
    q = parse_operator("-d0*x^2", 1)
    b = parse_poly("x", 1)
    p, r_op, residual = check_euler_identity(q, b)
    assert p == parse_operator("x^2*d0", 1)
    assert r_op == parse_operator("-x^3", 1)
    assert residual == WeylOp.zero(1)


def test_euler_identity_randomized():
    rng = random.Random(103)
    for _ in range(15):
        q = random_op(rng, 1, max_exp=2)
        b = random_poly(rng, 1, max_deg=2)
        _, _, residual = check_euler_identity(q, b)
        assert residual == WeylOp.zero(1)
