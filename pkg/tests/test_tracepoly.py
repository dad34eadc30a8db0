import random

import pytest

from wordmaps.tracepoly import (
    CyclotomicElement,
    IntPoly,
    S,
    SymbolicGroupElement,
    T,
    TracePolynomial,
    U,
    alternating_dickson_sum,
    cyclotomic_polynomial,
    cyclotomic_root_check,
    dickson,
    factorization_sum_form,
    render_poly,
    tau,
    verify_factorization,
    verify_swap,
)
from wordmaps.words import Shape, Word, X1, X2, parse_word, random_reduced_word, y1, yk
from util import eval_word_int, mat_mul, mat_trace, random_int_sl2

MINUS = "−"


# -- the rewriting rule Y*X = t*X + s*Y - (s*t - u)*1 - X*Y must hold for
#    actual determinant-1 matrices; validated numerically before anything
#    else relies on tau.

def test_yx_rewriting_rule_numeric(rng):
    for _ in range(100):
        x, y = random_int_sl2(rng), random_int_sl2(rng)
        s, t = mat_trace(x), mat_trace(y)
        xy = mat_mul(x, y)
        u = mat_trace(xy)
        yx = mat_mul(y, x)
        for i in range(2):
            for j in range(2):
                ident = 1 if i == j else 0
                assert yx[i][j] == t * x[i][j] + s * y[i][j] - (s * t - u) * ident - xy[i][j]


def test_symbolic_identity_and_associativity(rng):
    e = SymbolicGroupElement.identity()
    gx = e._times_x()
    gy = e._times_y()
    assert e * gx == gx and gx * e == gx
    elems = [gx, gy, gx * gy, gy * gx, gx * gx * gy]
    for a in elems:
        for b in elems:
            for c in elems[:3]:
                assert (a * b) * c == a * (b * c)


# -- tau basics --

def test_tau_empty_word():
    assert tau(Word()) == TracePolynomial.constant(2)


def test_tau_generators():
    assert tau(Word((X1,))) == S
    assert tau(parse_word("x1 x2")) == U


def test_tau_x1_squared():
    assert tau(parse_word("x1^2")) == S * S - 2


def test_tau_commutator_classic_identity():
    assert tau(parse_word("[x1, x2]")) == S * S + T * T + U * U - S * T * U - 2


def test_tau_commutator_against_integer_matrices(rng):
    w = parse_word("[x1, x2]")
    poly = tau(w)
    for _ in range(100):
        x, y = random_int_sl2(rng), random_int_sl2(rng)
        s, t, u = mat_trace(x), mat_trace(y), mat_trace(mat_mul(x, y))
        assert poly.evaluate(s, t, u) == mat_trace(eval_word_int(w, x, y))


def test_tau_matches_integer_matrices_on_corpus(corpus, rng):
    for w in corpus:
        poly = tau(w)
        for _ in range(10):
            x, y = random_int_sl2(rng), random_int_sl2(rng)
            s, t, u = mat_trace(x), mat_trace(y), mat_trace(mat_mul(x, y))
            assert poly.evaluate(s, t, u) == mat_trace(eval_word_int(w, x, y)), str(w)


def test_tau_soundness_over_finite_fields(corpus):
    # keystone cross-check: 200 random determinant-1 pairs per field,
    # q in {5, 7, 13, 27}, against every corpus word
    from wordmaps.gf import eval_trace_poly, eval_word, make_field, sl2_group

    rng = random.Random(31337)
    for p, n in ((5, 1), (7, 1), (13, 1), (3, 3)):
        field = make_field(p, n)
        group = sl2_group(field)
        polys = [(w, tau(w)) for w in corpus]
        for _ in range(200):
            x, y = rng.choice(group), rng.choice(group)
            s, t, u = x.trace(), y.trace(), (x * y).trace()
            for w, poly in polys:
                assert eval_word(w, x, y).trace() == eval_trace_poly(poly, s, t, u), (
                    (p, n), str(w),
                )


def test_tau_inverse_invariance(corpus):
    for w in corpus:
        assert tau(~w) == tau(w)


def test_tau_conjugation_invariance(corpus, rng):
    for _ in range(40):
        w = rng.choice(corpus)
        v = rng.choice(corpus)
        assert tau(v * w * ~v) == tau(w)


def test_tau_trace_identity(corpus, rng):
    for _ in range(40):
        w1 = rng.choice(corpus)
        w2 = rng.choice(corpus)
        assert tau(w1 * w2) + tau(w1 * ~w2) == tau(w1) * tau(w2)


# -- dickson recurrence --

def test_dickson_base_cases():
    assert dickson(0) == IntPoly((2,))
    assert dickson(1) == IntPoly((0, 1))


def test_dickson_one_step():
    assert dickson(2) == IntPoly((-2, 0, 1))  # T^2 - 2


def test_dickson_three():
    assert dickson(3) == IntPoly((0, -3, 0, 1))  # T^3 - 3T
    for inner in (1, -1):
        assert dickson(3).horner(tau(y1(inner))) == tau(yk(inner, 3))


def test_dickson_substitution_consistency():
    for inner in (1, -1):
        base = tau(y1(inner))
        for i in range(7):
            assert dickson(i).horner(base) == tau(yk(inner, i))


def test_dickson_rejects_negative():
    with pytest.raises(ValueError):
        dickson(-1)


# -- swap identity --

def test_swap_k1_both_sides_equal_s2_minus_2():
    for inner in (1, -1):
        assert tau(parse_word("x1^-2") * yk(inner, 1)) == S * S - 2
    assert verify_swap(1, 1) and verify_swap(1, -1)


def test_swap_k0():
    assert verify_swap(0, 1) and verify_swap(0, -1)


def test_swap_negative_k():
    assert verify_swap(-3, 1) and verify_swap(-3, -1)


def test_swap_full_range():
    for k in range(-8, 9):
        for inner in (1, -1):
            assert verify_swap(k, inner), (k, inner)


# -- factorization --

def test_sum_form_k1_x2yk():
    for inner in (1, -1):
        expected = (S * S - 2) * (tau(y1(inner)) - 1)
        assert factorization_sum_form(1, Shape.X2_YK, inner) == expected


def test_sum_form_k1_xneg2yk_empty_bracket():
    for inner in (1, -1):
        assert factorization_sum_form(1, Shape.XNEG2_YK, inner) == S * S - 2


def test_sum_form_k2_x2yk():
    for inner in (1, -1):
        expected = (S * S - 2) * (tau(yk(inner, 2)) - tau(y1(inner)) + 1)
        assert factorization_sum_form(2, Shape.X2_YK, inner) == expected


def test_verify_factorization_small_range():
    for k in range(1, 5):
        for which in Shape:
            assert verify_factorization(k, which), (k, which)


def test_perturbed_sum_is_detected():
    # dropping one term from the bracket must break the equality
    k, which, inner = 2, Shape.X2_YK, 1
    good = factorization_sum_form(k, which, inner)
    perturbed = good - (S * S - 2) * tau(y1(inner))
    w = parse_word("x1^2") * yk(inner, 2)
    assert tau(w) == good
    assert tau(w) != perturbed


# -- cyclotomic polynomials and the root check --

def test_cyclotomic_small():
    assert cyclotomic_polynomial(1) == IntPoly((-1, 1))
    assert cyclotomic_polynomial(2) == IntPoly((1, 1))
    assert cyclotomic_polynomial(5) == IntPoly((1, 1, 1, 1, 1))


def test_cyclotomic_nine():
    # divide x^9 - 1 by (x - 1)(x^2 + x + 1) by hand: x^6 + x^3 + 1
    assert cyclotomic_polynomial(9) == IntPoly((1, 0, 0, 1, 0, 0, 1))


def test_cyclotomic_product_reconstructs_xm_minus_1():
    for m in range(1, 31):
        prod = IntPoly((1,))
        for d in range(1, m + 1):
            if m % d == 0:
                prod = prod * cyclotomic_polynomial(d)
        assert prod == IntPoly.x_power(m) - 1, m


def test_cyclotomic_element_arithmetic():
    # zeta_3 + zeta_3^-1 = -1
    z = CyclotomicElement.zeta_power(3, 1) + CyclotomicElement.zeta_power(3, 2)
    assert z == CyclotomicElement.from_poly(3, IntPoly((-1,)))
    # (zeta_5 + zeta_5^4)*(zeta_5^2 + zeta_5^3) = sum of all primitive 5th roots = -1
    a = CyclotomicElement.zeta_power(5, 1) + CyclotomicElement.zeta_power(5, 4)
    b = CyclotomicElement.zeta_power(5, 2) + CyclotomicElement.zeta_power(5, 3)
    assert a * b == CyclotomicElement.from_poly(5, IntPoly((-1,)))


def test_alternating_sum_k1():
    assert alternating_dickson_sum(1) == IntPoly((-1, 1))  # T - 1


def test_alternating_sum_k2():
    assert alternating_dickson_sum(2) == IntPoly((-1, -1, 1))  # T^2 - T - 1


def test_root_check_k1():
    # -(zeta_3 + zeta_3^-1) = 1 is a root of T - 1
    assert alternating_dickson_sum(1).horner(1) == 0
    assert cyclotomic_root_check(1)


def test_root_check_k2_exact_arithmetic():
    root = -(CyclotomicElement.zeta_power(5, 1) + CyclotomicElement.zeta_power(5, 4))
    value = alternating_dickson_sum(2).horner(root)
    assert value.is_zero()
    assert cyclotomic_root_check(2)


def test_root_check_range():
    for k_pm in range(1, 9):
        assert cyclotomic_root_check(k_pm), k_pm


def test_root_check_detects_wrong_polynomial():
    # T + 1 is monic of degree 1 but does not vanish at -(zeta_3+zeta_3^-1) = 1
    root = -(CyclotomicElement.zeta_power(3, 1) + CyclotomicElement.zeta_power(3, 2))
    assert not IntPoly((1, 1)).horner(root).is_zero()


# -- rendering --

def test_render_examples():
    assert render_poly(tau(parse_word("x1^2"))) == f"s^2 {MINUS} 2"
    poly = TracePolynomial({(2, 1, 0): 1, (0, 0, 1): -2, (0, 0, 0): 3})
    assert render_poly(poly) == f"s^2*t {MINUS} 2*u + 3"
    assert render_poly(TracePolynomial()) == "0"
    assert render_poly(TracePolynomial.constant(-1)) == f"{MINUS}1"


def test_render_graded_lex_descending():
    poly = S + T * T  # degree 2 term first
    assert render_poly(poly) == "t^2 + s"


def test_polynomial_arithmetic_exact():
    big = 10**40
    p1 = TracePolynomial({(1, 0, 0): big})
    assert (p1 * p1).terms == {(2, 0, 0): big * big}
    assert (p1 - p1).terms == {}
    assert (S + 1) * (S - 1) == S * S - 1
    assert S**5 == S * S * S * S * S


def test_no_zero_coefficients_stored(corpus):
    for w in corpus:
        assert all(c != 0 for c in tau(w).terms.values())
