import doctest
import random

import pytest

import wordmaps.words
from wordmaps.words import (
    ALPHABET,
    Letter,
    Shape,
    Variant,
    Word,
    WordFamilySpec,
    WordSyntaxError,
    X1,
    X2,
    build_word,
    commutator,
    concat,
    cyclic_reduce,
    family_word,
    free_reduce,
    inverse,
    is_proper_power,
    parse_word,
    power,
    random_reduced_word,
    render,
    standard_corpus,
    variant_for,
    y1,
    yk,
)
from util import oracle_proper_power, reduced_letter_tuples


def test_module_doctests():
    failures, _ = doctest.testmod(wordmaps.words)
    assert failures == 0


# -- parsing --

def test_parse_power_expansion():
    assert parse_word("x1^2").letters == (X1, X1)


def test_parse_free_cancellation():
    assert parse_word("x1 x1^-1").is_identity()


def test_parse_commutator_convention():
    w = parse_word("[x1^-2, x2^-1]")
    assert str(w) == "x1^2 x2 x1^-2 x2^-1"
    assert len(w) == 6


def test_parse_zero_exponent_is_empty():
    assert parse_word("x1^0").is_identity()
    assert parse_word("(x1 x2)^0 x2").letters == (X2,)


def test_parse_nested_groups():
    assert parse_word("(x1 (x2 x1)^2)^-1") == ~parse_word("x1 x2 x1 x2 x1")


def test_parse_blank_is_empty():
    assert parse_word("").is_identity()
    assert parse_word("   ").is_identity()


@pytest.mark.parametrize(
    "text,position",
    [
        ("x3", 0),
        ("x1 x%2", 3),
        ("x1^", 3),
        ("(x1", 3),
        ("[x1 x2]", 6),
        ("x1^2^3", 4),
        ("()", 1),
    ],
)
def test_parse_errors_carry_position(text, position):
    with pytest.raises(WordSyntaxError) as err:
        parse_word(text)
    assert err.value.position == position


# -- free reduction --

def test_reduce_outer_power_collision():
    # x1^-2 * (x1^2 x2 x1^2 x2^-1) reduces to length 4 = 3*3 - 5
    w = free_reduce((~parse_word("x1^2")).letters + y1(1).letters)
    assert str(w) == "x2 x1^2 x2^-1"
    assert len(w) == 4


def test_reduce_empty():
    assert free_reduce(()).is_identity()


def test_reduce_inner_cancellation():
    w = free_reduce((X1, X2, X2.inv(), X1))
    assert w.letters == (X1, X1)


def test_reduce_idempotent_and_nonincreasing(rng):
    for _ in range(300):
        raw = [rng.choice(ALPHABET) for _ in range(rng.randint(0, 20))]
        once = free_reduce(raw)
        assert len(once) <= len(raw)
        assert free_reduce(once.letters) == once


# -- word algebra --

def test_inverse_reverses_and_flips():
    assert str(~parse_word("x1 x2")) == "x2^-1 x1^-1"


def test_power_zero_is_empty():
    assert power(y1(1), 0).is_identity()


def test_concat_cancels():
    assert concat(~Word((X1,)), parse_word("x1 x2")).letters == (X2,)


def test_inverse_involution_and_cancellation(rng):
    for _ in range(100):
        w = random_reduced_word(rng)
        assert ~(~w) == w
        assert (w * ~w).is_identity()


def test_negative_power_is_inverse_power(rng):
    for _ in range(50):
        w = random_reduced_word(rng, max_len=6)
        for m in range(4):
            assert w ** (-m) == (~w) ** m


# -- canonical text round trip --

def test_round_trip(corpus, rng):
    for w in corpus:
        assert parse_word(render(w)) == w
    for _ in range(200):
        w = random_reduced_word(rng)
        assert parse_word(render(w)) == w


# -- word families --

def test_build_word_lengths():
    for k in range(1, 51):
        for inner in (1, -1):
            assert len(family_word(Shape.X2_YK, inner, k)) == 6 * k + 2
            assert len(family_word(Shape.X2_YNEGK, inner, k)) == 6 * k + 2
            assert len(family_word(Shape.XNEG2_YK, inner, k)) == 6 * k - 2


def test_build_word_k2_length_14():
    w = build_word(WordFamilySpec(Variant.PLUS_PLUS, 2), Shape.X2_YK)
    assert len(w) == 14  # 3r - 1 with r = 5


def test_build_word_minus_k1():
    for variant in (Variant.MINUS_PLUS, Variant.MINUS_MINUS):
        w = build_word(WordFamilySpec(variant, 1), Shape.XNEG2_YK)
        mid = "x1^2" if variant is Variant.MINUS_PLUS else "x1^-2"
        assert str(w) == f"x2 {mid} x2^-1"
        assert len(w) == 4


def test_build_word_plus_k1():
    w = build_word(WordFamilySpec(Variant.PLUS_PLUS, 1), Shape.X2_YK)
    assert w == parse_word("x1^4 x2 x1^2 x2^-1")
    assert len(w) == 8


def test_build_word_variant_shape_mismatch():
    with pytest.raises(ValueError):
        build_word(WordFamilySpec(Variant.PLUS_PLUS, 1), Shape.XNEG2_YK)
    with pytest.raises(ValueError):
        build_word(WordFamilySpec(Variant.MINUS_MINUS, 1), Shape.X2_YNEGK)


def test_family_spec_requires_positive_k():
    with pytest.raises(ValueError):
        WordFamilySpec(Variant.PLUS_PLUS, 0)


def test_variant_for():
    assert variant_for(Shape.XNEG2_YK, -1) is Variant.MINUS_MINUS
    assert variant_for(Shape.X2_YNEGK, 1) is Variant.PLUS_PLUS


# -- exponent sums --

def test_exponent_sum_plus_family():
    w = family_word(Shape.X2_YK, 1, 2)  # x1^2 y_2, plus variant
    assert w.exponent_sum(1) == 10
    assert w.exponent_sum(2) == 0


def test_exponent_sum_empty():
    assert Word().exponent_sum(1) == 0
    assert Word().exponent_sum(2) == 0


def test_exponent_sum_minus_family():
    w = family_word(Shape.XNEG2_YK, -1, 2)  # x1^-2 y_2, minus variant
    assert w.exponent_sum(1) == -2


def test_x2_exponent_sum_vanishes_on_all_families():
    for which in Shape:
        for inner in (1, -1):
            for k in range(1, 9):
                assert family_word(which, inner, k).exponent_sum(2) == 0


# -- proper powers --

def test_proper_power_square():
    assert is_proper_power(parse_word("x1^2")) == (True, Word((X1,)), 2)


def test_proper_power_mixed_length_two():
    assert is_proper_power(parse_word("x1 x2")) == (False, None, None)


def test_proper_power_family_word_false():
    flag, _, _ = is_proper_power(family_word(Shape.X2_YK, 1, 2))
    assert flag is False


def test_proper_power_empty_raises():
    with pytest.raises(ValueError):
        is_proper_power(Word())


def test_proper_power_conjugated_root():
    w = parse_word("x2 x1^2 x2^-1")
    flag, root, m = is_proper_power(w)
    assert flag and m == 2
    assert root == parse_word("x2 x1 x2^-1")
    assert root ** m == w


def test_proper_power_primitive_root():
    flag, root, m = is_proper_power(parse_word("x1^6"))
    assert (flag, root, m) == (True, Word((X1,)), 6)


def test_degenerate_family_words_are_proper_powers():
    # k_pm = 0 members reduce to conjugates of x1^(+-2)
    for inner in (1, -1):
        for which in (Shape.XNEG2_YK, Shape.X2_YNEGK):
            flag, root, m = is_proper_power(family_word(which, inner, 1))
            assert flag and m == 2
            assert root ** 2 == family_word(which, inner, 1)


def test_cyclic_reduce_reassembles(rng):
    for _ in range(200):
        w = random_reduced_word(rng)
        conj, core = cyclic_reduce(w)
        assert conj * core * ~conj == w
        if core.letters:
            assert core.letters[0] != core.letters[-1].inv()


def test_proper_power_oracle_agreement_short():
    count = 0
    for tup in reduced_letter_tuples(8):
        w = Word(tup)
        got = is_proper_power(w)
        want = oracle_proper_power(w)
        assert got[0] == want[0], tup
        if got[0]:
            assert got[1:] == want[1:]
            assert got[1] ** got[2] == w
        count += 1
    assert count == 2 * (3**8 - 1)  # all reduced words of length <= 8


# -- corpus --

def test_standard_corpus_deterministic_and_reduced():
    c1 = standard_corpus()
    c2 = standard_corpus()
    assert [w.letters for w in c1] == [w.letters for w in c2]
    assert len(c1) == len({w.letters for w in c1})
    for w in c1:
        assert free_reduce(w.letters) == w
    assert commutator(Word((X1,)), Word((X2,))) in c1
    assert yk(-1, 3) in c1
