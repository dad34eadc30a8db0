"""Exact trace-polynomial certificates and exhaustive image checks for
two-generator word maps on PSL2 over finite fields."""

from .arith import (
    CongruenceError,
    ConditionReport,
    DensityReport,
    RamifiedPrimeError,
    check_nonsurjectivity_conditions,
    inertia_degree,
    is_prime,
    is_square_mod,
    kpm,
    length_residues,
    multiplicative_order,
    necessary_congruence,
    scan_primes,
)
from .gf import (
    BudgetExceededError,
    FieldSpec,
    FqElement,
    ImageReport,
    Mat2,
    enumerate_image_pairs,
    eval_trace_poly,
    eval_word,
    field_elements,
    make_field,
    psl2_canonical,
    psl2_order,
    sl2_group,
    trace_scan,
)
from .tracepoly import (
    CyclotomicElement,
    IntPoly,
    SymbolicGroupElement,
    TracePolynomial,
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
from .words import (
    Letter,
    Shape,
    Variant,
    Word,
    WordFamilySpec,
    WordSyntaxError,
    build_word,
    commutator,
    concat,
    cyclic_reduce,
    exponent_sum,
    family_word,
    free_reduce,
    inverse,
    is_proper_power,
    parse_word,
    power,
    render,
    standard_corpus,
    variant_for,
    y1,
    yk,
)

__version__ = "0.1.0"
