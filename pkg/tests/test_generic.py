import random
from fractions import Fraction

import pytest

from matident import (
    CyclicGroup,
    DistinctTupleError,
    FreePoly,
    Grading,
    GVar,
    RATIONALS,
    PrimeField,
    YVar,
)
from matident.commpoly import Poly
from matident.freealg import parse_polynomial, parse_word, word_degree
from matident.generic import (
    evaluate,
    generic_matrix,
    is_graded_identity,
    matching_entry,
    matching_permutation,
    word_product_closed,
    word_product_direct,
)

from helpers import (
    random_rewrite_variant,
    random_swappable_word,
    random_word,
    suite_gradings,
)

Z2 = CyclicGroup(2)
Z4 = CyclicGroup(4)
GR_Z2 = Grading(Z2, 2, (0, 1))
GR_Z4 = Grading(Z4, 2, (0, 1))


def mono(*vars_):
    exps = {}
    for v in vars_:
        exps[v] = exps.get(v, 0) + 1
    return tuple(sorted(exps.items()))


def test_generic_matrix_examples():
    a = generic_matrix(GR_Z2, RATIONALS, 1, 1)
    assert set(a.entries) == {(1, 2), (2, 1)}
    assert a.entries[(1, 2)] == Poly.variable(RATIONALS, YVar(1, 1, 1))
    assert a.entries[(2, 1)] == Poly.variable(RATIONALS, YVar(1, 1, 2))

    assert generic_matrix(GR_Z4, RATIONALS, 2, 1).is_zero()

    b = generic_matrix(GR_Z4, RATIONALS, 1, 1)
    assert set(b.entries) == {(1, 2)}
    assert b.entries[(1, 2)] == Poly.variable(RATIONALS, YVar(1, 1, 1))


def test_word_product_direct_example():
    w = parse_word("x[1;1]*x[1;2]", Z2)
    m = word_product_direct(GR_Z2, RATIONALS, w)
    assert set(m.entries) == {(1, 1), (2, 2)}
    assert m.entries[(1, 1)] == Poly.monomial(
        RATIONALS, mono(YVar(1, 1, 1), YVar(1, 2, 2))
    )
    assert m.entries[(2, 2)] == Poly.monomial(
        RATIONALS, mono(YVar(1, 1, 2), YVar(1, 2, 1))
    )


def test_single_letter_equals_generic_matrix():
    w = parse_word("x[1;3]", Z2)
    assert word_product_direct(GR_Z2, RATIONALS, w) == generic_matrix(GR_Z2, RATIONALS, 1, 3)


def test_monomial_identity_word_evaluates_to_zero():
    w = parse_word("x[1;1]*x[1;2]", Z4)
    assert word_product_direct(GR_Z4, RATIONALS, w).is_zero()
    assert word_product_closed(GR_Z4, RATIONALS, w).is_zero()


def test_closed_form_entry_example():
    w = parse_word("x[1;1]*x[1;3]*x[1;2]", Z2)
    m = word_product_closed(GR_Z2, RATIONALS, w)
    assert m.entries[(1, 2)] == Poly.monomial(
        RATIONALS, mono(YVar(1, 1, 1), YVar(1, 3, 2), YVar(1, 2, 1))
    )


def test_closed_equals_direct_on_random_words():
    rng = random.Random(20260101)
    for grading in suite_gradings()[:3] + [GR_Z4]:
        for _ in range(250):
            w = random_word(rng, grading, 6)
            assert word_product_closed(grading, RATIONALS, w) == word_product_direct(
                grading, RATIONALS, w
            )


def test_closed_equals_direct_over_prime_field():
    rng = random.Random(4242)
    f3 = PrimeField(3)
    for _ in range(100):
        w = random_word(rng, GR_Z4, 5)
        assert word_product_closed(GR_Z4, f3, w) == word_product_direct(GR_Z4, f3, w)


def test_evaluate_linearity_and_identity_instance():
    f = parse_polynomial("x[0;1]*x[0;2] - x[0;2]*x[0;1]", Z2, RATIONALS)
    assert evaluate(GR_Z2, f).is_zero()

    g = parse_polynomial("x[1;1]", Z2, RATIONALS)
    assert not evaluate(GR_Z2, g).is_zero()

    h = parse_polynomial("x[1;1]*x[1;2] - x[1;1]*x[1;2]", Z2, RATIONALS)
    assert h.is_zero() and evaluate(GR_Z2, h).is_zero()


def test_evaluate_rejects_empty_word_terms():
    unit = FreePoly.from_terms(RATIONALS, [((), Fraction(1))])
    with pytest.raises(ValueError, match="empty word"):
        evaluate(GR_Z2, unit)


def test_is_graded_identity_examples():
    assert is_graded_identity(
        GR_Z2, parse_polynomial("x[0;1]*x[0;2] - x[0;2]*x[0;1]", Z2, RATIONALS)
    )
    assert is_graded_identity(
        GR_Z2, parse_polynomial("x[1;1]*x[1;3]*x[1;2] - x[1;2]*x[1;3]*x[1;1]", Z2, RATIONALS)
    )
    assert is_graded_identity(GR_Z4, parse_polynomial("x[2;1]", Z4, RATIONALS))
    assert not is_graded_identity(
        GR_Z2, parse_polynomial("x[1;1]*x[1;2] - x[1;2]*x[1;1]", Z2, RATIONALS)
    )
    assert is_graded_identity(GR_Z4, parse_polynomial("x[1;1]*x[1;2]", Z4, RATIONALS))


def test_identity_decision_requires_distinct_tuple():
    repeated = Grading(Z2, 2, (0, 0))
    with pytest.raises(DistinctTupleError):
        is_graded_identity(repeated, parse_polynomial("x[0;1]", Z2, RATIONALS))
    # other operations stay available on repeated tuples
    assert not word_product_closed(repeated, RATIONALS, parse_word("x[0;1]", Z2)).is_zero()


def test_entry_homogeneity_invariant():
    rng = random.Random(77)
    for grading in suite_gradings():
        for _ in range(60):
            w = random_word(rng, grading, 5)
            m = word_product_closed(grading, RATIONALS, w)
            alpha = word_degree(grading.group, w)
            for (i, j) in m.entries:
                assert grading.unit_degree(i, j) == alpha


def test_evaluation_is_multiplicative_on_words():
    rng = random.Random(123)
    for grading in suite_gradings()[:3] + [GR_Z4]:
        for _ in range(60):
            m = random_word(rng, grading, 4)
            n = random_word(rng, grading, 4)
            left = word_product_closed(grading, RATIONALS, m + n)
            right = word_product_closed(grading, RATIONALS, m) @ word_product_closed(
                grading, RATIONALS, n
            )
            assert left == right


def test_identity_status_depends_only_on_degree_sequence():
    rng = random.Random(321)
    for grading in suite_gradings()[:3] + [GR_Z4]:
        support = grading.support()
        for _ in range(40):
            hseq = [rng.choice(support) for _ in range(rng.randint(1, 5))]
            w1 = tuple(GVar(h, rng.randint(1, 3)) for h in hseq)
            w2 = tuple(GVar(h, rng.randint(1, 3)) for h in hseq)
            f1 = FreePoly.word(RATIONALS, w1)
            f2 = FreePoly.word(RATIONALS, w2)
            assert is_graded_identity(grading, f1) == is_graded_identity(grading, f2)


def test_matching_entry_examples():
    m = parse_word("x[1;1]*x[1;2]*x[1;3]*x[1;4]", Z2)
    n = parse_word("x[1;3]*x[1;4]*x[1;1]*x[1;2]", Z2)
    result = matching_entry(GR_Z2, m, n)
    assert result is not None
    assert result.position == (1, 1)
    assert result.monomial == mono(
        YVar(1, 1, 1), YVar(1, 2, 2), YVar(1, 3, 1), YVar(1, 4, 2)
    )

    m2 = parse_word("x[1;1]*x[1;2]", Z2)
    n2 = parse_word("x[1;2]*x[1;1]", Z2)
    assert matching_entry(GR_Z2, m2, n2) is None

    same = matching_entry(GR_Z2, m, m)
    assert same is not None
    assert same.position == (1, 1)


def test_matching_entry_of_first_letter_strips():
    # words starting with the same letter keep a shared entry after stripping
    rng = random.Random(555)
    for grading in suite_gradings()[:3]:
        for _ in range(15):
            m = random_swappable_word(rng, grading)
            n = (m[0],) + random_rewrite_variant(rng, grading, m[1:])
            assert matching_entry(grading, m, n) is not None
            assert matching_entry(grading, m[1:], n[1:]) is not None


def test_matching_permutation_four_letter_example():
    m = parse_word("x[1;1]*x[1;2]*x[1;3]*x[1;4]", Z2)
    n = parse_word("x[1;3]*x[1;4]*x[1;1]*x[1;2]", Z2)
    result = matching_entry(GR_Z2, m, n)
    perm = matching_permutation(GR_Z2, m, n, result.position)
    assert perm.sigma == (3, 4, 1, 2)
    assert perm.ok


def test_matching_permutation_identity_case():
    m = parse_word("x[1;1]*x[1;2]*x[1;3]", Z2)
    result = matching_entry(GR_Z2, m, m)
    perm = matching_permutation(GR_Z2, m, m, result.position)
    assert perm.sigma == (1, 2, 3)
    assert perm.ok


def test_matching_permutation_conjugate_pair():
    m = parse_word("x[1;1]*x[1;3]*x[1;2]", Z2)
    n = parse_word("x[1;2]*x[1;3]*x[1;1]", Z2)
    result = matching_entry(GR_Z2, m, n)
    assert result.position == (1, 2)
    perm = matching_permutation(GR_Z2, m, n, result.position)
    assert perm.sigma == (3, 2, 1)
    assert perm.ok


def test_matching_permutation_with_repeated_letters():
    # both words use the same letter twice; the least valid matching wins
    m = parse_word("x[1;1]*x[1;1]*x[1;2]*x[1;2]", Z2)
    n = parse_word("x[1;2]*x[1;2]*x[1;1]*x[1;1]", Z2)
    result = matching_entry(GR_Z2, m, n)
    assert result is not None
    perm = matching_permutation(GR_Z2, m, n, result.position)
    assert perm.ok
    assert sorted(perm.sigma) == [1, 2, 3, 4]
    assert tuple(m[s - 1] for s in perm.sigma) == n


def test_first_nonzero_is_row_major():
    w = parse_word("x[0;1]", Z2)
    m = word_product_closed(GR_Z2, RATIONALS, w)
    pos, poly = m.first_nonzero()
    assert pos == (1, 1)
    assert poly == Poly.variable(RATIONALS, YVar(0, 1, 1))
