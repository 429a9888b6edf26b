"""Membership scans, greedy decomposition, and the local cone."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betticone import (
    EXPLICIT,
    BettiSequence,
    BettiTable,
    DegreeSequence,
    LocalDecomposition,
    NotInConeError,
    check_finite_length,
    check_graded,
    check_local,
    decompose,
    decompose_local,
    degseq_leq,
    expand_tail,
    make_pure_diagram,
    table_arith,
)

OMEGA_TABLE = BettiTable({(0, 0): 2, (1, 1): 3, (2, 2): 6})


def combo(*terms) -> BettiTable:
    total = BettiTable({})
    for d, c in terms:
        total = table_arith(1, total, c, make_pure_diagram(d).table)
    return total


degree_sequences = st.one_of(
    st.integers(-5, 8).map(DegreeSequence.free),
    st.tuples(st.integers(-5, 6), st.integers(1, 4)).map(
        lambda t: DegreeSequence.two_step(t[0], t[0] + t[1])
    ),
    st.tuples(st.integers(-5, 6), st.integers(1, 4)).map(
        lambda t: DegreeSequence.tail(t[0], t[0] + t[1])
    ),
)

cone_points = st.lists(
    st.tuples(degree_sequences, st.fractions(min_value=Fraction(1, 4), max_value=6, max_denominator=4)),
    min_size=0,
    max_size=4,
).map(lambda terms: combo(*terms))


# -- membership --------------------------------------------------------------


def test_zero_table_is_a_member_with_empty_decomposition():
    verdict = check_graded(BettiTable({}))
    assert verdict.member
    assert verdict.decomposition.terms == ()
    assert verdict.violation is None


def test_pure_diagrams_are_members():
    for d in (DegreeSequence.free(0), DegreeSequence.two_step(-1, 2), DegreeSequence.tail(0, 3)):
        verdict = check_graded(make_pure_diagram(d).table)
        assert verdict.member, d


def test_negative_entry_reports_epsilon():
    verdict = check_graded(BettiTable({(0, 0): -1}))
    assert not verdict.member
    assert verdict.violation.label == "epsilon(0,0)"
    assert verdict.violation.value == -1


def test_row_two_alone_reports_alpha():
    verdict = check_graded(BettiTable({(2, 1): 1}))
    assert not verdict.member
    assert verdict.violation.label == "alpha(0)"
    assert verdict.violation.value == -1


def test_row_one_alone_reports_gamma():
    verdict = check_graded(BettiTable({(1, 1): 1}))
    assert not verdict.member
    assert verdict.violation.label == "gamma(0)"
    assert verdict.violation.value == -3


def test_alpha_scan_precedes_gamma():
    # both families are violated here; alpha(0) must be the certificate
    verdict = check_graded(BettiTable({(1, 0): 2, (2, 1): 5}))
    assert not verdict.member
    assert verdict.violation.label == "alpha(0)"


def test_doubling_scan_comes_first_in_explicit_mode():
    bad = BettiTable({(0, 0): -1, (2, 2): 6, (3, 3): 11}, tail_mode=EXPLICIT)
    verdict = check_graded(bad)
    assert not verdict.member
    assert verdict.violation.label == "doubling_eq(2,2)"
    assert verdict.violation.value == 2 * 6 - 11


def test_explicit_window_of_member_is_member():
    window = expand_tail(OMEGA_TABLE, max_row=5)
    assert check_graded(window).member


def test_finite_length_requires_gamma_inf_zero():
    verdict = check_finite_length(OMEGA_TABLE)
    assert not verdict.member
    assert verdict.violation.label == "gamma_inf"
    assert verdict.violation.value == 3
    tail = make_pure_diagram(DegreeSequence.tail(0, 2)).table
    assert check_finite_length(tail).member


@given(cone_points)
@settings(max_examples=100, deadline=None)
def test_members_pass_and_round_trip(v):
    verdict = check_graded(v)
    assert verdict.member
    assert verdict.decomposition.recombine() == v


# -- greedy decomposition ----------------------------------------------------


def test_omega_table_decomposition_is_tail_plus_free():
    deco = decompose(OMEGA_TABLE)
    assert deco.terms == (
        (DegreeSequence.tail(0, 1), Fraction(1)),
        (DegreeSequence.free(0), Fraction(1)),
    )


def test_pure_diagram_decomposes_to_itself():
    for d in (DegreeSequence.free(3), DegreeSequence.two_step(0, 2), DegreeSequence.tail(-2, 1)):
        deco = decompose(table_arith(0, BettiTable({}), Fraction(5, 2), make_pure_diagram(d).table))
        assert deco.terms == ((d, Fraction(5, 2)),)


def test_decompose_rejects_non_members():
    with pytest.raises(NotInConeError) as exc:
        decompose(BettiTable({(1, 1): 1}))
    assert exc.value.violation.label == "gamma(0)"


def test_decompose_accepts_explicit_windows():
    deco = decompose(expand_tail(OMEGA_TABLE, max_row=6))
    assert deco.recombine() == OMEGA_TABLE


@given(cone_points)
@settings(max_examples=100, deadline=None)
def test_decomposition_terms_form_a_chain(v):
    terms = decompose(v).terms
    assert len(terms) <= max(len(v.support()), 1)
    for m in range(len(terms)):
        for n in range(m + 1, len(terms)):
            assert degseq_leq(terms[m][0], terms[n][0]), (terms[m][0], terms[n][0])


@given(cone_points)
@settings(max_examples=100, deadline=None)
def test_decomposition_coefficients_are_positive(v):
    for _, c in decompose(v).terms:
        assert c > 0


# -- the degree sequence order ------------------------------------------------


def test_degseq_leq_basic_cases():
    assert degseq_leq(DegreeSequence.free(0), DegreeSequence.free(1))
    assert degseq_leq(DegreeSequence.free(0), DegreeSequence.free(0))  # reflexive
    assert degseq_leq(DegreeSequence.tail(0, 1), DegreeSequence.two_step(0, 1))
    assert not degseq_leq(DegreeSequence.two_step(0, 1), DegreeSequence.tail(0, 1))
    assert degseq_leq(DegreeSequence.tail(0, 1), DegreeSequence.free(0))
    assert degseq_leq(DegreeSequence.two_step(0, 1), DegreeSequence.free(0))
    assert degseq_leq(DegreeSequence.two_step(0, 1), DegreeSequence.two_step(0, 2))


def test_degseq_leq_incomparable_pair():
    d = DegreeSequence.two_step(0, 3)
    e = DegreeSequence.two_step(1, 2)
    assert not degseq_leq(d, e)
    assert not degseq_leq(e, d)


# -- local cone ---------------------------------------------------------------


def local_member_oracle(b0, b1, b2, finite_length=False) -> bool:
    # the halfspace description, written out from scratch
    if b0 < 0 or b1 < 0 or b2 < 0:
        return False
    if 3 * b0 + b2 - 3 * b1 < 0:
        return False
    if 2 * b1 - b2 < 0:
        return False
    if finite_length and 3 * b0 + b2 - 3 * b1 != 0:
        return False
    return True


def test_local_rays_are_fixed():
    assert LocalDecomposition.RAYS == ((1, 0, 0), (1, 1, 0), (1, 3, 6))


def test_local_decomposition_known_values():
    deco = decompose_local(BettiSequence.of(2, 3, 3))
    assert (deco.a, deco.b, deco.c) == (0, Fraction(3, 2), Fraction(1, 2))
    deco = decompose_local(BettiSequence.of(1, 2, 3))
    assert (deco.a, deco.b, deco.c) == (0, Fraction(1, 2), Fraction(1, 2))


def test_local_check_scan_order():
    assert check_local(BettiSequence.of(-1, 0, 0)).violation.label == "b0"
    assert check_local(BettiSequence.of(0, 1, 0)).violation.label == "3b0+b2-3b1"
    assert check_local(BettiSequence.of(0, 0, 1)).violation.label == "2b1-b2"
    assert check_local(BettiSequence.of(1, 1, 3)).violation.label == "2b1-b2"
    assert check_local(BettiSequence.of(1, 1, 1), finite_length=True).violation.label == (
        "3b0+b2-3b1 == 0"
    )


@given(
    st.fractions(min_value=0, max_value=5, max_denominator=4),
    st.fractions(min_value=0, max_value=5, max_denominator=4),
    st.fractions(min_value=0, max_value=5, max_denominator=4),
)
@settings(max_examples=120, deadline=None)
def test_local_recombination_identity(a, b, c):
    s = BettiSequence.of(a + b + c, b + 3 * c, 6 * c)
    deco = decompose_local(s)
    assert (deco.a, deco.b, deco.c) == (a, b, c)
    assert check_local(s).member


@given(
    st.fractions(min_value=-3, max_value=6, max_denominator=3),
    st.fractions(min_value=-3, max_value=6, max_denominator=3),
    st.fractions(min_value=-3, max_value=6, max_denominator=3),
    st.booleans(),
)
@settings(max_examples=150, deadline=None)
def test_local_check_matches_oracle(b0, b1, b2, finite_length):
    s = BettiSequence.of(b0, b1, b2)
    verdict = check_local(s, finite_length=finite_length)
    assert verdict.member == local_member_oracle(b0, b1, b2, finite_length)
    if verdict.member:
        deco = verdict.decomposition
        assert deco.a + deco.b + deco.c == b0
        assert deco.b + 3 * deco.c == b1
        assert 6 * deco.c == b2
        if finite_length:
            assert deco.a == 0
    else:
        with pytest.raises(NotInConeError):
            decompose_local(s, finite_length=finite_length)
