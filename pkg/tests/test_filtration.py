"""Filtrations, characteristic sequences, irreducibility, word search."""

import random

import pytest

from nalength import (
    BasisBuilder,
    GenSet,
    InvariantViolation,
    NotGeneratingError,
    PrimeField,
    QQ,
    ResourceBudgetError,
    analyze_charseq,
    build,
    char_seq,
    compute_filtration,
    equivalent,
    find_irreducible_words,
    find_step_words,
    is_irreducible,
    length_of_set,
    make_algebra,
    multiply,
    parse_word,
)
from nalength.filtration import CharSeq, charseq_from_dims
from conftest import trunc_poly


def gens_x1(a):
    return GenSet.from_basis_indices(a, [1])


# ---------------------------------------------------------------------------
# filtration dims and termination
# ---------------------------------------------------------------------------


def test_v5_dims(v5):
    f = compute_filtration(v5, gens_x1(v5))
    assert f.dims == (0, 1, 2, 3, 4, 4, 4, 5)
    assert f.generates and f.closure_level == 7 and not f.truncated


def test_x5_plateau_then_growth(x5):
    f = compute_filtration(x5, gens_x1(x5))
    assert f.dims[2] == f.dims[3] == 2  # dim L_2 = dim L_3
    assert f.dims[4] == 3  # growth resumes at level 4
    assert f.closure_level == 8


def test_unital_filtration_starts_at_unit():
    t2 = trunc_poly(2, QQ)
    f = compute_filtration(t2, GenSet.from_basis_indices(t2, [2]))
    assert f.dims == (1, 2)
    assert char_seq(f).terms == (0, 1)


def test_one_dimensional_unital():
    t1 = trunc_poly(1, QQ)
    f = compute_filtration(t1, GenSet.build(t1, [(1,)]))
    assert f.generates and f.closure_level == 0
    assert char_seq(f).terms == (0,)
    assert length_of_set(t1, GenSet.build(t1, [(1,)])) == 0


def test_closure_certificate_on_proper_subalgebra(v5):
    # span{e2, e4} is a closed subalgebra of V5: e2*e2 = e4, the rest vanish
    S = GenSet.from_basis_indices(v5, [2])
    f = compute_filtration(v5, S)
    assert not f.generates and not f.truncated
    assert f.dims[-1] == 2
    last = f.levels[-1]
    checker = BasisBuilder(v5.field, v5.dim, last)
    for u in last.rows:
        for v in last.rows:
            assert checker.contains(multiply(v5, u, v))
    with pytest.raises(NotGeneratingError) as err:
        char_seq(f)
    assert err.value.generated_dim == 2


def test_truncation_is_explicit(v5):
    f = compute_filtration(v5, gens_x1(v5), max_level=3)
    assert f.truncated and f.closure_level is None
    with pytest.raises(ResourceBudgetError):
        length_of_set(v5, gens_x1(v5), max_level=3)


# ---------------------------------------------------------------------------
# characteristic sequences
# ---------------------------------------------------------------------------


def test_char_seqs(v5, x5, heisenberg):
    assert char_seq(compute_filtration(v5, gens_x1(v5))).terms == (1, 2, 3, 4, 7)
    assert char_seq(compute_filtration(x5, gens_x1(x5))).terms == (1, 2, 4, 6, 8)
    S = GenSet.from_basis_indices(heisenberg, [1, 2])
    assert char_seq(compute_filtration(heisenberg, S)).terms == (1, 1, 2)


def test_heisenberg_by_direct_spans(heisenberg):
    # independent oracle: L_1 = span{e1, e2}, L_2 adds e1*e2 = e3
    a = heisenberg
    S = GenSet.from_basis_indices(a, [1, 2])
    b = BasisBuilder(a.field, 3)
    for v in S.vectors:
        b.insert(v)
    assert b.dim == 2
    b.insert(multiply(a, S.vectors[0], S.vectors[1]))
    assert b.dim == 3
    assert length_of_set(a, S) == 2


def test_family_lengths(e5, x5):
    assert length_of_set(e5, gens_x1(e5)) == 8
    assert length_of_set(x5, gens_x1(x5)) == 8
    e6 = build("ed", QQ, d=6, k=4)
    assert length_of_set(e6, gens_x1(e6)) == 12
    # last characteristic-sequence term always equals the length
    for a in (e5, x5, e6):
        f = compute_filtration(a, gens_x1(a))
        seq = char_seq(f)
        assert len(seq.terms) == a.dim
        assert seq.terms[-1] == f.closure_level


def test_full_basis_has_length_one(v5):
    S = GenSet.from_basis_indices(v5, [1, 2, 3, 4, 5])
    assert length_of_set(v5, S) == 1


def test_charseq_validation_rejects_bad_dims():
    with pytest.raises(InvariantViolation):
        charseq_from_dims([0, 1, 2], 5, unital=False)  # wrong term count
    with pytest.raises(InvariantViolation):
        charseq_from_dims([1, 2], 2, unital=False)  # non-unital must start at 0
    with pytest.raises(InvariantViolation):
        CharSeq((2, 1))


def test_length_depends_only_on_span():
    rng = random.Random(42)
    f5 = PrimeField(5)
    for _ in range(10):
        d = rng.randint(2, 4)
        prods = {}
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                if rng.random() < 0.4:
                    prods[(i, j)] = tuple(rng.randrange(5) for _ in range(d))
        a = make_algebra("rnd", f5, d, prods)
        vecs = [tuple(rng.randrange(5) for _ in range(d)) for _ in range(2)]
        S1 = GenSet.build(a, vecs)
        # same span, different presentation
        mixed = [
            tuple((x + 2 * y) % 5 for x, y in zip(vecs[0], vecs[1])),
            tuple(3 * y % 5 for y in vecs[1]),
            vecs[0],
        ]
        S2 = GenSet.build(a, mixed)
        if S1.span != S2.span:
            continue
        f1 = compute_filtration(a, S1)
        f2 = compute_filtration(a, S2)
        assert f1.dims == f2.dims and f1.generates == f2.generates


def test_monotonicity_under_enlargement(v5):
    small = gens_x1(v5)
    for extra in ([2], [3], [2, 4]):
        big = GenSet.from_basis_indices(v5, [1] + extra)
        assert length_of_set(v5, big) <= length_of_set(v5, small)


# ---------------------------------------------------------------------------
# irreducibility
# ---------------------------------------------------------------------------


def test_is_irreducible_x5(x5):
    S = gens_x1(x5)
    assert is_irreducible(x5, S, parse_word("((g1 g1) (g1 g1))"))
    assert not is_irreducible(x5, S, parse_word("(g1 (g1 g1))"))  # evaluates to 0
    assert not is_irreducible(x5, S, parse_word("(((g1 g1) g1) g1)"))


def test_find_irreducible_words_v5(v5):
    S = gens_x1(v5)
    assert find_irreducible_words(v5, S, 7)
    assert find_irreducible_words(v5, S, 5) == []
    # both directions of the existence statement, across all lengths
    seq = set(char_seq(compute_filtration(v5, S)).terms)
    for length in range(1, 8):
        found = bool(find_irreducible_words(v5, S, length))
        assert found == (length in seq)


def test_find_irreducible_words_filters(x5):
    S = gens_x1(x5)
    words4 = find_irreducible_words(x5, S, 4, k_bounded=3)
    assert parse_word("((g1 g1) (g1 g1))") in [w for w, _ in words4]
    ones = find_irreducible_words(x5, S, 1)
    assert [w for w, _ in ones] == [parse_word("g1")]


def test_enumeration_guard(v5):
    with pytest.raises(ResourceBudgetError):
        find_irreducible_words(v5, GenSet.from_basis_indices(v5, [1, 2]), 14, budget=1000)


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------


def test_equivalent_heisenberg(heisenberg):
    S = GenSet.from_basis_indices(heisenberg, [1, 2])
    assert equivalent(heisenberg, S, parse_word("(g1 g2)"), parse_word("(g2 g1)"))


def test_equivalent_scaled_and_zero(x5):
    S = gens_x1(x5)
    w = parse_word("((g1 g1) (g1 g1))")
    e1 = x5.basis_vector(1)
    doubled = {1: tuple(2 * x for x in e1)}
    assert equivalent(x5, S, w, w, assignment=None)
    # scaled assignment on one side via a custom assignment for both words
    assert equivalent(x5, S, w, w, assignment=doubled)
    # a reducible word is equivalent to a zero-evaluating word
    zero_word = parse_word("(g1 (g1 g1))")
    comb = parse_word("(((g1 g1) g1) g1)")
    assert equivalent(x5, S, comb, zero_word)


def test_inequivalent_words(v5):
    S = GenSet.from_basis_indices(v5, [1, 2])
    # e1 and e2 are independent modulo L_0 = 0
    assert not equivalent(v5, S, parse_word("g1"), parse_word("g2"))


# ---------------------------------------------------------------------------
# step words
# ---------------------------------------------------------------------------


def test_step_words_x5(x5):
    S = gens_x1(x5)
    assert find_step_words(x5, S, 4).p == 1
    assert find_step_words(x5, S, 6).p == 2
    r8 = find_step_words(x5, S, 8)
    assert r8.p == 3
    assert parse_word("((g1 g1) ((g1 g1) ((g1 g1) (g1 g1))))") in r8.witnesses
    # gap-2 jumps in the characteristic sequence come with p >= 1
    seq = char_seq(compute_filtration(x5, S)).terms
    for prev, cur in zip(seq, seq[1:]):
        if cur - prev == 2:
            assert find_step_words(x5, S, cur).p >= 1


def test_step_words_length_two(heisenberg):
    S = GenSet.from_basis_indices(heisenberg, [1, 2])
    assert find_step_words(heisenberg, S, 2).p == 0


def test_step_words_no_candidates(v5):
    S = gens_x1(v5)
    with pytest.raises(Exception):
        find_step_words(v5, S, 5)  # no irreducible word of length 5 at all


# ---------------------------------------------------------------------------
# gap analysis
# ---------------------------------------------------------------------------


def test_analyze_charseq_examples():
    r = analyze_charseq(CharSeq((1, 2, 4, 6, 8)))
    assert r.decomposable and r.max_gap == 2
    r = analyze_charseq(CharSeq((1, 2, 3, 4, 7)))
    assert r.decomposable and r.max_gap == 3
    r = analyze_charseq(CharSeq((1, 1, 2)))
    assert r.decomposable and r.max_gap == 1
    r = analyze_charseq(CharSeq((1, 2, 3, 4, 7)), k=3)
    assert r.gap_violations == (4,)
    r = analyze_charseq(CharSeq((1, 2, 4, 6, 8)), k=3)
    assert r.gap_violations == ()


def test_analyze_charseq_flags_underivable_terms():
    # 5 is not a sum of two earlier terms drawn from {1, 3}
    r = analyze_charseq(CharSeq((1, 3, 5)))
    assert not r.decomposable


def test_kround_kbased_gap_bound(e5, x5):
    # verified shift families keep gaps within k-1 = 2
    for a in (e5, x5):
        seq = char_seq(compute_filtration(a, gens_x1(a)))
        assert analyze_charseq(seq, k=3).gap_violations == ()
