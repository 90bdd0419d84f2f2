"""Identity checking, membership checks, decompositions, rewrites."""

import json
import random

import pytest

from nalength import (
    GenSet,
    PrimeField,
    PreconditionError,
    QQ,
    build,
    check_anticommutative,
    check_identity,
    check_jacobi,
    check_k_membership,
    check_malcev,
    decompose,
    evaluate,
    multiply,
    parse_word,
    verify_rewrites,
)
from nalength import classify as cls
from nalength.errors import ResourceBudgetError, ValidationError


def roundtrip(obj):
    return json.loads(json.dumps(obj))


# ---------------------------------------------------------------------------
# formal identities and basis checking
# ---------------------------------------------------------------------------


def test_multilinearity_detection():
    assert cls.ANTICOMMUTATIVE.multilinear
    assert cls.JACOBI.multilinear
    assert cls.MALCEV_LINEARIZED.multilinear
    assert cls.MALCEV_PAIR_SWAP.multilinear
    assert cls.MALCEV_BLOCK_SWAP.multilinear
    assert not cls.MALCEV_AXIOM2.multilinear  # x occurs twice


def test_basis_mode_rejects_non_multilinear(m7):
    with pytest.raises(PreconditionError):
        check_identity(m7, cls.MALCEV_AXIOM2, mode="basis")
    rep = check_identity(m7, cls.MALCEV_AXIOM2, mode="sampled", samples=50, seed=0)
    assert rep.verdict == "holds-on-samples"


def test_anticommutative(m7, v5, sl2):
    assert check_anticommutative(m7).verdict == "holds"
    assert check_anticommutative(sl2).verdict == "holds"
    rep = check_anticommutative(v5)
    assert rep.verdict == "fails"
    # counterexample re-verifies through an independent evaluation
    assert cls.replay_identity_counterexample(v5, rep)
    i, j = rep.counterexample["basis_indices"][:2]
    s = tuple(
        x + y
        for x, y in zip(
            multiply(v5, v5.basis_vector(i), v5.basis_vector(j)),
            multiply(v5, v5.basis_vector(j), v5.basis_vector(i)),
        )
    )
    assert any(s)


def test_malcev_checks(m7, sl2, v5, heisenberg):
    assert check_malcev(sl2).verdict == "holds"
    assert check_malcev(heisenberg).verdict == "holds"
    assert check_malcev(m7).verdict == "holds"
    assert check_jacobi(m7).verdict == "fails"
    assert check_jacobi(sl2).verdict == "holds"
    assert check_malcev(v5).verdict == "fails"
    with pytest.raises(PreconditionError):
        check_malcev(build("m7", PrimeField(2)))


def test_m7_jacobi_over_gf3_vanishes():
    # the Jacobi residual on basis triples is 12 e_k, which is 0 mod 3
    assert check_jacobi(build("m7", PrimeField(3))).verdict == "holds"
    assert check_jacobi(build("m7", PrimeField(5))).verdict == "fails"


def test_vinberg_reports_computed_verdict(v5):
    rep = check_identity(v5, cls.VINBERG)
    assert rep.verdict == "fails"
    assert rep.counterexample["basis_indices"] == [2, 2, 3]
    assert cls.replay_identity_counterexample(v5, rep)
    # hand check: (e2 e2) e3 - e2 (e2 e3) = e4 e3 = e5, other side 0
    e = v5.basis_vector
    lhs = multiply(v5, multiply(v5, e(2), e(2)), e(3))
    assert lhs == e(5)


def test_k_round_and_k_based(e5, x5):
    assert check_identity(e5, cls.k_round_identities(3), name="k-round", k=3).verdict == "holds"
    x5_k2 = build("xd", QQ, d=5, k=2)
    assert check_identity(x5_k2, cls.k_based_identities(2), name="k-based", k=2).verdict == "holds"
    rep = check_identity(x5, cls.k_based_identities(3), name="k-based", k=3)
    assert rep.verdict == "fails"
    assert rep.counterexample["member"] == "k-based-right[(y1 (y2 y3))]"
    assert rep.counterexample["basis_indices"] == [1, 1, 1, 1]
    assert cls.replay_identity_counterexample(x5, rep)
    # hand check of the counterexample: (y1 (y2 y3)) x = 0, (y1 x)(y2 y3) = e3
    e1 = x5.basis_vector(1)
    v = multiply(x5, e1, e1)  # e2
    assert multiply(x5, multiply(x5, e1, v), e1) == (0,) * 5
    assert multiply(x5, v, v) == x5.basis_vector(3)


def test_basis_proof_transfers_to_random_tuples(m7, e5):
    # multilinear identities that hold on basis tuples hold on 200
    # random tuples too (consistency of the evaluator)
    rng = random.Random(0)
    for a, ident in ((m7, cls.MALCEV_LINEARIZED), (m7, cls.ANTICOMMUTATIVE)):
        assert check_identity(a, ident).verdict == "holds"
        for _ in range(200):
            vecs = [tuple(rng.randint(-3, 3) for _ in range(a.dim)) for _ in range(ident.arity)]
            assert not any(ident.residual(a, dict(zip(ident.variables, vecs))))
    for ident in cls.k_round_identities(3):
        assert check_identity(e5, ident).verdict == "holds"
        for _ in range(50):
            vecs = [tuple(rng.randint(-3, 3) for _ in range(5)) for _ in range(4)]
            assert not any(ident.residual(e5, dict(zip(ident.variables, vecs))))


# ---------------------------------------------------------------------------
# membership checks
# ---------------------------------------------------------------------------


def test_v5_membership_failures(v5):
    for side in ("mixing", "sliding_l", "sliding_r"):
        rep = check_k_membership(v5, 2, side, mode="sampled", samples=2000, seed=0)
        assert rep.verdict == "fails", side
        ce = roundtrip(rep.counterexample)
        assert cls.replay_membership_counterexample(v5, ce)
    # over GF(5) as well
    v5g = build("vd", PrimeField(5), d=5)
    rep = check_k_membership(v5g, 2, "mixing", mode="sampled", samples=2000, seed=0)
    assert rep.verdict == "fails"
    assert cls.replay_membership_counterexample(v5g, rep.counterexample)


def test_v4_exhaustive_membership_over_gf2():
    v4 = build("vd", PrimeField(2), d=4)
    rep = check_k_membership(v4, 2, "mixing", mode="exhaustive")
    assert rep.verdict == "fails"
    assert cls.replay_membership_counterexample(v4, rep.counterexample)
    # deterministic first violation in tuple order, independent of jobs
    rep4 = check_k_membership(v4, 2, "mixing", mode="exhaustive", jobs=4)
    assert rep4.to_json() == rep.to_json()


def test_e5_sliding_r_and_x5_mixing(e5, x5):
    # kill-right family makes every x*v zero, so the right-sided check holds
    rep = check_k_membership(e5, 3, "sliding_r", mode="sampled", samples=200, seed=0)
    assert rep.verdict == "holds-on-samples"
    rep = check_k_membership(x5, 3, "mixing", mode="sampled", samples=200, seed=0)
    assert rep.verdict == "holds-on-samples"


def test_propositions_round_implies_sliding_based_implies_mixing():
    for k, d in ((2, 4), (3, 5), (3, 6), (4, 6)):
        e = build("ed", QQ, d=d, k=k)
        if check_identity(e, cls.k_round_identities(k), name="k-round", k=k).verdict == "holds":
            rep = check_k_membership(e, k, "sliding_r", mode="sampled", samples=100, seed=0)
            assert rep.verdict == "holds-on-samples", (k, d)
        x = build("xd", QQ, d=d, k=k)
        if check_identity(x, cls.k_based_identities(k), name="k-based", k=k).verdict == "holds":
            rep = check_k_membership(x, k, "mixing", mode="sampled", samples=100, seed=0)
            assert rep.verdict == "holds-on-samples", (k, d)


def test_m7_three_mixing_sampled(m7):
    rep = check_k_membership(m7, 3, "mixing", mode="sampled", samples=100, seed=0)
    assert rep.verdict == "holds-on-samples"
    assert rep.convention == {"unital_one_in_span": False}


def test_membership_guards(v5):
    with pytest.raises(ValidationError):
        check_k_membership(v5, 5, "mixing")
    with pytest.raises(ValidationError):
        check_k_membership(v5, 2, "bogus")
    with pytest.raises(PreconditionError):
        check_k_membership(v5, 2, "mixing", mode="exhaustive")  # rationals
    v5g = build("vd", PrimeField(5), d=5)
    with pytest.raises(ResourceBudgetError):
        check_k_membership(v5g, 2, "mixing", mode="exhaustive")  # 5^45 tuples


def test_unital_convention_is_reported():
    from conftest import trunc_poly

    t3 = trunc_poly(3, QQ)
    rep = check_k_membership(t3, 2, "mixing", mode="sampled", samples=50, seed=0)
    assert rep.convention == {"unital_one_in_span": True}
    rep = check_k_membership(t3, 2, "mixing", mode="sampled", samples=50, seed=0,
                             unital_convention=False)
    assert rep.convention == {"unital_one_in_span": False}


# ---------------------------------------------------------------------------
# decomposition support
# ---------------------------------------------------------------------------


def test_decompose_zero_target(v5):
    zero = (0,) * 5
    target = parse_word("(x (y1 y2))")
    # all-zero vectors: the particular solution is zero and every
    # coefficient is free, so the support is all full-length monomials
    sup = decompose(v5, target, [zero, zero, zero], set_kind="D0", k=2)
    assert sup.in_span
    assert sup.representation == {}
    assert len(sup.support) == 8  # the degree-3 head-not-bare monomials
    # a nonzero tuple with a zero-evaluating target: e4*(e4 e4) = 0
    e4 = v5.basis_vector(4)
    sup = decompose(v5, target, [e4, e4, e4], set_kind="D0", k=2)
    assert sup.in_span and sup.representation == {}


def test_decompose_malcev_rearrangement(m7):
    # x((w y) z) equals (x y)(z w) - w((y z) x) - y((z x) w) - z((x w) y),
    # a combination of head-not-bare monomials; its support must contain
    # the four full-length words of that combination
    rng = random.Random(4)
    labels = ("x", "y", "z", "w")
    vectors = [tuple(rng.randint(-2, 2) for _ in range(7)) for _ in range(4)]
    target = parse_word("(x ((w y) z))")
    sup = decompose(m7, target, vectors, set_kind="D0", k=3, labels=labels)
    assert sup.in_span
    for text in ("((x y) (z w))", "(w ((y z) x))", "(y ((z x) w))", "(z ((x w) y))"):
        assert text in sup.support
    # substitution oracle: the claimed combination reproduces the target
    assignment = dict(zip(labels, [m7.field.vec(v) for v in vectors]))
    lhs = evaluate(m7, assignment, target)
    rhs = [0] * 7
    for coeff, text in (
        (1, "((x y) (z w))"),
        (-1, "(w ((y z) x))"),
        (-1, "(y ((z x) w))"),
        (-1, "(z ((x w) y))"),
    ):
        val = evaluate(m7, assignment, parse_word(text))
        rhs = [r + coeff * v for r, v in zip(rhs, val)]
    assert tuple(rhs) == lhs


def test_decompose_out_of_span(v5):
    rep = check_k_membership(v5, 2, "mixing", mode="sampled", samples=2000, seed=0)
    ce = rep.counterexample
    assignment = {k: v5.field.parse_vec(v) for k, v in ce["assignment"].items()}
    vectors = [assignment["x"], assignment["y1"], assignment["y2"]]
    sup = decompose(v5, parse_word(ce["target"]), vectors, set_kind="D0", k=2)
    assert not sup.in_span
    assert sup.support == () and sup.representation is None


def test_decompose_particular_solves(v5):
    rng = random.Random(9)
    vectors = [tuple(rng.randint(-2, 2) for _ in range(5)) for _ in range(3)]
    target = parse_word("((y1 x) y2)")  # a D0 member: trivially in span
    sup = decompose(v5, target, vectors, set_kind="D0", k=2)
    assert sup.in_span
    assignment = {"x": vectors[0], "y1": vectors[1], "y2": vectors[2]}
    assignment = {k: v5.field.vec(v) for k, v in assignment.items()}
    total = [0] * 5
    for text, coeff in (sup.representation or {}).items():
        val = evaluate(v5, assignment, parse_word(text))
        c = v5.field.parse(coeff)
        total = [t + c * v for t, v in zip(total, val)]
    assert tuple(v5.field.normalize(t) for t in total) == evaluate(v5, assignment, target)


# ---------------------------------------------------------------------------
# rewrites
# ---------------------------------------------------------------------------


def test_verify_rewrites(m7):
    rep = verify_rewrites(m7, samples=100, seed=0)
    assert rep.verdict == "holds-on-samples"
    sl2_7 = build("sl2", PrimeField(7))
    assert verify_rewrites(sl2_7, samples=100, seed=0).verdict == "holds-on-samples"


def test_verify_rewrites_needs_malcev(v5):
    with pytest.raises(PreconditionError):
        verify_rewrites(v5)


def test_rewrites_are_basis_proved_on_malcev_instances(m7, sl2):
    # both rewrite identities are multilinear, so basis mode is a proof
    for a in (m7, sl2):
        assert check_identity(a, cls.MALCEV_PAIR_SWAP).verdict == "holds"
        assert check_identity(a, cls.MALCEV_BLOCK_SWAP).verdict == "holds"


# ---------------------------------------------------------------------------
# battery
# ---------------------------------------------------------------------------


def test_classify_battery_shape(heisenberg):
    reports = cls.classify_battery(heisenberg, samples=30, seed=0, ks=(2,))
    names = [r.identity for r in reports]
    assert names[:3] == ["anticommutative", "jacobi", "vinberg"]
    assert "malcev" in names
    assert {"mixing", "sliding_l", "sliding_r"} <= set(names)
    for r in reports:
        out = r.to_json()
        assert {"identity", "verdict", "mode", "counterexample", "convention"} <= set(out)
