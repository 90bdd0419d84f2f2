"""Exact arithmetic and linear algebra, checked against brute force."""

import random
from fractions import Fraction
from itertools import product

import pytest

from nalength import (
    QQ,
    BasisBuilder,
    Matrix,
    PrimeField,
    SubspaceBasis,
    ValidationError,
    extend_basis,
    membership,
    rref,
    solve_affine,
)
from nalength.errors import DimensionMismatch


def brute_row_space(p, rows):
    """All linear combinations of the rows over GF(p)."""
    f = PrimeField(p)
    d = len(rows[0]) if rows else 0
    out = set()
    for coeffs in product(range(p), repeat=len(rows)):
        v = [0] * d
        for c, row in zip(coeffs, rows):
            for i, x in enumerate(row):
                v[i] = (v[i] + c * x) % p
        out.add(tuple(v))
    return out


def brute_rank(p, rows):
    """Size of the largest independent subset, by exhaustive combination."""
    best = 0
    n = len(rows)
    for mask in range(1, 2**n):
        subset = [rows[i] for i in range(n) if mask >> i & 1]
        # independent iff no nontrivial combination vanishes
        independent = True
        d = len(rows[0])
        for coeffs in product(range(p), repeat=len(subset)):
            if not any(coeffs):
                continue
            v = [0] * d
            for c, row in zip(coeffs, subset):
                for i, x in enumerate(row):
                    v[i] = (v[i] + c * x) % p
            if not any(v):
                independent = False
                break
        if independent:
            best = max(best, len(subset))
    return best


def test_rref_identity():
    m = Matrix.from_rows(QQ, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    r, rank = rref(m)
    assert r == m
    assert rank == 3


def test_rref_zero():
    m = Matrix.from_rows(QQ, [[0] * 4, [0] * 4])
    r, rank = rref(m)
    assert r == m
    assert rank == 0


def test_rref_gf5_example():
    f = PrimeField(5)
    m = Matrix.from_rows(f, [[2, 4], [1, 2]])
    r, rank = rref(m)
    assert r.row(0) == (1, 2)
    assert r.row(1) == (0, 0)
    assert rank == 1
    # brute-force row space comparison
    assert brute_row_space(5, [[2, 4], [1, 2]]) == brute_row_space(5, [list(r.row(0))])


def test_rref_rank_matches_brute_force():
    rng = random.Random(7)
    for _ in range(30):
        p = rng.choice([2, 3, 5, 7])
        nrows = rng.randint(1, 4)
        ncols = rng.randint(1, 5)
        rows = [[rng.randrange(p) for _ in range(ncols)] for _ in range(nrows)]
        _, rank = rref(Matrix.from_rows(PrimeField(p), rows))
        assert rank == brute_rank(p, rows)


def test_rref_is_canonical_under_row_shuffles():
    rng = random.Random(11)
    for _ in range(20):
        p = rng.choice([2, 3, 5])
        rows = [[rng.randrange(p) for _ in range(4)] for _ in range(3)]
        f = PrimeField(p)
        r1, _ = rref(Matrix.from_rows(f, rows))
        shuffled = rows[:]
        rng.shuffle(shuffled)
        # scale a row by a nonzero constant as well
        c = rng.randrange(1, p)
        shuffled[0] = [c * x % p for x in shuffled[0]]
        r2, _ = rref(Matrix.from_rows(f, shuffled))
        assert r1 == r2


def test_extend_basis_examples():
    b = SubspaceBasis.from_vectors(QQ, 3, [(1, 0, 0)])
    same, grew = extend_basis(b, (1, 0, 0))
    assert not grew and same == b
    bigger, grew = extend_basis(b, (0, 1, 0))
    assert grew and bigger.rows == ((1, 0, 0), (0, 1, 0))
    empty = SubspaceBasis.empty(QQ, 3)
    still_empty, grew = extend_basis(empty, (0, 0, 0))
    assert not grew and still_empty.dim == 0


def test_extend_basis_idempotent_in_span():
    rng = random.Random(3)
    for _ in range(20):
        f = PrimeField(5)
        b = SubspaceBasis.from_vectors(f, 4, [[rng.randrange(5) for _ in range(4)] for _ in range(2)])
        v = tuple(rng.randrange(5) for _ in range(4))
        b1, _ = extend_basis(b, v)
        b2, grew2 = extend_basis(b1, v)
        assert not grew2 and b1 == b2


def test_membership_examples():
    b = SubspaceBasis.from_vectors(QQ, 3, [(1, 2, 0), (0, 0, 1)])
    assert membership(b, b.rows[0]) == (1, 0)
    assert membership(b, (1, 1, 1)) is None
    summed = tuple(x + y for x, y in zip(b.rows[0], b.rows[1]))
    assert membership(b, summed) == (1, 1)


def test_membership_reconstructs():
    rng = random.Random(5)
    for _ in range(25):
        p = rng.choice([3, 5])
        f = PrimeField(p)
        d = 5
        vecs = [[rng.randrange(p) for _ in range(d)] for _ in range(3)]
        b = SubspaceBasis.from_vectors(f, d, vecs)
        coeffs = [rng.randrange(p) for _ in range(b.dim)]
        v = [0] * d
        for c, row in zip(coeffs, b.rows):
            for i, x in enumerate(row):
                v[i] = (v[i] + c * x) % p
        got = membership(b, tuple(v))
        assert got is not None
        rebuilt = [0] * d
        for c, row in zip(got, b.rows):
            for i, x in enumerate(row):
                rebuilt[i] = (rebuilt[i] + c * x) % p
        assert tuple(rebuilt) == tuple(v)


def test_membership_dimension_mismatch():
    b = SubspaceBasis.from_vectors(QQ, 3, [(1, 0, 0)])
    with pytest.raises(DimensionMismatch):
        membership(b, (1, 0))


def test_solve_affine_identity():
    m = Matrix.from_rows(QQ, [[1, 0], [0, 1]])
    particular, null = solve_affine(m, (3, 4))
    assert particular == (3, 4)
    assert null.dim == 0


def test_solve_affine_inconsistent():
    m = Matrix.from_rows(QQ, [[0, 0], [0, 0]])
    assert solve_affine(m, (1, 0)) is None


def test_solve_affine_underdetermined():
    m = Matrix.from_rows(QQ, [[1, 1]])
    particular, null = solve_affine(m, (2,))
    assert particular == (2, 0)
    assert null.rows == ((1, -1),)
    # verify by substitution
    assert particular[0] + particular[1] == 2
    assert null.rows[0][0] + null.rows[0][1] == 0
    # and against brute enumeration of the same system over GF(3)
    f3 = PrimeField(3)
    sols = {
        (x0, x1)
        for x0 in range(3)
        for x1 in range(3)
        if (x0 + x1) % 3 == 2
    }
    p3, n3 = solve_affine(Matrix.from_rows(f3, [[1, 1]]), (2,))
    from_affine = set()
    for t in range(3):
        from_affine.add(tuple((p3[i] + t * n3.rows[0][i]) % 3 for i in range(2)))
    assert from_affine == sols


def test_scalar_axioms_random_triples():
    rng = random.Random(0)
    for field in (QQ, PrimeField(2), PrimeField(7)):
        for _ in range(1000):
            if field.p is None:
                a, b, c = (Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3))
            else:
                a, b, c = (rng.randrange(field.p) for _ in range(3))
            assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))
            assert field.is_zero(field.add(a, field.neg(a)))
            if not field.is_zero(a):
                assert field.mul(a, field.inv(a)) == field.one


def test_scalar_text_forms():
    assert QQ.format(Fraction(2, 1)) == "2"
    assert QQ.format(Fraction(-1, 2)) == "-1/2"
    assert QQ.parse("6/4") == Fraction(3, 2)
    assert QQ.parse("-3") == -3
    f = PrimeField(7)
    assert f.format(13) == "6"
    assert f.parse("-1") == 6
    with pytest.raises(Exception):
        QQ.parse("not-a-number")


def test_field_equality_and_primality():
    assert PrimeField(5) == PrimeField(5)
    assert PrimeField(5) != PrimeField(7)
    assert QQ != PrimeField(5)
    assert QQ == type(QQ)()
    with pytest.raises(ValidationError):
        PrimeField(6)
    with pytest.raises(ValidationError):
        PrimeField(1)


def test_basis_builder_rows_stay_canonical():
    f = PrimeField(7)
    b = BasisBuilder(f, 4)
    rng = random.Random(9)
    for _ in range(6):
        b.insert(tuple(rng.randrange(7) for _ in range(4)))
    snap = b.snapshot()
    # re-canonicalising through rref changes nothing
    m, rank = rref(Matrix.from_rows(f, snap.rows))
    assert rank == snap.dim
    assert tuple(m.row(i) for i in range(rank)) == snap.rows
