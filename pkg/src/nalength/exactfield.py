"""Exact coefficient arithmetic and dense exact linear algebra.

Two coefficient fields are supported: the rationals (arbitrary
precision, via stdlib ``int``/``Fraction``) and prime fields GF(p).
Scalars are plain Python values: over the rationals an ``int`` or a
``Fraction`` in lowest terms, over GF(p) an ``int`` residue in
``[0, p)``. Rational values with denominator 1 normalise to ``int`` at
canonicalisation points (basis rows, text form) so that equal values
always have the same representation.

Subspaces are always kept in reduced row echelon form. RREF is unique,
so two ``SubspaceBasis`` values describe the same subspace exactly when
they compare equal; this makes span comparisons, closure checks and
report output canonical and hashable.

Everything here is immutable after construction except the explicit
``BasisBuilder`` accumulator, and all operations are pure, so values
can be shared freely across worker processes.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, ParseError, ValidationError

Scalar = object  # int | Fraction; residue int over GF(p)
Vector = tuple

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; the base set covers all n < 3.3e24.
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """A coefficient field: the rationals or GF(p).

    Also serves as the field *spec*: two instances are equal exactly
    when kind and modulus match.
    """

    kind: str = "?"
    p: Optional[int] = None
    characteristic: int = 0

    zero: Scalar = 0
    one: Scalar = 1

    def __eq__(self, other):
        return isinstance(other, Field) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    def to_json(self):
        return "Q" if self.p is None else {"prime": self.p}

    # scalar operations -------------------------------------------------

    def is_zero(self, a) -> bool:
        return not a

    def neg(self, a):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n: int):
        raise NotImplementedError

    def normalize(self, a):
        """Canonical form of a scalar (idempotent)."""
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def random_scalar(self, rng):
        """Seeded sample; small integers over Q, uniform residue over GF(p)."""
        raise NotImplementedError

    # vector helpers (row granularity keeps Python overhead tolerable) --

    def vec(self, entries: Iterable) -> Vector:
        return tuple(self.normalize(x) for x in entries)

    def zero_vec(self, d: int) -> Vector:
        return (0,) * d

    def vec_is_zero(self, v) -> bool:
        return not any(v)

    def vec_neg(self, v):
        raise NotImplementedError

    def vec_scale(self, c, v):
        raise NotImplementedError

    def vec_submul(self, u, c, v):
        """u - c*v, elementwise."""
        raise NotImplementedError

    def vec_add(self, u, v):
        raise NotImplementedError

    def parse_vec(self, texts: Sequence[str]) -> Vector:
        return tuple(self.parse(t) for t in texts)

    def format_vec(self, v) -> list:
        return [self.format(x) for x in v]


class Rationals(Field):
    kind = "Q"
    characteristic = 0

    def neg(self, a):
        return -a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ValidationError("division by zero", module="exactfield")
        if isinstance(a, int):
            return Fraction(1, a)
        return 1 / a

    def from_int(self, n: int):
        return n

    def normalize(self, a):
        if isinstance(a, Fraction):
            if a.denominator == 1:
                return int(a)
            return a
        if isinstance(a, int):
            return a
        raise ValidationError(f"not a rational scalar: {a!r}", module="exactfield")

    def parse(self, text: str):
        try:
            return self.normalize(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational scalar {text!r}: {exc}", module="exactfield")

    def format(self, a) -> str:
        a = self.normalize(a)
        if isinstance(a, int):
            return str(a)
        return f"{a.numerator}/{a.denominator}"

    def random_scalar(self, rng):
        return rng.randint(-4, 4)

    def vec_neg(self, v):
        return [-x for x in v]

    def vec_scale(self, c, v):
        return [c * x for x in v]

    def vec_submul(self, u, c, v):
        return [a - c * b for a, b in zip(u, v)]

    def vec_add(self, u, v):
        return [a + b for a, b in zip(u, v)]


class PrimeField(Field):
    kind = "GF"

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2:
            raise ValidationError(f"modulus must be an integer >= 2, got {p!r}", module="exactfield")
        if not _is_prime(p):
            raise ValidationError(f"modulus {p} is not prime", module="exactfield")
        self.p = p
        self.characteristic = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def neg(self, a):
        return -a % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ValidationError("division by zero", module="exactfield")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n: int):
        return n % self.p

    def normalize(self, a):
        if isinstance(a, int):
            return a % self.p
        if isinstance(a, Fraction) and a.denominator == 1:
            return int(a) % self.p
        raise ValidationError(f"not a GF({self.p}) scalar: {a!r}", module="exactfield")

    def parse(self, text: str):
        try:
            return int(text.strip(), 10) % self.p
        except ValueError as exc:
            raise ParseError(f"bad GF({self.p}) scalar {text!r}: {exc}", module="exactfield")

    def format(self, a) -> str:
        return str(a % self.p)

    def random_scalar(self, rng):
        return rng.randrange(self.p)

    def vec_neg(self, v):
        p = self.p
        return [-x % p for x in v]

    def vec_scale(self, c, v):
        p = self.p
        return [c * x % p for x in v]

    def vec_submul(self, u, c, v):
        p = self.p
        return [(a - c * b) % p for a, b in zip(u, v)]

    def vec_add(self, u, v):
        p = self.p
        return [(a + b) % p for a, b in zip(u, v)]


QQ = Rationals()

FieldSpec = Field  # the Field object doubles as its own spec


def field_from_json(obj) -> Field:
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"prime"}:
        return PrimeField(obj["prime"])
    raise ParseError(f"bad field spec {obj!r}", module="exactfield")


def field_from_text(text: str) -> Field:
    """Parse a CLI-style field name: "Q" or a prime such as "5"."""
    t = text.strip()
    if t in ("Q", "q", "QQ"):
        return QQ
    try:
        return PrimeField(int(t, 10))
    except ValueError:
        raise ParseError(f"bad field {text!r}: expected Q or a prime", module="exactfield")


def check_vector(field: Field, v, d: int) -> Vector:
    v = tuple(v)
    if len(v) != d:
        raise DimensionMismatch(
            f"vector has length {len(v)}, expected {d}", module="exactfield"
        )
    return v


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: int
    cols: int
    entries: tuple  # row-major

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"matrix {self.rows}x{self.cols} needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}",
                module="exactfield",
            )

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence]) -> "Matrix":
        rows = [tuple(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged matrix rows", module="exactfield")
        entries = tuple(field.normalize(x) for r in rows for x in r)
        return cls(field, len(rows), ncols, entries)

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_list(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]


def rref(m: Matrix) -> tuple[Matrix, int]:
    """The unique reduced row echelon form of ``m`` and its rank.

    Shape is preserved; zero rows sink to the bottom.
    """
    f = m.field
    work = m.row_list()
    nrows, ncols = m.rows, m.cols
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if not f.is_zero(work[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        pv = work[r][c]
        if pv != f.one:
            work[r] = f.vec_scale(f.inv(pv), work[r])
        for i in range(nrows):
            if i != r and not f.is_zero(work[i][c]):
                work[i] = f.vec_submul(work[i], work[i][c], work[r])
        r += 1
        if r == nrows:
            break
    entries = tuple(f.normalize(x) for row in work for x in row)
    return Matrix(f, nrows, ncols, entries), r


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace in canonical form: RREF rows without zero rows.

    Equality of values is equality of subspaces.
    """

    field: Field
    ambient_dim: int
    rows: tuple  # tuple of row tuples, RREF
    pivots: tuple  # ascending column indices, one per row

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def empty(cls, field: Field, ambient_dim: int) -> "SubspaceBasis":
        return cls(field, ambient_dim, (), ())

    @classmethod
    def from_vectors(cls, field: Field, ambient_dim: int, vectors) -> "SubspaceBasis":
        b = BasisBuilder(field, ambient_dim)
        for v in vectors:
            b.insert(check_vector(field, v, ambient_dim))
        return b.snapshot()

    def format_rows(self) -> list:
        return [self.field.format_vec(r) for r in self.rows]


class BasisBuilder:
    """Mutable RREF accumulator used by all span computations.

    ``insert`` keeps the rows in reduced row echelon form at all times,
    so ``snapshot`` is just a copy.
    """

    __slots__ = ("field", "ambient_dim", "rows", "pivots")

    def __init__(self, field: Field, ambient_dim: int, basis: Optional[SubspaceBasis] = None):
        self.field = field
        self.ambient_dim = ambient_dim
        if basis is None:
            self.rows: list = []
            self.pivots: list = []
        else:
            if basis.ambient_dim != ambient_dim or basis.field != field:
                raise DimensionMismatch("basis does not match builder", module="exactfield")
            self.rows = [list(r) for r in basis.rows]
            self.pivots = list(basis.pivots)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> list:
        """Residual of ``vec`` modulo the current span."""
        f = self.field
        v = list(vec)
        for p, row in zip(self.pivots, self.rows):
            c = v[p]
            if c:
                v = f.vec_submul(v, c, row)
        return v

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def coords(self, vec):
        """Coordinates of ``vec`` in the basis rows, or None if outside.

        Pivot columns of an RREF basis are zero in every other row, so
        the coordinate on row i can be read off at pivot i directly.
        """
        f = self.field
        cs = [vec[p] for p in self.pivots]
        v = list(vec)
        for c, row in zip(cs, self.rows):
            if c:
                v = f.vec_submul(v, c, row)
        if any(v):
            return None
        return tuple(f.normalize(c) for c in cs)

    def insert(self, vec) -> bool:
        """Add ``vec`` to the span. True iff the span grew."""
        f = self.field
        v = self.reduce(vec)
        j = next((i for i, x in enumerate(v) if x), None)
        if j is None:
            return False
        pv = v[j]
        if pv != f.one:
            v = f.vec_scale(f.inv(pv), v)
        # clear column j above (RREF maintenance)
        for i, row in enumerate(self.rows):
            c = row[j]
            if c:
                self.rows[i] = f.vec_submul(row, c, v)
        at = bisect.bisect_left(self.pivots, j)
        self.pivots.insert(at, j)
        self.rows.insert(at, v)
        return True

    def snapshot(self) -> SubspaceBasis:
        f = self.field
        rows = tuple(tuple(f.normalize(x) for x in r) for r in self.rows)
        return SubspaceBasis(f, self.ambient_dim, rows, tuple(self.pivots))


def extend_basis(basis: SubspaceBasis, vec) -> tuple[SubspaceBasis, bool]:
    """Span of ``basis`` plus one vector, canonical; flags actual growth."""
    vec = check_vector(basis.field, vec, basis.ambient_dim)
    b = BasisBuilder(basis.field, basis.ambient_dim, basis)
    grew = b.insert(vec)
    return (b.snapshot() if grew else basis), grew


def membership(basis: SubspaceBasis, vec):
    """Coordinates of ``vec`` in the basis rows, or None if not in the span."""
    vec = check_vector(basis.field, vec, basis.ambient_dim)
    return BasisBuilder(basis.field, basis.ambient_dim, basis).coords(vec)


def solve_affine(m: Matrix, v):
    """Solve m @ c = v exactly.

    Returns ``(particular, nullspace)`` where ``nullspace`` is the
    canonical basis of the homogeneous solution space, or None when the
    system is inconsistent.
    """
    f = m.field
    v = check_vector(f, v, m.rows)
    aug = Matrix.from_rows(f, [tuple(m.row(i)) + (v[i],) for i in range(m.rows)])
    red, rank = rref(aug)
    ncols = m.cols
    pivot_cols = []
    for i in range(rank):
        row = red.row(i)
        j = next(k for k, x in enumerate(row) if not f.is_zero(x))
        if j == ncols:
            return None  # pivot in the augmented column: inconsistent
        pivot_cols.append(j)
    particular = [f.zero] * ncols
    for i, pc in enumerate(pivot_cols):
        particular[pc] = red.row(i)[ncols]
    pivot_set = set(pivot_cols)
    free_cols = [j for j in range(ncols) if j not in pivot_set]
    null_vecs = []
    for fc in free_cols:
        x = [f.zero] * ncols
        x[fc] = f.one
        for i, pc in enumerate(pivot_cols):
            x[pc] = f.neg(red.row(i)[fc])
        null_vecs.append(x)
    nullspace = SubspaceBasis.from_vectors(f, ncols, null_vecs)
    return tuple(f.normalize(x) for x in particular), nullspace
