"""Finite-dimensional algebras given by structure constants.

An algebra is a coefficient field, a dimension d, an optional unit
vector, and a sparse table mapping basis-index pairs (i, j), 1-based,
to the product vector e_i * e_j; absent pairs multiply to zero. The
product of arbitrary vectors is the bilinear extension of the table.
Nothing here assumes associativity, commutativity or a unit.

Builders are provided for the example families used throughout the
test-suite:

* ``Ed(d, k)``    x_j x_1 = x_{j+1} (j < k-1), x_i x_{k-1} = x_{i+1}
                  (k-1 <= i < d), all other products zero;
* ``Xd(d, k)``    the mirrored table x_1 x_j = x_{j+1},
                  x_{k-1} x_i = x_{i+1};
* ``Vd(d)``       x_i x_j = x_{i+j} for i+j <= d-1 plus
                  x_{d-1} x_{d-2} = x_d;
* ``sl2``         the commutator table [h,e] = 2e, [h,f] = -2f,
                  [e,f] = h on basis (e, f, h);
* ``heisenberg``  e1 e2 = -e2 e1 = e3;
* ``m7``          the 7-dimensional anticommutative algebra of
                  octonion imaginary-part commutators: each oriented
                  triple (a, b, c) of the Fano plane contributes
                  e_a e_b = 2 e_c cyclically.

The coefficient 2 in m7 is kept as-is; spans and lengths are invariant
under basis scaling, and the table is validated by identity checking
rather than by fiat.

On-disk format (JSON, UTF-8)::

    {"name": str, "field": "Q" | {"prime": p}, "dim": d,
     "unital": bool, "unit": [scalar-str, ...]        (iff unital),
     "products": [{"i": int, "j": int, "value": [scalar-str x d]}, ...]}

Scalar strings follow :mod:`nalength.exactfield`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Optional

from .errors import DimensionMismatch, ParseError, ValidationError
from .exactfield import Field, check_vector, field_from_json

FANO_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5))

FAMILIES = ("ed", "xd", "vd", "sl2", "heisenberg", "m7")


@dataclass(frozen=True, eq=True)
class Algebra:
    name: str
    field: Field
    dim: int
    unital: bool
    unit: Optional[tuple]
    products: dict = dc_field(compare=True)  # (i, j) 1-based -> vector of length dim

    def __post_init__(self):
        if self.dim < 1:
            raise ValidationError("dimension must be >= 1", module="algebra")
        for (i, j), vec in self.products.items():
            if not (1 <= i <= self.dim and 1 <= j <= self.dim):
                raise ValidationError(
                    f"product index ({i},{j}) out of range 1..{self.dim}", module="algebra"
                )
            if len(vec) != self.dim:
                raise ValidationError(
                    f"product vector for ({i},{j}) has length {len(vec)}, expected {self.dim}",
                    module="algebra",
                )
        if self.unital:
            if self.unit is None or len(self.unit) != self.dim:
                raise ValidationError("unital algebra needs a unit vector of full length", module="algebra")
            for i in range(self.dim):
                e = self.basis_vector(i + 1)
                if self.multiply(self.unit, e) != e or self.multiply(e, self.unit) != e:
                    raise ValidationError(
                        f"unit vector fails the unit law on basis vector {i + 1}",
                        module="algebra",
                    )
        elif self.unit is not None:
            raise ValidationError("unit vector given but unital flag is false", module="algebra")

    @cached_property
    def _table(self) -> list:
        # ((i-1, j-1, ((k, c), ...)), ...) with zero coefficients dropped
        f = self.field
        out = []
        for (i, j), vec in sorted(self.products.items()):
            nz = tuple((k, c) for k, c in enumerate(vec) if not f.is_zero(c))
            if nz:
                out.append((i - 1, j - 1, nz))
        return out

    def basis_vector(self, i: int) -> tuple:
        v = [self.field.zero] * self.dim
        v[i - 1] = self.field.one
        return tuple(v)

    def multiply_raw(self, u, v) -> tuple:
        """Bilinear product, no argument validation (hot path)."""
        f = self.field
        out = [0] * self.dim
        if f.p is None:
            for i, j, nz in self._table:
                c = u[i] * v[j]
                if c:
                    for k, s in nz:
                        out[k] += c * s
            return tuple(f.normalize(x) for x in out)
        p = f.p
        for i, j, nz in self._table:
            c = u[i] * v[j] % p
            if c:
                for k, s in nz:
                    out[k] = (out[k] + c * s) % p
        return tuple(out)

    def multiply(self, u, v) -> tuple:
        u = check_vector(self.field, u, self.dim)
        v = check_vector(self.field, v, self.dim)
        return self.multiply_raw(u, v)


def multiply(a: Algebra, u, v) -> tuple:
    return a.multiply(u, v)


def make_algebra(name, field, dim, products, unital=False, unit=None) -> Algebra:
    """Normalise scalars and build a validated :class:`Algebra`."""
    norm = {}
    for (i, j), vec in products.items():
        vec = tuple(field.normalize(x) for x in vec)
        if any(vec):
            norm[(int(i), int(j))] = vec
    if unit is not None:
        unit = tuple(field.normalize(x) for x in unit)
    return Algebra(name, field, dim, unital, unit, norm)


# ---------------------------------------------------------------------------
# Example families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExampleParams:
    family: str
    field: Field
    d: Optional[int] = None
    k: Optional[int] = None

    def __post_init__(self):
        fam = self.family
        if fam not in FAMILIES:
            raise ValidationError(f"unknown family {fam!r}, expected one of {FAMILIES}", module="algebra")
        if fam in ("ed", "xd"):
            if self.d is None or self.k is None:
                raise ValidationError(f"family {fam!r} needs d and k", module="algebra")
            if not (self.d >= self.k >= 2):
                raise ValidationError(f"family {fam!r} needs d >= k >= 2, got d={self.d}, k={self.k}", module="algebra")
        elif fam == "vd":
            if self.d is None or self.d < 4:
                raise ValidationError("family 'vd' needs d >= 4", module="algebra")
        else:
            fixed = {"sl2": 3, "heisenberg": 3, "m7": 7}[fam]
            if self.d is not None and self.d != fixed:
                raise ValidationError(f"family {fam!r} has fixed dimension {fixed}", module="algebra")


def _e(d, k):
    v = [0] * d
    v[k - 1] = 1
    return tuple(v)


def build_example(params: ExampleParams) -> Algebra:
    fam, f, d, k = params.family, params.field, params.d, params.k
    prods: dict = {}
    if fam == "ed":
        for j in range(1, k - 1):
            prods[(j, 1)] = _e(d, j + 1)
        for i in range(k - 1, d):
            prods[(i, k - 1)] = _e(d, i + 1)
        name = f"E{d}_k{k}"
    elif fam == "xd":
        for j in range(1, k - 1):
            prods[(1, j)] = _e(d, j + 1)
        for i in range(k - 1, d):
            prods[(k - 1, i)] = _e(d, i + 1)
        name = f"X{d}_k{k}"
    elif fam == "vd":
        for i in range(1, d):
            for j in range(1, d):
                if i + j <= d - 1:
                    prods[(i, j)] = _e(d, i + j)
        prods[(d - 1, d - 2)] = _e(d, d)
        name = f"V{d}"
    elif fam == "sl2":
        d = 3
        # basis (e, f, h)
        prods = {
            (3, 1): (2, 0, 0),
            (1, 3): (-2, 0, 0),
            (3, 2): (0, -2, 0),
            (2, 3): (0, 2, 0),
            (1, 2): (0, 0, 1),
            (2, 1): (0, 0, -1),
        }
        name = "sl2"
    elif fam == "heisenberg":
        d = 3
        prods = {(1, 2): (0, 0, 1), (2, 1): (0, 0, -1)}
        name = "heisenberg"
    else:  # m7
        d = 7
        for a, b, c in FANO_TRIPLES:
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                v = [0] * 7
                v[z - 1] = 2
                prods[(x, y)] = tuple(v)
                v = [0] * 7
                v[z - 1] = -2
                prods[(y, x)] = tuple(v)
        name = "m7"
    return make_algebra(name, f, d, prods)


def build(family: str, field: Field, d: Optional[int] = None, k: Optional[int] = None) -> Algebra:
    return build_example(ExampleParams(family, field, d, k))


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------


def to_json_dict(a: Algebra) -> dict:
    f = a.field
    out = {
        "name": a.name,
        "field": f.to_json(),
        "dim": a.dim,
        "unital": a.unital,
        "products": [
            {"i": i, "j": j, "value": f.format_vec(vec)}
            for (i, j), vec in sorted(a.products.items())
        ],
    }
    if a.unital:
        out["unit"] = f.format_vec(a.unit)
    return out


def from_json_dict(obj: dict) -> Algebra:
    if not isinstance(obj, dict):
        raise ParseError("algebra file must contain a JSON object", module="algebra")
    try:
        name = obj["name"]
        f = field_from_json(obj["field"])
        dim = int(obj["dim"])
        unital = bool(obj.get("unital", False))
        raw_products = obj["products"]
    except KeyError as exc:
        raise ParseError(f"algebra file missing field {exc}", module="algebra")
    products = {}
    for entry in raw_products:
        try:
            i, j = int(entry["i"]), int(entry["j"])
            value = entry["value"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad product entry {entry!r}: {exc}", module="algebra")
        if len(value) != dim:
            raise ParseError(
                f"product vector for ({i},{j}) has length {len(value)}, expected {dim}",
                module="algebra",
            )
        if (i, j) in products:
            raise ParseError(f"duplicate product entry for ({i},{j})", module="algebra")
        products[(i, j)] = f.parse_vec(value)
    unit = f.parse_vec(obj["unit"]) if unital and "unit" in obj else None
    if unital and unit is None:
        raise ParseError("unital algebra file lacks a unit vector", module="algebra")
    return make_algebra(name, f, dim, products, unital=unital, unit=unit)


def dumps(a: Algebra) -> str:
    return json.dumps(to_json_dict(a), indent=2, sort_keys=True) + "\n"


def loads(text: str) -> Algebra:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", module="algebra")
    return from_json_dict(obj)


def save(a: Algebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(a))


def load(path) -> Algebra:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())
