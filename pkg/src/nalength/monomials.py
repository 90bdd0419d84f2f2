"""Builders for the abstract multilinear monomial sets over a
distinguished-head variable sequence.

Fix variables Z = {z0, z1, ..., zk} with head z0 and tail
Z0 = {z1, ..., zk}. The sets built here (as plain :class:`Word` values
over the variable labels) are:

* ``W(T)``: all multilinear words of length |T| using every variable of
  T exactly once; ``W({})`` is ``{1}`` in the unital convention and the
  empty set otherwise.
* ``D(T) = union of W(T') over T' subset of T``: all multilinear words.
* ``D'(T) = D(T) \\ W(T)``: those of length strictly below |T|.
* ``D0 = D(Z) \\ (z0 W(Z0) u W(Z0) z0)``: full-length words may not
  have the bare head as a factor of the last multiplication.
* ``Dl``: ``D'(Z)`` plus the products ``w1 w2`` with ``w1`` over a
  nonempty proper subset T' of the tail and ``w2`` over the complement
  (so the head sits in the second factor of the last multiplication,
  never alone in the first).
* ``Dr``: the mirror image of ``Dl``.
* ``Q_l``, ``Q_r``, ``P``: the literal 13-, 13- and 17-element sets in
  three variables. For k = 2 they coincide with ``Dl``, ``Dr`` and
  ``D0`` up to the variable renaming that moves the head last, which
  the tests check structurally.

The proper-subset constraint in ``Dl``/``Dr`` matters: allowing
T' = Z0 would add the excluded bare-head products and break the
three-variable coincidences above.

Sizes explode combinatorially; builders refuse more than 6 variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import ResourceBudgetError, ValidationError
from .words import Word, enumerate_shapes, format_word, leaf, node, unit_word

MAX_VARS = 6  # |Z| = k + 1 with k <= 5


@dataclass(frozen=True)
class VarSet:
    """An ordered variable sequence (z0, z1, ..., zk) with head z0."""

    labels: tuple
    unital: bool = False

    def __post_init__(self):
        if len(self.labels) < 2:
            raise ValidationError("need a head and at least one tail variable", module="monomials")
        if len(set(self.labels)) != len(self.labels):
            raise ValidationError("variables must be distinct", module="monomials")

    @property
    def head(self):
        return self.labels[0]

    @property
    def tail(self) -> tuple:
        return self.labels[1:]

    @property
    def k(self) -> int:
        return len(self.labels) - 1


@dataclass(frozen=True)
class MonomialSet:
    words: frozenset
    provenance: str

    def __len__(self):
        return len(self.words)

    def __contains__(self, w):
        return w in self.words

    def __iter__(self):
        return iter(self.sorted_words())

    def sorted_words(self) -> list:
        return sorted(self.words, key=lambda w: (w.length, format_word(w)))

    def to_json(self) -> dict:
        return {
            "provenance": self.provenance,
            "size": len(self.words),
            "words": [format_word(w) for w in self.sorted_words()],
        }


def _guard(labels):
    if len(labels) > MAX_VARS:
        raise ResourceBudgetError(
            f"{len(labels)} variables exceeds the supported maximum {MAX_VARS}",
            module="monomials",
        )


def _w_words(labels) -> set:
    """Multilinear words of full length over the given labels."""
    out = set()
    n = len(labels)
    for perm in permutations(labels):
        leaves_ = [leaf(x) for x in perm]
        for shape in enumerate_shapes(n):
            out.add(_fill(shape, leaves_, 0)[0])
    return out


def _fill(shape: Word, leaves_, pos):
    if shape.left is None:
        return leaves_[pos], pos + 1
    lw, pos = _fill(shape.left, leaves_, pos)
    rw, pos = _fill(shape.right, leaves_, pos)
    return node(lw, rw), pos


def build_W(labels, unital: bool = False) -> MonomialSet:
    labels = tuple(labels)
    _guard(labels)
    if not labels:
        words = frozenset((unit_word(),)) if unital else frozenset()
    else:
        words = frozenset(_w_words(labels))
    return MonomialSet(words, f"W({','.join(map(str, labels))})")


def build_D(labels, unital: bool = False) -> MonomialSet:
    labels = tuple(labels)
    _guard(labels)
    out = set()
    for r in range(len(labels) + 1):
        for sub in combinations(labels, r):
            out |= build_W(sub, unital).words
    return MonomialSet(frozenset(out), f"D({','.join(map(str, labels))})")


def build_D_prime(labels, unital: bool = False) -> MonomialSet:
    labels = tuple(labels)
    _guard(labels)
    out = build_D(labels, unital).words - build_W(labels, unital).words
    return MonomialSet(out, f"D'({','.join(map(str, labels))})")


def build_D0(vs: VarSet) -> MonomialSet:
    _guard(vs.labels)
    z0 = leaf(vs.head)
    w_tail = build_W(vs.tail, vs.unital).words
    excluded = {node(z0, w) for w in w_tail} | {node(w, z0) for w in w_tail}
    out = build_D(vs.labels, vs.unital).words - excluded
    return MonomialSet(frozenset(out), f"D0({','.join(map(str, vs.labels))})")


def _split_products(vs: VarSet, head_side: str) -> set:
    """Full-length products with the head inside one designated factor.

    T' runs over nonempty proper subsets of the tail; the factor over
    Z \\ T' contains the head and is never the bare head.
    """
    out = set()
    tail = vs.tail
    for r in range(1, len(tail)):
        for sub in combinations(tail, r):
            rest = tuple(x for x in vs.labels if x not in set(sub))
            w_sub = build_W(sub, vs.unital).words
            w_rest = build_W(rest, vs.unital).words
            for a in w_sub:
                for b in w_rest:
                    out.add(node(a, b) if head_side == "right" else node(b, a))
    return out


def build_Dl(vs: VarSet) -> MonomialSet:
    _guard(vs.labels)
    out = _split_products(vs, "right") | build_D_prime(vs.labels, vs.unital).words
    return MonomialSet(frozenset(out), f"Dl({','.join(map(str, vs.labels))})")


def build_Dr(vs: VarSet) -> MonomialSet:
    _guard(vs.labels)
    out = _split_products(vs, "left") | build_D_prime(vs.labels, vs.unital).words
    return MonomialSet(frozenset(out), f"Dr({','.join(map(str, vs.labels))})")


# ---------------------------------------------------------------------------
# The literal three-variable sets
# ---------------------------------------------------------------------------


def _low_degree(x, y, z) -> set:
    lx, ly, lz = leaf(x), leaf(y), leaf(z)
    return {
        lx, ly, lz,
        node(lx, ly), node(ly, lx),
        node(lx, lz), node(lz, lx),
        node(ly, lz), node(lz, ly),
    }


def build_Q_l(x="x", y="y", z="z") -> MonomialSet:
    """Degrees 1 and 2, plus the degree-3 monomials where z sits in the
    inner product and that inner product is the second outer factor."""
    lx, ly, lz = leaf(x), leaf(y), leaf(z)
    deg3 = {
        node(lx, node(lz, ly)), node(lx, node(ly, lz)),
        node(ly, node(lx, lz)), node(ly, node(lz, lx)),
    }
    return MonomialSet(frozenset(_low_degree(x, y, z) | deg3), f"Ql({x},{y},{z})")


def build_Q_r(x="x", y="y", z="z") -> MonomialSet:
    """Degrees 1 and 2, plus the degree-3 monomials where z sits in the
    inner product and that inner product is the first outer factor."""
    lx, ly, lz = leaf(x), leaf(y), leaf(z)
    deg3 = {
        node(node(lx, lz), ly), node(node(lz, lx), ly),
        node(node(ly, lz), lx), node(node(lz, ly), lx),
    }
    return MonomialSet(frozenset(_low_degree(x, y, z) | deg3), f"Qr({x},{y},{z})")


def build_P(x="x", y="y", z="z") -> MonomialSet:
    """Union of Q_l and Q_r: all degree-3 monomials with z inside the
    brackets, plus everything of degree 1 and 2. 17 monomials."""
    words = build_Q_l(x, y, z).words | build_Q_r(x, y, z).words
    return MonomialSet(words, f"P({x},{y},{z})")
