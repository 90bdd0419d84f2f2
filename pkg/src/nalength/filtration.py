"""Span filtrations, characteristic sequences, and word search.

For a generating set S of an algebra A, ``L_i(S)`` is the span of all
words in S of length at most i, with ``L_0`` the span of the unit for
unital algebras and the zero subspace otherwise. The chain is computed
by the bilinear recurrence::

    L_i = L_{i-1} + sum over p+q = i, p,q >= 1 of mu(L_p, L_q)

where ``mu`` spans all pairwise products. Every word of length i is a
product of words of lengths p and q with p + q = i, and conversely
``mu(L_p, L_q)`` lands in ``L_{p+q}``, so the recurrence is exact; it
also shows that the whole chain depends only on the span of S.

Termination needs care: a dimension plateau is *not* a stopping
criterion, because growth can resume later (the Xd family does exactly
that). The computation stops when the full dimension is reached, or
when the product-closure certificate ``mu(L_c, L_c) <= L_c`` holds at a
plateau, or at ``max_level`` (in which case the result is explicitly
flagged as truncated, never silently treated as closed).

The characteristic sequence of S lists the value t with multiplicity
``dim L_t - dim L_{t-1}`` (preceded by a single 0 when the algebra is
unital). Construction validates, as hard invariants, that the sequence
has exactly ``dim A`` terms, ends at the length of S, and that every
term >= 2 is a sum of two earlier positive terms.

A word w is irreducible when its value lies outside ``L_{l(w)-1}``; the
zero vector is in every span (including the empty one), so a
zero-evaluating word is never irreducible.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import Algebra
from .errors import (
    InvariantViolation,
    NotGeneratingError,
    PreconditionError,
    ResourceBudgetError,
    ValidationError,
)
from .exactfield import BasisBuilder, SubspaceBasis, check_vector
from .words import (
    Word,
    enumerate_words,
    evaluate,
    format_word,
    is_k_bounded,
    step_sigma,
    word_count,
)

DEFAULT_WORD_BUDGET = 10**6


def word_budget(explicit: Optional[int] = None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("NALENGTH_BUDGET")
    return int(env) if env else DEFAULT_WORD_BUDGET


@dataclass(frozen=True)
class GenSet:
    """The literal generating vectors together with their canonical span."""

    vectors: tuple
    span: SubspaceBasis

    @classmethod
    def build(cls, a: Algebra, vectors) -> "GenSet":
        vecs = tuple(a.field.vec(check_vector(a.field, v, a.dim)) for v in vectors)
        return cls(vecs, SubspaceBasis.from_vectors(a.field, a.dim, vecs))

    @classmethod
    def from_basis_indices(cls, a: Algebra, indices: Sequence[int]) -> "GenSet":
        return cls.build(a, [a.basis_vector(i) for i in indices])

    @property
    def num_gens(self) -> int:
        return len(self.vectors)

    def default_assignment(self, a: Algebra) -> dict:
        return {i + 1: v for i, v in enumerate(self.vectors)}


@dataclass(frozen=True)
class Filtration:
    algebra: Algebra
    gens: GenSet
    levels: tuple  # SubspaceBasis for L_0 .. L_c
    dims: tuple  # dim L_0 .. dim L_c
    closure_level: Optional[int]  # first level at which the chain is stable
    generates: bool
    truncated: bool

    def level(self, i: int) -> SubspaceBasis:
        """L_i for any i >= 0; beyond the computed range the chain is constant."""
        if i < len(self.levels):
            return self.levels[i]
        if self.truncated:
            raise PreconditionError(
                f"filtration truncated at level {len(self.levels) - 1}, cannot serve L_{i}",
                module="filtration",
            )
        return self.levels[-1]

    def to_json(self) -> dict:
        out = {
            "dims": list(self.dims),
            "generates": self.generates,
            "closure_level": self.closure_level,
            "truncated": self.truncated,
            "length": self.closure_level if self.generates else None,
        }
        if self.generates:
            out["char_seq"] = list(char_seq(self).terms)
        return out


def _default_max_level(dim: int) -> int:
    # growth-doubling bound: an unclosed plateau at level c grows again by 2c
    return max(2 * 2 ** min(dim, 14), 16)


class _Core:
    """Shared filtration loop; optionally records level snapshots."""

    __slots__ = ("a", "builder", "dims", "layers", "snapshots", "want_levels")

    def __init__(self, a: Algebra, want_levels: bool):
        self.a = a
        self.builder = BasisBuilder(a.field, a.dim)
        self.dims: list = []
        self.layers: list = []  # layers[i] = vectors newly independent at level i
        self.snapshots: list = [] if want_levels else None
        self.want_levels = want_levels

    def _record(self):
        self.dims.append(self.builder.dim)
        if self.want_levels:
            self.snapshots.append(self.builder.snapshot())

    def _closed(self) -> bool:
        b = self.builder
        mul = self.a.multiply_raw
        rows = [tuple(r) for r in b.rows]
        for u in rows:
            for v in rows:
                if not b.contains(mul(u, v)):
                    return False
        return True

    def run(self, vectors, max_level: int):
        a, b = self.a, self.builder
        d = a.dim
        # level 0
        if a.unital:
            b.insert(a.unit)
        self.layers.append([])
        self._record()
        if b.dim == d:
            return 0, True, False  # the whole algebra is spanned by the unit
        # level 1
        new = [v for v in vectors if b.insert(v)]
        self.layers.append(new)
        self._record()
        if b.dim == d:
            return 1, True, False
        mul = a.multiply_raw
        layers = self.layers
        tested_dim = -1  # closure test memo: products depend only on the basis
        i = 1
        while i < max_level:
            i += 1
            new = []
            for p in range(1, i):
                lp, lq = layers[p], layers[i - p]
                if lp and lq:
                    for u in lp:
                        for v in lq:
                            w = mul(u, v)
                            if b.insert(w):
                                new.append(w)
            layers.append(new)
            self._record()
            if b.dim == d:
                return i, True, False
            if not new:
                if b.dim != tested_dim:
                    tested_dim = b.dim
                    if self._closed():
                        # the recurrence pass above re-derived L_{c+1} = L_c,
                        # and the pairwise product test certifies closure
                        self.dims.pop()
                        if self.want_levels:
                            self.snapshots.pop()
                        self.layers.pop()
                        return i - 1, False, False
        return i, False, True


def compute_filtration(a: Algebra, gens: GenSet, max_level: Optional[int] = None) -> Filtration:
    """Compute the chain L_0 <= L_1 <= ... for the given generators.

    Stops at full dimension or at a certified product closure; if
    ``max_level`` is hit first the result is flagged truncated.
    """
    if max_level is not None and max_level < 1:
        raise ValidationError("max_level must be >= 1", module="filtration")
    bound = max_level if max_level is not None else _default_max_level(a.dim)
    core = _Core(a, want_levels=True)
    level_, generates, truncated = core.run(gens.vectors, bound)
    filtration = Filtration(
        algebra=a,
        gens=gens,
        levels=tuple(core.snapshots),
        dims=tuple(core.dims),
        closure_level=None if truncated else level_,
        generates=generates,
        truncated=truncated,
    )
    return filtration


def filtration_dims(a: Algebra, vectors, max_level: Optional[int] = None):
    """Fast path: (generates, stable_level_or_None, dims) without snapshots."""
    bound = max_level if max_level is not None else _default_max_level(a.dim)
    core = _Core(a, want_levels=False)
    level_, generates, truncated = core.run(vectors, bound)
    return generates, (None if truncated else level_), core.dims


# ---------------------------------------------------------------------------
# Characteristic sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharSeq:
    """Non-decreasing sequence of non-negative integers; the value t
    appears ``dim L_t - dim L_{t-1}`` times."""

    terms: tuple

    def __post_init__(self):
        if any(t < 0 for t in self.terms):
            raise InvariantViolation("characteristic sequence has a negative term", module="filtration")
        if any(a > b for a, b in zip(self.terms, self.terms[1:])):
            raise InvariantViolation("characteristic sequence is not non-decreasing", module="filtration")

    @property
    def gaps(self) -> tuple:
        return tuple(b - a for a, b in zip(self.terms, self.terms[1:]))

    def to_json(self) -> list:
        return list(self.terms)


def charseq_from_dims(dims: Sequence[int], dim_a: int, unital: bool) -> CharSeq:
    """Build and validate the characteristic sequence from level dims.

    ``dims[t]`` must be ``dim L_t`` for t = 0..l(S) of a generating set.
    Violations of the term-count, last-term or sum-decomposition laws
    raise :class:`InvariantViolation`: they cannot happen for a
    correctly computed filtration.
    """
    terms = []
    if unital:
        if dims[0] != 1:
            raise InvariantViolation("unital filtration must start at dim 1", module="filtration")
        terms.append(0)
    elif dims[0] != 0:
        raise InvariantViolation("non-unital filtration must start at dim 0", module="filtration")
    for t in range(1, len(dims)):
        terms.extend([t] * (dims[t] - dims[t - 1]))
    seq = CharSeq(tuple(terms))
    if len(terms) != dim_a:
        raise InvariantViolation(
            f"characteristic sequence has {len(terms)} terms, expected dim A = {dim_a}",
            module="filtration",
        )
    if terms and terms[-1] != len(dims) - 1:
        raise InvariantViolation(
            "characteristic sequence must end at the length of the set",
            module="filtration",
        )
    report = analyze_charseq(seq)
    if not report.decomposable:
        raise InvariantViolation(
            f"characteristic sequence {terms} has a term >= 2 that is not a sum "
            "of two earlier positive terms",
            module="filtration",
        )
    return seq


def char_seq(f: Filtration) -> CharSeq:
    if f.truncated:
        raise PreconditionError("filtration was truncated; no characteristic sequence", module="filtration")
    if not f.generates:
        raise NotGeneratingError(
            f"set generates a subalgebra of dimension {f.dims[-1]}, not the full algebra",
            generated_dim=f.dims[-1],
            module="filtration",
        )
    return charseq_from_dims(f.dims, f.algebra.dim, f.algebra.unital)


def length_of_set(a: Algebra, gens: GenSet, max_level: Optional[int] = None) -> int:
    """Minimal i with L_i(S) = A; errors when S does not generate."""
    f = compute_filtration(a, gens, max_level)
    if f.truncated:
        raise ResourceBudgetError(
            f"filtration truncated at max_level={len(f.dims) - 1} before closure",
            module="filtration",
        )
    if not f.generates:
        raise NotGeneratingError(
            f"set generates a subalgebra of dimension {f.dims[-1]}",
            generated_dim=f.dims[-1],
            module="filtration",
        )
    seq = char_seq(f)
    if seq.terms[-1] != f.closure_level:
        raise InvariantViolation("length disagrees with the characteristic sequence", module="filtration")
    return f.closure_level


# ---------------------------------------------------------------------------
# Gap analysis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GapReport:
    terms: tuple
    decomposable: bool
    decompositions: tuple  # per index: (t1, t2) 0-based earlier indices, or None
    gaps: tuple
    max_gap: int
    k: Optional[int]
    gap_violations: tuple  # positions j (0-based in terms) with gap > k-1

    def to_json(self) -> dict:
        return {
            "terms": list(self.terms),
            "decomposable": self.decomposable,
            "max_gap": self.max_gap,
            "k": self.k,
            "gap_violations": list(self.gap_violations),
        }


def analyze_charseq(seq: CharSeq, k: Optional[int] = None) -> GapReport:
    """Check the sum decomposition of every term >= 2 and survey gaps.

    With ``k`` given, positions whose gap exceeds k-1 are flagged
    (report content, not an error).
    """
    terms = seq.terms
    decomps = []
    ok = True
    for h, m in enumerate(terms):
        if m < 2:
            decomps.append(None)
            continue
        found = None
        for t1 in range(h):
            a = terms[t1]
            if a <= 0:
                continue
            b = m - a
            if b <= 0:
                break  # terms non-decreasing, later a only larger
            # b must appear among terms[t1..h-1]
            for t2 in range(t1, h):
                if terms[t2] == b:
                    found = (t1, t2)
                    break
            if found:
                break
        decomps.append(found)
        if found is None:
            ok = False
    gaps = seq.gaps
    violations = ()
    if k is not None:
        violations = tuple(j + 1 for j, g in enumerate(gaps) if g > k - 1)
    return GapReport(
        terms=terms,
        decomposable=ok,
        decompositions=tuple(decomps),
        gaps=gaps,
        max_gap=max(gaps) if gaps else 0,
        k=k,
        gap_violations=violations,
    )


# ---------------------------------------------------------------------------
# Irreducibility and word search
# ---------------------------------------------------------------------------


def is_irreducible(a: Algebra, gens: GenSet, w: Word, assignment=None) -> bool:
    """Whether the value of ``w`` lies outside L_{l(w)-1}(S).

    ``assignment`` maps leaf labels into S's vectors; by default leaf i
    is the i-th listed generator. Zero-evaluating words are reducible.
    """
    if w.length < 1:
        return False  # the unit word lies in L_0 by construction
    if assignment is None:
        assignment = gens.default_assignment(a)
    value = evaluate(a, assignment, w)
    f = compute_filtration(a, gens, max_level=max(w.length - 1, 1))
    prior = f.level(w.length - 1)
    return not BasisBuilder(a.field, a.dim, prior).contains(value)


def guard_enumeration(num_gens: int, length: int, budget: Optional[int]):
    total = word_count(num_gens, length)
    allowed = word_budget(budget)
    if total > allowed:
        raise ResourceBudgetError(
            f"enumerating {total} words exceeds the budget {allowed}",
            module="filtration",
            total=total,
            budget=allowed,
        )
    return total


def find_irreducible_words(
    a: Algebra,
    gens: GenSet,
    length: int,
    k_bounded: Optional[int] = None,
    budget: Optional[int] = None,
) -> list:
    """All irreducible words of the given length over S's listed vectors,
    optionally restricted to k-bounded words. Returns (word, value) pairs
    in enumeration order."""
    if length < 1:
        raise ValidationError("length must be >= 1", module="filtration")
    g = gens.num_gens
    guard_enumeration(g, length, budget)
    assignment = gens.default_assignment(a)
    filt = compute_filtration(a, gens, max_level=max(length - 1, 1))
    prior = BasisBuilder(a.field, a.dim, filt.level(length - 1))
    out = []
    for w in enumerate_words(g, length):
        if k_bounded is not None and not is_k_bounded(w, k_bounded)[0]:
            continue
        value = evaluate(a, assignment, w)
        if not prior.contains(value):
            out.append((w, value))
    return out


def equivalent(a: Algebra, gens: GenSet, u: Word, v: Word, assignment=None) -> bool:
    """Whether the values of u and v are linearly dependent modulo
    L_{max(l(u), l(v)) - 1}(S)."""
    if assignment is None:
        assignment = gens.default_assignment(a)
    m = max(u.length, v.length)
    if m < 1:
        return True
    filt = compute_filtration(a, gens, max_level=max(m - 1, 1))
    prior = BasisBuilder(a.field, a.dim, filt.level(m - 1))
    ru = prior.reduce(evaluate(a, assignment, u))
    rv = prior.reduce(evaluate(a, assignment, v))
    quotient = BasisBuilder(a.field, a.dim)
    quotient.insert(ru)
    quotient.insert(rv)
    return quotient.dim <= 1


@dataclass(frozen=True)
class StepSearchResult:
    length: int
    p: int
    witnesses: tuple  # words attaining the minimum

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "p": self.p,
            "witnesses": [format_word(w) for w in self.witnesses],
        }


def find_step_words(
    a: Algebra, gens: GenSet, length: int, budget: Optional[int] = None
) -> StepSearchResult:
    """Minimal step-function value over irreducible 3-bounded words of
    the given length, with all minimising words."""
    if length < 2:
        raise ValidationError("step words need length >= 2", module="filtration")
    candidates = find_irreducible_words(a, gens, length, k_bounded=3, budget=budget)
    if not candidates:
        raise PreconditionError(
            f"no irreducible 3-bounded word of length {length} exists for this set",
            module="filtration",
        )
    best = None
    witnesses: list = []
    for w, _val in candidates:
        s = step_sigma(w)
        if s is None:
            raise InvariantViolation(
                f"step function undefined on 3-bounded word {format_word(w)}",
                module="filtration",
            )
        if best is None or s < best:
            best = s
            witnesses = [w]
        elif s == best:
            witnesses.append(w)
    return StepSearchResult(length=length, p=best, witnesses=tuple(witnesses))
