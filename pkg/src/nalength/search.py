"""Algebra-level length: exhaustive and randomized search, bound
certification, and characteristic-sequence gap surveys.

The length of a set depends only on its span, and enlarging a
generating set can only shorten the length, so the maximum of the set
length over all finite generating sets equals the maximum over
generating *subspaces*. Over GF(p) the subspaces of each dimension are
finitely many and enumerable in canonical order (pivot columns
lexicographic, then the free entries), which makes the algebra length
exactly computable whenever the total subspace count fits the budget.
Over infinite fields only randomized lower bounds are produced, and
reports say so.

``certify_bounds`` turns classification evidence into upper bounds,
each tagged with how its hypothesis was established: a basis-tuple
identity proof gives a proved bound, a sampled membership check gives a
sampled-hypothesis bound. Exhaustively computed lengths are asserted
against every proved bound; a violation is a hard error, not a report
entry.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .algebra import Algebra
from .classify import IdentityReport, _sample_rng
from .errors import (
    InvariantViolation,
    PreconditionError,
    ResourceBudgetError,
    ValidationError,
)
from .exactfield import Field, PrimeField, SubspaceBasis
from .filtration import charseq_from_dims, filtration_dims
from .parallel import parallel_first, run_ranges

DEFAULT_SUBSPACE_BUDGET = 5 * 10**6


def subspace_budget(explicit: Optional[int] = None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("NALENGTH_BUDGET")
    return int(env) if env else DEFAULT_SUBSPACE_BUDGET


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(d: int, p: int, dims: Sequence[int]) -> int:
    return sum(gaussian_binomial(d, m, p) for m in dims)


def enumerate_subspaces(
    field: Field, d: int, dims: Optional[Sequence[int]] = None, budget: Optional[int] = None
) -> Iterator[tuple]:
    """All subspaces of GF(p)^d of the requested dimensions, once each,
    as canonical RREF row tuples.

    Order: dimension ascending, pivot-column sets lexicographic, free
    entries lexicographic (row-major).
    """
    if not isinstance(field, PrimeField):
        raise PreconditionError("subspace enumeration needs a prime field", module="search")
    p = field.p
    if dims is None:
        dims = range(0, d + 1)
    dims = sorted(set(dims))
    if any(m < 0 or m > d for m in dims):
        raise ValidationError(f"dims must lie in 0..{d}", module="search")
    total = count_subspaces(d, p, dims)
    allowed = subspace_budget(budget)
    if total > allowed:
        raise ResourceBudgetError(
            f"enumerating {total} subspaces exceeds the budget {allowed}",
            module="search", total=total, budget=allowed,
        )
    for m in dims:
        if m == 0:
            yield ()
            continue
        for pivots in combinations(range(d), m):
            free_slots = [
                (r, c)
                for r in range(m)
                for c in range(pivots[r] + 1, d)
                if c not in pivots
            ]
            rows = [[0] * d for _ in range(m)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            nfree = len(free_slots)
            for code in range(p**nfree):
                filled = [row[:] for row in rows]
                x = code
                for r, c in reversed(free_slots):  # last slot varies fastest
                    filled[r][c] = x % p
                    x //= p
                yield tuple(tuple(row) for row in filled)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass
class LengthReport:
    algebra: str
    field: object
    mode: str  # "exhaustive" | "random"
    value: Optional[int]
    is_exact: bool
    witness: Optional[list]  # subspace rows as scalar strings
    subspaces_scanned: int
    samples: Optional[int] = None
    seed: Optional[int] = None
    bounds: Optional[list] = None

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "field": self.field,
            "mode": self.mode,
            "value": self.value,
            "is_exact": self.is_exact,
            "witness_subspace": self.witness,
            "subspaces_scanned": self.subspaces_scanned,
            "samples": self.samples,
            "seed": self.seed,
            "bounds": self.bounds,
        }


@dataclass(frozen=True)
class Bound:
    name: str
    value: int
    hypothesis: str
    status: str  # "proved" | "sampled" | "assumed"

    def to_json(self) -> dict:
        return {"name": self.name, "value": self.value,
                "hypothesis": self.hypothesis, "status": self.status}


@dataclass
class BoundCertificate:
    bounds: tuple

    @property
    def proved_min(self) -> Optional[int]:
        vals = [b.value for b in self.bounds if b.status == "proved"]
        return min(vals) if vals else None

    @property
    def applicable_min(self) -> Optional[int]:
        vals = [b.value for b in self.bounds]
        return min(vals) if vals else None

    def to_json(self) -> dict:
        return {
            "bounds": [b.to_json() for b in self.bounds],
            "proved_min": self.proved_min,
            "applicable_min": self.applicable_min,
        }


# ---------------------------------------------------------------------------
# Exhaustive length
# ---------------------------------------------------------------------------


def _exhaustive_range(a: Algebra, lo: int, hi: int):
    """Scan subspaces lo..hi in canonical order (dims 1..d).

    Returns (best_length, best_index, best_rows, scanned_generating).
    Characteristic-sequence laws are validated for every generating
    subspace met; a violation raises and aborts the whole scan.
    """
    from itertools import islice

    stream = enumerate_subspaces(a.field, a.dim, dims=range(1, a.dim + 1))
    best = (-1, -1, None)
    generating = 0
    for index, rows in enumerate(islice(stream, lo, hi), start=lo):
        generates, level, dims = filtration_dims(a, rows)
        if not generates:
            continue
        generating += 1
        charseq_from_dims(dims, a.dim, a.unital)  # hard invariant check
        if level > best[0]:
            best = (level, index, rows)
    return best[0], best[1], best[2], generating


def length_exhaustive(a: Algebra, budget: Optional[int] = None, jobs: int = 1) -> LengthReport:
    """Exact l(A) over a prime field by scanning every subspace of every
    dimension 1..d and maximizing the set length over the generating ones."""
    if not isinstance(a.field, PrimeField):
        raise PreconditionError("exhaustive length needs a prime field", module="search")
    total = count_subspaces(a.dim, a.field.p, range(1, a.dim + 1))
    allowed = subspace_budget(budget)
    if total > allowed:
        raise ResourceBudgetError(
            f"{total} subspaces exceed the budget {allowed}; use random mode",
            module="search", total=total, budget=allowed,
        )
    results = run_ranges(total, jobs, _exhaustive_range, (a,))
    best_len, best_index, best_rows, generating = -1, -1, None, 0
    for blen, bidx, brows, gen in results:
        generating += gen
        if blen > best_len:
            best_len, best_index, best_rows = blen, bidx, brows
    if best_rows is None:
        raise InvariantViolation(
            "no generating subspace found; the basis of A itself must generate",
            module="search",
        )
    return LengthReport(
        algebra=a.name, field=a.field.to_json(), mode="exhaustive",
        value=best_len, is_exact=True,
        witness=[a.field.format_vec(r) for r in best_rows],
        subspaces_scanned=total,
    )


# ---------------------------------------------------------------------------
# Random sampling
# ---------------------------------------------------------------------------


def _random_generating(a: Algebra, seed: int, index: int, retry_cap: int):
    """One generating subspace for sample ``index``.

    Target dimensions cycle 1, 2, ..., d across attempts (an
    anticommutative algebra rejects every 1-dimensional candidate, so
    cycling must not be stuck on one dimension). Returns
    (rows, stable_level, dims, attempts).
    """
    f, d = a.field, a.dim
    rng = _sample_rng(seed, index)
    for attempt in range(retry_cap):
        m = 1 + (index + attempt) % d
        vecs = [tuple(f.normalize(f.random_scalar(rng)) for _ in range(d)) for _ in range(m)]
        basis = SubspaceBasis.from_vectors(f, d, vecs)
        if basis.dim == 0:
            continue
        generates, level, dims = filtration_dims(a, basis.rows)
        if generates:
            return basis.rows, level, dims, attempt + 1
    raise ResourceBudgetError(
        f"no generating subspace found for sample {index} within {retry_cap} attempts "
        "(the algebra may need more generators at every sampled dimension)",
        module="search",
    )


def _random_range(a: Algebra, seed: int, retry_cap: int, lo: int, hi: int):
    best = (-1, -1, None)
    gaps_data = []
    for index in range(lo, hi):
        rows, level, dims, _ = _random_generating(a, seed, index, retry_cap)
        seq = charseq_from_dims(dims, a.dim, a.unital)
        gaps_data.append((index, seq.terms))
        if level > best[0]:
            best = (level, index, rows)
    return best, gaps_data


def length_random(
    a: Algebra, samples: int, seed: int = 0, jobs: int = 1, retry_cap: int = 1000
) -> LengthReport:
    """Certified lower bound: the maximum set length over seeded random
    generating subspaces. ``samples == 0`` gives a vacuous report."""
    if samples < 0:
        raise ValidationError("samples must be >= 0", module="search")
    if samples == 0:
        return LengthReport(
            algebra=a.name, field=a.field.to_json(), mode="random",
            value=None, is_exact=False, witness=None,
            subspaces_scanned=0, samples=0, seed=seed,
        )
    results = run_ranges(samples, jobs, _random_range, (a, seed, retry_cap))
    best_len, best_index, best_rows = -1, -1, None
    for (blen, bidx, brows), _gaps in results:
        if blen > best_len:
            best_len, best_index, best_rows = blen, bidx, brows
    return LengthReport(
        algebra=a.name, field=a.field.to_json(), mode="random",
        value=best_len, is_exact=False,
        witness=[a.field.format_vec(r) for r in best_rows],
        subspaces_scanned=samples, samples=samples, seed=seed,
    )


# ---------------------------------------------------------------------------
# Bound certification
# ---------------------------------------------------------------------------


def certify_bounds(a: Algebra, evidence: Sequence[IdentityReport] = ()) -> BoundCertificate:
    """Applicable upper bounds for l(A), from structure and evidence.

    Evidence reports are the output of the classify module. An
    equational proof on basis tuples yields status "proved"; an
    exhaustive membership scan over the (finite) field as well; sampled
    membership evidence yields "sampled".
    """
    d = a.dim
    bounds = []
    if a.unital and d >= 2:
        bounds.append(Bound("unital-exponential", 2 ** (d - 2), "unital algebra", "proved"))
    by_name: dict = {}
    for rep in evidence:
        by_name.setdefault(rep.identity, []).append(rep)

    def steady(k: int, hypothesis: str, status: str):
        bounds.append(Bound(f"steady-growth-k{k}", d * (k - 1), hypothesis, status))

    for rep in evidence:
        if rep.identity == "k-round" and rep.verdict == "holds":
            steady(rep.k, f"{rep.k}-round proved on basis tuples (implies {rep.k}-sliding)", "proved")
        elif rep.identity == "k-based" and rep.verdict == "holds":
            steady(rep.k, f"{rep.k}-based proved on basis tuples (implies {rep.k}-mixing)", "proved")
        elif rep.identity in ("mixing", "sliding_l", "sliding_r"):
            if rep.verdict == "holds":
                steady(rep.k, f"{rep.identity} exhaustive over {a.field.to_json()}", "proved")
            elif rep.verdict == "holds-on-samples":
                steady(rep.k, f"{rep.identity} sampled ({rep.samples} tuples, seed {rep.seed})", "sampled")
    malcev = [r for r in by_name.get("malcev", []) if r.verdict == "holds"]
    if malcev:
        bounds.append(Bound("malcev", d - 1, "Malcev identities proved on basis tuples", "proved"))
        steady(3, "Malcev proved (Malcev algebras are 3-mixing)", "proved")
        jacobi_fails = [
            r for r in by_name.get("jacobi", [])
            if r.verdict == "fails" and r.counterexample is not None
        ]
        if jacobi_fails:
            bounds.append(
                Bound("malcev-non-lie", d - 2,
                      "Malcev proved and Jacobi fails with a counterexample", "proved")
            )
    # dedupe by (name, value), keep the strongest status
    rank = {"proved": 0, "sampled": 1, "assumed": 2}
    keep: dict = {}
    for b in bounds:
        key = (b.name, b.value)
        if key not in keep or rank[b.status] < rank[keep[key].status]:
            keep[key] = b
    ordered = tuple(sorted(keep.values(), key=lambda b: (b.value, b.name)))
    return BoundCertificate(ordered)


def assert_respects_bounds(cert: BoundCertificate, value: int, context: str = "") -> None:
    """Hard assertion: a computed length may never exceed a proved bound."""
    for b in cert.bounds:
        if b.status == "proved" and value > b.value:
            raise InvariantViolation(
                f"computed length {value} exceeds proved bound {b.name} = {b.value}"
                + (f" ({context})" if context else ""),
                module="search",
            )


# ---------------------------------------------------------------------------
# Gap surveys
# ---------------------------------------------------------------------------


@dataclass
class GapSurvey:
    algebra: str
    mode: str
    scanned: int
    j0: int
    j1: int
    j2: int
    max_gap: int
    max_length: int
    paired: bool  # every gap-2 position immediately preceded by a gap-0 position
    violations: tuple

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "mode": self.mode,
            "scanned": self.scanned,
            "gap_counts": {"0": self.j0, "1": self.j1, "2": self.j2},
            "max_gap": self.max_gap,
            "max_length": self.max_length,
            "paired_gap2": self.paired,
            "violations": list(self.violations),
        }


def _gap_stats(sequences) -> tuple:
    """Counts gaps over the whole sequence (all adjacent positions), a
    superset of the tail window used in dimension-counting arguments."""
    j0 = j1 = j2 = 0
    max_gap = 0
    violations = []
    for ident, terms in sequences:
        gaps = [b - a for a, b in zip(terms, terms[1:])]
        for g in gaps:
            if g == 0:
                j0 += 1
            elif g == 1:
                j1 += 1
            elif g == 2:
                j2 += 1
            max_gap = max(max_gap, g)
        for pos, g in enumerate(gaps):
            if g == 2 and (pos == 0 or gaps[pos - 1] != 0):
                violations.append({"sample": ident, "terms": list(terms), "position": pos + 1})
    return j0, j1, j2, max_gap, violations


def scan_gap_structure(
    a: Algebra,
    mode: str = "random",
    samples: int = 100,
    seed: int = 0,
    jobs: int = 1,
    retry_cap: int = 1000,
    budget: Optional[int] = None,
) -> GapSurvey:
    """Characteristic-sequence gap survey over generating subspaces.

    Random mode scans ``samples`` seeded generating subspaces (the same
    stream as :func:`length_random`); exhaustive mode scans all of them
    over a prime field. The paired-gap property (each jump of 2 right
    after a repeat) is reported, not assumed; callers with a Malcev
    proof may treat a violation as fatal.
    """
    sequences = []
    max_length = 0
    if mode == "random":
        results = run_ranges(samples, jobs, _random_range, (a, seed, retry_cap))
        scanned = samples
        for (blen, _bidx, _brows), gaps_data in results:
            max_length = max(max_length, blen)
            sequences.extend(gaps_data)
    elif mode == "exhaustive":
        if not isinstance(a.field, PrimeField):
            raise PreconditionError("exhaustive scan needs a prime field", module="search")
        total = count_subspaces(a.dim, a.field.p, range(1, a.dim + 1))
        allowed = subspace_budget(budget)
        if total > allowed:
            raise ResourceBudgetError(
                f"{total} subspaces exceed the budget {allowed}",
                module="search", total=total, budget=allowed,
            )
        scanned = 0
        for index, rows in enumerate(enumerate_subspaces(a.field, a.dim, dims=range(1, a.dim + 1))):
            generates, level, dims = filtration_dims(a, rows)
            scanned += 1
            if not generates:
                continue
            seq = charseq_from_dims(dims, a.dim, a.unital)
            sequences.append((index, seq.terms))
            max_length = max(max_length, level)
    else:
        raise ValidationError(f"unknown mode {mode!r}", module="search")
    j0, j1, j2, max_gap, violations = _gap_stats(sequences)
    return GapSurvey(
        algebra=a.name, mode=mode, scanned=scanned,
        j0=j0, j1=j1, j2=j2, max_gap=max_gap, max_length=max_length,
        paired=not violations, violations=tuple(violations),
    )
