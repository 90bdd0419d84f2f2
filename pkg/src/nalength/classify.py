"""Identity and class-membership checking.

Two kinds of checks live here.

*Equational checks* evaluate a formal identity (a linear combination of
bracketed monomials equated to another) on tuples of algebra elements.
For a multilinear identity, vanishing on all basis tuples is a proof
that it vanishes everywhere, so ``mode="basis"`` returns a proof-level
verdict. Non-multilinear identities (the two-variable Malcev axiom, for
instance) only admit seeded sampling, reported as ``holds-on-samples``.
The Malcev check therefore runs the equivalent multilinear form (valid
away from characteristic 2) on basis tuples.

*Membership checks* (k-mixing / k-sliding) ask whether designated
products land in the span of an evaluated monomial set. The condition
is a span inclusion, not an equation, so no finite basis check proves
it; over a prime field an exhaustive scan of all tuples is a proof
(budget permitting), otherwise seeded sampling gives evidence only and
the report never claims more.

Sampled tuples are drawn from a deterministic mixture (per tuple:
basis vectors with probability 1/2, else half-sparse or dense random
vectors), seeded per sample index, so failures of non-generic
conditions such as the membership checks are actually found and every
verdict is replayable from the report alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Optional, Sequence

from .algebra import Algebra
from .errors import (
    InvariantViolation,
    PreconditionError,
    ResourceBudgetError,
    ValidationError,
)
from .exactfield import BasisBuilder, Matrix, solve_affine
from .filtration import word_budget
from .monomials import MonomialSet, VarSet, build_D0, build_Dl, build_Dr, build_W
from .words import Word, enumerate_shapes, evaluate, format_word, leaf, node, parse_word

SIDES = ("mixing", "sliding_l", "sliding_r")


# ---------------------------------------------------------------------------
# Formal identities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FormalIdentity:
    """lhs = rhs, both formal integer combinations of bracketed monomials."""

    name: str
    variables: tuple
    lhs: tuple  # ((coeff, Word), ...)
    rhs: tuple

    @property
    def arity(self) -> int:
        return len(self.variables)

    @property
    def multilinear(self) -> bool:
        vars_ = set(self.variables)
        for _, w in self.lhs + self.rhs:
            seen = list(w.leaves())
            if len(seen) != len(vars_) or set(seen) != vars_:
                return False
        return True

    def residual(self, a: Algebra, assignment) -> tuple:
        """Value of lhs - rhs under the assignment."""
        f = a.field
        memo: dict = {}
        out = [f.zero] * a.dim
        for sign, terms in ((1, self.lhs), (-1, self.rhs)):
            for coeff, w in terms:
                c = f.from_int(sign * coeff)
                val = evaluate(a, assignment, w, memo)
                out = [f.add(x, f.mul(c, y)) for x, y in zip(out, val)]
        return tuple(f.normalize(x) for x in out)


def _ident(name, variables, lhs, rhs):
    return FormalIdentity(
        name,
        tuple(variables),
        tuple((c, parse_word(t)) for c, t in lhs),
        tuple((c, parse_word(t)) for c, t in rhs),
    )


ANTICOMMUTATIVE = _ident("anticommutative", "xy", [(1, "(x y)")], [(-1, "(y x)")])

JACOBI = _ident(
    "jacobi", "xyz",
    [(1, "((x y) z)"), (1, "((y z) x)"), (1, "((z x) y)")],
    [],
)

VINBERG = _ident(
    "vinberg", "xyz",
    [(1, "((x y) z)"), (-1, "(x (y z))")],
    [(1, "((x z) y)"), (-1, "(x (z y))")],
)

MALCEV_LINEARIZED = _ident(
    "malcev-linearized", "xyzw",
    [(1, "((x y) (z w))")],
    [(1, "(x ((w y) z))"), (1, "(w ((y z) x))"), (1, "(y ((z x) w))"), (1, "(z ((x w) y))")],
)

# the defining two-variable-repeated axiom; x occurs twice, so basis
# checking does not apply and callers must sample
MALCEV_AXIOM2 = _ident(
    "malcev-axiom2", "xyz",
    [(1, "((x y) (x z))")],
    [(1, "(((x y) z) x)"), (1, "(((y z) x) x)"), (1, "(((z x) x) y)")],
)

MALCEV_PAIR_SWAP = _ident(
    "malcev-pair-swap", "abcw",
    [(1, "((a b) (c w))")],
    [
        (-1, "((a c) (b w))"),
        (1, "(a ((w b) c))"),
        (1, "(b ((c a) w))"),
        (1, "(c ((a w) b))"),
        (1, "(a ((w c) b))"),
        (1, "(c ((b a) w))"),
        (1, "(b ((a w) c))"),
    ],
)

# Obtained by expanding (a b)((c d) w) three times through the
# four-variable identity (solving it for the block products
# (d(ab))(cw), ((cw)b)(da), (w a)(d b)) and cleaning signs with
# anticommutativity. All thirteen terms are needed: dropping the
# d(((c w) a) b) / d((w c)(a b)) terms or swapping a and b inside
# c(d((w b) a)) breaks the identity on the octonion-commutator algebra
# (residual -16 e4 at a = b = w = e5, c = e2, d = e3).
MALCEV_BLOCK_SWAP = _ident(
    "malcev-block-swap", "abcdw",
    [(1, "((a b) ((c d) w))")],
    [
        (-1, "((c d) ((a b) w))"),
        (1, "(((c w) b) (d a))"),
        (-1, "(a ((b d) (c w)))"),
        (-1, "(b ((d (c w)) a))"),
        (-1, "(d (((c w) a) b))"),
        (-1, "(d ((w (a b)) c))"),
        (-1, "(d ((w c) (a b)))"),
        (-1, "((a b) ((d w) c))"),
        (-1, "(c ((d b) (a w)))"),
        (1, "(c (b ((a d) w)))"),
        (1, "(c (a ((d w) b)))"),
        (1, "(c (d ((w b) a)))"),
        (-1, "(c ((d w) (a b)))"),
    ],
)


def _y_products(k: int) -> list:
    """All bracketings of the ordered product y1 ... yk."""
    ys = [leaf(f"y{i}") for i in range(1, k + 1)]
    out = []
    for shape in enumerate_shapes(k):
        w, _ = _fill_shape(shape, ys, 0)
        out.append(w)
    return out


def _fill_shape(shape, leaves_, pos):
    if shape.left is None:
        return leaves_[pos], pos + 1
    lw, pos = _fill_shape(shape.left, leaves_, pos)
    rw, pos = _fill_shape(shape.right, leaves_, pos)
    return node(lw, rw), pos


def k_round_identities(k: int) -> list:
    """x v = 0 for every bracketing v of y1 ... yk."""
    if k < 2:
        raise ValidationError("k-round needs k >= 2", module="classify")
    x = leaf("x")
    variables = ("x",) + tuple(f"y{i}" for i in range(1, k + 1))
    return [
        FormalIdentity(f"k-round[{format_word(v)}]", variables, ((1, node(x, v)),), ())
        for v in _y_products(k)
    ]


def k_based_identities(k: int) -> list:
    """x (u v) = u (x v) and (u v) x = (u x) v over all bracketings
    u v of y1 ... yk (u, v the top factors)."""
    if k < 2:
        raise ValidationError("k-based needs k >= 2", module="classify")
    x = leaf("x")
    variables = ("x",) + tuple(f"y{i}" for i in range(1, k + 1))
    out = []
    for w in _y_products(k):
        u, v = w.left, w.right
        out.append(
            FormalIdentity(
                f"k-based-left[{format_word(w)}]",
                variables,
                ((1, node(x, w)),),
                ((1, node(u, node(x, v))),),
            )
        )
        out.append(
            FormalIdentity(
                f"k-based-right[{format_word(w)}]",
                variables,
                ((1, node(w, x)),),
                ((1, node(node(u, x), v)),),
            )
        )
    return out


def identity_family(name: str, k: Optional[int] = None) -> list:
    simple = {
        "anticommutative": ANTICOMMUTATIVE,
        "jacobi": JACOBI,
        "vinberg": VINBERG,
        "malcev-linearized": MALCEV_LINEARIZED,
        "malcev-axiom2": MALCEV_AXIOM2,
        "malcev-pair-swap": MALCEV_PAIR_SWAP,
        "malcev-block-swap": MALCEV_BLOCK_SWAP,
    }
    if name in simple:
        return [simple[name]]
    if name == "k-round":
        if k is None:
            raise ValidationError("k-round needs k", module="classify")
        return k_round_identities(k)
    if name == "k-based":
        if k is None:
            raise ValidationError("k-based needs k", module="classify")
        return k_based_identities(k)
    raise ValidationError(f"unknown identity {name!r}", module="classify")


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass
class IdentityReport:
    identity: str
    verdict: str  # "holds" | "fails" | "holds-on-samples"
    mode: str  # "basis" | "sampled" | "exhaustive"
    k: Optional[int] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    counterexample: Optional[dict] = None
    convention: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "verdict": self.verdict,
            "mode": self.mode,
            "k": self.k,
            "samples": self.samples,
            "seed": self.seed,
            "counterexample": self.counterexample,
            "convention": self.convention,
        }

    @property
    def proved(self) -> bool:
        return self.verdict == "holds"


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def _sample_rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * 1_000_003 + index + 1)


def _sample_vectors(a: Algebra, rng: random.Random, count: int) -> list:
    f, d = a.field, a.dim
    kind = rng.randrange(4)
    out = []
    for _ in range(count):
        if kind <= 1:
            out.append(a.basis_vector(rng.randrange(d) + 1))
        elif kind == 2:
            out.append(
                tuple(f.normalize(f.random_scalar(rng)) if rng.randrange(2) else f.zero for _ in range(d))
            )
        else:
            out.append(tuple(f.normalize(f.random_scalar(rng)) for _ in range(d)))
    return out


def _format_assignment(a: Algebra, assignment: dict) -> dict:
    return {str(k): a.field.format_vec(v) for k, v in sorted(assignment.items(), key=lambda kv: str(kv[0]))}


def _parse_assignment(a: Algebra, obj: dict) -> dict:
    return {k: a.field.parse_vec(v) for k, v in obj.items()}


# ---------------------------------------------------------------------------
# Equational checks
# ---------------------------------------------------------------------------


def check_identity(
    a: Algebra,
    idents,
    mode: str = "basis",
    samples: int = 100,
    seed: int = 0,
    name: Optional[str] = None,
    k: Optional[int] = None,
) -> IdentityReport:
    """Check one identity or a family (a list) on one algebra.

    ``mode="basis"`` needs every member multilinear and yields a proof;
    ``mode="sampled"`` evaluates on seeded random tuples.
    """
    if isinstance(idents, FormalIdentity):
        idents = [idents]
    if not idents:
        raise ValidationError("no identities given", module="classify")
    report_name = name if name is not None else idents[0].name
    if mode == "basis":
        bad = [i.name for i in idents if not i.multilinear]
        if bad:
            raise PreconditionError(
                f"basis mode needs multilinear identities; {bad} are not "
                "(use sampled mode or a linearized form)",
                module="classify",
            )
        d = a.dim
        for ident in idents:
            basis = [a.basis_vector(i + 1) for i in range(d)]
            for combo in product(range(d), repeat=ident.arity):
                assignment = {v: basis[ix] for v, ix in zip(ident.variables, combo)}
                res = ident.residual(a, assignment)
                if any(res):
                    return IdentityReport(
                        identity=report_name,
                        verdict="fails",
                        mode="basis",
                        k=k,
                        counterexample={
                            "kind": "identity",
                            "member": ident.name,
                            "basis_indices": [ix + 1 for ix in combo],
                            "assignment": _format_assignment(a, assignment),
                            "residual": a.field.format_vec(res),
                        },
                    )
        return IdentityReport(identity=report_name, verdict="holds", mode="basis", k=k)
    if mode != "sampled":
        raise ValidationError(f"unknown mode {mode!r}", module="classify")
    for idx in range(samples):
        rng = _sample_rng(seed, idx)
        for ident in idents:
            vecs = _sample_vectors(a, rng, ident.arity)
            assignment = dict(zip(ident.variables, vecs))
            res = ident.residual(a, assignment)
            if any(res):
                return IdentityReport(
                    identity=report_name,
                    verdict="fails",
                    mode="sampled",
                    k=k,
                    samples=samples,
                    seed=seed,
                    counterexample={
                        "kind": "identity",
                        "member": ident.name,
                        "sample_index": idx,
                        "assignment": _format_assignment(a, assignment),
                        "residual": a.field.format_vec(res),
                    },
                )
    return IdentityReport(
        identity=report_name, verdict="holds-on-samples", mode="sampled",
        k=k, samples=samples, seed=seed,
    )


def check_anticommutative(a: Algebra) -> IdentityReport:
    return check_identity(a, ANTICOMMUTATIVE)


def check_jacobi(a: Algebra) -> IdentityReport:
    return check_identity(a, JACOBI)


def check_malcev(a: Algebra) -> IdentityReport:
    """Anticommutativity plus the linearized four-variable identity, both
    proved on basis tuples. Valid only away from characteristic 2."""
    if a.field.characteristic == 2:
        raise PreconditionError(
            "the Malcev check requires characteristic != 2", module="classify"
        )
    r1 = check_identity(a, ANTICOMMUTATIVE)
    if r1.verdict == "fails":
        return IdentityReport("malcev", "fails", "basis", counterexample=r1.counterexample)
    r2 = check_identity(a, MALCEV_LINEARIZED)
    if r2.verdict == "fails":
        return IdentityReport("malcev", "fails", "basis", counterexample=r2.counterexample)
    return IdentityReport("malcev", "holds", "basis")


def verify_rewrites(a: Algebra, samples: int = 100, seed: int = 0) -> IdentityReport:
    """The two product-rewriting identities used by the Malcev length
    argument, on seeded random tuples.

    They are theorems for Malcev algebras away from characteristic 2,
    so the Malcev check must pass first, and any failing tuple is a
    hard error rather than a verdict.
    """
    base = check_malcev(a)
    if base.verdict != "holds":
        raise PreconditionError(
            "rewrite verification requires a Malcev algebra (check_malcev failed)",
            module="classify",
        )
    for ident in (MALCEV_PAIR_SWAP, MALCEV_BLOCK_SWAP):
        rep = check_identity(a, ident, mode="sampled", samples=samples, seed=seed)
        if rep.verdict != "holds-on-samples":
            raise InvariantViolation(
                f"{ident.name} failed on a Malcev-verified algebra: "
                f"{rep.counterexample}",
                module="classify",
            )
    return IdentityReport(
        "malcev-rewrites", "holds-on-samples", "sampled", samples=samples, seed=seed
    )


# ---------------------------------------------------------------------------
# Membership checks (k-mixing / k-sliding)
# ---------------------------------------------------------------------------


def _membership_data(a: Algebra, k: int, side: str, unital_convention: bool):
    if side not in SIDES:
        raise ValidationError(f"side must be one of {SIDES}", module="classify")
    if not 2 <= k <= 4:
        raise ValidationError(f"supported k range is 2..4, got {k}", module="classify")
    labels = ("x",) + tuple(f"y{i}" for i in range(1, k + 1))
    vs = VarSet(labels, unital=a.unital and unital_convention)
    if side == "mixing":
        span_set = build_D0(vs)
    elif side == "sliding_l":
        span_set = build_Dl(vs)
    else:
        span_set = build_Dr(vs)
    x = leaf("x")
    w_tail = build_W(vs.tail).sorted_words()
    if side == "mixing":
        targets = [node(x, v) for v in w_tail] + [node(v, x) for v in w_tail]
    elif side == "sliding_l":
        targets = [node(v, x) for v in w_tail]
    else:
        targets = [node(x, v) for v in w_tail]
    return labels, span_set.sorted_words(), targets, vs.unital


def _membership_violation(a: Algebra, span_words, targets, assignment):
    """First target outside the span of the evaluated monomials, if any."""
    memo: dict = {}
    span = BasisBuilder(a.field, a.dim)
    for w in span_words:
        span.insert(evaluate(a, assignment, w, memo))
        if span.dim == a.dim:
            return None  # the span is everything
    for t in targets:
        if not span.contains(evaluate(a, assignment, t, memo)):
            return t
    return None


def _exhaustive_tuple(a: Algebra, index: int, arity: int) -> list:
    # little-endian base-p digits; coordinate j of variable v is digit v*d+j
    p, d = a.field.p, a.dim
    out = []
    for _ in range(arity):
        vec = []
        for _ in range(d):
            vec.append(index % p)
            index //= p
        out.append(tuple(vec))
    return out


def check_k_membership(
    a: Algebra,
    k: int,
    side: str,
    mode: str = "sampled",
    samples: int = 100,
    seed: int = 0,
    unital_convention: bool = True,
    budget: Optional[int] = None,
    jobs: int = 1,
) -> IdentityReport:
    """Span-membership check behind the k-mixing / k-sliding classes.

    mixing: x v and v x for every bracketing v of y1..yk must lie in
    the span of the evaluated head-not-bare monomial set; sliding_l
    checks v x against the left-sided set, sliding_r checks x v against
    the right-sided one. Exhaustive mode (prime fields only) scans all
    tuples and its "holds" is a proof; sampled mode reports
    holds-on-samples at best.
    """
    labels, span_words, targets, unital_used = _membership_data(a, k, side, unital_convention)
    convention = {"unital_one_in_span": unital_used}
    arity = k + 1

    def report(verdict, counterexample=None, n=None):
        return IdentityReport(
            identity=side, verdict=verdict, mode=mode, k=k,
            samples=n, seed=seed if mode == "sampled" else None,
            counterexample=counterexample, convention=convention,
        )

    def fail_report(assignment, target, index, n):
        return report(
            "fails",
            counterexample={
                "kind": "membership",
                "side": side,
                "k": k,
                "unital_convention": unital_convention,
                "index": index,
                "assignment": _format_assignment(a, assignment),
                "target": format_word(target),
            },
            n=n,
        )

    if mode == "exhaustive":
        if a.field.p is None:
            raise PreconditionError(
                "exhaustive membership checking needs a prime field", module="classify"
            )
        total = (a.field.p ** a.dim) ** arity
        allowed = word_budget(budget)
        if total > allowed:
            raise ResourceBudgetError(
                f"exhaustive scan of {total} tuples exceeds the budget {allowed}",
                module="classify", total=total, budget=allowed,
            )
        first = _scan(
            total, jobs, _membership_range,
            (a, k, side, unital_convention, "exhaustive", seed),
        )
        if first is not None:
            index, assignment, target = first
            return fail_report(assignment, target, index, None)
        return report("holds")

    if mode != "sampled":
        raise ValidationError(f"unknown mode {mode!r}", module="classify")
    first = _scan(
        samples, jobs, _membership_range,
        (a, k, side, unital_convention, "sampled", seed),
    )
    if first is not None:
        index, assignment, target = first
        return fail_report(assignment, target, index, samples)
    return report("holds-on-samples", n=samples)


def _membership_range(a, k, side, unital_convention, mode, seed, lo, hi):
    """First violation with index in [lo, hi), or None (worker body)."""
    labels, span_words, targets, _ = _membership_data(a, k, side, unital_convention)
    arity = k + 1
    for index in range(lo, hi):
        if mode == "sampled":
            vecs = _sample_vectors(a, _sample_rng(seed, index), arity)
        else:
            vecs = _exhaustive_tuple(a, index, arity)
        assignment = dict(zip(labels, vecs))
        bad = _membership_violation(a, span_words, targets, assignment)
        if bad is not None:
            return index, assignment, bad
    return None


def _scan(total: int, jobs: int, worker, args):
    """First violation over [0, total) in index order; chunked when jobs > 1."""
    from .parallel import parallel_first

    return parallel_first(total, jobs, worker, args, chunks_per_job=1 if jobs <= 1 else 4)


def replay_membership_counterexample(a: Algebra, counterexample: dict) -> bool:
    """Re-verify a membership counterexample from its report dict alone.

    True iff the recorded target really lies outside the recorded span.
    """
    k = counterexample["k"]
    side = counterexample["side"]
    labels, span_words, _targets, _ = _membership_data(
        a, k, side, counterexample.get("unital_convention", True)
    )
    assignment = _parse_assignment(a, counterexample["assignment"])
    target = parse_word(counterexample["target"])
    memo: dict = {}
    span = BasisBuilder(a.field, a.dim)
    for w in span_words:
        span.insert(evaluate(a, assignment, w, memo))
    return not span.contains(evaluate(a, assignment, target, memo))


def replay_identity_counterexample(a: Algebra, report: IdentityReport) -> bool:
    """Re-verify an equational counterexample from the report alone."""
    ce = report.counterexample
    members = identity_family(report.identity, report.k) if report.identity not in (
        "malcev",
    ) else [ANTICOMMUTATIVE, MALCEV_LINEARIZED]
    ident = next(i for i in members if i.name == ce.get("member", members[0].name))
    assignment = _parse_assignment(a, ce["assignment"])
    return any(ident.residual(a, assignment))


# ---------------------------------------------------------------------------
# Representation support (R / U_l / U_r analysis)
# ---------------------------------------------------------------------------


@dataclass
class RepresentationSupport:
    target: str
    set_kind: str
    k: int
    in_span: bool
    representation: Optional[dict]  # monomial text -> scalar text, one solution
    support: tuple  # full-length monomials in some representation

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "set_kind": self.set_kind,
            "k": self.k,
            "in_span": self.in_span,
            "representation": self.representation,
            "support": list(self.support),
        }


def decompose(
    a: Algebra,
    target_word: Word,
    vectors: Sequence,
    set_kind: str = "D0",
    k: Optional[int] = None,
    labels: Optional[tuple] = None,
    unital_convention: bool = True,
) -> RepresentationSupport:
    """Represent the value of ``target_word`` over the evaluated monomial
    set and report which full-length monomials occur with a nonzero
    coefficient in at least one representation (nonzero in the
    particular solution, or varying over the nullspace).
    """
    if k is None:
        k = len(vectors) - 1
    if labels is None:
        labels = ("x",) + tuple(f"y{i}" for i in range(1, k + 1))
    if len(vectors) != k + 1 or len(labels) != k + 1:
        raise ValidationError("need one head vector plus k tail vectors", module="classify")
    vs = VarSet(tuple(labels), unital=a.unital and unital_convention)
    builder = {"D0": build_D0, "Dl": build_Dl, "Dr": build_Dr}.get(set_kind)
    if builder is None:
        raise ValidationError(f"set_kind must be D0, Dl or Dr, got {set_kind!r}", module="classify")
    mon_set: MonomialSet = builder(vs)
    monomials = mon_set.sorted_words()
    assignment = dict(zip(labels, (a.field.vec(v) for v in vectors)))
    memo: dict = {}
    columns = [evaluate(a, assignment, w, memo) for w in monomials]
    target_value = evaluate(a, assignment, target_word, memo)
    f = a.field
    matrix = Matrix.from_rows(f, [[col[i] for col in columns] for i in range(a.dim)])
    solved = solve_affine(matrix, target_value)
    texts = [format_word(w) for w in monomials]
    if solved is None:
        return RepresentationSupport(
            target=format_word(target_word), set_kind=set_kind, k=k,
            in_span=False, representation=None, support=(),
        )
    particular, nullspace = solved
    full = [j for j, w in enumerate(monomials) if w.length == k + 1]
    varying = set()
    for row in nullspace.rows:
        for j in full:
            if not f.is_zero(row[j]):
                varying.add(j)
    support = sorted(
        texts[j] for j in full if not f.is_zero(particular[j]) or j in varying
    )
    representation = {
        texts[j]: f.format(particular[j])
        for j in range(len(monomials))
        if not f.is_zero(particular[j])
    }
    return RepresentationSupport(
        target=format_word(target_word), set_kind=set_kind, k=k,
        in_span=True, representation=representation, support=tuple(support),
    )


# ---------------------------------------------------------------------------
# Battery
# ---------------------------------------------------------------------------


def classify_battery(
    a: Algebra, samples: int = 100, seed: int = 0, ks=(2, 3), jobs: int = 1
) -> list:
    """The standard classification run: named identities on basis tuples,
    then sampled membership checks for each k."""
    reports = [
        check_anticommutative(a),
        check_jacobi(a),
        check_identity(a, VINBERG),
    ]
    if a.field.characteristic != 2:
        reports.append(check_malcev(a))
    for k in ks:
        reports.append(check_identity(a, k_round_identities(k), name="k-round", k=k))
        reports.append(check_identity(a, k_based_identities(k), name="k-based", k=k))
        for side in SIDES:
            reports.append(
                check_k_membership(a, k, side, mode="sampled", samples=samples, seed=seed, jobs=jobs)
            )
    return reports
