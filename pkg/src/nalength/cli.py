"""Command-line front end.

Every run emits exactly one JSON report on stdout (or to ``--out``).
Exit codes: 0 success, 1 mathematical verdict "fails" or a failed
assertion, 2 usage/file errors, 3 resource budget exceeded. The
``NALENGTH_BUDGET`` environment variable overrides the default
enumeration budgets; ``--jobs`` parallelises the scans without
affecting any output byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import algebra as alg
from . import classify as cls
from . import filtration as flt
from . import search as srch
from . import words as wrd
from .errors import (
    InvariantViolation,
    NalengthError,
    ParseError,
    ResourceBudgetError,
    ValidationError,
)
from .exactfield import field_from_text

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _emit(report: dict, out: Optional[str], pretty: bool) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if pretty:
        text = _render(report) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and val:
                lines.append(f"{pad}{key}:")
                lines.append(_render(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(val)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(
            _render(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {json.dumps(v)}"
            for v in obj
        )
    return f"{pad}{json.dumps(obj)}"


def _parse_gens(a: alg.Algebra, spec: str) -> flt.GenSet:
    """`@basis:1,3` picks basis vectors; otherwise semicolon-separated
    vectors of comma-separated scalar strings."""
    spec = spec.strip()
    if spec.startswith("@basis:"):
        try:
            indices = [int(t) for t in spec[len("@basis:"):].split(",") if t.strip()]
        except ValueError as exc:
            raise ParseError(f"bad basis index list {spec!r}: {exc}", module="cli")
        if not indices or any(i < 1 or i > a.dim for i in indices):
            raise ParseError(f"basis indices must lie in 1..{a.dim}", module="cli")
        return flt.GenSet.from_basis_indices(a, indices)
    vectors = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        vectors.append(a.field.parse_vec([t.strip() for t in part.split(",")]))
    if not vectors:
        raise ParseError("empty generator specification", module="cli")
    return flt.GenSet.build(a, vectors)


def _load_algebra(path: str) -> alg.Algebra:
    try:
        return alg.load(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}", module="cli")


def _filtration_report(a: alg.Algebra, gens: flt.GenSet, max_level=None) -> dict:
    f = flt.compute_filtration(a, gens, max_level)
    report = f.to_json()
    report["algebra"] = a.name
    report["field"] = a.field.to_json()
    return report


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_example(args) -> tuple[int, dict]:
    field = field_from_text(args.field)
    a = alg.build(args.family, field, d=args.d, k=args.k)
    return EXIT_OK, alg.to_json_dict(a)


def _cmd_charseq(args) -> tuple[int, dict]:
    a = _load_algebra(args.algebra)
    report = _filtration_report(a, _parse_gens(a, args.gens), args.max_level)
    return EXIT_OK, report


def _cmd_length_set(args) -> tuple[int, dict]:
    a = _load_algebra(args.algebra)
    gens = _parse_gens(a, args.gens)
    value = flt.length_of_set(a, gens)
    report = _filtration_report(a, gens)
    report["length"] = value
    return EXIT_OK, report


_MEMBERSHIP_NAMES = {"mixing", "sliding_l", "sliding_r"}


def _cmd_check(args) -> tuple[int, dict]:
    a = _load_algebra(args.algebra)
    name = args.identity
    if name == "rewrites":
        rep = cls.verify_rewrites(a, samples=args.samples, seed=args.seed)
    elif name in _MEMBERSHIP_NAMES:
        if args.k is None:
            raise ValidationError(f"--identity {name} needs --k", module="cli")
        rep = cls.check_k_membership(
            a, args.k, name, mode=args.mode or "sampled",
            samples=args.samples, seed=args.seed, jobs=args.jobs,
        )
    elif name == "malcev":
        rep = cls.check_malcev(a)
    else:
        family = cls.identity_family(name, args.k)
        mode = args.mode
        if mode is None:
            mode = "basis" if all(i.multilinear for i in family) else "sampled"
        rep = cls.check_identity(
            a, family, mode=mode, samples=args.samples, seed=args.seed,
            name=name, k=args.k,
        )
    out = rep.to_json()
    out["algebra"] = a.name
    code = EXIT_FAILS if rep.verdict == "fails" else EXIT_OK
    return code, out


def _cmd_classify(args) -> tuple[int, dict]:
    a = _load_algebra(args.algebra)
    reports = cls.classify_battery(a, samples=args.samples, seed=args.seed, jobs=args.jobs)
    cert = srch.certify_bounds(a, reports)
    return EXIT_OK, {
        "algebra": a.name,
        "field": a.field.to_json(),
        "checks": [r.to_json() for r in reports],
        "bounds": cert.to_json(),
    }


def _quick_evidence(a: alg.Algebra) -> list:
    """Proof-level battery for bound certification (basis checks only)."""
    reports = [cls.check_anticommutative(a), cls.check_jacobi(a)]
    if a.field.characteristic != 2:
        reports.append(cls.check_malcev(a))
    for k in (2, 3):
        if k <= a.dim:
            reports.append(cls.check_identity(a, cls.k_round_identities(k), name="k-round", k=k))
            reports.append(cls.check_identity(a, cls.k_based_identities(k), name="k-based", k=k))
    return reports


def _cmd_length(args) -> tuple[int, dict]:
    a = _load_algebra(args.algebra)
    if args.mode == "exhaustive":
        rep = srch.length_exhaustive(a, budget=args.budget, jobs=args.jobs)
    else:
        rep = srch.length_random(a, samples=args.samples, seed=args.seed, jobs=args.jobs)
    cert = srch.certify_bounds(a, _quick_evidence(a))
    if rep.value is not None:
        srch.assert_respects_bounds(cert, rep.value, context=f"{a.name} {args.mode}")
    out = rep.to_json()
    out["bounds"] = cert.to_json()["bounds"]
    return EXIT_OK, out


def _cmd_words(args) -> tuple[int, dict]:
    a = _load_algebra(args.algebra)
    gens = _parse_gens(a, args.gens)
    length = args.len
    flt.guard_enumeration(gens.num_gens, length, args.budget)
    assignment = gens.default_assignment(a)
    filt = flt.compute_filtration(a, gens, max_level=max(length - 1, 1))
    from .exactfield import BasisBuilder

    prior = BasisBuilder(a.field, a.dim, filt.level(length - 1))
    entries = []
    for w in wrd.enumerate_words(gens.num_gens, length):
        if args.k_bounded is not None and not wrd.is_k_bounded(w, args.k_bounded)[0]:
            continue
        value = wrd.evaluate(a, assignment, w)
        irreducible = not prior.contains(value)
        if args.irreducible and not irreducible:
            continue
        entry = {
            "word": wrd.format_word(w),
            "value": a.field.format_vec(value),
            "irreducible": irreducible,
        }
        if args.step and length >= 2:
            entry["sigma"] = wrd.step_sigma(w)
        entries.append(entry)
    return EXIT_OK, {
        "algebra": a.name,
        "length": length,
        "count": len(entries),
        "words": entries,
    }


def _cmd_verify_paper(args) -> tuple[int, dict]:
    from .acceptance import run_suite

    report = run_suite(jobs=args.jobs, quick=args.quick)
    return (EXIT_OK if report["all_passed"] else EXIT_FAILS), report


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nalength",
        description="Exact length computations for finite-dimensional "
        "nonassociative algebras given by structure constants.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, gens=False):
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        sp.add_argument("--pretty", action="store_true", help="human-readable rendering")
        if gens:
            sp.add_argument("--gens", required=True,
                            help="generators: '@basis:1,3' or '1,0;0,1' style vectors")

    sp = sub.add_parser("example", help="emit a built-in example algebra as JSON")
    sp.add_argument("--family", required=True, choices=list(alg.FAMILIES))
    sp.add_argument("--d", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--field", required=True, help="Q or a prime p")
    common(sp)
    sp.set_defaults(fn=_cmd_example)

    sp = sub.add_parser("charseq", help="filtration dims and characteristic sequence")
    sp.add_argument("algebra")
    sp.add_argument("--max-level", type=int, default=None)
    common(sp, gens=True)
    sp.set_defaults(fn=_cmd_charseq)

    sp = sub.add_parser("length-set", help="length of a generating set")
    sp.add_argument("algebra")
    common(sp, gens=True)
    sp.set_defaults(fn=_cmd_length_set)

    sp = sub.add_parser("check", help="check one identity or membership property")
    sp.add_argument("algebra")
    sp.add_argument("--identity", required=True,
                    help="anticommutative | jacobi | vinberg | malcev | "
                         "malcev-linearized | malcev-axiom2 | k-round | k-based | "
                         "mixing | sliding_l | sliding_r | rewrites")
    sp.add_argument("--k", type=int)
    sp.add_argument("--mode", choices=["basis", "sampled", "exhaustive"])
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(fn=_cmd_check)

    sp = sub.add_parser("classify", help="full identity and membership battery")
    sp.add_argument("algebra")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(fn=_cmd_classify)

    sp = sub.add_parser("length", help="algebra length: exhaustive or random lower bound")
    sp.add_argument("algebra")
    sp.add_argument("--mode", required=True, choices=["exhaustive", "random"])
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(fn=_cmd_length)

    sp = sub.add_parser("words", help="enumerate and evaluate words of one length")
    sp.add_argument("algebra")
    sp.add_argument("--len", type=int, required=True)
    sp.add_argument("--irreducible", action="store_true")
    sp.add_argument("--k-bounded", type=int, default=None, dest="k_bounded")
    sp.add_argument("--step", action="store_true", help="include the step function value")
    sp.add_argument("--budget", type=int, default=None)
    common(sp, gens=True)
    sp.set_defaults(fn=_cmd_words)

    sp = sub.add_parser("verify-paper", help="run the built-in acceptance suite")
    sp.add_argument("--quick", action="store_true", help="reduced sample sizes and corpus")
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(fn=_cmd_verify_paper)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code, report = args.fn(args)
    except ResourceBudgetError as exc:
        _emit(exc.to_json(), args.out, args.pretty)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        _emit(exc.to_json(), args.out, args.pretty)
        return EXIT_FAILS
    except NalengthError as exc:
        _emit(exc.to_json(), args.out, args.pretty)
        return EXIT_USAGE
    _emit(report, args.out, args.pretty)
    return code


if __name__ == "__main__":
    sys.exit(main())
