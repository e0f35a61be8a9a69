"""Command-line front end.

Exit status: 0 computed (or property holds), 1 property violated (``verify``),
2 input error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from ekrkit import bollobas, bounds, compression, predicates, search
from ekrkit.io import (
    DocumentError,
    dumps,
    family_to_doc,
    load_family,
    load_system,
    rational_str,
    system_to_doc,
)
from ekrkit.sets import elements_of

FAMILY_PREDICATES = (
    "t-intersecting",
    "relaxed-pairwise",
    "up-set",
    "r-wise",
    "relaxed-rwise",
    "condition-one",
    "cross-t-intersecting",
    "cross-relaxed",
)
SYSTEM_PREDICATES = ("pair-conditions", "pair-conditions-weak", "disjoint")


class InputError(Exception):
    pass


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return rational_str(x)
    if isinstance(x, compression.SetFamily):
        return family_to_doc(x)
    if isinstance(x, bollobas.PairSystem):
        return system_to_doc(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(args, text: str, doc: Any) -> None:
    if args.json:
        sys.stdout.write(dumps(_jsonable(doc)))
    else:
        print(text)


def _write_or_print(args, doc: dict, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(dumps(doc), encoding="utf-8")
        if not args.json:
            print(f"wrote {out}")
        else:
            sys.stdout.write(dumps(doc))
    elif args.json:
        sys.stdout.write(dumps(doc))
    else:
        print(text)


def _sets_text(masks: Sequence[int]) -> str:
    return ", ".join("{" + ",".join(map(str, elements_of(m))) + "}" for m in masks)


def _first_bad_pair(members: Sequence[int], ok) -> tuple[int, int] | None:
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if not ok(a, b):
                return a, b
    return None


def _need(value, name: str):
    if value is None:
        raise InputError(f"--{name} is required for this predicate")
    return value


def cmd_verify(args) -> int:
    name = args.predicate
    if name in SYSTEM_PREDICATES:
        if len(args.files) != 1:
            raise InputError(f"{name} takes exactly one pair-system file")
        system = load_system(args.files[0])
        if name == "disjoint":
            holds = bollobas.verify_disjointness_exact(system)
            _emit(args, str(holds).lower(), {"predicate": name, "holds": holds})
            return 0 if holds else 1
        report = bollobas.check_conditions(system)
        third = report.c_holds if name == "pair-conditions" else report.c_prime_holds
        holds = report.a_holds and report.b_holds and third
        keep = {"a", "b", "c" if name == "pair-conditions" else "c'"}
        violations = [{"indices": list(ix), "clause": cl} for ix, cl in report.violations if cl in keep]
        doc = {
            "predicate": name,
            "holds": holds,
            "a": report.a_holds,
            "b": report.b_holds,
            "c": report.c_holds,
            "c_prime": report.c_prime_holds,
            "violations": violations,
        }
        lines = [str(holds).lower()] + [f"violation ({v['clause']}) at indices {v['indices']}" for v in violations]
        _emit(args, "\n".join(lines), doc)
        return 0 if holds else 1

    if name not in FAMILY_PREDICATES:
        raise InputError(f"unknown predicate {name!r}")
    fams = [load_family(f) for f in args.files]
    if not fams:
        raise InputError("no family file given")
    multi = name in ("condition-one", "cross-t-intersecting", "cross-relaxed")
    if not multi and len(fams) != 1:
        raise InputError(f"{name} takes exactly one family file")
    if name in ("cross-t-intersecting", "cross-relaxed") and len(fams) < 2:
        raise InputError(f"{name} needs at least two family files")
    fam = fams[0]
    witness: tuple[int, ...] | None = None
    if name == "t-intersecting":
        t = _need(args.t, "t")
        witness = _first_bad_pair(fam.members, lambda a, b: (a & b).bit_count() >= t)
    elif name == "relaxed-pairwise":
        k = fam.k if args.k is None else args.k
        t = _need(args.t, "t")
        witness = _first_bad_pair(fam.members, lambda a, b: predicates.relaxed_pair_ok(a, b, k, t))
    elif name == "up-set":
        holds = compression.is_up_set(fam)
        _emit(args, str(holds).lower(), {"predicate": name, "holds": holds, "violations": []})
        return 0 if holds else 1
    elif name == "r-wise":
        witness = predicates.first_rwise_violation(fam, _need(args.r, "r"), None)
    elif name == "relaxed-rwise":
        k = fam.k if args.k is None else args.k
        witness = predicates.first_rwise_violation(fam, _need(args.r, "r"), k)
    elif name == "condition-one":
        k = min(f.k for f in fams) if args.k is None else args.k
        witness = predicates.condition_one_violation(fams, k, _need(args.t, "t"))
    elif name == "cross-t-intersecting":
        holds = predicates.are_cross_t_intersecting(fams, _need(args.t, "t"))
        _emit(args, str(holds).lower(), {"predicate": name, "holds": holds, "violations": []})
        return 0 if holds else 1
    else:
        holds = predicates.satisfies_cross_relaxed(fams, [f.k for f in fams], _need(args.t, "t"))
        _emit(args, str(holds).lower(), {"predicate": name, "holds": holds, "violations": []})
        return 0 if holds else 1
    holds = witness is None
    violations = [] if holds else [[elements_of(m) for m in witness]]
    text = str(holds).lower()
    if not holds:
        text += f"\nviolation: {_sets_text(witness)}"
    _emit(args, text, {"predicate": name, "holds": holds, "violations": violations})
    return 0 if holds else 1


def cmd_compress(args) -> int:
    fam = load_family(args.family)
    if args.closure:
        out = compression.up_closure(fam)
    else:
        if args.element is None:
            raise InputError("give --element I or --closure")
        try:
            out = compression.compress_once(fam, args.element, args.rank)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    _write_or_print(args, family_to_doc(out), _sets_text(out.members))
    return 0


def cmd_bound(args) -> int:
    kind = args.kind
    if kind == "ekr":
        value = bounds.ekr_bound(_need(args.n, "n"), _need(args.k, "k"), _need(args.t, "t"))
        doc = {"bound": kind, "value": value}
    elif kind == "uniform":
        res = bounds.uniform_ekr_bound(_need(args.n, "n"), _need(args.k, "k"), _need(args.t, "t"))
        value = res.value
        doc = {"bound": kind, "value": value, "regime_holds": res.regime_holds}
    elif kind == "cross":
        value = bounds.cross_bound_product(_need(args.n, "n"), _need(args.ranks, "ranks"), _need(args.t, "t"))
        doc = {"bound": kind, "value": value}
    else:
        value = bounds.rwise_bound(_need(args.n, "n"), _need(args.k, "k"))
        doc = {"bound": kind, "value": value}
    _emit(args, str(value), doc)
    return 0


def cmd_construct(args) -> int:
    maker = bounds.star_family if args.kind == "star" else bounds.tightness_example
    fam = maker(args.n, args.k, args.t)
    _write_or_print(args, family_to_doc(fam), _sets_text(fam.members))
    return 0


def _outcome_doc(kind: str, out: search.SearchOutcome) -> dict:
    return {
        "search": kind,
        "optimum": out.optimum,
        "proof_complete": out.proof_complete,
        "nodes_explored": out.nodes_explored,
        "witness": _jsonable(out.witness),
        "flags": list(out.flags),
        "details": _jsonable(out.details),
    }


def cmd_search(args) -> int:
    kind = args.kind
    if kind == "pairwise":
        out = search.max_family_pairwise(_need(args.n, "n"), _need(args.k, "k"), _need(args.t, "t"),
                                         args.mode or "relaxed-thm12")
    elif kind == "uniform":
        out = search.max_family_uniform(_need(args.n, "n"), _need(args.k, "k"), _need(args.t, "t"))
    elif kind == "rwise":
        out = search.max_family_rwise(_need(args.n, "n"), _need(args.k, "k"), _need(args.r, "r"),
                                      args.mode or "relaxed-thm16")
    elif kind == "cross":
        n, ranks, t = _need(args.n, "n"), _need(args.ranks, "ranks"), _need(args.t, "t")
        out = search.max_cross_product(n, ranks, t, args.mode or "strict")
        if len(ranks) == 2:
            expected = bounds.cross_bound_product(n, ranks, t)
            if out.optimum > expected:
                out.flags.append("below n_0 candidate")
            out.details["product_bound"] = expected
    else:
        out = bollobas.search_c_prime_violation(_need(args.a, "a"), _need(args.b, "b"), _need(args.n, "n"))
    doc = _outcome_doc(kind, out)
    lines = [f"optimum: {out.optimum}", f"proof_complete: {str(out.proof_complete).lower()}",
             f"nodes_explored: {out.nodes_explored}"]
    if isinstance(out.witness, compression.SetFamily):
        lines.append(f"witness: {_sets_text(out.witness.members)}")
    elif isinstance(out.witness, bollobas.PairSystem):
        lines.append("witness: " + ", ".join(f"({a},{b})" for a, b in out.witness.as_lists()))
    else:
        for i, f in enumerate(out.witness, 1):
            lines.append(f"witness F{i}: {_sets_text(f.members)}")
    for key, value in out.details.items():
        lines.append(f"{key}: {rational_str(value) if isinstance(value, Fraction) else value}")
    lines.extend(f"flag: {f}" for f in out.flags)
    _emit(args, "\n".join(lines), doc)
    return 0


def cmd_bsum(args) -> int:
    system = load_system(args.system)
    total = bollobas.bollobas_sum(system)
    _emit(args, rational_str(total), {"sum": rational_str(total), "at_most_one": total <= 1})
    return 0


def cmd_separate(args) -> int:
    system = load_system(args.system)
    if args.mc:
        if args.trials is None or args.seed is None:
            raise InputError("--mc needs --trials and --seed")
        est = bollobas.mc_separation_estimate(system, args.trials, args.seed, args.threads)
        doc = {
            "mode": "mc",
            "generator": est.generator,
            "seed": args.seed,
            "trials": est.trials,
            "hits_per_pair": est.hits_per_pair,
            "point_estimates": [rational_str(p) for p in est.point_estimates],
            "exact_reference": [rational_str(p) for p in est.exact_reference],
            "sum_estimate": rational_str(est.sum_estimate),
            "sum_standard_error": est.sum_standard_error(),
            "collision_detected": est.collision_detected,
            "collisions": est.collisions,
        }
        lines = [f"{i}: {rational_str(p)} (exact {rational_str(e)})"
                 for i, (p, e) in enumerate(zip(est.point_estimates, est.exact_reference))]
        lines.append(f"sum: {rational_str(est.sum_estimate)}")
        lines.append(f"collision_detected: {str(est.collision_detected).lower()}")
    else:
        probs = [bollobas.exact_separation_probability(a, b, system.n, verify=args.enumerate) for a, b in system.pairs]
        disjoint = bollobas.verify_disjointness_exact(system) if system.n <= bollobas.MAX_ENUM_N else None
        doc = {
            "mode": "exact",
            "probabilities": [rational_str(p) for p in probs],
            "sum": rational_str(sum(probs, Fraction(0))),
            "collision_detected": None if disjoint is None else not disjoint,
        }
        lines = [f"{i}: {rational_str(p)}" for i, p in enumerate(probs)]
        lines.append(f"sum: {doc['sum']}")
        if disjoint is not None:
            lines.append(f"collision_detected: {str(not disjoint).lower()}")
    _emit(args, "\n".join(lines), doc)
    return 0


def cmd_reproduce(args) -> int:
    from ekrkit.reproduce import run_all

    results = run_all()
    doc = [{"criterion": r.number, "title": r.title, "passed": r.passed, "detail": r.detail, "flags": r.flags}
           for r in results]
    _emit(args, "\n".join(r.line() for r in results), doc)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON reports")
    common.add_argument("--threads", type=int, default=1, help="worker threads for sampling")

    p = argparse.ArgumentParser(prog="ekrkit", description="Extremal set theory verification toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def params(sp, *names):
        for name in names:
            sp.add_argument(f"--{name}", type=int)

    v = sub.add_parser("verify", parents=[common], help="check a predicate on family or pair-system files")
    v.add_argument("predicate", choices=FAMILY_PREDICATES + SYSTEM_PREDICATES)
    v.add_argument("files", nargs="+")
    params(v, "k", "t", "r")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("compress", parents=[common], help="apply one shift or the full up-closure")
    c.add_argument("family")
    c.add_argument("--element", type=int)
    c.add_argument("--rank", type=int)
    c.add_argument("--closure", action="store_true")
    c.add_argument("--out")
    c.set_defaults(func=cmd_compress)

    b = sub.add_parser("bound", parents=[common], help="closed-form bounds")
    b.add_argument("kind", choices=("ekr", "uniform", "cross", "rwise"))
    params(b, "n", "k", "t")
    b.add_argument("--ranks", type=int, nargs="+")
    b.set_defaults(func=cmd_bound)

    k = sub.add_parser("construct", parents=[common], help="write a star or sharpness family")
    k.add_argument("kind", choices=("star", "tightness"))
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--k", type=int, required=True)
    k.add_argument("--t", type=int, required=True)
    k.add_argument("--out")
    k.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", parents=[common], help="exhaustive maxima")
    s.add_argument("kind", choices=("pairwise", "uniform", "rwise", "cross", "cprime"))
    params(s, "n", "k", "t", "r", "a", "b")
    s.add_argument("--ranks", type=int, nargs="+")
    s.add_argument("--mode")
    s.set_defaults(func=cmd_search)

    bs = sub.add_parser("bsum", parents=[common], help="exact Bollobás-type sum as p/q")
    bs.add_argument("system")
    bs.set_defaults(func=cmd_bsum)

    sp = sub.add_parser("separate", parents=[common], help="separation probabilities")
    sp.add_argument("system")
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--mc", action="store_true")
    sp.add_argument("--enumerate", action="store_true", help="cross-check the closed form by enumerating n! orders")
    sp.add_argument("--trials", type=int)
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_separate)

    r = sub.add_parser("reproduce", parents=[common], help="run the acceptance table")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (DocumentError, InputError, search.GuardExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
