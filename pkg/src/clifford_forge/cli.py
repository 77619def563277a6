"""Command-line front end.  Every subcommand prints one JSON document.

Exit status: 0 on success, 1 on a domain error (a JSON object with ``code``,
``message`` and possibly ``position`` is printed instead), 2 on usage errors.
Keys are sorted and term orders are canonical, so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CliffordError
from .normalform import DEFAULT_RULE_CAP, truncated_completion
from .parse import parse_ncpoly
from .presentation import FormSpec, clifford_relations, expected_slot_count, hypersurface_equation
from .representations import (
    DEFAULT_SEARCH_CAP,
    MatrixRep,
    check_rank_divisibility,
    is_specialization,
    reduced_compatible,
    search_reps,
    verify_rep,
)
from .ulrichmod import (
    GradedModule,
    genus,
    module_from_rep,
    splitting_type,
    twist,
    ulrich_check,
)


class InputError(CliffordError):
    code = "bad_input"


def _bounded_int(lo, hi=None):
    def conv(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if v < lo or (hi is not None and v > hi):
            rng = f"[{lo}, {hi}]" if hi is not None else f">= {lo}"
            raise argparse.ArgumentTypeError(f"{v} is outside {rng}")
        return v

    return conv


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg})", position=exc.pos) from None


def _form(args) -> FormSpec:
    if not args.form:
        raise InputError("this command needs --form")
    return FormSpec.from_json(_load_json(args.form))


def _rep(args, spec) -> MatrixRep:
    if not args.rep:
        raise InputError("this command needs --rep")
    return MatrixRep.from_json(spec, _load_json(args.rep))


def _module(args) -> GradedModule:
    if args.module:
        mod = GradedModule.from_json(_load_json(args.module))
    elif args.form and args.rep:
        mod = module_from_rep(_rep(args, _form(args)))
    else:
        raise InputError("give --module, or --form with --rep")
    return twist(mod, args.twist)


def _terms_json(field, poly) -> list:
    return [{"word": list(w), "coeff": field.format(c)} for w, c in poly.sorted_terms()]


def _system(args, spec):
    return truncated_completion(clifford_relations(spec), args.degree, rule_cap=args.rule_cap)


def cmd_relations(args):
    spec = _form(args)
    pres = clifford_relations(spec)
    names = pres.generator_names
    return {
        "spec": spec.to_json(),
        "generators": names,
        "slot_count": pres.slot_count,
        "expected_slot_count": expected_slot_count(spec),
        "omitted": [list(a) for a in pres.omitted],
        "relations": pres.relations_json(),
        "relations_text": [r.format(names) for r in pres.relations],
    }


def cmd_hypersurface(args):
    spec = _form(args)
    hyp = hypersurface_equation(spec)
    return {
        "equation": hyp.format(),
        "weights": list(hyp.weights),
        "weighted_degree": spec.m * spec.d,
    }


def cmd_basis(args):
    spec = _form(args)
    rs = _system(args, spec)
    dims = rs.filtered_dimension()
    names = spec.generator_names()
    basis = rs.irreducible_words(min(rs.complete_below, args.degree))
    return {
        "generators": names,
        "truncation": rs.bound,
        "complete_below": rs.complete_below,
        "dims": list(dims.dims),
        "stable": list(dims.stable),
        "total": dims.total,
        "rule_count": len(rs.rules),
        "rules": rs.rules_json(),
        "basis": [list(w) for w in basis] if args.words else None,
    }


def cmd_nf(args):
    spec = _form(args)
    if args.poly is None:
        raise InputError("nf needs --poly")
    p = parse_ncpoly(args.poly, spec.generator_context(), spec.field)
    rs = _system(args, spec)
    nf = rs.normal_form(p)
    names = spec.generator_names()
    return {
        "input": p.format(names),
        "normal_form": nf.format(names),
        "terms": _terms_json(spec.field, nf),
        "complete_below": rs.complete_below,
    }


def cmd_center(args):
    spec = _form(args)
    rs = _system(args, spec)
    t = rs.complete_below - 1 if args.center_degree is None else args.center_degree
    center = rs.center_basis(t)
    names = spec.generator_names()
    return {
        "degree": t,
        "complete_below": rs.complete_below,
        "dimension": len(center),
        "center": [z.format(names) for z in center],
        "terms": [_terms_json(spec.field, z) for z in center],
    }


def cmd_verify_rep(args):
    spec = _form(args)
    rep = _rep(args, spec)
    ver = verify_rep(rep)
    out = {
        "valid": ver.valid,
        "witness": ver.witness,
        "size": rep.size,
        "rank_divisible": check_rank_divisibility(rep.size, spec),
        "specialization": None,
        "span_dimension": None,
        "reduced_compatible": None,
        "reduced_flag": None,
    }
    if ver.valid:
        span = is_specialization(rep)
        red = reduced_compatible(rep)
        out.update(
            specialization=span.surjective,
            span_dimension=span.dimension,
            reduced_compatible=red.compatible,
            reduced_flag=red.flag,
        )
    return out


def cmd_search_rep(args):
    spec = _form(args)
    report = search_reps(
        spec,
        args.size,
        mode=args.mode,
        seed=args.seed,
        trials=args.trials,
        cap=args.cap,
    )
    out = report.to_json()
    out["rank_divisible"] = check_rank_divisibility(args.size, spec)
    return out


def cmd_ulrich_check(args):
    mod = _module(args)
    curve = genus(mod.spec, args.genus)
    report = ulrich_check(mod, curve)
    out = report.to_json()
    out["curve"] = curve.to_json()
    out["expected_slope"] = mod.spec.d + curve.genus - 1
    return out


def cmd_splitting(args):
    mod = _module(args)
    split = splitting_type(mod)
    return {"splitting": list(split.values), "trivial": split.is_trivial, "rank": mod.rank}


def cmd_genus(args):
    return genus(_form(args), args.genus).to_json()


COMMANDS = {
    "relations": (cmd_relations, "Clifford relations of a form"),
    "basis": (cmd_basis, "truncated rewriting system and filtered dimensions"),
    "nf": (cmd_nf, "normal form of a noncommutative polynomial"),
    "center": (cmd_center, "degree-bounded center"),
    "verify-rep": (cmd_verify_rep, "check a matrix representation"),
    "search-rep": (cmd_search_rep, "search for matrix representations"),
    "ulrich-check": (cmd_ulrich_check, "Ulrich criterion for a graded module"),
    "splitting": (cmd_splitting, "splitting type of a pushforward"),
    "genus": (cmd_genus, "genus of the curve x0^d = f"),
    "hypersurface": (cmd_hypersurface, "equation of the associated hypersurface"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clifford-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--pretty", action="store_true", help="indent the JSON output")
        p.add_argument("--output", "-o", help="write JSON here instead of stdout")
        if name in ("relations", "basis", "nf", "center", "verify-rep", "search-rep", "genus", "hypersurface"):
            p.add_argument("--form", required=True, help="FormSpec JSON file")
        if name in ("basis", "nf", "center"):
            p.add_argument("--degree", type=_bounded_int(1, 64), required=True, help="truncation degree")
            p.add_argument("--rule-cap", type=_bounded_int(1), default=DEFAULT_RULE_CAP)
        if name == "basis":
            p.add_argument("--words", action="store_true", help="list the irreducible words")
        if name == "nf":
            p.add_argument("--poly", required=True, help="element in generator names, e.g. 'a[0,1]*a[1,0]'")
        if name == "center":
            p.add_argument("--center-degree", type=_bounded_int(0, 64), default=None)
        if name == "verify-rep":
            p.add_argument("--rep", required=True, help="matrix representation JSON file")
        if name == "search-rep":
            p.add_argument("--size", type=_bounded_int(1, 16), required=True)
            p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
            p.add_argument("--seed", type=int, default=None)
            p.add_argument("--trials", type=_bounded_int(0), default=None)
            p.add_argument("--cap", type=_bounded_int(1), default=DEFAULT_SEARCH_CAP)
        if name in ("ulrich-check", "splitting"):
            p.add_argument("--module", help="GradedModule JSON file")
            p.add_argument("--form", help="FormSpec JSON file (with --rep)")
            p.add_argument("--rep", help="representation JSON file (with --form)")
            p.add_argument("--twist", type=int, default=0, help="twist by O(t) first")
        if name in ("ulrich-check", "genus"):
            p.add_argument("--genus", type=_bounded_int(0), default=None, help="override the genus")
    return parser


def _dump(obj, pretty: bool) -> str:
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        result = func(args)
        text = _dump(result, args.pretty)
    except CliffordError as exc:
        stdout.write(_dump(exc.to_json(), args.pretty))
        return 1
    except (TypeError, ValueError, KeyError, AttributeError, IndexError) as exc:
        # structurally malformed input that slipped past the schema checks
        stdout.write(_dump({"code": "bad_input", "message": str(exc)}, args.pretty))
        return 1
    except (RecursionError, MemoryError) as exc:
        stdout.write(_dump({"code": "resource_exceeded", "message": type(exc).__name__}, args.pretty))
        return 1
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            stdout.write(_dump({"code": "io_error", "message": str(exc)}, args.pretty))
            return 1
    else:
        stdout.write(text)
    return 0


def main(argv=None):
    try:
        code = run(argv)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code if isinstance(exc.code, int) else 2
    sys.exit(code)


if __name__ == "__main__":
    main()
