"""Command-line front end.

Every command prints canonical JSON (sorted keys, exact rationals as "p/q"
strings) and exits 0 on success, 1 when a check fails, 2 on usage or
guardrail errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import acceptance, families, permcore, search, spectral
from .characters import character_table, project_onto, project_V_t
from .families import Family
from .partitions import Partition, fat_partitions, parse_partition, partitions_of
from .permcore import Permutation, class_size

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ENV_MAX_N = "PERMSPECTRA_MAX_N"


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    """A requested construction exists in principle but the check did not pass."""


_NUMBER_LIST = re.compile(r"\[\s+(-?\d+(?:,\s+-?\d+)*)\s+\]")


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, integer lists on one line."""
    text = json.dumps(obj, sort_keys=True, indent=2)
    text = _NUMBER_LIST.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)
    return text + "\n"


def _write(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _apply_guardrail(args) -> None:
    raw = args.max_n if args.max_n is not None else os.environ.get(ENV_MAX_N)
    if raw is None:
        return
    try:
        limit = int(raw)
    except ValueError:
        raise UsageError(f"guardrail override must be an integer, got {raw!r}")
    if not args.acknowledge_guardrail:
        raise UsageError(f"overriding the degree guardrail ({limit}) needs --acknowledge-guardrail")
    permcore.set_max_degree(limit, acknowledge=True)


# weights ---------------------------------------------------------------------


def _load_weights(path: str) -> dict[Partition, Fraction]:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read weights file {path}: {exc}")
    if isinstance(data, dict) and "weights" in data:
        data = data["weights"]
    if not isinstance(data, dict):
        raise UsageError("weights file must map partitions like \"[3,1]\" to rationals")
    try:
        return {parse_partition(k): Fraction(str(v)) for k, v in data.items()}
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad weights entry: {exc}")


def _spec_from_args(args) -> spectral.WeightedCayleySpec:
    n, t = args.n, args.t
    if args.weights:
        try:
            return spectral.WeightedCayleySpec(n, t, _load_weights(args.weights))
        except spectral.SpectralError as exc:
            raise UsageError(f"invalid weights: {exc}")
    if args.solve:
        got = spectral.solve_weights(n, t)
        if not got:
            raise CheckFailed(f"solve_weights({n}, {t}) is infeasible: {got.reason} at {got.partition}")
        return got
    if t != 1:
        raise UsageError("the uniform derangement weighting is for t=1; use --solve or --weights")
    return spectral.uniform_derangement_spec(n, even=(args.group == "alt"))


def _add_weight_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, default=1)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--weights", help="JSON file mapping partitions to rational weights")
    src.add_argument("--solve", action="store_true", help="solve for weights that hit omega(n,t)")
    src.add_argument("--uniform", action="store_true", help="uniform derangement weights (default, t=1)")
    p.add_argument("--group", choices=("sym", "alt"), default="sym")


def _spectrum_for(spec, group: str) -> spectral.SpectrumTable:
    return spectral.an_restriction(spec) if group == "alt" else spectral.cayley_spectrum(spec)


# commands --------------------------------------------------------------------


def cmd_chars(args) -> int:
    n = args.n
    permcore.check_degree(n)
    parts = partitions_of(n)
    table = character_table(n)
    sizes = [class_size(p) for p in parts]
    total = sum(sizes)
    ortho = all(
        sum(s * int(table[a, k]) * int(table[b, k]) for k, s in enumerate(sizes)) == (total if a == b else 0)
        for a in range(len(parts))
        for b in range(len(parts))
    )
    out = {
        "n": n,
        "classes": [{"cycle_type": str(p), "size": s} for p, s in zip(parts, sizes)],
        "characters": {str(a): [int(x) for x in row] for a, row in zip(parts, table)},
        "orthogonality": ortho,
    }
    text = dumps(out)
    if args.out:
        base = Path(args.out)
        base.mkdir(parents=True, exist_ok=True)
        (base / f"chars_n{n}.json").write_text(text)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["irrep"] + [str(p) for p in parts])
        for a, row in zip(parts, table):
            w.writerow([str(a)] + [int(x) for x in row])
        (base / f"chars_n{n}.csv").write_text(buf.getvalue())
    sys.stdout.write(text)
    return EXIT_OK if ortho else EXIT_FAIL


def cmd_spectrum(args) -> int:
    spec = _spec_from_args(args)
    sp = _spectrum_for(spec, args.group)
    out = {"spec": spec.to_json(), "group": args.group, "spectrum": sp.rows()}
    try:
        out["hoffman"] = spectral.hoffman_bound(sp).to_json()
    except spectral.SpectralError as exc:
        out["hoffman"] = {"error": str(exc)}
    if 1 <= spec.t < spec.n:
        w = spectral.omega(spec.n, spec.t)
        out["omega"] = str(w)
        out["lambda_min_is_omega"] = sp.lambda_min == w
    _write(dumps(out), args.out)
    return EXIT_OK


def cmd_hoffman(args) -> int:
    spec = _spec_from_args(args)
    rep = spectral.hoffman_bound(_spectrum_for(spec, args.group))
    out = rep.to_json()
    if args.group == "sym":
        out["cross_bound"] = str(spectral.cross_bound(_spectrum_for(spec, args.group)))
    _write(dumps(out), args.out)
    return EXIT_OK


def _parse_pairs(text: str) -> families.CosetSpec:
    try:
        pairs = [tuple(int(x) for x in item.split(":")) for item in text.split(",") if item]
    except ValueError:
        raise UsageError(f"coset pairs look like 1:1,2:3, got {text!r}")
    return families.CosetSpec(tuple(pairs))


def _load_family(path: str) -> Family:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read family file {path}: {exc}")
    if isinstance(data, dict) and "members" in data:
        data = data["members"]
    try:
        return Family.from_json(data)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad family file {path}: {exc}")


def cmd_family_build(args) -> int:
    n, t = args.n, args.t
    kind = args.kind
    if kind == "D":
        out = families.build_D(n, t).to_json()
    elif kind == "B":
        out = families.build_B_alternating(n, t).to_json()
    elif kind == "coset":
        if not args.pairs:
            raise UsageError("--pairs is required for a coset")
        out = families.t_coset(n, _parse_pairs(args.pairs)).to_json()
    elif kind == "cross-min":
        tau = Permutation.parse(args.tau or f"(1 {t + 1})", n)
        f, g = families.build_cross_pair_min(n, t, tau)
        out = {"first": f.to_json(), "second": g.to_json()}
    else:
        f, g = families.build_cross_pair_prod(n, t)
        out = {"first": f.to_json(), "second": g.to_json()}
    _write(dumps(out), args.out)
    return EXIT_OK


def cmd_family_verify(args) -> int:
    f = _load_family(args.file)
    out = {"n": f.n, "size": len(f), "t": args.t, "t_intersecting": families.is_t_intersecting(f, args.t)}
    coset = families.contained_in_t_coset(f, args.t) if len(f) else None
    out["coset"] = None if coset is None else [list(p) for p in coset.pairs]
    ok = out["t_intersecting"]
    if args.cross:
        g = _load_family(args.cross)
        out["cross_size"] = len(g)
        out["cross_t_intersecting"] = families.is_cross_t_intersecting(f, g, args.t)
        ok = out["cross_t_intersecting"]
    _write(dumps(out), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_family_report(args) -> int:
    f = _load_family(args.file)
    args.n = f.n
    rep = families.stability_report(f, args.t, _spec_from_args(args))
    _write(dumps(rep.to_json()), args.out)
    return EXIT_OK if rep.holds else EXIT_FAIL


def cmd_search_clique(args) -> int:
    if args.nontrivial:
        res = search.max_nontrivial_t_intersecting(args.n, args.t, args.group, timeout=args.timeout)
    else:
        res = search.max_t_intersecting(args.n, args.t, args.group, timeout=args.timeout)
    out = {"n": args.n, "t": args.t, "group": args.group, "nontrivial": args.nontrivial, **res.to_json()}
    if args.log:
        entry = dict(out, elapsed_s=round(res.elapsed, 3))
        entry.pop("witness")
        with open(args.log, "a") as fh:
            fh.write(json.dumps(entry, sort_keys=True) + "\n")
    _write(dumps(out), args.out)
    return EXIT_OK


def cmd_project(args) -> int:
    f = _load_family(args.file)
    u = f.indicator()
    if args.partition:
        labels = [parse_partition(x) for x in args.partition]
        proj = project_onto(u, labels)
        label_text = [str(a) for a in labels]
    else:
        proj = project_V_t(u, args.t)
        label_text = [str(a) for a in fat_partitions(f.n, args.t)]
    out = {
        "n": f.n,
        "size": len(f),
        "labels": label_text,
        "projection_norm_sq": str(proj.norm_sq()),
        "residual_norm_sq": str((u - proj).norm_sq()),
    }
    if args.values:
        out["values"] = [str(v) for v in proj.values]
    _write(dumps(out), args.out)
    return EXIT_OK


def cmd_verify_all(args) -> int:
    results = acceptance.run_all(args.criterion, seed=args.seed)
    lines = "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in results)
    _write(lines, args.out)
    for r in results:
        sys.stderr.write(r.line() + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="permspectra", description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=None, help=f"degree guardrail override (also ${ENV_MAX_N})")
    p.add_argument("--acknowledge-guardrail", action="store_true", help="required to raise the guardrail")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("chars", help="character table as JSON (+CSV with --out DIR)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--out", help="directory for chars_n<N>.json and .csv")
    c.set_defaults(func=cmd_chars)

    for name, func in (("spectrum", cmd_spectrum), ("hoffman", cmd_hoffman)):
        s = sub.add_parser(name)
        _add_weight_args(s)
        s.add_argument("--out")
        s.set_defaults(func=func)

    f = sub.add_parser("family", help="build, verify, or report on families")
    fsub = f.add_subparsers(dest="family_command", required=True)
    b = fsub.add_parser("build")
    b.add_argument("--kind", choices=("D", "B", "coset", "cross-min", "cross-prod"), required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--t", type=int, default=1)
    b.add_argument("--tau", help="cycle notation, for cross-min (default (1 t+1))")
    b.add_argument("--pairs", help="coset conditions i:j,i:j")
    b.add_argument("--out")
    b.set_defaults(func=cmd_family_build)
    v = fsub.add_parser("verify")
    v.add_argument("--file", required=True)
    v.add_argument("--t", type=int, default=1)
    v.add_argument("--cross", help="second family: check cross-intersection instead")
    v.add_argument("--out")
    v.set_defaults(func=cmd_family_verify)
    r = fsub.add_parser("report")
    r.add_argument("--file", required=True)
    r.add_argument("--t", type=int, default=1)
    src = r.add_mutually_exclusive_group()
    src.add_argument("--weights")
    src.add_argument("--solve", action="store_true")
    src.add_argument("--uniform", action="store_true")
    r.add_argument("--out")
    r.set_defaults(func=cmd_family_report, group="sym")

    s = sub.add_parser("search", help="exact clique search")
    ssub = s.add_subparsers(dest="search_command", required=True)
    cl = ssub.add_parser("clique")
    cl.add_argument("--n", type=int, required=True)
    cl.add_argument("--t", type=int, default=1)
    cl.add_argument("--group", choices=("sym", "alt"), default="sym")
    cl.add_argument("--timeout", type=float, default=None, help="seconds; result becomes bound-only")
    cl.add_argument("--nontrivial", action="store_true", help="exclude families inside a t-coset")
    cl.add_argument("--log", default="permspectra-search.jsonl", help="JSON-lines log to append to ('' disables)")
    cl.add_argument("--out")
    cl.set_defaults(func=cmd_search_clique)

    pr = sub.add_parser("project", help="project a family's indicator")
    pr.add_argument("--file", required=True)
    pr.add_argument("--t", type=int, default=1)
    pr.add_argument("--partition", action="append", help="isotypic label, repeatable; default: fat labels")
    pr.add_argument("--values", action="store_true", help="include the projected vector by rank")
    pr.add_argument("--out")
    pr.set_defaults(func=cmd_project)

    va = sub.add_parser("verify-all", help="run the acceptance suite")
    va.add_argument("--criterion", type=int, action="append", help="run only these (repeatable)")
    va.add_argument("--seed", type=int, default=0)
    va.add_argument("--out")
    va.set_defaults(func=cmd_verify_all)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        _apply_guardrail(args)
        return args.func(args)
    except (UsageError, permcore.GuardrailError, spectral.SpectralError, ValueError) as exc:
        sys.stderr.write(f"permspectra: error: {exc}\n")
        return EXIT_USAGE
    except CheckFailed as exc:
        sys.stderr.write(f"permspectra: {exc}\n")
        return EXIT_FAIL
    finally:
        permcore.set_max_degree(permcore.DEFAULT_MAX_DEGREE, acknowledge=True)


if __name__ == "__main__":
    sys.exit(main())
