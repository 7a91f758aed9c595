"""``linres`` command line: Groebner bases, Rees presentations, the
linear-resolution criterion, transform search and the Betti/Hilbert oracles.

Exit codes: 0 success (criterion passes), 2 criterion fails or search finds
nothing, 1 error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from math import comb
from pathlib import Path

from . import __version__
from .groebner import IdealGens, ideal_power, initial_ideal, reduced_groebner
from .hilbert import hs_bigraded, hs_quotient
from .homology import betti_table
from .parsing import ParseError, ProblemFile, parse_map, parse_problem
from .polycore import MonomialOrder, format_monomial, format_polynomial
from .presets import MAPS, PRESETS, REFERENCE_CENSUS, builtin_map, load_preset
from .rees import census, criterion, format_census, format_failure, rees_presentation, slice_agreement
from .transform import BiTransform, SearchConfig, search_transform, transformed_split

SCHEMA = 1


class _Timer:
    def __init__(self):
        self.marks = {}

    def __call__(self, label):
        timer = self

        class _Block:
            def __enter__(self):
                self.t = time.perf_counter()

            def __exit__(self, *exc):
                timer.marks[label] = round(time.perf_counter() - self.t, 3)

        return _Block()


# ------------------------------------------------------------------ inputs


def _load_problem(args) -> tuple[ProblemFile, str]:
    if args.preset and args.problem:
        raise ValueError("give either a problem file or --preset, not both")
    if args.preset:
        return load_preset(args.preset), f"preset:{args.preset}"
    if not args.problem:
        raise ValueError("no input: pass a problem file or --preset NAME")
    return parse_problem(Path(args.problem).read_text(encoding="utf-8")), args.problem


def _order(args, prob: ProblemFile) -> MonomialOrder:
    if args.order is None and args.prec is None and prob.order is not None:
        return prob.order
    return MonomialOrder(args.order or "degrevlex", args.prec or "xt")


def _ideal(args, prob: ProblemFile, order: MonomialOrder) -> tuple[str, IdealGens]:
    name = args.ideal or next(iter(prob.ideals), None)
    if name is None:
        raise ValueError("problem declares no ideal")
    if name not in prob.ideals:
        raise ValueError(f"no ideal named {name!r}")
    return name, prob.ideal(name).reorder(order)


def _transform_entries(args, prob: ProblemFile):
    spec = args.transform
    if spec is None:
        return list(prob.transform), ("problem" if prob.transform else None)
    path = Path(spec)
    if path.is_file():
        return parse_map(path.read_text(encoding="utf-8")), spec
    if spec in MAPS:
        return builtin_map(spec), f"builtin:{spec}"
    raise ValueError(f"transform file {spec!r} not found (built-in maps: {', '.join(MAPS)})")


def _power(args, ideal: IdealGens) -> IdealGens:
    return ideal_power(ideal, args.power) if args.power and args.power > 1 else ideal


def _echo(source, name, ideal: IdealGens, order: MonomialOrder, args) -> dict:
    return {
        "source": source,
        "ideal": name,
        "generators": [format_polynomial(g) for g in ideal.gens],
        "ring": {"x": ideal.ring.xcount},
        "order": order.label(),
        "power": args.power or 1,
    }


def _mono_list(monos, ring, order) -> list[dict]:
    out = []
    for mono in sorted(monos, key=lambda mono: order.key(mono, ring)):
        t = sum(mono[i] for i in ring.t_range)
        x = sum(mono[i] for i in ring.x_range)
        out.append({"monomial": format_monomial(mono, ring), "bidegree": [t, x]})
    return out


# ------------------------------------------------------------------ subcommands


def cmd_gb(args, report, timer):
    prob, source = _load_problem(args)
    order = _order(args, prob)
    name, ideal = _ideal(args, prob, order)
    ideal = _power(args, ideal)
    report["input"] = _echo(source, name, ideal, order, args)
    with timer("groebner"):
        gb = reduced_groebner(ideal, order)
    report["gb"] = [format_polynomial(g) for g in gb.elements]
    report["size"] = len(gb.elements)
    report["leading_monomials"] = [format_monomial(m, ideal.ring) for m in gb.leading_monomials]
    return 0


def cmd_power(args, report, timer):
    prob, source = _load_problem(args)
    order = _order(args, prob)
    name, ideal = _ideal(args, prob, order)
    report["input"] = _echo(source, name, ideal, order, args)
    with timer("power"):
        q = _power(args, ideal)
    report["generators"] = [format_polynomial(g) for g in q.gens]
    report["size"] = len(q.gens)
    return 0


def cmd_rees(args, report, timer):
    prob, source = _load_problem(args)
    order = _order(args, prob)
    name, ideal = _ideal(args, prob, order)
    report["input"] = _echo(source, name, ideal, order, args)
    with timer("rees"):
        pres = rees_presentation(ideal, order)
    report["rees"] = _rees_section(pres)
    with timer("initial_ideal"):
        split = transformed_split(pres, order)
    report["initial_ideal"] = _split_section(split, order)
    _attach_reference(args, order, None, split, report)
    return 0


def _rees_section(pres) -> dict:
    return {
        "d": pres.d,
        "m": pres.m,
        "census": format_census(pres.census),
        "minimal_generators": [format_polynomial(g) for g in pres.mingens],
        "gb_size": len(pres.P.elements),
        "gb_census": format_census(pres.gb_census),
    }


def _split_section(split, order) -> dict:
    ring = split.ring
    bx = census(_bideg(b, ring) for b in split.B)
    return {
        "G_size": len(split.G),
        "B_size": len(split.B),
        "B": _mono_list(split.B, ring, order),
        "B_census": format_census(bx),
        "generators": len(split.G) + len(split.B),
    }


def _bideg(mono, ring):
    return (sum(mono[i] for i in ring.t_range), sum(mono[i] for i in ring.x_range))


def _attach_reference(args, order, g, split, report):
    if not args.preset or (g is not None and not g.is_identity()):
        return
    refs = REFERENCE_CENSUS.get((args.preset, order.kind, order.precedence))
    if refs is None:
        return
    ours = report["initial_ideal"]["B_census"]
    report["reference"] = {
        "censuses": list(refs),
        "matches": [ours == r for r in refs],
        "agrees_with_one": ours in refs,
    }


def _build_transform(args, prob, r, m):
    entries, label = _transform_entries(args, prob)
    if not entries:
        return None, None
    return BiTransform.from_entries(entries, r, m), label


def cmd_criterion(args, report, timer):
    prob, source = _load_problem(args)
    order = _order(args, prob)
    name, ideal = _ideal(args, prob, order)
    report["input"] = _echo(source, name, ideal, order, args)
    with timer("rees"):
        pres = rees_presentation(ideal, order)
    report["rees"] = _rees_section(pres)
    g, label = _build_transform(args, prob, ideal.ring.xcount, pres.m)
    report["transform"] = None if g is None else {"source": label, "map": [f"{v} -> {i}" for v, i in g.entries()]}
    with timer("initial_ideal"):
        split = transformed_split(pres, order, g)
    report["initial_ideal"] = _split_section(split, order)
    _attach_reference(args, order, g, split, report)
    with timer("criterion"):
        rep = criterion(split, pres.m, pres.d, name)
    report["criterion"] = _criterion_section(rep, split)
    if rep.passes and pres.m:
        with timer("slice_check"):
            report["criterion"]["slice_check"] = {
                str(k): slice_agreement(split, k, args.jmax) for k in (rep.k0, rep.k0 + 1)
            }
    if args.betti:
        with timer("betti"):
            report["betti_check"] = _betti_check(ideal, pres.d, rep, args)
    if args.hilbert:
        with timer("hilbert"):
            report["hilbert_check"] = _hilbert_check(ideal, pres, split, rep, args)
    return 0 if rep.passes else 2


def _criterion_section(rep, split) -> dict:
    ring = split.ring
    return {
        "passes": rep.passes,
        "k0": rep.k0,
        "d": rep.d,
        "t_max": rep.t_max,
        "conclusion": rep.conclusion,
        "checks": [
            {"b": format_monomial(b, ring), "alpha_degree": s, "count": n} for b, s, n in rep.checks
        ],
        "failures": [format_failure(b, a, ring) for b, a in rep.failures[:20]],
        "failure_count": len(rep.failures),
    }


def _betti_check(ideal: IdealGens, d: int, rep, args) -> dict:
    if not ideal.is_monomial():
        return {"status": "consistent/unverified", "reason": "Betti oracle covers monomial ideals only"}
    top = args.power or (rep.k0 or 1) + 1
    regs = {}
    for k in range(1, top + 1):
        regs[str(k)] = betti_table(ideal_power(ideal, k)).regularity
    ok = all(regs[str(k)] == k * d for k in range(rep.k0, top + 1)) if rep.passes else None
    return {"regularity": regs, "status": {True: "verified", False: "contradicted", None: "n/a"}[ok]}


def _hilbert_check(ideal: IdealGens, pres, split, rep, args) -> dict:
    """HS(S/Q^k) against the bigraded series of T/in(g(P)) at t-degree k."""
    hb = hs_bigraded(IdealGens.from_monomials(split.ring, split.G + split.B, split.order))
    r, d = ideal.ring.xcount, pres.d
    ks = [args.power] if args.power else [1, 2, rep.k0 or 1]
    rows = {}
    ok = True
    for k in sorted(set(ks)):
        hs = hs_quotient(ideal_power(ideal, k))
        agree = True
        for j in range(args.jmax + 1):
            total = comb(k * d + j + r - 1, r - 1)
            if hs.coefficient(k * d + j) != total - hb.coefficient(k, j):
                agree = False
        rows[str(k)] = {"series": str(hs), "agrees": agree}
        ok &= agree
    return {"powers": rows, "status": "verified" if ok else "contradicted"}


def cmd_search(args, report, timer):
    prob, source = _load_problem(args)
    order = _order(args, prob)
    name, ideal = _ideal(args, prob, order)
    report["input"] = _echo(source, name, ideal, order, args)
    with timer("rees"):
        pres = rees_presentation(ideal, order)
    report["rees"] = _rees_section(pres)
    g, label = _build_transform(args, prob, ideal.ring.xcount, pres.m)
    cfg = SearchConfig(seed=args.seed, max_candidates=args.budget, max_offdiag_per_block=args.offdiag,
                       dense=args.dense)
    report["search"] = {"seed": args.seed, "budget": args.budget, "max_offdiag_per_block": args.offdiag,
                        "batch_size": cfg.batch_size, "dense": args.dense}
    with timer("search"):
        res = search_transform(pres, order, cfg, [g] if g is not None else None, name)
    report["search"]["log"] = res.log
    if res.transform is None:
        report["search"]["found"] = False
        return 2
    report["search"]["found"] = True
    report["transform"] = {"source": "search", "map": [f"{v} -> {i}" for v, i in res.transform.entries()]}
    report["initial_ideal"] = _split_section(res.split, order)
    report["criterion"] = _criterion_section(res.report, res.split)
    return 0


def cmd_betti(args, report, timer):
    prob, source = _load_problem(args)
    order = _order(args, prob)
    name, ideal = _ideal(args, prob, order)
    report["input"] = _echo(source, name, ideal, order, args)
    q = _power(args, ideal)
    with timer("betti"):
        if q.is_monomial():
            table = betti_table(q)
            report["status"] = "exact"
        else:
            table = betti_table(initial_ideal(q, order))
            report["status"] = "consistent/unverified"
            report["note"] = "Betti numbers of in(I); upper bounds for I"
    report["betti"] = [[i, j, v] for (i, j), v in sorted(table.entries.items())]
    report["table"] = table.format()
    report["regularity"] = table.regularity if table.entries else None
    return 0


def cmd_hilbert(args, report, timer):
    prob, source = _load_problem(args)
    order = _order(args, prob)
    name, ideal = _ideal(args, prob, order)
    report["input"] = _echo(source, name, ideal, order, args)
    q = _power(args, ideal)
    with timer("hilbert"):
        hs = hs_quotient(q, order)
    report["hilbert"] = hs.to_json()
    report["series"] = str(hs)
    report["expansion"] = hs.expansion(args.jmax + max(g.total_degree() for g in q.gens))
    return 0


COMMANDS = {
    "gb": (cmd_gb, "reduced Groebner basis of the ideal (or its --power)"),
    "power": (cmd_power, "generators of the --power of the ideal"),
    "rees": (cmd_rees, "Rees presentation ideal P and its initial ideal"),
    "criterion": (cmd_criterion, "run the linear-resolution criterion"),
    "search": (cmd_search, "seeded search for a transform that makes the criterion pass"),
    "betti": (cmd_betti, "graded Betti numbers of a monomial ideal"),
    "hilbert": (cmd_hilbert, "Hilbert series of S/I"),
}


# ------------------------------------------------------------------ output


def _print_human(cmd: str, rep: dict, out) -> None:
    def emit(key, val, indent=0):
        pad = "  " * indent
        if isinstance(val, dict):
            print(f"{pad}{key}:", file=out)
            for k, v in val.items():
                emit(k, v, indent + 1)
        elif isinstance(val, list) and val and isinstance(val[0], (dict, list)):
            print(f"{pad}{key}: ({len(val)})", file=out)
            for v in val:
                print(f"{pad}  - {json.dumps(v, sort_keys=True)}", file=out)
        elif isinstance(val, list):
            print(f"{pad}{key}: {', '.join(map(str, val))}", file=out)
        elif isinstance(val, str) and "\n" in val:
            print(f"{pad}{key}:", file=out)
            for line in val.splitlines():
                print(f"{pad}  {line}", file=out)
        else:
            print(f"{pad}{key}: {val}", file=out)

    for key, val in rep.items():
        if key in ("schema", "command"):
            continue
        emit(key, val)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("problem", nargs="?", help="problem file (see README for the grammar)")
    common.add_argument("--preset", choices=sorted(PRESETS), help="built-in problem")
    common.add_argument("--ideal", help="which declared ideal to use (default: the first)")
    common.add_argument("--order", choices=("lex", "degrevlex"), help="monomial order (default degrevlex)")
    common.add_argument("--prec", choices=("xt", "tx"), help="block precedence (default xt)")
    common.add_argument("--transform", metavar="FILE", help=f"map file, or a built-in map ({', '.join(MAPS)})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=20, help="search: candidates to evaluate")
    common.add_argument("--offdiag", type=int, default=2, help="search: off-diagonal entries per block")
    common.add_argument("--dense", action="store_true", help="search: dense upper-triangular candidates")
    common.add_argument("--power", type=int, metavar="K")
    common.add_argument("--jmax", type=int, default=6, help="x-degree bound for slice checks")
    common.add_argument("--betti", action="store_true", help="criterion: verify with the Betti oracle")
    common.add_argument("--hilbert", action="store_true", help="criterion: verify with Hilbert series")
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings")

    parser = argparse.ArgumentParser(prog="linres", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"linres {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.power is not None and args.power < 1:
        print("error: --power must be at least 1", file=sys.stderr)
        return 1
    report = {"schema": SCHEMA, "command": args.command}
    timer = _Timer()
    try:
        code = COMMANDS[args.command][0](args, report, timer)
    except (ParseError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1
    if args.timings:
        report["timings"] = timer.marks
    if args.json:
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        _print_human(args.command, report, out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
