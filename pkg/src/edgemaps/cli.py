"""Command-line front end.

Every subcommand renders one record: a plain dict of inputs and results.
``--json`` emits it as JSON; the default text form prints the same keys and
values line by line, so the two modes never disagree on content.  All
configuration arrives through flags; the only environment variable read is
EDGEMAP_THREADS, the default worker count for searches.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import constructions, detect
from .bounds import (
    ex_value,
    exclusive_matching_certify,
    exclusive_star_certify,
    free_star_certify,
    g_degree_check,
    g_matching_certify,
    g_strong_check,
    g_strong_sound,
    m_counting_certify,
    tree_star_exclusive_upper,
    w_bounds,
    w_clique_bounds,
    w_star_upper,
)
from .graphs import PatternGraph, edge_pair, load_pattern, make_pattern
from .mapping import EdgeMapping, MappingClass, format_mapping, parse_mapping
from .oracles import ex_bruteforce, pair_cover_max, supersat_min
from .reproduce import MANIFEST, RunContext, run_all, run_manifest
from .search import (
    compute_parameter,
    monte_carlo_w_witness,
    shift_capacity,
    SearchOptions,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_SKIPPED = 3


def _pattern_arg(text: str) -> PatternGraph:
    """Family spec ("K4", "3K2", ...) or @file holding edge-list/graph6."""
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return load_pattern(fh.read())
    return make_pattern(text)


def _read_mapping(path: str) -> EdgeMapping:
    text = sys.stdin.read() if path == "-" else open(path).read()
    return parse_mapping(text)


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else int(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _print_text(record: dict, indent: int = 0) -> None:
    pad = "  " * indent
    for key, value in record.items():
        if isinstance(value, dict):
            print(f"{pad}{key}:")
            _print_text(value, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{pad}{key}:")
            for item in value:
                _print_text(item, indent + 1)
                print()
        else:
            print(f"{pad}{key}: {value}")


def _emit(record: dict, as_json: bool) -> None:
    record = _jsonable(record)
    if as_json:
        print(json.dumps(record, indent=2))
    else:
        _print_text(record)


def _bound_record(report) -> dict:
    out = {"parameter": report.parameter, "status": report.status}
    for side in ("lower", "upper"):
        b = getattr(report, side)
        out[side] = (
            None
            if b is None
            else {"value": b.value, "provenance": b.provenance, "flags": list(b.flags)}
        )
    return out


# ---------------------------------------------------------------------------
# subcommands


_NO_ARG_BUILDERS = {
    name: (lambda name=name: constructions.small_exact_constructions(name))
    for name in ("k4_involution", "matching_3k2", "pentagon_involution", "z7_difference")
}

_BUILDERS = {
    "modular_shift": (("n",), constructions.modular_shift),
    "fixed_clique_partition": (("r", "k"), constructions.fixed_clique_partition),
    "star_shift": (("k",), constructions.star_shift),
    "tripartite_hall": ((), constructions.tripartite_hall),
    "frobenius_tree_lower": (("k", "r", "variant"), constructions.frobenius_tree_lower),
    "cycle_decomp_star_exclusive": (("k", "r"), constructions.cycle_decomp_star_exclusive),
    "chromatic_blocks": (("chi", "r"), constructions.chromatic_blocks),
    **{name: ((), fn) for name, fn in _NO_ARG_BUILDERS.items()},
}


def _cmd_construct(args) -> int:
    params, builder = _BUILDERS[args.name]
    if len(args.params) != len(params):
        names = " ".join(params) if params else "(no parameters)"
        print(f"error: {args.name} takes {names}", file=sys.stderr)
        return EXIT_USAGE
    res = builder(*args.params)
    record = {
        "construction": args.name,
        "parameters": dict(zip(params, args.params)),
        "n": res.mapping.n,
        "provenance": res.provenance,
        "verified_absences": [[rel, str(P)] for rel, P in res.claims],
        "mapping": list(res.mapping.images),
    }
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(format_mapping(res.mapping))
        record["written_to"] = args.out
    _emit(record, args.json)
    return EXIT_OK


def _cmd_verify(args) -> int:
    mapping = _read_mapping(args.mapping)
    checks = []
    ok_all = True
    if args.klass:
        cls = MappingClass(args.klass)
        ok = cls.admits(mapping)
        ok_all = ok_all and ok
        checks.append({"check": f"class {args.klass}", "status": "PASS" if ok else "FAIL"})
    finders = {
        "fixed": detect.find_fixed,
        "shifted": detect.find_shifted,
        "strong_shifted": lambda f, P: detect.find_shifted(f, P, strong=True),
        "free": detect.find_free,
        "exclusive": detect.find_exclusive,
    }
    for claim in args.claim or ():
        rel, _, spec = claim.partition(":")
        if rel not in finders or not spec:
            print(f"error: claim {claim!r} is not RELATION:PATTERN", file=sys.stderr)
            return EXIT_USAGE
        P = _pattern_arg(spec)
        cert = finders[rel](mapping, P)
        ok = cert is None
        ok_all = ok_all and ok
        entry = {"check": f"no {rel} {P}", "status": "PASS" if ok else "FAIL"}
        if cert is not None:
            entry["counterexample_embedding"] = list(cert.embedding)
        checks.append(entry)
    record = {
        "mapping_vertices": mapping.n,
        "checks": checks,
        "status": "PASS" if ok_all else "FAIL",
    }
    _emit(record, args.json)
    return EXIT_OK if ok_all else EXIT_FAIL


def _cmd_detect(args) -> int:
    mapping = _read_mapping(args.mapping)
    P = _pattern_arg(args.pattern)
    finders = {
        "fixed": detect.find_fixed,
        "shifted": detect.find_shifted,
        "strong_shifted": lambda f, Q: detect.find_shifted(f, Q, strong=True),
        "free": detect.find_free,
        "exclusive": detect.find_exclusive,
    }
    cert = finders[args.relation](mapping, P)
    record = {
        "relation": args.relation,
        "pattern": str(P),
        "mapping_vertices": mapping.n,
        "found": cert is not None,
    }
    if cert is not None:
        record["embedding"] = list(cert.embedding)
        record["copy_edges"] = [list(edge_pair(e)) for e in cert.copy_edge_ids()]
    _emit(record, args.json)
    return EXIT_OK


def _cmd_bound(args) -> int:
    op = args.op
    record: dict = {"op": op}
    if op == "ex":
        exg = ex_value(args.n, _pattern_arg(args.pattern))
        record.update(
            n=args.n, pattern=args.pattern, value=exg.value,
            source=exg.source, flags=list(exg.flags),
        )
    elif op == "g-degree":
        P = _pattern_arg(args.pattern)
        record.update(pattern=args.pattern, n=args.n, certified=g_degree_check(P, args.n))
    elif op == "g-matching":
        record.update(t=args.t, n=args.n, certified=g_matching_certify(args.t, args.n))
    elif op == "g-strong":
        record.update(
            k=args.k, m=args.m, n=args.n,
            arithmetic=g_strong_check(args.k, args.m, args.n),
            certified=g_strong_sound(args.k, args.m, args.n),
        )
    elif op == "free-star":
        exg = ex_value(args.n, _pattern_arg(args.pattern))
        record.update(
            pattern=args.pattern, n=args.n, r=args.r, ex=exg.value,
            flags=list(exg.flags), certified=free_star_certify(args.n, exg.value, args.r),
        )
    elif op == "m-counting":
        exg = ex_value(args.n, _pattern_arg(args.pattern))
        record.update(
            pattern=args.pattern, h=args.h, n=args.n, ex=exg.value, flags=list(exg.flags),
            certified=m_counting_certify(args.n, exg.value, _pattern_arg(args.h)),
        )
    elif op == "exclusive-star":
        exg = ex_value(args.n, _pattern_arg(args.pattern))
        record.update(
            pattern=args.pattern, n=args.n, r=args.r, ex=exg.value, flags=list(exg.flags),
            certified=exclusive_star_certify(args.n, exg.value, args.r),
        )
    elif op == "exclusive-matching":
        exg = ex_value(args.n, _pattern_arg(args.pattern))
        record.update(
            pattern=args.pattern, n=args.n, t=args.t, ex=exg.value, flags=list(exg.flags),
            certified=exclusive_matching_certify(args.n, exg.value, args.t),
        )
    elif op == "w-star":
        record.update(r=args.r, upper=w_star_upper(args.r))
    elif op == "w-clique":
        record.update(k=args.k, report=_bound_record(w_clique_bounds(args.k)))
    elif op == "w-general":
        record.update(k=args.k, m=args.m, report=_bound_record(w_bounds(args.k, args.m)))
    elif op == "tree-star":
        record.update(
            k=args.k, r=args.r, upper=tree_star_exclusive_upper(args.k, args.r),
            note="assumes the tree edge-density bound",
        )
    elif op == "capacity":
        rep = shift_capacity(
            args.n, _pattern_arg(args.pattern), exclusive=args.exclusive,
            budget=args.budget,
        )
        record.update(
            n=args.n, pattern=args.pattern, relation=rep.relation, value=rep.value,
            exact=rep.exact, flags=list(rep.flags),
            scan=[[s, v] for s, v in rep.scan],
            witness=None if rep.witness is None else list(rep.witness.images),
        )
    elif op == "mc-witness":
        rep = monte_carlo_w_witness(
            _pattern_arg(args.pattern), args.n, trials=args.trials, seed=args.seed
        )
        record.update(
            pattern=args.pattern, n=args.n, trials=rep.trials, tried=rep.tried,
            seed=rep.seed, conclusive=rep.conclusive,
            expected_copies=round(rep.expected_copies, 6),
            witness=None if rep.witness is None else list(rep.witness.images),
        )
    _emit(record, args.json)
    return EXIT_OK


def _cmd_compute(args) -> int:
    G = _pattern_arg(args.g)
    H = _pattern_arg(args.h) if args.h else None
    opts = SearchOptions(budget=args.budget, workers=args.workers)
    per_n = args.budget if args.budget is not None else 60.0
    report = compute_parameter(
        args.parameter, G, H=H, d=args.d, n_max=args.n_max,
        options=opts, budget_per_n=per_n,
    )
    _emit(_bound_record(report), args.json)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    P = _pattern_arg(args.pattern)
    record: dict = {"oracle": args.kind, "pattern": str(P), "n": args.n}
    if args.kind == "ex":
        record["value"] = ex_bruteforce(args.n, P)
    elif args.kind == "supersat":
        if args.m is None:
            print("error: supersat needs --m", file=sys.stderr)
            return EXIT_USAGE
        record["m"] = args.m
        record["value"] = supersat_min(args.n, args.m, P)
    else:
        record["value"] = pair_cover_max(args.n, P)
    _emit(record, args.json)
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    if args.list:
        record = {
            "manifest": [
                {"id": mid, "description": entry.description}
                for mid, entry in MANIFEST.items()
            ]
        }
        _emit(record, args.json)
        return EXIT_OK
    ctx = RunContext(seed=args.seed, budget=args.budget, workers=args.workers)
    if args.ids:
        records = [run_manifest(mid, ctx) for mid in args.ids]
    else:
        records = run_all(ctx)
    payload = {"runs": [r.as_dict() for r in records]}
    if args.json:
        _emit(payload, True)
    else:
        for rec in records:
            print(f"== {rec.manifest_id}: {rec.status} "
                  f"({rec.wall_time:.1f}s, digest {rec.digest()[:16]})")
            for c in rec.claims:
                print(f"  {c.status:7s} {c.claim}")
                if c.status != "PASS":
                    print(f"          {c.detail}")
    if any(r.status == "FAIL" for r in records):
        return EXIT_FAIL
    if any(r.status == "SKIPPED" for r in records):
        return EXIT_SKIPPED
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument wiring


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="edgemaps",
        description="Forcing thresholds for edge mappings of complete graphs.",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    default_workers = int(os.environ.get("EDGEMAP_THREADS", "1"))

    p = sub.add_parser("construct", help="build a named mapping construction")
    p.add_argument("name", choices=sorted(_BUILDERS))
    p.add_argument("params", nargs="*", type=int, help="integer parameters, in order")
    p.add_argument("--out", help="write the mapping to this file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("verify", help="check absence claims against a mapping file")
    p.add_argument("--mapping", required=True, help="mapping file, or - for stdin")
    p.add_argument("--claim", action="append", metavar="RELATION:PATTERN")
    p.add_argument("--klass", choices=MappingClass.KINDS, help="also check membership")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("detect", help="find one copy in a given relation")
    p.add_argument("--mapping", required=True, help="mapping file, or - for stdin")
    p.add_argument("--pattern", required=True)
    p.add_argument(
        "--relation", required=True,
        choices=("fixed", "shifted", "strong_shifted", "free", "exclusive"),
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_detect)

    p = sub.add_parser("bound", help="one certifier or closed-form value")
    bsub = p.add_subparsers(dest="op", required=True)

    def bound_op(name, **flags):
        q = bsub.add_parser(name)
        for flag, spec in flags.items():
            q.add_argument(f"--{flag}", **spec)
        q.add_argument("--json", action="store_true")
        q.set_defaults(fn=_cmd_bound)
        return q

    intreq = {"type": int, "required": True}
    patreq = {"required": True}
    bound_op("ex", n=intreq, pattern=patreq)
    bound_op("g-degree", pattern=patreq, n=intreq)
    bound_op("g-matching", t=intreq, n=intreq)
    bound_op("g-strong", k=intreq, m=intreq, n=intreq)
    bound_op("free-star", pattern=patreq, n=intreq, r=intreq)
    bound_op("m-counting", pattern=patreq, h=patreq, n=intreq)
    bound_op("exclusive-star", pattern=patreq, n=intreq, r=intreq)
    bound_op("exclusive-matching", pattern=patreq, n=intreq, t=intreq)
    bound_op("w-star", r=intreq)
    bound_op("w-clique", k=intreq)
    bound_op("w-general", k=intreq, m=intreq)
    bound_op("tree-star", k=intreq, r=intreq)
    q = bound_op(
        "capacity", n=intreq, pattern=patreq,
        budget={"type": float, "default": None},
    )
    q.add_argument("--exclusive", action="store_true")
    bound_op(
        "mc-witness", pattern=patreq, n=intreq,
        trials={"type": int, "default": 2000}, seed={"type": int, "default": 0},
    )

    p = sub.add_parser("compute", help="bracket a forcing threshold")
    p.add_argument("parameter", choices=("m", "m_star", "g", "w", "z"))
    p.add_argument("--g", required=True, help="first pattern")
    p.add_argument("--h", help="second pattern (m, m_star, z)")
    p.add_argument("--d", type=int, default=1, choices=(0, 1), help="overlap budget for g")
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--budget", type=float, help="seconds per host")
    p.add_argument("--workers", type=int, default=default_workers)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_compute)

    p = sub.add_parser("oracle", help="exhaustive small-host values")
    p.add_argument("kind", choices=("ex", "supersat", "paircover"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, help="edge count (supersat only)")
    p.add_argument("--pattern", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("reproduce", help="run pinned reproduction pipelines")
    p.add_argument("ids", nargs="*", help="manifest ids (default: all)")
    p.add_argument("--list", action="store_true", help="list manifest ids and exit")
    p.add_argument("--budget", type=float, help="seconds per search")
    p.add_argument("--seed", type=int, default=RunContext().seed)
    p.add_argument("--workers", type=int, default=default_workers)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_reproduce)

    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
