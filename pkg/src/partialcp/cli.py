"""Command-line front end.  Every command builds a plain dict report, which is
either dumped as JSON (``--json``) or rendered as text."""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from .coaction import (
    dual_coaction_check,
    duality_verdict,
    inner_partition,
    isolated_quotient_check,
)
from .corpus import (
    NAMED,
    density_series,
    enumerate_systems,
    is_nonincreasing,
    named_system,
    sieben_disjointness,
)
from .crossed import oracle_check, spectral_dims, standard_rep, structure
from .partial import (
    InvalidSystemError,
    PartialSystem,
    automorphic_core,
    classify,
    limit_range,
    eventually_constant_checks,
    power_range,
    ladder_ideal,
    layer_system,
    orbits,
    subquotient_structure,
    wold,
)
from .suite import run_suite
from .sysfile import SystemFileError, load_system, to_json, to_text

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _ids(ideal) -> List[str]:
    return [str(b) for b in ideal.ordered]


def _orbit_dict(o) -> dict:
    return {"kind": o.kind.value, "blocks": [str(b) for b in o.blocks], "block_dim": o.block_dim}


# -- report builders ------------------------------------------------------------
# each returns (report, ok); ok=False maps to exit code 2

def analyze_report(system: PartialSystem) -> Tuple[dict, bool]:
    n = len(system.algebra) + 1
    w = wold(system)
    cls = classify(system)
    stab = eventually_constant_checks(system)
    notes = []
    if len(system.map) == 0:
        notes.append("trivial: crossed product = A")
    rep = {
        "blocks": [{"id": str(b), "dim": d} for b, d in system.algebra.blocks],
        "map": [[str(s), str(t)] for s, t in system.map.pairs],
        "window": n,
        "d_table": {str(k): _ids(power_range(system, k)) for k in range(-n, n + 1)},
        "d_plus_infinity": _ids(limit_range(system, 1)),
        "d_minus_infinity": _ids(limit_range(system, -1)),
        "wold": {
            "core": _ids(w.core),
            "forward_part": _ids(w.forward_part),
            "backward_part": _ids(w.backward_part),
            "finite_part": _ids(w.finite_part),
        },
        "classification": cls.as_dict(),
        "orbits": [_orbit_dict(o) for o in orbits(system)],
        "eventually_constant": stab.as_dict(),
        "notes": notes,
    }
    return rep, stab.passed and cls.nilpotency_conditions_agree


def crossed_product_report(system: PartialSystem, verify: bool) -> Tuple[dict, bool]:
    dims = spectral_dims(system)
    desc = structure(system)
    rep = {
        "spectral_dims": {str(k): v for k, v in dims.items()},
        "total_dim": sum(dims.values()) if not orbits(system).cycles else None,
        "descriptor": desc.as_list(),
        "descriptor_text": str(desc),
    }
    ok = True
    if verify:
        t0 = time.perf_counter()
        oracle = oracle_check(system)
        reps = [standard_rep(system, o).check() for o in orbits(system)]
        rep["oracle"] = [r.as_dict() for r in oracle]
        rep["covariant_checks"] = [r.as_dict() for r in reps]
        rep["verify_seconds"] = round(time.perf_counter() - t0, 4)
        ok = all(r.matches for r in oracle) and all(r.passed for r in reps)
        rep["verified"] = ok
    return rep, ok


def duality_report(system: PartialSystem) -> Tuple[dict, bool]:
    verdict = duality_verdict(system)
    rep = verdict.as_dict()
    coact = dual_coaction_check(system)
    rep["dual_coaction"] = coact.as_dict()
    ok = coact.passed
    if automorphic_core(system).is_zero():
        part = inner_partition(system)
        check = part.verify()
        rep["inner_partition"] = {"q": part.as_dict(), "check": check.as_dict()}
        ok = ok and check.passed
    else:
        rep["inner_partition"] = None
    return rep, ok


def subquotients_report(system: PartialSystem, max_n: int) -> Tuple[dict, bool]:
    if max_n < 2:
        raise UsageError("--max-n must be at least 2")
    layers = []
    ok = True
    for n in range(2, max_n + 1):
        sq = subquotient_structure(system, n)
        check = sq.verify(system)
        beta = layer_system(system, n)
        ok = ok and check.passed
        layers.append({
            "n": n,
            "ladder_ideal": _ids(ladder_ideal(system, n)),
            "layer": _ids(sq.layer),
            "base": _ids(sq.base),
            "copies": [
                {"base": str(b), "copy": j, "block": str(blk)}
                for (b, j), blk in sorted(sq.witness.items(), key=lambda kv: (str(kv[0][0]), kv[0][1]))
            ],
            "layer_descriptor": structure(beta).as_list(),
            "check": check.as_dict(),
        })
    isolated = isolated_quotient_check(system)
    ok = ok and isolated.passed
    return {"layers": layers, "isolated_quotient": isolated.as_dict()}, ok


def wold_report(system: PartialSystem) -> Tuple[dict, bool]:
    w = wold(system)
    cls = classify(system)
    rep = {
        "core": _ids(w.core),
        "forward_part": _ids(w.forward_part),
        "backward_part": _ids(w.backward_part),
        "finite_part": _ids(w.finite_part),
        "classification": cls.as_dict(),
    }
    covered = set().union(*(p.members for p in w.parts()))
    disjoint = sum(len(p) for p in w.parts()) == len(covered)
    return rep, disjoint and covered == set(system.algebra.ids)


def enumerate_report(size: int, labeled: bool = True) -> Tuple[dict, bool]:
    try:
        systems = list(enumerate_systems(size, labeled=labeled))
    except ValueError as e:
        raise UsageError(str(e)) from None
    t0 = time.perf_counter()
    res = run_suite(systems)
    rep = res.as_dict()
    rep["size"] = size
    rep["labeled"] = labeled
    rep["seconds"] = round(time.perf_counter() - t0, 3)
    return rep, res.passed


def _parse_density(vals: List[str]) -> Tuple[Fraction, int]:
    try:
        r, m = Fraction(vals[0]), int(vals[1])
    except (ValueError, ZeroDivisionError):
        raise UsageError("--density expects a rational radius R and an integer M") from None
    if r < 0 or m < 1:
        raise UsageError("--density needs R >= 0 and M >= 1")
    return r, m


def sieben_report(n: int, density: Optional[List[str]], terms: List[int]) -> Tuple[dict, bool]:
    if n < 1:
        raise UsageError("--n must be at least 1")
    t0 = time.perf_counter()
    disj = sieben_disjointness(n)
    rep = {"disjointness": disj.as_dict(), "disjointness_seconds": round(time.perf_counter() - t0, 4)}
    ok = disj.proved
    if density is not None:
        r, m = _parse_density(density)
        if any(t < 1 for t in terms) or list(terms) != sorted(terms):
            raise UsageError("--terms must be positive and increasing")
        gaps = density_series([(t, r, m) for t in terms])
        mono = is_nonincreasing(gaps)
        rep["density"] = {
            "window": str(r),
            "translates": m,
            "settings": [{"terms": t, **g.as_dict()} for t, g in zip(terms, gaps)],
            "nonincreasing": mono,
            "status": "evidence only: a finite computation cannot establish density",
        }
        ok = ok and mono
    return rep, ok


def example_report(name: str, params: List[str], fmt: str) -> Tuple[str, bool]:
    kw = {}
    for p in params:
        key, eq, val = p.partition("=")
        if not eq:
            raise UsageError(f"parameter {p!r} must look like key=value")
        kw[key] = val
    try:
        system = named_system(name, **kw)
    except TypeError as e:
        raise UsageError(f"bad parameters for {name}: {e}") from None
    return (to_json(system) if fmt == "json" else to_text(system)), True


# -- text rendering -------------------------------------------------------------------

def _set(ids: List[str]) -> str:
    return "{" + ",".join(ids) + "}"


def _flags(c: dict) -> str:
    out = []
    if c["nilpotent"]:
        out.append(f"nilpotent({c['nilpotency_index']})")
    for key, label in (
        ("forward_shift", "forward shift"),
        ("backward_shift", "backward shift"),
        ("completely_nonautomorphic", "completely nonautomorphic"),
        ("automorphism", "automorphism"),
    ):
        if c[key]:
            out.append(label)
    return ", ".join(out) or "none"


def render_analyze(rep: dict) -> str:
    lines = ["blocks: " + ", ".join(f"{b['id']}:{b['dim']}" for b in rep["blocks"])]
    lines.append("map: " + (", ".join(f"{s}->{t}" for s, t in rep["map"]) or "(empty)"))
    lines.append("D_n:")
    for k, ids in rep["d_table"].items():
        lines.append(f"  D_{k} = {_set(ids)}")
    lines.append(f"D_inf = {_set(rep['d_plus_infinity'])}   D_-inf = {_set(rep['d_minus_infinity'])}")
    lines.append(render_wold(rep["wold"]))
    lines.append("flags: " + _flags(rep["classification"]))
    lines.append("orbits: " + (", ".join(f"{o['kind']}({'->'.join(o['blocks'])}; dim {o['block_dim']})" for o in rep["orbits"]) or "none"))
    st = rep["eventually_constant"]
    lines.append(
        f"eventually constant: below {st['negative_index']}, above {st['positive_index']}, "
        + ("all checks pass" if st["passed"] else "CHECK FAILED")
    )
    lines += rep["notes"]
    return "\n".join(lines)


def render_crossed(rep: dict) -> str:
    dims = ", ".join(f"{k}:{v}" for k, v in rep["spectral_dims"].items() if v)
    lines = [f"spectral dims: {dims or '(none)'}"]
    if rep["total_dim"] is not None:
        lines.append(f"total dimension: {rep['total_dim']}")
    lines.append(f"descriptor: {rep['descriptor_text']}")
    for o in rep.get("oracle", []):
        if o["skipped"]:
            lines.append(f"oracle {o['orbit']}: skipped (cycle orbit, Laurent coefficients)")
        else:
            mark = "match" if o["matches"] else "MISMATCH"
            lines.append(f"oracle {o['orbit']}: blocks {o['oracle_blocks']} dim {o['oracle_dim']} vs {o['predicted']}: {mark}")
    for c in rep.get("covariant_checks", []):
        lines.append(f"{c['name']}: {'ok' if c['passed'] else 'FAILED ' + str(c['counterexample'])}")
    if "verified" in rep:
        lines.append("verified" if rep["verified"] else "VERIFICATION FAILED")
    return "\n".join(lines)


def render_duality(rep: dict) -> str:
    lines = []
    for v in rep["per_orbit"]:
        if v["holds"]:
            status = "HOLDS (automorphism)" if v["kind"] == "cycle" else "HOLDS"
        else:
            status = f"FAILS: {v['witness']}"
        lines.append(f"{v['kind']}({'->'.join(v['blocks'])}; dim {v['block_dim']}): {status}")
    for lv in rep["layers"]:
        lines.append(f"layer I_{lv['n']}/I_{lv['n'] + 1} {_set(lv['layer'])}: {'holds' if lv['holds'] else 'fails'}")
    c = rep["dual_coaction"]
    lines.append(f"dual coaction grading: {'ok' if c['passed'] else 'FAILED'} ({c['pairs_checked']} products)")
    if rep["inner_partition"] is not None:
        q = rep["inner_partition"]
        qs = ", ".join(f"q_{k}={_set(v)}" for k, v in q["q"].items())
        lines.append(f"inner partition: {qs} ({'ok' if q['check']['passed'] else 'FAILED'})")
    else:
        lines.append("inner partition: not available (automorphic core is nonzero)")
    lines.append("duality: " + ("HOLDS" if rep["global_holds"] else "FAILS"))
    return "\n".join(lines)


def render_subquotients(rep: dict) -> str:
    lines = []
    for lv in rep["layers"]:
        lines.append(
            f"n={lv['n']}: I_n={_set(lv['ladder_ideal'])} layer={_set(lv['layer'])} base={_set(lv['base'])} "
            f"{'ok' if lv['check']['passed'] else 'FAILED ' + str(lv['check']['counterexample'])}"
        )
        for c in lv["copies"]:
            lines.append(f"    copy {c['copy']} of {c['base']} -> {c['block']}")
    sp = rep["isolated_quotient"]
    lines.append(f"D_-1 + D_1 = {_set(sp['ideal'])}; quotient map empty: {sp['quotient_map_empty']}; "
                 f"{'ok' if sp['passed'] else 'FAILED'}")
    return "\n".join(lines)


def render_wold(rep: dict) -> str:
    return (
        f"wold: core={_set(rep['core'])} forward={_set(rep['forward_part'])} "
        f"backward={_set(rep['backward_part'])} finite={_set(rep['finite_part'])}"
    )


def render_wold_cmd(rep: dict) -> str:
    return render_wold(rep) + "\nflags: " + _flags(rep["classification"])


def render_enumerate(rep: dict) -> str:
    if rep["passed"]:
        return f"all properties passed over {rep['systems']} systems ({rep['checks']} checks, {rep['seconds']} s)"
    lines = [f"{len(rep['failures'])} failures over {rep['systems']} systems"]
    for f in rep["failures"][:20]:
        lines.append(f"  {f['system']}: {f['name']}: {f['counterexample']}")
    return "\n".join(lines)


def render_sieben(rep: dict) -> str:
    d = rep["disjointness"]
    lines = [
        f"n={d['n']}: pi components {d['left_pi_components'][0]}..{d['left_pi_components'][-1]} "
        f"vs {d['right_pi_components'][0]}..{d['right_pi_components'][-1]}; "
        + ("disjoint for every truncation (proved)" if d["proved"] else "NOT PROVED"),
    ]
    if "density" in rep:
        den = rep["density"]
        lines.append(f"max gap in [-{den['window']}, {den['window']}], {den['translates']} translate(s):")
        for s in den["settings"]:
            lines.append(f"  N={s['terms']}: [{s['lo_float']:.12g}, {s['hi_float']:.12g}] ({s['points_in_window']} points)")
        lines.append("non-increasing" if den["nonincreasing"] else "NOT MONOTONE")
        lines.append(den["status"])
    return "\n".join(lines)


# -- entry point --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="partialcp", description="Crossed products by partial automorphisms of finite-dimensional C*-algebras.")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    for name in ("analyze", "duality", "wold"):
        sub.add_parser(name).add_argument("file")
    cp = sub.add_parser("crossed-product")
    cp.add_argument("file")
    cp.add_argument("--verify", action="store_true", help="run the saturation oracle")
    sq = sub.add_parser("subquotients")
    sq.add_argument("file")
    sq.add_argument("--max-n", type=int, required=True)
    en = sub.add_parser("enumerate")
    en.add_argument("--size", type=int, required=True)
    en.add_argument("--unlabeled", action="store_true", help="one system per relabeling class")
    sb = sub.add_parser("sieben")
    sb.add_argument("--n", type=int, required=True)
    sb.add_argument("--density", nargs=2, metavar=("R", "M"))
    sb.add_argument("--terms", type=int, nargs="+", default=[10, 100, 1000])
    ex = sub.add_parser("example", help="print a named example system")
    ex.add_argument("name", choices=sorted(NAMED))
    ex.add_argument("params", nargs="*", metavar="key=value")
    ex.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _dispatch(args) -> Tuple[object, bool, Callable[[dict], str]]:
    cmd = args.command
    if cmd == "enumerate":
        rep, ok = enumerate_report(args.size, labeled=not args.unlabeled)
        return rep, ok, render_enumerate
    if cmd == "sieben":
        rep, ok = sieben_report(args.n, args.density, args.terms)
        return rep, ok, render_sieben
    if cmd == "example":
        text, ok = example_report(args.name, args.params, args.format)
        return text, ok, lambda t: t.rstrip("\n")
    system = load_system(args.file)
    if cmd == "analyze":
        return (*analyze_report(system), render_analyze)
    if cmd == "crossed-product":
        return (*crossed_product_report(system, args.verify), render_crossed)
    if cmd == "duality":
        return (*duality_report(system), render_duality)
    if cmd == "subquotients":
        return (*subquotients_report(system, args.max_n), render_subquotients)
    return (*wold_report(system), render_wold_cmd)


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    argv = [a for a in argv if a != "--json"]
    try:
        args = build_parser().parse_args(argv)
        rep, ok, render = _dispatch(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SystemFileError, InvalidSystemError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if as_json and isinstance(rep, dict):
        print(json.dumps({"command": args.command, "ok": ok, "report": rep}, indent=2))
    else:
        print(render(rep))
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
