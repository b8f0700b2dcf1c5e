"""Command-line workbench: presets, reductions, associators, quantization, evaluation, GT, attestation.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or configuration
error, 3 a truncation budget was exceeded.  Artifacts are canonical JSON
(sorted keys, rationals as "p/q") with an embedded run manifest, so equal
inputs give byte-identical files.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from . import __version__
from .errors import PropError, TruncationExceeded

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TRUNCATION = 0, 1, 2, 3

QUANTIZE_MAX_DEGREE = 3
# associativity is the axiom with the most inputs; it needs the cell (1, 1, 1)
MIN_CHECK_SYM_CAP = 3

AXIOM_ALIASES = {
    "associativity": ["assoc"],
    "coassociativity": ["coassoc"],
    "unit": ["unit_l", "unit_r"],
    "counit": ["counit_l", "counit_r"],
    "antipode": ["antipode_l", "antipode_r"],
    "inverse-antipode": ["inverse_l", "inverse_r"],
    "compatibility": ["bialgebra", "unit_coproduct", "counit_product", "counit_unit"],
}


class CheckFailed(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    parameters: Dict[str, object]
    inputs: Dict[str, str] = field(default_factory=dict)  # role -> sha256 of the input file
    version: str = __version__
    checks: Dict[str, bool] = field(default_factory=dict)
    # kept out of artifacts so that reruns are byte-identical; reported on stderr
    wall_time: Optional[float] = None

    def to_json(self):
        d = asdict(self)
        d.pop("wall_time")
        return d


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise PropError(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise PropError(f"{path} is not valid JSON: {e}")


def write_artifact(path, obj, manifest: RunManifest):
    obj = dict(obj)
    obj["manifest"] = manifest.to_json()
    text = canonical_json(obj)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def say(*parts):
    print(*parts)


def check_budget(args, degree: int, what: str):
    b = getattr(args, "grade_budget", None)
    if b is not None and degree > b:
        raise TruncationExceeded(f"truncation exceeded: {what} {degree} > grade budget {b}")


# prop and signatures -----------------------------------------------------------------------------

def cmd_reduce(args) -> int:
    from .grammar import format_morphism, parse_morphism
    from .signatures import load_preset

    pre = load_preset(args.signature)
    f = parse_morphism(args.expr, pre.sig)
    budget = None
    if args.grade_budget is not None:
        budget = (args.grade_budget,) * len(pre.sig.channels)
    ideal = pre.ideal(budget)
    red = ideal.reduce(f)
    say(format_morphism(red) if red else "0")
    if args.json:
        print(canonical_json({"signature": args.signature, "input": format_morphism(f), "reduced": red.to_json(),
                              "in_ideal": not red}), end="")
    return EXIT_OK


def cmd_signature(args) -> int:
    from .signatures import list_presets, load_preset

    if args.list:
        for name in list_presets():
            say(f"{name:8s} {load_preset(name).description}")
        return EXIT_OK
    if args.show:
        print(load_preset(args.show).to_text(), end="")
        return EXIT_OK
    raise PropError("signature: give --list or --show NAME")


# associator ---------------------------------------------------------------------------------------

def load_associator(path):
    from .associator import AssociatorSolution

    obj = read_json(path)
    try:
        return AssociatorSolution.from_json(obj), obj
    except (KeyError, TypeError, ValueError) as e:
        raise PropError(f"{path} is not an associator artifact: {e}")


def _associator_core(obj):
    """The part of an associator artifact needed to rebuild it."""
    return {k: obj[k] for k in ("log_phi", "degree", "hexagon_exponent", "even")}


def cmd_solve_associator(args) -> int:
    from .associator import solve_associator

    check_budget(args, args.max_degree, "associator degree")
    sol = solve_associator(args.max_degree, even=args.even, sign=args.hexagon_sign)
    man = RunManifest("solve-associator", {"max_degree": args.max_degree, "even": args.even,
                                           "hexagon_sign": args.hexagon_sign}, checks=dict(sol.residuals))
    obj = {"schema": "propquant.associator/1", **sol.to_json()}
    write_artifact(args.out, obj, man)
    say(f"associator through degree {sol.N}: degree-2 coefficient {sol.degree2_coefficient()}")
    for k, ok in sorted(sol.residuals.items()):
        say(f"  {k}: {'ok' if ok else 'FAIL'}")
    return EXIT_OK if all(sol.residuals.values()) else EXIT_FAIL


# GT ------------------------------------------------------------------------------------------------

def load_gt(path):
    from .freelie import GTElement

    obj = read_json(path)
    try:
        return GTElement.from_json(obj.get("element", obj))
    except (KeyError, TypeError, ValueError) as e:
        raise PropError(f"{path} is not a GT element: {e}")


def _truncate_gt(a, N: int):
    from .freelie import GroupSeries, GTElement, LieSeries

    log = a.f.log
    coeffs = {w: c for w, c in log.coeffs.items() if len(w) <= N}
    return GTElement(a.lam, GroupSeries(LieSeries(log.alphabet, N, coeffs)))


def cmd_gt(args) -> int:
    from .freelie import gt_compose, gt_invert

    if args.gt_cmd == "compose":
        a, b = load_gt(args.a), load_gt(args.b)
        if a.N != b.N:
            raise PropError(f"GT elements truncated at different degrees ({a.N} and {b.N})")
        res = gt_compose(a, b)
        inputs = {"a": sha256_file(args.a), "b": sha256_file(args.b)}
        params = {}
    else:
        a = load_gt(args.a)
        N = a.N if args.degree is None else args.degree
        if N > a.N:
            raise TruncationExceeded(f"truncation exceeded: element known to degree {a.N}, asked for {N}")
        res = gt_invert(_truncate_gt(a, N))
        inputs = {"a": sha256_file(args.a)}
        params = {"degree": N}
    man = RunManifest(f"gt {args.gt_cmd}", params, inputs)
    write_artifact(args.out, {"schema": "propquant.gt/1", "element": res.to_json()}, man)
    return EXIT_OK


# quantization ---------------------------------------------------------------------------------------

def _hopf_checks(H, report) -> Dict[str, bool]:
    checks = {"hopf_axioms": report.ok}
    checks["bigrading"] = not H.check_bigrading()
    checks["classical_limit"] = not H.classical_limit()
    checks["twist_first_order"] = all(H.twist_anchor_residual(c).is_zero() for c in ((1, 1), (0, 1), (1, 0)))
    return checks


def cmd_quantize(args) -> int:
    from .quantize import QuantizeConfig, QuantizedHopf

    check_budget(args, args.degree, "quantization degree")
    if args.sym_cap < MIN_CHECK_SYM_CAP:
        raise TruncationExceeded(f"truncation exceeded: axiom 'assoc' needs the cell (1, 1, 1), "
                                 f"sym cap {args.sym_cap} < {MIN_CHECK_SYM_CAP}")
    if args.degree > QUANTIZE_MAX_DEGREE:
        raise TruncationExceeded(f"truncation exceeded: quantization degree {args.degree} > {QUANTIZE_MAX_DEGREE}")
    sol, assoc_obj = load_associator(args.associator)
    t0 = time.time()
    H = QuantizedHopf(sol.phi, QuantizeConfig(args.degree, args.sym_cap, sol.sign))
    report = H.check_hopf()
    checks = _hopf_checks(H, report)
    for e in report.failures():
        say(f"FAIL {e.axiom} on cell {e.cell}: {e.residual_terms} residual terms")
    prov = {"associator": _associator_core(assoc_obj),
            "associator_sha256": sha256_file(args.associator)}
    obj = H.to_json(args.sym_cap, report, prov)
    obj["checks"] = checks
    man = RunManifest("quantize", {"degree": args.degree, "sym_cap": args.sym_cap},
                      {"associator": prov["associator_sha256"]}, checks=checks, wall_time=time.time() - t0)
    write_artifact(args.out, obj, man)
    for k, ok in sorted(checks.items()):
        say(f"  {k}: {'ok' if ok else 'FAIL'}")
    print(f"wall time {man.wall_time:.1f} s", file=sys.stderr)
    return EXIT_OK if all(checks.values()) else EXIT_FAIL


def _axiom_list(names: List[str]) -> Optional[List[str]]:
    from .signatures import load_preset

    known = [n for n, _, _ in load_preset("HA").equations]
    out: List[str] = []
    for n in names:
        if n == "all":
            return None
        if n in AXIOM_ALIASES:
            out.extend(AXIOM_ALIASES[n])
        elif n in known:
            out.append(n)
        else:
            raise PropError(f"unknown axiom {n!r}; choose from all, {', '.join(sorted(AXIOM_ALIASES))}, {', '.join(known)}")
    return out


def cmd_verify(args) -> int:
    from .quantize import verify_stored

    obj = read_json(args.inp)
    if obj.get("schema") != "propquant.hopf/1":
        raise PropError(f"{args.inp} is not a Hopf structure artifact")
    axioms = _axiom_list(args.axiom)
    rep = verify_stored(obj, axioms)
    checked = [e for e in rep.entries if e.checked]
    if not checked:
        raise TruncationExceeded("truncation exceeded: no cell of the requested axioms fits in the stored range")
    for e in rep.failures():
        say(f"FAIL {e.axiom} on cell {e.cell}: {e.residual_terms} residual terms")
    skipped = len(rep.entries) - len(checked)
    say(f"{len(checked)} cells checked, {len(rep.failures())} failed, {skipped} not checked (outside stored range)")
    if args.json:
        print(canonical_json(rep.to_json()), end="")
    return EXIT_OK if rep.ok else EXIT_FAIL


# evaluation -----------------------------------------------------------------------------------------

def _rebuild_hopf(obj, N: Optional[int] = None):
    from .associator import AssociatorSolution
    from .quantize import QuantizeConfig, QuantizedHopf

    try:
        sol = AssociatorSolution.from_json(obj["provenance"]["associator"])
    except (KeyError, TypeError, ValueError):
        raise PropError("Hopf artifact lacks its associator provenance")
    N = obj["delta_cap"] if N is None else N
    return QuantizedHopf(sol.phi, QuantizeConfig(N, obj["sym_cap"], sol.sign))


def _stored_mismatches(H, obj, cells=None) -> List[str]:
    """Compare recomputed structure components with the stored ones (all stored cells, or the given ones)."""
    from .lba import LBAElem

    N = H.N
    bad = []
    fams = H.families()
    for name, f in obj["families"].items():
        stored: Dict[tuple, Dict[tuple, LBAElem]] = {}
        for c in f["components"]:
            stored.setdefault(tuple(c["in"]), {})[tuple(c["out"])] = LBAElem.from_json(c["elem"]).truncate(N)
        want = stored.keys() if cells is None else [c for c in cells.get(name, ()) if c in stored]
        for cell in sorted(want):
            got = {oc: e for oc, e in fams[name].component(cell, N).items() if e}
            ref = {oc: e for oc, e in stored[cell].items() if e}
            if set(got) != set(ref) or any(got[k] != ref[k] for k in got):
                bad.append(f"{name} on cell {cell}")
    return bad


def _mono_json(m):
    return [list(x) for x in m]


def _helem_json(x) -> List:
    return [{"factors": _mono_json(m), "h": h, "coef": str(c)} for (m, h), c in sorted(x.items())]


def load_bialgebra_arg(spec: str):
    from .evaluate import SHIPPED, load_bialgebra, shipped

    if spec in SHIPPED:
        return shipped(spec), None
    return load_bialgebra(spec), sha256_file(spec)


def cmd_eval(args) -> int:
    from .evaluate import concrete_R, quantize_concrete, tau_checks, validate

    b, b_hash = load_bialgebra_arg(args.bialgebra)
    val = validate(b)
    if not all(val.values()):
        for k, ok in sorted(val.items()):
            if not ok:
                say(f"FAIL bialgebra axiom {k}")
        return EXIT_FAIL
    obj = read_json(args.hopf)
    if obj.get("schema") != "propquant.hopf/1":
        raise PropError(f"{args.hopf} is not a Hopf structure artifact")
    if args.h_order > obj["delta_cap"]:
        raise TruncationExceeded(f"truncation exceeded: h-order {args.h_order} > stored cobracket cap {obj['delta_cap']}")
    check_budget(args, args.h_order, "h-order")
    t0 = time.time()
    H = _rebuild_hopf(obj, args.h_order)
    C = quantize_concrete(b, H, args.sym_cap)
    report = C.check()
    checks = {name: all(ok for _, ok in rows) for name, rows in report.items()}
    for name, rows in sorted(report.items()):
        for monos, ok in rows:
            if not ok:
                say(f"FAIL {name} on {monos}")
    checks["quasiclassical"] = not C.quasiclassical_residual()
    out_tables = _uq_tables(C, b, args.sym_cap)
    used = {name: list(f._memo) for name, f in H.families().items()}
    mism = _stored_mismatches(H, obj, used)
    checks["matches_hopf_artifact"] = not mism
    for m in mism:
        say(f"FAIL recomputed structure differs from {args.hopf}: {m}")
    out = {"schema": "propquant.uq/1", "bialgebra": b.to_json(), "h_order": args.h_order, "sym_cap": args.sym_cap,
           "associator": obj["provenance"]["associator"]}
    out.update(out_tables)
    if b.r is not None:
        R = concrete_R(b, H.phi_series, args.h_order)
        out["R"] = _helem_json(R.R)
        checks["qybe"] = not R.qybe
        checks["R_first_order"] = R.part(1) == {((i,), (j,)): v for (i, j), v in b.r.items()}
        tc = tau_checks(b)
        checks["tau"] = not any(tc.values())
    out["checks"] = checks
    inputs = {"hopf": sha256_file(args.hopf)}
    if b_hash:
        inputs["bialgebra"] = b_hash
    man = RunManifest("eval", {"bialgebra": b.name, "h_order": args.h_order, "sym_cap": args.sym_cap}, inputs,
                      checks=checks, wall_time=time.time() - t0)
    write_artifact(args.out, out, man)
    for k, ok in sorted(checks.items()):
        say(f"  {k}: {'ok' if ok else 'FAIL'}")
    print(f"wall time {man.wall_time:.1f} s", file=sys.stderr)
    return EXIT_OK if all(checks.values()) else EXIT_FAIL


def _uq_tables(C, b, D) -> Dict[str, List]:
    from .evaluate import monomials

    out = {}
    for name, key in (("product", "mu"), ("coproduct", "Delta"), ("antipode", "S")):
        nin = 2 if key == "mu" else 1
        rows = []
        for degs in _degrees(nin, D):
            for monos in _products([monomials(b.dim, d) for d in degs]):
                rows.append({"in": _mono_json(monos), "out": _helem_json(C.structure(key, monos))})
        out[name] = rows
    return out


def _degrees(k, D):
    from .evaluate import _degree_tuples

    return list(_degree_tuples(k, D))


def _products(lists):
    import itertools

    return list(itertools.product(*lists))


# Yang-Baxter -----------------------------------------------------------------------------------------

def cmd_qyb(args) -> int:
    from .yangbaxter import qyb_r_matrix

    check_budget(args, args.degree, "r-degree")
    sol, assoc_obj = load_associator(args.associator)
    res = qyb_r_matrix(sol.phi, args.degree)
    checks = {"qybe": not res.qybe, "twist_equation": not res.twist_res}
    man = RunManifest("qyb", {"degree": args.degree}, {"associator": sha256_file(args.associator)}, checks=checks)
    obj = {"schema": "propquant.qyb/1", **res.to_json(), "associator": _associator_core(assoc_obj)}
    write_artifact(args.out, obj, man)
    for k, ok in sorted(checks.items()):
        say(f"  {k}: {'ok' if ok else 'FAIL'}")
    return EXIT_OK if res.ok else EXIT_FAIL


# attestation ------------------------------------------------------------------------------------------

def _compare(label: str, stored: Dict, fresh: Dict) -> List[str]:
    out = []
    for k in sorted(set(stored) | set(fresh)):
        if stored.get(k) != fresh.get(k):
            out.append(f"{label} {k}: recorded {stored.get(k)}, recomputed {fresh.get(k)}")
    return out


def attest(obj) -> List[str]:
    """Re-run the recorded checks of an artifact; returns the list of mismatches (empty = confirmed)."""
    from .associator import AssociatorSolution, check_solution

    schema = obj.get("schema")
    recorded = obj.get("manifest", {}).get("checks", {})
    if schema == "propquant.associator/1":
        sol = AssociatorSolution.from_json(obj)
        fresh = check_solution(sol.phi, sol.sign)
        return _compare("residual", obj.get("residuals_zero", {}), fresh) + _compare("manifest check", recorded, fresh)
    if schema == "propquant.hopf/1":
        H = _rebuild_hopf(obj)
        bad = _stored_mismatches(H, obj)
        rep = H.check_hopf()
        old = {(c["axiom"], tuple(c["cell"])): c["status"] for c in obj.get("attestation", {}).get("checks", [])}
        new = {(e.axiom, e.cell): e.status for e in rep.entries}
        bad += _compare("axiom", {str(k): v for k, v in old.items()}, {str(k): v for k, v in new.items()})
        fresh = _hopf_checks(H, rep)
        return bad + _compare("check", obj.get("checks", {}), fresh) + _compare("manifest check", recorded, fresh)
    if schema == "propquant.uq/1":
        from .evaluate import FiniteLieBialgebra, quantize_concrete

        b = FiniteLieBialgebra.from_json(obj["bialgebra"])
        H = _rebuild_hopf({"provenance": {"associator": obj["associator"]}, "delta_cap": obj["h_order"],
                           "sym_cap": obj["sym_cap"]})
        C = quantize_concrete(b, H, obj["sym_cap"])
        tables = _uq_tables(C, b, obj["sym_cap"])
        bad = []
        for name, rows in tables.items():
            if canonical_json(rows) != canonical_json(obj.get(name)):
                bad.append(f"{name} table differs from the recomputed one")
        rep = C.check()
        fresh = {name: all(ok for _, ok in rows) for name, rows in rep.items()}
        fresh["quasiclassical"] = not C.quasiclassical_residual()
        stored = {k: v for k, v in obj.get("checks", {}).items() if k in fresh}
        return bad + _compare("check", stored, fresh)
    if schema == "propquant.qyb/1":
        from .yangbaxter import qyb_r_matrix

        try:
            sol = AssociatorSolution.from_json(obj["associator"])
        except (KeyError, TypeError, ValueError):
            raise PropError("R-matrix artifact lacks its associator")
        res = qyb_r_matrix(sol.phi, obj["degree"])
        fresh_obj = res.to_json()
        bad = [f"R in degree {d} differs from the recomputed one" for d in fresh_obj["R"]
               if obj.get("R", {}).get(str(d)) != fresh_obj["R"][d]]
        bad += _compare("residual", {k: obj.get(k) for k in ("qybe_residual_zero", "twist_residual_zero")},
                        {k: fresh_obj[k] for k in ("qybe_residual_zero", "twist_residual_zero")})
        fresh = {"qybe": not res.qybe, "twist_equation": not res.twist_res}
        return bad + _compare("manifest check", recorded, fresh)
    raise PropError(f"nothing to attest for artifact schema {schema!r}")


def cmd_attest(args) -> int:
    obj = read_json(args.artifact)
    bad = attest(obj)
    for m in bad:
        say(f"REFUTED {m}")
    say("confirmed" if not bad else f"refuted ({len(bad)} mismatches)")
    return EXIT_OK if not bad else EXIT_FAIL


# parser -------------------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="accepted for compatibility; runs are single-threaded")
    common.add_argument("--grade-budget", type=int, default=argparse.SUPPRESS, help="global cap on requested degrees")
    common.add_argument("--cache", default=argparse.SUPPRESS, help="ideal cache directory (default: $PROPQUANT_CACHE)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="also print a JSON report")

    p = argparse.ArgumentParser(prog="propquant", parents=[common], description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"propquant {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    def sig_args(q):
        g = q.add_mutually_exclusive_group(required=True)
        g.add_argument("--list", action="store_true")
        g.add_argument("--show", metavar="NAME")

    prop = sub.add_parser("prop", parents=[common], help="PROP computations")
    psub = prop.add_subparsers(dest="prop_cmd", required=True)
    red = psub.add_parser("reduce", parents=[common], help="reduce a term modulo a preset's relations")
    red.add_argument("--signature", required=True)
    red.add_argument("--expr", required=True)
    sig_args(psub.add_parser("signature", parents=[common], help="list or show presets"))
    sig_args(sub.add_parser("signature", parents=[common], help="list or show presets"))

    sa = sub.add_parser("solve-associator", parents=[common], help="rational associator through a degree")
    sa.add_argument("--max-degree", type=int, required=True)
    sa.add_argument("--even", action="store_true")
    sa.add_argument("--hexagon-sign", type=int, choices=(1, -1), default=1)
    sa.add_argument("--out", default="-")

    qz = sub.add_parser("quantize", parents=[common], help="universal Hopf structure and its checks")
    qz.add_argument("--degree", type=int, required=True)
    qz.add_argument("--sym-cap", type=int, required=True)
    qz.add_argument("--associator", required=True)
    qz.add_argument("--out", default="-")

    vf = sub.add_parser("verify", parents=[common], help="re-check Hopf axioms on a stored structure")
    vf.add_argument("--axiom", action="append", required=True)
    vf.add_argument("--in", dest="inp", required=True)

    ev = sub.add_parser("eval", parents=[common], help="evaluate on a concrete Lie bialgebra")
    ev.add_argument("--bialgebra", required=True, help="JSON file or a bundled name (abelian2, borel2, sl2, ..._double)")
    ev.add_argument("--h-order", type=int, required=True)
    ev.add_argument("--sym-cap", type=int, required=True)
    ev.add_argument("--hopf", required=True)
    ev.add_argument("--out", default="-")

    qy = sub.add_parser("qyb", parents=[common], help="universal R-matrix and the quantum Yang-Baxter check")
    qy.add_argument("--degree", type=int, default=2)
    qy.add_argument("--associator", required=True)
    qy.add_argument("--out", default="-")

    gt = sub.add_parser("gt", parents=[common], help="Grothendieck-Teichmueller utilities")
    gsub = gt.add_subparsers(dest="gt_cmd", required=True)
    gc = gsub.add_parser("compose", parents=[common])
    gc.add_argument("a")
    gc.add_argument("b")
    gc.add_argument("--out", default="-")
    gi = gsub.add_parser("invert", parents=[common])
    gi.add_argument("a")
    gi.add_argument("--degree", type=int)
    gi.add_argument("--out", default="-")

    at = sub.add_parser("attest", parents=[common], help="re-run the checks recorded in an artifact")
    at.add_argument("artifact")
    return p


HANDLERS = {
    "solve-associator": cmd_solve_associator,
    "quantize": cmd_quantize,
    "verify": cmd_verify,
    "eval": cmd_eval,
    "qyb": cmd_qyb,
    "gt": cmd_gt,
    "attest": cmd_attest,
    "signature": cmd_signature,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    for k, v in (("threads", None), ("grade_budget", None), ("cache", None), ("json", False)):
        if not hasattr(args, k):
            setattr(args, k, v)
    if args.cache:
        os.environ["PROPQUANT_CACHE"] = args.cache
    try:
        if args.cmd == "prop":
            return cmd_reduce(args) if args.prop_cmd == "reduce" else cmd_signature(args)
        return HANDLERS[args.cmd](args)
    except TruncationExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_TRUNCATION
    except (PropError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
