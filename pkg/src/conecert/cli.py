"""Command-line interface.

Every command prints a machine-readable JSON report to stdout and uses a
stable exit-code contract: 0 = all checks verified, 1 = a check failed or
a request was refused, 2 = usage or input error.  Certificates written
with -o are deterministic: identical inputs give byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import corpus as corpus_mod
from .cones import (
    Cone,
    ConeError,
    DimensionGuardError,
    cone_to_doc,
    dual,
    is_classical,
    load_cone_file,
    max_tensor_contains,
    min_tensor_contains,
    nuclear_check,
)
from .demo_qubit import run_demo
from .sandwich import (
    ClassicalConeError,
    construct_sandwich,
    sandwich_to_doc,
    trace_to_doc,
    verify_sandwich,
)
from .symbolic import identity_report
from .witness import (
    build_witness,
    certificate_to_doc,
    load_certificate,
    verify_certificate,
)

OK, CHECK_FAILED, INPUT_ERROR = 0, 1, 2


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return INPUT_ERROR
    t0 = time.perf_counter()
    try:
        code, report = args.handler(args)
    except (ConeError, OSError, json.JSONDecodeError, ValueError) as e:
        report = {"command": args.command, "outcome": "error", "error": str(e)}
        code = INPUT_ERROR
    report.setdefault("command", args.command)
    report["timings"] = {"seconds": round(time.perf_counter() - t0, 4)}
    print(json.dumps(report, indent=2, sort_keys=True))
    return code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cone",
        description="exact certificates about tensor products of polyhedral cones")
    parser.set_defaults(command=None)
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("classify", help="properness / classicality of a cone")
    p.add_argument("cone", nargs="?", help="cone JSON file")
    p.add_argument("--corpus", action="store_true", help="classify the shipped corpus")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("dual", help="compute the dual cone")
    p.add_argument("cone", help="cone JSON file")
    p.add_argument("-o", "--output", help="write the dual cone JSON here")
    p.set_defaults(handler=_cmd_dual)

    p = sub.add_parser("sandwich", help="construct a kite-square sandwiching")
    p.add_argument("cone", nargs="?", help="cone JSON file")
    p.add_argument("-o", "--output", help="write the sandwich JSON here")
    p.add_argument("--corpus", action="store_true",
                   help="run on every cone of the shipped corpus")
    p.set_defaults(handler=_cmd_sandwich)

    p = sub.add_parser("witness", help="build an entangleability certificate")
    p.add_argument("cone1", nargs="?", help="first cone JSON file")
    p.add_argument("cone2", nargs="?", help="second cone JSON file")
    p.add_argument("-o", "--output", help="write the certificate JSON here")
    p.add_argument("--corpus", action="store_true",
                   help="all ordered non-classical corpus pairs within the guard")
    p.add_argument("--guard", type=int, default=12,
                   help="max tensor space dimension for batch mode (default 12)")
    p.set_defaults(handler=_cmd_witness)

    p = sub.add_parser("verify", help="re-check a witness certificate from file")
    p.add_argument("certificate", help="certificate JSON file")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("nuclear-check", help="decide minimal = maximal tensor product")
    p.add_argument("cone1", help="first cone JSON file")
    p.add_argument("cone2", help="second cone JSON file")
    p.add_argument("--guard", type=int, default=12,
                   help="max tensor space dimension for double description (default 12)")
    p.set_defaults(handler=_cmd_nuclear)

    p = sub.add_parser("identity-check",
                       help="prove the witness polynomial identities symbolically")
    p.set_defaults(handler=_cmd_identity)

    p = sub.add_parser("demo-qubit", help="exact witness demo on a pair of qubit cones")
    p.set_defaults(handler=_cmd_demo_qubit)
    return parser


def _corpus_cones() -> list[Cone]:
    manifest = corpus_mod.load_manifest()
    return [load_cone_file(corpus_mod.data_dir() / entry["file"])
            for entry in manifest["cones"]]


def _classify_one(C: Cone) -> dict:
    props = C.is_proper()
    entry = {"name": C.name, "ambient_dim": C.ambient_dim,
             "generating": props["generating"], "salient": props["salient"]}
    if props["generating"] and props["salient"]:
        entry["classical"] = is_classical(C)
        entry["extreme_rays"] = len(C.extreme_rays)
        entry["status"] = "classical" if entry["classical"] else "non-classical"
    else:
        bad = [k for k, ok in props.items() if not ok]
        entry["status"] = "improper"
        entry["error"] = f"not {' or '.join(bad)}"
    return entry


def _cmd_classify(args):
    if args.corpus:
        results = [_classify_one(C) for C in _corpus_cones()]
        ok = all(r["status"] != "improper" for r in results)
        return (OK if ok else CHECK_FAILED,
                {"inputs": "corpus", "outcome": "classified", "cones": results})
    if not args.cone:
        raise ValueError("give a cone file or --corpus")
    entry = _classify_one(load_cone_file(args.cone))
    code = OK if entry["status"] != "improper" else CHECK_FAILED
    return code, {"inputs": [args.cone], "outcome": entry["status"], "cone": entry}


def _cmd_dual(args):
    C = load_cone_file(args.cone)
    try:
        D = dual(C)
    except ConeError as e:
        return CHECK_FAILED, {"inputs": [args.cone], "outcome": "refused", "error": str(e)}
    doc = cone_to_doc(D)
    if args.output:
        _write_json(args.output, doc)
    return OK, {"inputs": [args.cone], "outcome": "ok", "dual": doc,
                "output": args.output}


def _sandwich_one(C: Cone, output=None) -> tuple[int, dict]:
    try:
        s, trace = construct_sandwich(C)
    except ClassicalConeError as e:
        return CHECK_FAILED, {"name": C.name, "outcome": "refused", "error": str(e)}
    report = verify_sandwich(C, s)
    doc = sandwich_to_doc(s)
    doc["cone"] = C.name
    doc["trace"] = trace_to_doc(trace)
    if output:
        _write_json(output, doc)
    entry = {"name": C.name, "outcome": "verified" if report.ok else "failed",
             "alpha": doc["alpha"], "d": trace.d, "output": output}
    return (OK if report.ok else CHECK_FAILED), entry


def _cmd_sandwich(args):
    if args.corpus:
        results = []
        worst = OK
        for C in _corpus_cones():
            if is_classical(C):
                results.append({"name": C.name, "outcome": "refused (classical)"})
                continue
            code, entry = _sandwich_one(C)
            worst = max(worst, code)
            results.append(entry)
        return worst, {"inputs": "corpus", "outcome": "done", "sandwiches": results}
    if not args.cone:
        raise ValueError("give a cone file or --corpus")
    C = load_cone_file(args.cone)
    code, entry = _sandwich_one(C, output=args.output)
    return code, {"inputs": [args.cone], "outcome": entry["outcome"], "sandwich": entry}


def _witness_pair(C1: Cone, C2: Cone, output=None) -> tuple[int, dict]:
    for C in (C1, C2):
        if is_classical(C):
            return CHECK_FAILED, {
                "outcome": "refused",
                "error": f"cone {C.name or '?'} is classical: "
                         "a classical factor makes the pair nuclear, no witness exists"}
    s1, _ = construct_sandwich(C1)
    s2, _ = construct_sandwich(C2)
    cert = build_witness(C1, s1, C2, s2)
    if output:
        _write_json(output, certificate_to_doc(cert))
    entry = {
        "cones": [C1.name, C2.name],
        "outcome": "verified" if cert.ok else "failed",
        "sigma_applied": cert.sigma_applied,
        "checks": {k: c.passed for k, c in cert.checks.items()},
        "certificate": output,
    }
    return (OK if cert.ok else CHECK_FAILED), entry


def _cmd_witness(args):
    if args.corpus:
        cones = [C for C in _corpus_cones() if not is_classical(C)]
        outdir = Path(args.output) if args.output else None
        if outdir:
            outdir.mkdir(parents=True, exist_ok=True)
        results = []
        worst = OK
        for C1 in cones:
            for C2 in cones:
                if C1.ambient_dim * C2.ambient_dim > args.guard:
                    continue
                path = str(outdir / f"{C1.name}__{C2.name}.json") if outdir else None
                code, entry = _witness_pair(C1, C2, output=path)
                worst = max(worst, code)
                results.append(entry)
        return worst, {"inputs": "corpus", "outcome": "done", "pairs": results}
    if not (args.cone1 and args.cone2):
        raise ValueError("give two cone files or --corpus")
    C1 = load_cone_file(args.cone1)
    C2 = load_cone_file(args.cone2)
    code, entry = _witness_pair(C1, C2, output=args.output)
    return code, {"inputs": [args.cone1, args.cone2], **entry}


def _cmd_verify(args):
    cert = load_certificate(args.certificate)
    checks = verify_certificate(cert)
    ok = all(c.passed for c in checks.values())
    failed = [k for k, c in checks.items() if not c.passed]
    return (OK if ok else CHECK_FAILED), {
        "inputs": [args.certificate],
        "outcome": "verified" if ok else f"failed: check(s) {', '.join(failed)}",
        "checks": {k: {"passed": c.passed, "detail": c.detail} for k, c in checks.items()},
    }


def _cmd_nuclear(args):
    C1 = load_cone_file(args.cone1)
    C2 = load_cone_file(args.cone2)
    try:
        res = nuclear_check(C1, C2, guard=args.guard)
    except DimensionGuardError as e:
        return INPUT_ERROR, {"inputs": [args.cone1, args.cone2],
                             "outcome": "guard exceeded", "error": str(e)}
    report = {
        "inputs": [args.cone1, args.cone2],
        "outcome": "equal" if res.equal else "not equal",
        "max_tensor_extreme_rays": res.max_ray_count,
        "either_classical": is_classical(C1) or is_classical(C2),
    }
    code = OK
    if not res.equal:
        # the witness must itself verify both ways, or something is wrong
        in_max, _ = max_tensor_contains(C1, C2, res.witness)
        out_min = min_tensor_contains(C1, C2, res.witness)
        consistent = in_max and out_min.status == "infeasible"
        report["witness"] = {
            "matrix": [[str(x) for x in row] for row in res.witness.matrix.rows],
            "in_max_tensor": in_max,
            "min_tensor_status": out_min.status,
        }
        code = OK if consistent else CHECK_FAILED
    return code, report


def _cmd_identity(args):
    rep = identity_report()
    ok = rep["magical_identity"] and rep["weight_positivity"]
    return (OK if ok else CHECK_FAILED), {
        "outcome": "verified" if ok else "failed", **rep}


def _cmd_demo_qubit(args):
    checks = run_demo()
    ok = all(c.passed for c in checks)
    return (OK if ok else CHECK_FAILED), {
        "outcome": "verified" if ok else "failed",
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                   for c in checks],
    }


def _write_json(path, doc) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
