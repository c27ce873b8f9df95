"""Command line front end.

Every command writes one JSON report (stdout or ``--out``).  Exit codes:
0 when every requested verdict holds, 1 when one is false, 2 on malformed
input or a size cap.  ``--stable`` drops timings so identical inputs give
byte-identical reports.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from importlib import metadata
from pathlib import Path

import numpy as np
from sympy import isprime

from .chartab import CharacterTableError, dixon_character_table, verify_orthogonality
from .dade import (
    PropositionError,
    check_proposition_hypotheses,
    construct_regular_vector,
    remark_counterexample,
    verify_certificate,
)
from .gmod import SCAN_CAP, ModuleError, module_from_generators, regular_orbit_scan
from .grp import (
    GroupError,
    close_generators,
    cyclic_group,
    dihedral_group,
    heisenberg_group,
    quaternion_group,
    symmetric_group,
)
from .scen import (
    ScenarioError,
    assemble_scenario,
    parse_scenario,
    run_theorem_check,
    validate_theorem_hypotheses,
)

SCHEMA_VERSION = 1
DEFAULT_SEED = 0

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _version() -> str:
    try:
        return metadata.version("regorbit")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def _read_json(path: str) -> tuple[dict, str]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc
    return data, hashlib.sha256(raw).hexdigest()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


# -- commands ----------------------------------------------------------------------


def cmd_scenario(args) -> tuple[int, dict]:
    data, digest = _read_json(args.path)
    try:
        spec = parse_scenario(data)
        t0 = time.perf_counter()
        sc = assemble_scenario(spec)
    except (ScenarioError, GroupError, ModuleError) as exc:
        raise InputError(str(exc)) from exc
    timings = {"assemble": time.perf_counter() - t0}
    t0 = time.perf_counter()
    hyp = validate_theorem_hypotheses(sc, seed=args.seed)
    timings["validate"] = time.perf_counter() - t0
    results = {
        "scenario": spec.name,
        "orders": sc.orders(),
        "relation_repair": sc.repaired,
        "hypotheses": hyp.to_dict(),
    }
    status = EXIT_OK if hyp.all_passed else EXIT_FALSE
    if args.run or args.force:
        if hyp.all_passed or args.force:
            t0 = time.perf_counter()
            try:
                thm = run_theorem_check(sc, hypotheses=hyp, seed=args.seed)
            except CharacterTableError as exc:
                raise InputError(str(exc)) from exc
            timings["theorem"] = time.perf_counter() - t0
            results["theorem"] = thm.to_dict()
            results["theorem"]["forced"] = not hyp.all_passed
            if not thm.summary:
                status = EXIT_FALSE
        else:
            results["theorem"] = {"skipped": "hypotheses failed; use --force to run anyway"}
    return status, {"input_hash": digest, "results": results, "timings": timings}


def cmd_remark(args) -> tuple[int, dict]:
    p = args.p
    if p < 2 or not isprime(p):
        raise InputError(f"{p} is not prime")
    if p**3 > SCAN_CAP:
        raise InputError("p too large for an exhaustive scan")
    t0 = time.perf_counter()
    verdict = remark_counterexample(p)
    return (
        EXIT_OK if verdict.verdict else EXIT_FALSE,
        {"input_hash": None, "results": verdict.to_dict(), "timings": {"scan": time.perf_counter() - t0}},
    )


def _dade_module(data: dict):
    try:
        p = int(data["p"])
        mats = data["module"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed module input: {exc}") from exc
    if not isprime(p):
        raise InputError(f"{p} is not prime")
    group = data.get("group")
    try:
        if group is None:
            G = close_generators(mats, modulus=p, name="A")
        else:
            G = close_generators(group["generators"], modulus=group.get("modulus"), name="A")
        M = module_from_generators(G, mats, p)
    except (GroupError, ModuleError, KeyError, TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    B = C = None
    if "B" in data or "C" in data:
        try:
            B = G.subgroup([G.gens[i] for i in data.get("B", [])])
            C = G.subgroup([G.gens[i] for i in data.get("C", [])])
        except (IndexError, TypeError) as exc:
            raise InputError(f"B and C must list generator positions: {exc}") from exc
    return M, B, C


def cmd_dade(args) -> tuple[int, dict]:
    data, digest = _read_json(args.path)
    M, B, C = _dade_module(data)
    t0 = time.perf_counter()
    check = check_proposition_hypotheses(M, B, C, seed=args.seed)
    results = {"name": data.get("name", ""), "p": M.p, "dim": M.dim, "group_order": M.group.order,
               "hypotheses": check.to_dict()}
    timings = {"check": time.perf_counter() - t0}
    if not check.accepted:
        return EXIT_FALSE, {"input_hash": digest, "results": results, "timings": timings}
    t0 = time.perf_counter()
    try:
        cert = construct_regular_vector(check.instance)
        verify_certificate(check.instance, cert)
    except PropositionError as exc:
        results["error"] = str(exc)
        return EXIT_FALSE, {"input_hash": digest, "results": results, "timings": timings}
    timings["construct"] = time.perf_counter() - t0
    results["certificate"] = cert.to_dict()
    status = EXIT_OK
    if M.p**M.dim <= SCAN_CAP:
        t0 = time.perf_counter()
        scan = regular_orbit_scan(M)
        timings["oracle"] = time.perf_counter() - t0
        results["oracle"] = {"regular_orbit": scan.has_regular_orbit, "histogram": scan.to_dict()["histogram"],
                             "agrees": scan.has_regular_orbit}
        if not scan.has_regular_orbit:
            status = EXIT_FALSE
    else:
        results["oracle"] = {"skipped": "module too large for an exhaustive scan"}
    return status, {"input_hash": digest, "results": results, "timings": timings}


_NAMED = {
    "S": symmetric_group,
    "D": dihedral_group,
    "C": cyclic_group,
}


def _group_from_json(data: dict):
    name = data.get("named")
    try:
        if name is not None:
            if name == "Q8":
                return quaternion_group()
            if name.startswith("Heis"):
                return heisenberg_group(int(name[4:]))
            if name[:1] in _NAMED and name[1:].isdigit():
                return _NAMED[name[0]](int(name[1:]))
            raise InputError(f"unknown named group {name!r}")
        return close_generators(data["generators"], modulus=data.get("modulus"), name=data.get("name", ""))
    except GroupError as exc:
        raise InputError(str(exc)) from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed group input: {exc}") from exc


def cmd_chartab(args) -> tuple[int, dict]:
    data, digest = _read_json(args.path)
    if not isinstance(data, dict):
        raise InputError("group input must be a JSON object")
    G = _group_from_json(data)
    t0 = time.perf_counter()
    try:
        T = dixon_character_table(G, seed=args.seed)
        verify_orthogonality(T)
    except CharacterTableError as exc:
        raise InputError(str(exc)) from exc
    out = T.to_dict()
    out["degrees"] = list(T.degrees)
    return EXIT_OK, {"input_hash": digest, "results": out, "timings": {"table": time.perf_counter() - t0}}


# -- entry point -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="regorbit", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized splitting (default 0)")
    parser.add_argument("--stable", action="store_true", help="omit timings for byte-identical reports")
    parser.add_argument("--out", help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("scenario", help="validate a PRA scenario and check the character conclusion")
    sp.add_argument("path")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--validate", action="store_true", help="hypotheses only (default)")
    mode.add_argument("--run", action="store_true", help="also run the character check if hypotheses pass")
    sp.add_argument("--force", action="store_true", help="run the character check even if hypotheses fail")
    sp.set_defaults(func=cmd_scenario)

    sp = sub.add_parser("remark", help="scan the elementary abelian counterexample")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_remark)

    sp = sub.add_parser("dade", help="construct a certified regular vector for a B x C module")
    sp.add_argument("path")
    sp.set_defaults(func=cmd_dade)

    sp = sub.add_parser("chartab", help="exact character table of a small group")
    sp.add_argument("path")
    sp.add_argument("--format", choices=["json"], default="json")
    sp.set_defaults(func=cmd_chartab)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    envelope = {
        "schema_version": SCHEMA_VERSION,
        "tool": "regorbit",
        "version": _version(),
        "command": args.command,
        "seed": args.seed,
    }
    try:
        status, body = args.func(args)
        envelope.update(body)
    except InputError as exc:
        status = EXIT_INPUT
        envelope["error"] = str(exc)
    if args.stable:
        envelope.pop("timings", None)
    envelope["exit_status"] = status
    text = json.dumps(_jsonable(envelope), indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
