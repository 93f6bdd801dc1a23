"""Command-line front end.

Commands
  construct      build a code and write the code JSON
  verify         run the condition checks and print per-condition reports
  distance       compute the exact minimum distance and compare to the bound
  automorphisms  certify the faithful group action on the code
  export         re-serialize a code or instance file in canonical form

Human-readable progress goes to stderr; the machine-readable JSON report
goes to stdout and, when --output is given, to that file as well.  Output
bytes are deterministic for a fixed configuration: there is no flag to
reorder points or rows, and all internal choices are canonical.

Exit codes: 0 success, 1 a mathematical check failed, 2 precondition or
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from .errors import CheckFailure, OrbitCodesError, PreconditionError
from .code_analysis import DEFAULT_MESSAGE_GUARD, min_distance_exact, verify_faithful
from .construction import builtin_instance, run_construction
from . import serialize

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PRECONDITION = 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    family: str = "fermat"
    q: int = 3
    m: int = 1
    input: Optional[str] = None
    output: Optional[str] = None
    max_messages: int = DEFAULT_MESSAGE_GUARD


def _say(msg: str):
    print(msg, file=sys.stderr)


def _emit(doc: dict, output: Optional[str]):
    text = serialize.dumps(doc)
    sys.stdout.write(text)
    if output:
        Path(output).write_text(text)


def _load_instance(config: RunConfig):
    if config.family == "custom":
        if not config.input:
            raise PreconditionError("usage", "family 'custom' requires --input")
        doc = json.loads(Path(config.input).read_text())
        return serialize.instance_from_dict(doc)
    return builtin_instance(config.family, config.q, config.m)


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit code."""
    try:
        return _dispatch(config)
    except CheckFailure as exc:
        _say(f"check failed: {exc}")
        _emit(
            {
                "schema": "orbitcodes.verify.v1",
                "passed": False,
                "checks": [exc.report.as_dict()],
            },
            config.output,
        )
        return EXIT_CHECK_FAILED
    except PreconditionError as exc:
        _say(f"precondition error [{exc.kind}]: {exc}")
        _emit(
            {
                "schema": "orbitcodes.error.v1",
                "error": exc.kind,
                "message": str(exc),
                "details": exc.details,
            },
            config.output,
        )
        return EXIT_PRECONDITION
    except OrbitCodesError as exc:
        _say(f"error: {exc}")
        return EXIT_PRECONDITION


def _dispatch(config: RunConfig) -> int:
    if config.command == "export":
        if not config.input:
            raise PreconditionError("usage", "export requires --input")
        doc = json.loads(Path(config.input).read_text())
        if doc.get("schema") not in (
            "orbitcodes.code.v1",
            "orbitcodes.instance.v1",
            "orbitcodes.verify.v1",
        ):
            raise PreconditionError("usage", "unrecognized schema in input document")
        _emit(doc, config.output)
        _say(f"re-serialized {doc['schema']} document")
        return EXIT_OK

    inst = _load_instance(config)
    strict = config.command != "verify"
    result = run_construction(inst, strict=strict)
    meta = {"family": inst.family, "q": inst.q, "m": inst.m}

    if config.command == "verify":
        for rep in result.reports:
            _say(f"  [{'pass' if rep.passed else 'FAIL'}] {rep.name}")
        _emit(serialize.report_to_dict(result.reports, meta), config.output)
        return EXIT_OK if result.passed else EXIT_CHECK_FAILED

    if config.command == "construct":
        code = result.code
        _say(
            f"constructed [{code.n}, {code.rank}, >={code.distance_bound}]_"
            f"{inst.ground.order} code; joint group order {result.joint_order}"
        )
        output = config.output or f"{inst.family}_q{inst.q}_m{inst.m}.code.json"
        _emit(serialize.result_to_dict(result), output)
        _say(f"wrote {output}")
        return EXIT_OK

    if config.command == "distance":
        d = min_distance_exact(result.code, config.max_messages)
        result = replace(result, code=replace(result.code, distance_exact=d))
        code = result.code
        ok = d >= code.distance_bound
        _say(
            f"exact minimum distance {d}, designed bound {code.distance_bound} "
            f"({'met' if ok else 'VIOLATED'})"
        )
        _emit(serialize.result_to_dict(result), config.output)
        return EXIT_OK if ok else EXIT_CHECK_FAILED

    if config.command == "automorphisms":
        joint = inst.joint_group()
        rep = verify_faithful(joint, result.points, result.code)
        _say(
            f"faithful action: {'yes' if rep.passed else 'NO'}; "
            f"group order {joint.order}, image order {rep.details.get('image_order')}"
        )
        doc = serialize.report_to_dict([rep], meta)
        doc["joint_group_order"] = joint.order
        _emit(doc, config.output)
        return EXIT_OK if rep.passed else EXIT_CHECK_FAILED

    raise PreconditionError("usage", f"unknown command {config.command!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitcodes",
        description=(
            "Construct evaluation codes on plane curves with prescribed "
            "automorphism groups, verify the construction conditions, and "
            "compute exact code parameters."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, desc in [
        ("construct", "build a code and write the code JSON"),
        ("verify", "run the condition checks and report pass/fail"),
        ("distance", "compute the exact minimum distance by full enumeration"),
        ("automorphisms", "certify the faithful group action on the code"),
        ("export", "re-serialize a JSON document in canonical form"),
    ]:
        cmd = sub.add_parser(name, help=desc)
        if name != "export":
            cmd.add_argument(
                "--family",
                choices=["fermat", "projline", "bf", "custom"],
                default="fermat",
            )
            cmd.add_argument("--q", type=int, default=3, help="family size parameter")
            cmd.add_argument("--m", type=int, default=1, help="divisor scale (>= 1)")
        cmd.add_argument("--input", help="input JSON (custom instance or export source)")
        cmd.add_argument("--output", help="write the JSON report to this file")
        if name == "distance":
            cmd.add_argument(
                "--max-messages",
                type=int,
                default=DEFAULT_MESSAGE_GUARD,
                help="enumeration guard on |F|^k (raise to force larger scans)",
            )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PRECONDITION if exc.code not in (0, None) else EXIT_OK
    config = RunConfig(
        command=ns.command,
        family=getattr(ns, "family", "fermat"),
        q=getattr(ns, "q", 3),
        m=getattr(ns, "m", 1),
        input=ns.input,
        output=ns.output,
        max_messages=getattr(ns, "max_messages", DEFAULT_MESSAGE_GUARD),
    )
    if config.m < 1:
        _say("error: --m must be >= 1")
        return EXIT_PRECONDITION
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
