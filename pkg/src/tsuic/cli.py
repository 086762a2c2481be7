"""Command-line front end: ``tsuic {gen,analyze,encode,verify,oracle,reduce}``.

Exit codes: 0 ok, 1 verification failure, 2 usage/input error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from .errors import CapExceeded, FieldError, InstanceError
from .model import dump_instance, generate_random_instance, load_instance
from .schemes import dump_code, load_code, run_scheme
from .verify import DEFAULT_CAPS, bounds_report, default_workers, oracle_beta1_linear, reduce_instance, verify_code

EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 1, 2, 3


class UsageError(Exception):
    pass


def _write_atomic(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _read_instance(path: str):
    return load_instance(Path(path).read_text(encoding="utf-8"))


def _parse_caps(text: str | None) -> dict[str, int]:
    caps: dict[str, int] = {}
    if not text:
        return caps
    for item in text.split(","):
        key, sep, val = item.partition("=")
        key = key.strip()
        if not sep or key not in DEFAULT_CAPS:
            raise UsageError(f"bad cap {item!r}; known caps: {', '.join(DEFAULT_CAPS)}")
        try:
            caps[key] = int(val)
        except ValueError:
            raise UsageError(f"cap {key} needs an integer, got {val!r}") from None
    return caps


def _verbose(args, msg: str) -> None:
    if args.verbose:
        print(msg, file=sys.stderr)


def cmd_gen(args) -> int:
    inst = generate_random_instance(args.n, args.density, args.split, args.seed)
    _write_atomic(args.output, dump_instance(inst))
    _verbose(args, f"generated n={inst.n} |M1|={len(inst.sender1)} |M2|={len(inst.sender2)}")
    return 0


def cmd_analyze(args) -> int:
    inst = _read_instance(args.instance)
    schemes = tuple(s.strip() for s in args.schemes.split(",") if s.strip())
    try:
        rep = bounds_report(inst, args.oracle, schemes, _parse_caps(args.caps), args.threads)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = rep.to_dict()
    red = reduce_instance(inst)
    out["reduction_note"] = red.note
    _write_atomic(args.output, _json(out))
    _verbose(args, " ".join(f"{k}={v}" for k, v in out.items() if isinstance(v, int) and not isinstance(v, bool)))
    return EXIT_FAIL if rep.ordering_violated else 0


def cmd_encode(args) -> int:
    inst = _read_instance(args.instance)
    try:
        res = run_scheme(inst, args.scheme, _parse_caps(args.caps))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write_atomic(args.output, dump_code(res.code))
    _verbose(args, f"{res.scheme}: length {res.length} over GF({res.code.q})")
    return 0


def cmd_verify(args) -> int:
    inst = _read_instance(args.instance)
    code = load_code(Path(args.code).read_text(encoding="utf-8"))
    rep = verify_code(inst, code)
    _write_atomic(args.output, _json(rep.to_dict()))
    _verbose(args, f"{'PASS' if rep.passed else 'FAIL'} length={rep.length} bad rows={rep.failing_rows} bad receivers={rep.failing_receivers}")
    return 0 if rep.passed else EXIT_FAIL


def cmd_oracle(args) -> int:
    inst = _read_instance(args.instance)
    caps = _parse_caps(args.caps)
    val = oracle_beta1_linear(inst, args.max_length, caps.get("oracle", DEFAULT_CAPS["oracle"]))
    if val is None:
        _write_atomic(args.output, _json({"linear_optimal": None, "note": f"exceeds cap: no code of length <= {args.max_length}"}))
        return EXIT_CAP
    _write_atomic(args.output, _json({"linear_optimal": val, "field": 2}))
    return 0


def cmd_reduce(args) -> int:
    inst = _read_instance(args.instance)
    _write_atomic(args.output, _json(reduce_instance(inst).to_dict()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tsuic", description="Two-sender unicast index coding toolkit")
    p.add_argument("--threads", type=int, default=None, help="worker processes (default: $ICX_THREADS or all cores)")
    p.add_argument("--verbose", action="store_true", help="human-readable summary on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a random instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--split", default="overlap:1", help="disjoint | overlap:K | one-covers-all")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="bounds report as JSON")
    a.add_argument("instance")
    a.add_argument("--oracle", action="store_true", help="include the exact GF(2) linear optimum")
    a.add_argument("--schemes", default="cycle,clique,local,plocal")
    a.add_argument("--caps", help="comma list, e.g. mais=20,color=12,partition=10,oracle=6,cycles=10000")
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("encode", help="write the code file of one scheme")
    e.add_argument("instance")
    e.add_argument("--scheme", required=True, help="cycle | clique | local | plocal | trivial:<cycle|clique|local>")
    e.add_argument("--caps")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_encode)

    v = sub.add_parser("verify", help="check a code against an instance")
    v.add_argument("instance")
    v.add_argument("code")
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact shortest scalar-linear GF(2) code length")
    o.add_argument("instance")
    o.add_argument("--max-length", type=int, default=None)
    o.add_argument("--caps")
    o.add_argument("-o", "--output")
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("reduce", help="report single-sender / decomposable / irreducible")
    r.add_argument("instance")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_reduce)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads is None:
        args.threads = default_workers()
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"tsuic: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InstanceError, FieldError, UsageError, OSError) as exc:
        print(f"tsuic: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
