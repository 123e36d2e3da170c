"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
Counts are always printed as decimal strings, including inside JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional

from patavoid import verify
from patavoid.avoidance import (
    S3,
    count_avoiders_multiset,
    count_avoiding_compositions,
    default_jobs,
    iter_avoiders_multiset,
    iter_avoiding_compositions,
)
from patavoid.bijection import theta
from patavoid.core import CompositionQuery, MultisetSpec, Pattern, PatavoidError
from patavoid.genfun import composition_gf, f132_via_gf

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(PatavoidError):
    pass


@dataclass
class OutputRecord:
    command: str
    parameters: Dict[str, Any]
    results: Dict[str, Any]
    timing: Optional[Dict[str, float]] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.timing is None:
            del d["timing"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        d = json.loads(text)
        return cls(d["command"], d["parameters"], d["results"], d.get("timing"))


def schema() -> dict:
    from importlib.resources import files

    return json.loads(files("patavoid").joinpath("schema/output.schema.json").read_text())


def _words(ws) -> List[List[int]]:
    return [list(w) for w in ws]


def _pattern(text: str) -> Pattern:
    return Pattern.parse(text)


# -- commands ---------------------------------------------------------------------


def cmd_compositions(args) -> OutputRecord:
    q = CompositionQuery(args.n, args.flavor, args.k, args.max_part)
    params = {"n": args.n, "flavor": args.flavor, "k": args.k, "max_part": args.max_part}
    if args.all_patterns:
        params["patterns"] = [str(p) for p in S3]
        counts = {str(p): str(count_avoiding_compositions(q, p, jobs=args.jobs).value) for p in S3}
        return OutputRecord("compositions", params, {"counts": counts})
    if args.pattern is None:
        raise UsageError("give --pattern or --all-patterns")
    pat = _pattern(args.pattern)
    params["pattern"] = str(pat)
    result = count_avoiding_compositions(q, pat, jobs=args.jobs)
    results: Dict[str, Any] = {"count": str(result.value), "total": str(result.total)}
    if args.list:
        results["words"] = _words(iter_avoiding_compositions(q, pat))
    return OutputRecord("compositions", params, results)


def cmd_multiset(args) -> OutputRecord:
    spec = MultisetSpec(tuple(args.mult))
    pat = _pattern(args.pattern)
    params = {"mult": list(spec.mult), "pattern": str(pat), "engine": args.engine}
    if args.engine == "gf":
        if pat.perm != (1, 3, 2):
            raise UsageError(f"the gf engine only counts pattern 132, not {pat}")
        result = f132_via_gf(spec)
    else:
        result = count_avoiders_multiset(spec, pat, jobs=args.jobs)
    results: Dict[str, Any] = {"count": str(result.value), "total": str(result.total)}
    if args.list:
        results["words"] = _words(iter_avoiders_multiset(spec, pat))
    return OutputRecord("multiset", params, results)


def _coefficients(args) -> List[str]:
    if args.n_max < 1:
        raise UsageError("--n-max must be >= 1")
    if args.max_part is not None and args.max_part < 1:
        raise UsageError("--max-part must be >= 1")
    return [str(c) for c in composition_gf(args.n_max, args.max_part).to_list(start=1)]


def cmd_series(args) -> OutputRecord:
    params = {"n_max": args.n_max, "max_part": args.max_part}
    return OutputRecord("series", params, {"coefficients": _coefficients(args)})


def cmd_bfile(args) -> OutputRecord:
    params = {"n_max": args.n_max, "max_part": args.max_part}
    return OutputRecord("bfile", params, {"coefficients": _coefficients(args)})


def cmd_bijection(args) -> OutputRecord:
    params = {"word": list(args.word), "target": list(args.target)}
    return OutputRecord("bijection", params, {"word": list(theta(args.word, args.target))})


def cmd_verify(args) -> OutputRecord:
    res = verify.SUITES[args.suite](jobs=args.jobs)
    results = {"ok": res.ok, "checks": str(res.checks), "counterexample": res.counterexample}
    return OutputRecord("verify", {"suite": args.suite}, results)


# -- rendering ----------------------------------------------------------------------


def render_plain(rec: OutputRecord) -> str:
    r = rec.results
    if rec.command == "bfile":
        return "".join(f"{n} {c}\n" for n, c in enumerate(r["coefficients"], start=1))
    if rec.command == "series":
        return " ".join(r["coefficients"]) + "\n"
    if rec.command == "bijection":
        return " ".join(map(str, r["word"])) + "\n"
    if rec.command == "verify":
        status = "ok" if r["ok"] else "FAILED"
        out = f"{rec.parameters['suite']}: {status} ({r['checks']} checks)\n"
        if not r["ok"]:
            out += "counterexample: " + json.dumps(r["counterexample"], sort_keys=True) + "\n"
        return out
    if "counts" in r:
        return "".join(f"{p} {c}\n" for p, c in r["counts"].items())
    out = r["count"] + "\n"
    for w in r.get("words", []):
        out += " ".join(map(str, w)) + "\n"
    return out


def render_csv(rec: OutputRecord) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    r = rec.results
    if "counts" in r:
        writer.writerow(["pattern", "count"])
        writer.writerows(r["counts"].items())
    elif "coefficients" in r:
        writer.writerow(["n", "count"])
        writer.writerows(enumerate(r["coefficients"], start=1))
    elif rec.command == "bijection":
        writer.writerow(["position", "letter"])
        writer.writerows(enumerate(r["word"], start=1))
    elif rec.command == "verify":
        writer.writerow(["suite", "ok", "checks"])
        writer.writerow([rec.parameters["suite"], r["ok"], r["checks"]])
    else:
        writer.writerow(["count", "total"])
        writer.writerow([r["count"], r["total"]])
    return buf.getvalue()


# -- argument parsing -------------------------------------------------------------


def _common(p: argparse.ArgumentParser):
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", help="JSON output")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv", help="CSV output")
    p.set_defaults(format="plain")
    p.add_argument("--no-timing", action="store_true", help="omit the timing field from JSON output")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: $PATAVOID_JOBS or 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="patavoid", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compositions", help="count compositions of n avoiding a pattern")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--flavor", choices=("positive", "nonnegative"), default="positive")
    p.add_argument("--k", type=int, help="number of parts")
    p.add_argument("--max-part", type=int)
    pat = p.add_mutually_exclusive_group()
    pat.add_argument("--pattern", help="pattern as a digit string, e.g. 132")
    pat.add_argument("--all-patterns", action="store_true", help="count for all six patterns of length 3")
    p.add_argument("--list", action="store_true", help="also print the avoiding compositions")
    _common(p)
    p.set_defaults(func=cmd_compositions)

    p = sub.add_parser("multiset", help="count permutations of a multiset avoiding a pattern")
    p.add_argument("mult", type=int, nargs="+", help="multiplicities a_1 ... a_k")
    p.add_argument("--pattern", required=True)
    p.add_argument("--engine", choices=("brute", "gf"), default="brute")
    p.add_argument("--list", action="store_true", help="also print the avoiding permutations")
    _common(p)
    p.set_defaults(func=cmd_multiset)

    for name, func, text in (
        ("series", cmd_series, "coefficients of the composition series for n = 1..n_max"),
        ("bfile", cmd_bfile, "the composition sequence as OEIS b-file lines"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--n-max", type=int, required=True)
        p.add_argument("--max-part", type=int)
        _common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("bijection", help="apply theta to a word")
    p.add_argument("word", type=int, nargs="+")
    p.add_argument("--target", type=int, nargs="+", required=True, help="target multiplicities")
    _common(p)
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    _common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs is None:
        args.jobs = default_jobs()
    start = time.perf_counter()
    try:
        rec = args.func(args)
    except (PatavoidError, ValueError) as exc:
        print(f"patavoid {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        if not args.no_timing:
            rec.timing = {"seconds": round(time.perf_counter() - start, 6)}
        sys.stdout.write(rec.to_json() + "\n")
    elif args.format == "csv":
        sys.stdout.write(render_csv(rec))
    else:
        sys.stdout.write(render_plain(rec))
    if rec.command == "verify" and not rec.results["ok"]:
        return EXIT_FAIL
    return EXIT_OK
