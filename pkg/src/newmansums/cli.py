"""Command-line interface.

Exit codes: 0 ok / verified, 1 usage or input error, 2 refutation of a
published relation or value, 3 new conjecture-relevant finding.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from newmansums import __version__
from newmansums import conjectures as cj
from newmansums.algebra import IntPolynomial
from newmansums.core import DomainError, SumSpec, newman_sum_naive
from newmansums.relations import (
    BUILTIN_RELATIONS,
    RelationSpec,
    char_poly,
    discover_recurrence,
    minimal_annihilator,
    verify_relation,
)
from newmansums.transfer import newman_sum_fast, transfer_matrix

EXIT_OK, EXIT_USAGE, EXIT_REFUTED, EXIT_FINDING = 0, 1, 2, 3
NAIVE_LIMIT = 1 << 26

# built-in fallbacks for options left unset on the command line and in --config
DEFAULTS: dict[str, Any] = {
    "seed": 0,
    "samples": 200,
    "bound": 10**4,
    "budget": 200,
    "max_degree": 8,
    "n_max": 1 << 20,
    "n_min": 64,
    "checkpoints": 20,
    "format": None,
    "workers": 1,
    "out": None,
}
# execution-only options, left out of the reproducibility header so that
# output bytes do not depend on them
_EXECUTION_ONLY = {"workers", "out", "config"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_int(text: str) -> int:
    """Decimal integer or power form ``b^e`` (no whitespace)."""
    m = re.fullmatch(r"(\d+)\^(\d+)", text)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    if re.fullmatch(r"\d+", text):
        return int(text)
    raise argparse.ArgumentTypeError(f"not a non-negative integer or b^e power: {text!r}")


def load_config(path: Optional[str]) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    if not path:
        return {}
    cfg = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in DEFAULTS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        cfg[key] = value
    return cfg


def _resolve(args: argparse.Namespace, cfg: dict[str, str]) -> None:
    for key, default in DEFAULTS.items():
        if not hasattr(args, key) or getattr(args, key) is not None:
            continue
        if key in cfg:
            raw = cfg[key]
            value = raw if key in ("format", "out") else parse_int(raw)
        else:
            value = default
        setattr(args, key, value)


def _header(args: argparse.Namespace, argv: Sequence[str]) -> dict[str, Any]:
    params = {
        k: (str(v) if isinstance(v, int) and not isinstance(v, bool) else v)
        for k, v in sorted(vars(args).items())
        if k not in _EXECUTION_ONLY and k != "func"
    }
    return {
        "version": __version__,
        "argv": _public_argv(argv),
        "seed": str(getattr(args, "seed", DEFAULTS["seed"])),
        "params": params,
    }


def _public_argv(argv: Sequence[str]) -> list[str]:
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        name = a.split("=", 1)[0].lstrip("-").replace("-", "_")
        if a.startswith("--") and name in _EXECUTION_ONLY:
            skip = "=" not in a
            continue
        out.append(a)
    return out


def _rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _float(x: Optional[float]) -> str:
    return "" if x is None else repr(x)


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, argv, payload: dict) -> None:
    doc = {"header": _header(args, argv), **payload}
    _emit(args, json.dumps(doc, indent=2) + "\n")


def _emit_table(args, argv, columns: list[str], rows: list[list[str]]) -> None:
    if args.format == "json":
        _emit_json(args, argv, {"columns": columns, "rows": [dict(zip(columns, r)) for r in rows]})
        return
    buf = io.StringIO()
    buf.write("# " + json.dumps(_header(args, argv), separators=(",", ":")) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    _emit(args, buf.getvalue())


# -- commands ------------------------------------------------------------------

def cmd_sum(args, argv) -> int:
    spec = SumSpec(args.q, args.m, args.l)
    if args.naive:
        if args.x > NAIVE_LIMIT:
            raise UsageError(f"--naive is limited to x <= 2^26, got {args.x}")
        value = newman_sum_naive(spec, args.x)
    else:
        value = newman_sum_fast(spec, args.x)
    if args.format == "json":
        _emit_json(args, argv, {"value": str(value)})
    else:
        _emit(args, f"{value}\n")
    return EXIT_OK


def _relation_from_json(doc: dict) -> RelationSpec:
    try:
        spec = SumSpec(int(doc["q"]), int(doc["m"]), int(doc.get("l", 0)))
        coeffs = IntPolynomial(tuple(int(c) for c in doc["coefficients"]))
        return RelationSpec(spec, int(doc["step"]), int(doc.get("divisibility", 1)), coeffs)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed relation JSON: {exc}") from exc


def _parse_coeffs(text: str) -> IntPolynomial:
    try:
        return IntPolynomial(tuple(int(c) for c in text.split(",")))
    except ValueError as exc:
        raise UsageError(f"--coeffs wants comma-separated integers, got {text!r}") from exc


def cmd_verify(args, argv) -> int:
    if args.relation in BUILTIN_RELATIONS:
        rel = BUILTIN_RELATIONS[args.relation]
    elif args.relation:
        path = Path(args.relation)
        if not path.is_file():
            raise UsageError(
                f"unknown relation {args.relation!r}; use one of "
                f"{', '.join(BUILTIN_RELATIONS)} or a JSON file"
            )
        try:
            rel = _relation_from_json(json.loads(path.read_text()))
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: {exc}") from exc
    else:
        if args.q is None or args.m is None or args.coeffs is None:
            raise UsageError("give a relation name, a JSON file, or -q, -m and --coeffs")
        rel = RelationSpec(SumSpec(args.q, args.m, args.l), args.step, args.div, _parse_coeffs(args.coeffs))
    report = verify_relation(rel, args.samples, args.bound, args.seed)
    _emit_json(args, argv, report.to_json())
    return EXIT_OK if report.status == "verified" else EXIT_REFUTED


def cmd_discover(args, argv) -> int:
    spec = SumSpec(args.q, args.m, args.l)
    report = discover_recurrence(
        spec, args.step, args.div, args.max_degree, args.budget, args.seed, bound=args.bound
    )
    if report.diagnostic:
        print(report.diagnostic, file=sys.stderr)
    payload = report.to_json()
    payload["polynomial"] = str(report.relation.coefficients)
    _emit_json(args, argv, payload)
    return EXIT_OK if report.status == "discovered" else EXIT_FINDING


def _emit_poly(args, argv, poly: IntPolynomial) -> None:
    if args.format == "json":
        _emit_json(args, argv, {
            "coefficients": [str(c) for c in poly.coefficients],
            "polynomial": str(poly),
        })
    else:
        _emit(args, f"{poly}\n")


def cmd_charpoly(args, argv) -> int:
    _emit_poly(args, argv, char_poly(transfer_matrix(args.q, args.m)))
    return EXIT_OK


def cmd_annihilator(args, argv) -> int:
    _emit_poly(args, argv, minimal_annihilator(args.q, args.m, args.l, args.power))
    return EXIT_OK


def conj_aseq(args, argv) -> int:
    rows = [[str(n), str(cj.a_sequence(n))] for n in range(args.start, args.max + 1)]
    _emit_table(args, argv, ["n", "a_n"], rows)
    return EXIT_OK


def conj_primes(args, argv) -> int:
    records = cj.scan_primes(args.max, workers=args.workers)
    rows = [
        [str(r.p), str(r.a_p), str(int(r.divisible_by_p)), str(int(r.is_plus_minus_p)),
         "" if r.quotient is None else str(r.quotient), str(int(r.drmota_skalba))]
        for r in records
    ]
    _emit_table(args, argv, ["p", "a_p", "divisible", "pm", "quotient", "drmota_skalba"], rows)
    bad = cj.published_mismatches(records)
    for r in bad:
        print(f"a_{r.p} = {r.a_p} disagrees with published {cj.PUBLISHED_A[r.p]}", file=sys.stderr)
    if bad:
        return EXIT_REFUTED
    for r in records:
        if r.p > cj.PUBLISHED_LIMIT and not r.is_plus_minus_p and not r.drmota_skalba:
            print(f"note: |a_{r.p}| != {r.p} (quotient {r.quotient})", file=sys.stderr)
    findings = cj.divisibility_findings(records)
    for r in findings:
        print(f"finding: {r.p} does not divide a_{r.p} = {r.a_p}", file=sys.stderr)
    return EXIT_FINDING if findings else EXIT_OK


def conj_positivity(args, argv) -> int:
    rep = cj.positivity_scan(SumSpec(args.q, args.m, args.l), args.n_max)
    cols = ["q", "m", "l", "n_lo", "n_hi", "min_value", "argmin", "all_positive"]
    row = [str(v) for v in (args.q, args.m, args.l, *rep.n_range, rep.min_value, rep.argmin)]
    _emit_table(args, argv, cols, [row + [str(int(rep.all_positive))]])
    return EXIT_OK


def conj_exponent(args, argv) -> int:
    est = cj.exponent_estimate(SumSpec(args.q, args.m, args.l), args.n_max, args.n_min)
    rows = [[str(n), str(s), _float(lam)] for n, s, lam in est.trace]
    _emit_table(args, argv, ["n", "S", "lambda_running"], rows)
    if est.empty:
        print("exponent estimate empty: |S(n)| < 2 throughout", file=sys.stderr)
    else:
        print(f"lambda_hat = {est.lambda_hat!r} at n = {est.argmax_n} (|S| = {est.record_value})",
              file=sys.stderr)
    return EXIT_OK


def conj_ratio(args, argv) -> int:
    recs = cj.ratio_scan(args.m, args.k, args.n_max, args.checkpoints)
    rows = [[str(r.n), str(r.s_m), str(r.s_3k), _rat(r.ratio), repr(r.ratio_float)] for r in recs]
    _emit_table(args, argv, ["n", "S_m", "S_3k", "ratio", "ratio_float"], rows)
    return EXIT_OK


def conj_gelfond(args, argv) -> int:
    recs = cj.gelfond_remainder(args.m, args.n_max, args.checkpoints)
    rows = [[str(r.x), str(r.g0), str(r.g1), _rat(r.rem0), _rat(r.rem1), _float(r.exponent)]
            for r in recs]
    _emit_table(args, argv, ["x", "g0", "g1", "rem0", "rem1", "exponent"], rows)
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json", "text"], default=None)
    common.add_argument("--out", default=None, help="write data here instead of stdout")
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--config", default=None, help="flat key = value defaults file")

    def spec_args(p, need_l=True):
        p.add_argument("-q", type=int, required=True)
        p.add_argument("-m", type=int, required=True)
        if need_l:
            p.add_argument("-l", type=int, default=0)

    parser = _Parser(prog="newmansums", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sum", parents=[common], help="S_{m,l,q}(x)")
    spec_args(p)
    p.add_argument("-x", type=parse_int, required=True, help="decimal or b^e")
    p.add_argument("--naive", action="store_true", help="enumerate (x <= 2^26)")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("verify", parents=[common], help="check an interval relation")
    p.add_argument("relation", nargs="?", help=f"{' | '.join(BUILTIN_RELATIONS)} | JSON file")
    p.add_argument("-q", type=int)
    p.add_argument("-m", type=int)
    p.add_argument("-l", type=int, default=0)
    p.add_argument("--step", type=int, default=2)
    p.add_argument("--div", type=int, default=1)
    p.add_argument("--coeffs", help="c0,c1,...,cr lowest degree first")
    p.add_argument("--samples", type=parse_int)
    p.add_argument("--bound", type=parse_int)
    p.add_argument("--seed", type=parse_int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("discover", parents=[common], help="find a minimal interval recurrence")
    spec_args(p)
    p.add_argument("--step", type=int, default=2)
    p.add_argument("--div", type=int, default=1)
    p.add_argument("--max-degree", dest="max_degree", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--bound", type=parse_int)
    p.add_argument("--seed", type=parse_int)
    p.set_defaults(func=cmd_discover)

    p = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial of the transfer matrix")
    spec_args(p, need_l=False)
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("annihilator", parents=[common], help="minimal annihilator of e_l under B^power")
    spec_args(p)
    p.add_argument("--power", type=int, default=1)
    p.set_defaults(func=cmd_annihilator)

    p = sub.add_parser("conjecture", help="conjecture scans")
    csub = p.add_subparsers(dest="scan", required=True, parser_class=_Parser)

    c = csub.add_parser("a-seq", parents=[common], help="a_n = S_{n,0}(2^n)")
    c.add_argument("--start", type=int, default=1)
    c.add_argument("--max", type=int, required=True)
    c.set_defaults(func=conj_aseq)

    c = csub.add_parser("primes", parents=[common], help="a_p for odd primes p <= max")
    c.add_argument("--max", type=int, required=True)
    c.set_defaults(func=conj_primes)

    for name, fn in (("positivity", conj_positivity), ("exponent", conj_exponent)):
        c = csub.add_parser(name, parents=[common])
        spec_args(c)
        c.add_argument("--n-max", dest="n_max", type=parse_int)
        if name == "exponent":
            c.add_argument("--n-min", dest="n_min", type=parse_int)
        c.set_defaults(func=fn)

    c = csub.add_parser("ratio", parents=[common], help="|S_{m,0}| / |S_{3k,0}|")
    c.add_argument("-m", type=int, required=True)
    c.add_argument("-k", type=int, required=True)
    c.add_argument("--n-max", dest="n_max", type=parse_int)
    c.add_argument("--checkpoints", type=int)
    c.set_defaults(func=conj_ratio)

    c = csub.add_parser("gelfond", parents=[common], help="Gelfond remainders G_i - x/(2m)")
    c.add_argument("-m", type=int, required=True)
    c.add_argument("--n-max", dest="n_max", type=parse_int)
    c.add_argument("--checkpoints", type=int)
    c.set_defaults(func=conj_gelfond)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _resolve(args, load_config(args.config))
        return args.func(args, argv)
    except (UsageError, DomainError, OSError) as exc:
        print(f"newmansums: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
