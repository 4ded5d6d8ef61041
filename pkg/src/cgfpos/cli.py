"""Command-line front end: ``cgfpos <command> ...``.

Every command prints one JSON document.  Exit codes: 0 verdict true /
success, 1 verdict false, 2 undetermined (or not a polynomial), 3 usage or
parse error, 4 degree cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import replace
from typing import List, Optional, Sequence

from .certify import (
    CertifyConfig,
    certificate_from_dict,
    certificate_to_dict,
    certify_nonnegativity,
    hsop_test,
    polya_multiplier,
    verify_certificate,
)
from .conjectures import ScanSummary, scan_family
from .cyclotomic import cgf_form, cyclotomic_poly
from .polyq import CapExceeded, IntPoly, QuotientSpec, expand_quotient, is_flat, max_abs_coeff, min_coefficient
from .semigroup import GeneratorSet, apery_set, frobenius_number, selmer_bound

SCHEMA = "cgfpos.report/1"
EXIT_TRUE, EXIT_FALSE, EXIT_UNDETERMINED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3, 4

REPORT_FIELDS = {"schema", "spec", "polynomial", "nonnegative", "delta", "certificates", "notes"}
OPTIONAL_REPORT_FIELDS = {"coefficients", "timings"}


class ParseError(ValueError):
    def __init__(self, position: int, token: str, reason: str):
        super().__init__(f"at position {position}: {reason} ({token!r})")
        self.position = position
        self.token = token


def parse_intlist(text: str, offset: int = 0, *, allow_zero: bool = False, allow_negative: bool = False) -> List[int]:
    if not text.strip():
        return []
    out = []
    pos = 0
    for raw in text.split(","):
        token = raw.strip()
        where = offset + pos + (len(raw) - len(raw.lstrip()))
        pos += len(raw) + 1
        if not re.fullmatch(r"-?\d+" if allow_negative else r"\d+", token):
            raise ParseError(where, token, "expected a decimal integer")
        value = int(token)
        if value < 0 and not allow_negative:
            raise ParseError(where, token, "negative values are not allowed")
        if value == 0 and not allow_zero:
            raise ParseError(where, token, "degrees must be positive")
        out.append(value)
    return out


def parse_spec(text: str) -> QuotientSpec:
    """Parse ``"a1,a2,.../b1,b2,..."`` into a QuotientSpec."""
    slashes = [i for i, ch in enumerate(text) if ch == "/"]
    if len(slashes) != 1:
        raise ParseError(slashes[1] if slashes else len(text), text, "expected exactly one '/'")
    left, right = text.split("/")
    A = parse_intlist(left, 0)
    B = parse_intlist(right, len(left) + 1)
    return QuotientSpec(tuple(A), tuple(B))


def render_spec(spec: QuotientSpec) -> str:
    return ",".join(map(str, spec.A)) + "/" + ",".join(map(str, spec.B))


# ----------------------------------------------------------------- documents


def _verdict_text(value: Optional[bool]) -> str:
    return {True: "true", False: "false", None: "undetermined"}[value]


def report_document(report, *, timings: bool = False) -> dict:
    doc = {
        "schema": SCHEMA,
        "spec": {"A": list(report.spec.A), "B": list(report.spec.B)},
        "polynomial": report.polynomial,
        "nonnegative": _verdict_text(report.nonnegative),
        "delta": list(report.delta) if report.delta is not None else None,
        "certificates": [_jsonable(certificate_to_dict(c)) for c in report.certificates],
        "notes": dict(sorted(report.notes.items())),
    }
    if report.coefficients is not None:
        doc["coefficients"] = list(report.coefficients.coeffs)
    if timings:
        doc["timings"] = {k: int(v) for k, v in sorted(report.timings.items())}
    return doc


def _jsonable(value):
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def load_report_document(doc: dict):
    """Validate a report document; return (spec, certificates)."""
    keys = set(doc)
    unknown = keys - REPORT_FIELDS - OPTIONAL_REPORT_FIELDS
    if unknown:
        raise ValueError(f"unknown fields {sorted(unknown)}")
    missing = REPORT_FIELDS - keys
    if missing:
        raise ValueError(f"missing fields {sorted(missing)}")
    if doc["schema"] != SCHEMA:
        raise ValueError(f"unsupported schema {doc['schema']!r}")
    if set(doc["spec"]) != {"A", "B"}:
        raise ValueError("spec must have exactly the fields A and B")
    if doc["nonnegative"] not in ("true", "false", "undetermined"):
        raise ValueError("nonnegative must be true, false or undetermined")

    def no_floats(v):
        if isinstance(v, float):
            raise ValueError("floating-point values are not allowed")
        if isinstance(v, dict):
            for x in v.values():
                no_floats(x)
        elif isinstance(v, list):
            for x in v:
                no_floats(x)

    no_floats(doc)
    spec = QuotientSpec(tuple(doc["spec"]["A"]), tuple(doc["spec"]["B"]))
    certs = [certificate_from_dict(c) for c in doc["certificates"]]
    return spec, certs


def verify_document(doc: dict) -> bool:
    spec, certs = load_report_document(doc)
    return all(verify_certificate(spec, c) for c in certs)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


# -------------------------------------------------------------------- config


ENV_DEFAULTS = {
    "degree_cap": ("CGF_DEGREE_CAP", 1_000_000),
    "hsop_distinct_cap": ("CGF_HSOP_DISTINCT_CAP", 24),
    "polya_kmax": ("CGF_POLYA_KMAX", 4096),
    "lattice_backtrack_cap": ("CGF_LATTICE_BACKTRACK_CAP", 100_000),
}


def resolve_config(args, environ=None) -> CertifyConfig:
    """Flags override CGF_* environment variables, which override defaults."""
    environ = os.environ if environ is None else environ
    values = {}
    for name, (env, default) in ENV_DEFAULTS.items():
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
        elif env in environ:
            try:
                values[name] = int(environ[env])
            except ValueError:
                raise ParseError(0, environ[env], f"{env} must be an integer") from None
        else:
            values[name] = default
    config = CertifyConfig(**values)
    if getattr(args, "no_hsop", False):
        config = replace(config, run_hsop=False)
    if getattr(args, "polya", False):
        config = replace(config, run_polya=True)
    if getattr(args, "coefficients", False):
        config = replace(config, keep_coefficients=True)
    return config


# ------------------------------------------------------------------ commands


def _cmd_check(args, out):
    config = resolve_config(args)
    report = certify_nonnegativity(parse_spec(args.spec), config)
    out(dumps(report_document(report, timings=args.timings)))
    return {True: EXIT_TRUE, False: EXIT_FALSE, None: EXIT_UNDETERMINED}[report.nonnegative]


def _cmd_expand(args, out):
    spec = parse_spec(args.spec)
    poly = expand_quotient(spec, resolve_config(args).degree_cap)
    doc = {"schema": SCHEMA, "spec": {"A": list(spec.A), "B": list(spec.B)}, "polynomial": poly is not None}
    if poly is not None:
        doc["coefficients"] = list(poly.coeffs)
    out(dumps(doc))
    return EXIT_TRUE if poly is not None else EXIT_UNDETERMINED


def _cmd_hsop(args, out):
    spec = parse_spec(args.spec)
    if len(spec.A) != len(spec.B):
        raise ParseError(0, args.spec, "hsop needs the same number of degrees on both sides")
    cert = hsop_test(spec.A, spec.B)
    doc = {
        "schema": SCHEMA,
        "spec": {"A": list(spec.A), "B": list(spec.B)},
        "hsop": cert.kind == "HsopHolds",
        "certificate": _jsonable(certificate_to_dict(cert)),
    }
    out(dumps(doc))
    return EXIT_TRUE if cert.kind == "HsopHolds" else EXIT_FALSE


def _cmd_frobenius(args, out):
    gens = parse_intlist(args.gens)
    if not gens:
        raise ParseError(0, args.gens, "need at least one generator")
    S = GeneratorSet(gens)
    R = GeneratorSet(S.reduced)
    doc = {
        "schema": SCHEMA,
        "generators": list(S.gens),
        "gcd": S.gcd,
        "reduced": list(S.reduced),
        "apery": list(apery_set(R)),
        "frobenius": frobenius_number(R),
        "selmer_bound": selmer_bound(R) if len(R.gens) >= 2 else None,
    }
    if args.contains:
        doc["contains"] = {str(x): x in S for x in parse_intlist(args.contains, allow_zero=True)}
    out(dumps(doc))
    return EXIT_TRUE


def _cmd_cyclotomic(args, out):
    if args.n < 1:
        raise ParseError(0, str(args.n), "cyclotomic index must be positive")
    p = cyclotomic_poly(args.n)
    doc = {
        "schema": SCHEMA,
        "n": args.n,
        "degree": int(p.degree),
        "coefficients": list(p.coeffs),
        "min_coefficient": min_coefficient(p),
        "max_abs_coefficient": max_abs_coeff(p),
        "flat": is_flat(p),
    }
    out(dumps(doc))
    return EXIT_TRUE


def _cmd_polya(args, out):
    config = resolve_config(args)
    if args.cyclotomic is not None:
        target = {"cyclotomic": args.cyclotomic}
        poly = cyclotomic_poly(args.cyclotomic)
    elif args.spec is not None:
        spec = parse_spec(args.spec)
        target = {"spec": {"A": list(spec.A), "B": list(spec.B)}}
        poly = expand_quotient(spec, config.degree_cap)
        if poly is None:
            out(dumps({"schema": SCHEMA, "target": target, "polynomial": False, "k": None}))
            return EXIT_UNDETERMINED
    else:
        raise ParseError(0, "", "give a spec or --cyclotomic N")
    k = polya_multiplier(poly, config.polya_kmax)
    out(dumps({"schema": SCHEMA, "target": target, "k_max": config.polya_kmax, "k": k}))
    return EXIT_TRUE if k is not None else EXIT_UNDETERMINED


def _cmd_cgf_form(args, out):
    coeffs = parse_intlist(args.coeffs, allow_zero=True, allow_negative=True)
    poly = IntPoly(coeffs)
    if poly.is_zero() or min(poly.coeffs) < 0:
        raise ParseError(0, args.coeffs, "a CGF has non-negative coefficients and is nonzero")
    form = cgf_form(poly)
    doc = {"schema": SCHEMA, "coefficients": list(poly.coeffs), "cgf": form is not None}
    if form is not None:
        doc.update(alpha=form.alpha, beta=form.beta, cyclotomic_indices=list(form.cyclo_indices))
    out(dumps(doc))
    return EXIT_TRUE if form is not None else EXIT_UNDETERMINED


def read_scan_keys(path: str) -> set:
    """Instance keys already recorded in a scan file (for resuming)."""
    keys = set()
    if not os.path.exists(path):
        return keys
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                keys.add(json.loads(line)["key"])
            except (ValueError, KeyError):
                # a torn final line from an interrupted run; it is cut before appending
                continue
    return keys


def _cut_torn_tail(path: str) -> None:
    with open(path, "rb+") as fh:
        data = fh.read()
        if data and not data.endswith(b"\n"):
            fh.truncate(data.rfind(b"\n") + 1)


def _run_scan(family, args, out, **ranges):
    config = resolve_config(args)
    skip = read_scan_keys(args.out) if args.out else set()
    if args.out and os.path.exists(args.out):
        _cut_torn_tail(args.out)
    summary = ScanSummary()
    sink = open(args.out, "a") if args.out else None
    try:
        for rec in scan_family(family, config=config, jobs=args.jobs, skip=skip, **ranges):
            summary.add(rec)
            line = json.dumps(rec.as_dict(timings=args.timings), sort_keys=True)
            if sink:
                sink.write(line + "\n")
                sink.flush()
            else:
                out(line)
    finally:
        if sink:
            sink.close()
    doc = {
        "schema": SCHEMA,
        "family": family,
        "instances": summary.instances,
        "resumed_skipped": len(skip),
        "polynomial": summary.polynomial,
        "certified_nonnegative": summary.certified_nonnegative,
        "undetermined": summary.undetermined,
        "fast_path": summary.fast_path,
        "violations": summary.violations,
        "corollary_misses": summary.corollary_misses,
        "errors": summary.errors,
    }
    (out if sink else lambda s: print(s, file=sys.stderr))(dumps(doc))
    if summary.violations:
        return EXIT_FALSE
    if summary.undetermined or summary.errors:
        return EXIT_UNDETERMINED
    return EXIT_TRUE


def _cmd_scan_gk(args, out):
    return _run_scan("gk", args, out, n_max=args.n_max)


def _cmd_scan_stanton(args, out):
    return _run_scan("stanton", args, out, n_max=args.n_max, m_max=args.m_max, a_max=args.a_max)


# -------------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_caps(p, *names):
    flags = {
        "degree_cap": "--degree-cap",
        "hsop_distinct_cap": "--hsop-distinct-cap",
        "polya_kmax": "--polya-kmax",
        "lattice_backtrack_cap": "--lattice-backtrack-cap",
    }
    for name in names:
        p.add_argument(flags[name], dest=name, type=int, default=None, help=f"env {ENV_DEFAULTS[name][0]}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cgfpos", description="Polynomiality and non-negativity of q-integer quotients.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    all_caps = tuple(ENV_DEFAULTS)

    p = sub.add_parser("check", help="run the certificate cascade on a spec 'a1,a2,.../b1,b2,...'")
    p.add_argument("spec")
    p.add_argument("--coefficients", action="store_true", help="include the expanded coefficients")
    p.add_argument("--timings", action="store_true", help="include per-stage timings (microseconds)")
    p.add_argument("--no-hsop", action="store_true", help="skip the subset test")
    p.add_argument("--polya", action="store_true", help="also search for a (1+q)^k multiplier")
    _add_caps(p, *all_caps)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("expand", help="expand a spec exactly")
    p.add_argument("spec")
    _add_caps(p, "degree_cap")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("hsop", help="subset test with failing witness")
    p.add_argument("spec")
    p.set_defaults(func=_cmd_hsop)

    p = sub.add_parser("frobenius", help="semigroup data for generators 's1,s2,...'")
    p.add_argument("gens")
    p.add_argument("--contains", help="comma-separated values to test for membership")
    p.set_defaults(func=_cmd_frobenius)

    p = sub.add_parser("cyclotomic", help="coefficients of the n-th cyclotomic polynomial")
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_cyclotomic)

    p = sub.add_parser("polya", help="least k with (1+q)^k * f non-negative")
    p.add_argument("spec", nargs="?")
    p.add_argument("--cyclotomic", type=int, help="use Phi_N instead of a spec")
    _add_caps(p, "degree_cap", "polya_kmax")
    p.set_defaults(func=_cmd_polya)

    p = sub.add_parser("cgf-form", help="write 'c0,c1,...' as alpha q^beta prod Phi_d")
    p.add_argument("coeffs")
    p.set_defaults(func=_cmd_cgf_form)

    for name, func in (("scan-gk", _cmd_scan_gk), ("scan-stanton", _cmd_scan_stanton)):
        p = sub.add_parser(name, help=f"scan the {name[5:]} family")
        p.add_argument("--n-max", type=int, required=True)
        if name == "scan-stanton":
            p.add_argument("--m-max", type=int, required=True)
            p.add_argument("--a-max", type=int, required=True)
        p.add_argument("--out", help="append records (JSON lines) here; resumes from existing keys")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--timings", action="store_true")
        _add_caps(p, *all_caps)
        p.set_defaults(func=func)
    return parser


def run_command(argv: Sequence[str], out=print) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"cgfpos: parse error {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"cgfpos: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"cgfpos: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
