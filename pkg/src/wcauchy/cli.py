"""Command-line driver.

    wcauchy <subcommand> --config run.cfg [--out report.tsv]

The config is ``key = value`` lines (``#`` starts a comment).  Reports are
tab-separated with a header row, floats at 17 significant digits and
booleans as ``true``/``false``.  Exit status: 0 on success, 1 on a usage or
config error, 2 when a requested condition constant did not converge (the
report is still written).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import algebra, lattice, operators, verify
from .exceptions import ConvergenceError, KernelInconsistency, NotInvertible, SupportError
from .series import FormalSeries, SpaceConfig, read_series
from .weights import (ScanPolicy, holder_constant, make_weight_family, p1_tail_sum,
                      shift_norm_constant, tail_constant)

SUBCOMMANDS = ("product", "invert", "conditions", "opnorm", "compactness",
               "krylov", "spectrum", "verify")

EXIT_OK, EXIT_USAGE, EXIT_UNCONVERGED = 0, 1, 2

KNOWN_KEYS = {
    "p", "degree", "beta.family", "delta.family", "scan.nmax", "scan.window",
    "scan.threshold", "i", "M", "k", "N", "q", "K", "lambda", "series.f", "series.g",
}


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return "none"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


class Report:
    def __init__(self, *header):
        self.lines = ["\t".join(header)]

    def row(self, *cells):
        self.lines.append("\t".join(fmt(c) for c in cells))

    def text(self):
        return "\n".join(self.lines) + "\n"


def read_config(path):
    cfg = {}
    base = Path(path).parent
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        if key not in KNOWN_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        if key.startswith("series.") or (key.endswith(".family") and value.startswith("custom:")):
            prefix = "custom:" if value.startswith("custom:") else ""
            target = Path(value[len(prefix):])
            if not target.is_absolute():
                target = base / target
            value = prefix + str(target)
        cfg[key] = value
    return cfg


class Context:
    """Typed access to a parsed config."""

    def __init__(self, raw):
        self.raw = raw

    def has(self, key):
        return key in self.raw

    def int(self, key, default=None):
        if key not in self.raw:
            if default is None:
                raise UsageError(f"missing config key {key!r}")
            return default
        try:
            return int(self.raw[key])
        except ValueError:
            raise UsageError(f"{key} must be an integer, got {self.raw[key]!r}") from None

    def float(self, key, default=None):
        if key not in self.raw:
            if default is None:
                raise UsageError(f"missing config key {key!r}")
            return default
        try:
            return float(self.raw[key])
        except ValueError:
            raise UsageError(f"{key} must be a number, got {self.raw[key]!r}") from None

    @property
    def scan(self):
        return ScanPolicy(n_max=self.int("scan.nmax", 2048), window=self.int("scan.window", 16),
                          divergence_threshold=self.float("scan.threshold", 1e12))

    @property
    def space(self):
        D = self.int("degree", 32)
        n_max = max(D, self.scan.n_max)
        return SpaceConfig(self.float("p", 2.0),
                           make_weight_family(self.raw.get("beta.family", "one"), n_max),
                           make_weight_family(self.raw.get("delta.family", "one"), n_max), D)

    def series(self, key, D):
        if key not in self.raw:
            raise UsageError(f"missing config key {key!r}")
        return read_series(self.raw[key], D)


def _series_report(f):
    rep = Report("degree", "re", "im")
    for n, c in enumerate(f.coeffs):
        rep.row(n, float(c.real), float(c.imag))
    return rep


def cmd_product(ctx):
    space = ctx.space
    f, g = ctx.series("series.f", space.D), ctx.series("series.g", space.D)
    i = ctx.int("i", 0)
    return _series_report(algebra.diamond_i(f, g, i, space)), EXIT_OK


def cmd_invert(ctx):
    space = ctx.space
    f = ctx.series("series.f", space.D)
    return _series_report(algebra.invert_i(f, ctx.int("i", 0), space)), EXIT_OK


def cmd_conditions(ctx):
    space, scan = ctx.space, ctx.scan
    beta, delta = space.beta, space.delta
    i = ctx.int("i", 0)
    reports = []
    if ctx.has("q") or space.p > 1:
        reports.append(holder_constant(beta, delta, ctx.float("q", space.q), i, scan))
    if ctx.has("M") and ctx.has("k"):
        reports.append(tail_constant(beta, delta, ctx.int("M"), ctx.int("k"), i, scan))
    if ctx.has("N"):
        N = ctx.int("N")
        reports.append(p1_tail_sum(beta, delta, N, i, scan))
        if N >= 1:
            reports.append(shift_norm_constant(beta, delta, N, scan))
    rep = Report("name", "value", "converged", "witness")
    for r in reports:
        rep.row(r.name, r.value, r.converged, r.witness)
    status = EXIT_OK if all(r.converged for r in reports) else EXIT_UNCONVERGED
    return rep, status


def cmd_opnorm(ctx):
    space = ctx.space
    rep = Report("operator", "lower", "upper", "method", "shift_constant")
    if ctx.has("series.f"):
        f = ctx.series("series.f", space.D)
        b = operators.induced_norm_bounds(operators.mult_matrix(f, space, ctx.int("i", 0)), space)
        rep.row("mult", b.lower, b.upper, b.method_tag, None)
        return rep, EXIT_OK
    N = ctx.int("N", 1)
    b = operators.induced_norm_bounds(operators.shift_matrix(N, space), space)
    C = shift_norm_constant(space.beta, space.delta, N,
                            ScanPolicy(n_max=space.D, window=min(ctx.scan.window, space.D)))
    rep.row(f"shift^{N}", b.lower, b.upper, b.method_tag, C.value)
    return rep, EXIT_OK


def cmd_compactness(ctx):
    space = ctx.space
    f = ctx.series("series.f", space.D)
    Ms = range(1, ctx.int("M", 8) + 1)
    rows = operators.compactness_profile(f, ctx.int("i", 0), Ms, space, ctx.scan)
    rep = Report("M", "measured_lower", "measured_upper", "method", "lemma_bound",
                 "converged", "dominated")
    for r in rows:
        rep.row(r.M, r.measured.lower, r.measured.upper, r.measured.method_tag, r.lemma_bound,
                r.converged, r.measured.upper <= r.lemma_bound * (1 + 1e-9))
    status = EXIT_OK if all(r.converged for r in rows) else EXIT_UNCONVERGED
    return rep, status


def cmd_krylov(ctx):
    space = ctx.space
    f = ctx.series("series.f", space.D)
    prof = lattice.krylov_profile(f, ctx.int("K", space.D), space)
    rep = Report("key", "value")
    rep.row("index", prof.index)
    rep.row("rank", prof.rank)
    rep.row("echelon", prof.echelon)
    rep.row("cyclic", lattice.is_cyclic(f, space))
    rep.row("ideal_closure_index", lattice.ideal_closure_index(f, space))
    rep.row("leading", ",".join(fmt(x) for x in prof.leading_indices))
    return rep, EXIT_OK


def _parse_complex(text):
    parts = text.split()
    try:
        if len(parts) == 1:
            return complex(parts[0].replace("i", "j"))
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"lambda must be 're' or 're im', got {text!r}")


def cmd_spectrum(ctx):
    space = ctx.space
    f = ctx.series("series.f", space.D)
    if not ctx.has("lambda"):
        raise UsageError("missing config key 'lambda'")
    lam = _parse_complex(ctx.raw["lambda"])
    member = algebra.spectrum_membership(f, lam, space)
    phi = algebra.gelfand(f)
    rep = Report("key", "value")
    rep.row("member", member)
    rep.row("gelfand.re", float(phi.real))
    rep.row("gelfand.im", float(phi.imag))
    return rep, EXIT_OK


def cmd_verify(ctx):
    results = verify.run()
    labels = [f"{b}|{d}" for b, d in verify.FIXTURES]
    rep = Report("check", *labels)
    for name, cells in results.items():
        rep.row(name, *(cells[label] for label in labels))
    failed = sum(v == "fail" for cells in results.values() for v in cells.values())
    if failed:
        print(f"verify: {failed} check(s) failed", file=sys.stderr)
    return rep, EXIT_OK if not failed else EXIT_USAGE


COMMANDS = {name: globals()[f"cmd_{name}"] for name in SUBCOMMANDS}


def build_parser():
    parser = argparse.ArgumentParser(prog="wcauchy", description=__doc__.splitlines()[0])
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", help="key = value config file")
    parser.add_argument("--out", default="-", help="output path, '-' for stdout")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.config is None and args.subcommand != "verify":
            raise UsageError(f"{args.subcommand} needs --config")
        raw = read_config(args.config) if args.config else {}
        report, status = COMMANDS[args.subcommand](Context(raw))
    except (UsageError, ValueError, OSError, NotInvertible, SupportError, IndexError,
            ConvergenceError, KernelInconsistency) as exc:
        print(f"wcauchy {args.subcommand}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = report.text()
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    return status


def main():
    sys.exit(run())
