"""Command-line entry point.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
Precision comes from --precision, else UMBRA_PRECISION, else 30.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings
from dataclasses import asdict, dataclass, field
from pathlib import Path

import mpmath as mp

from . import catalogue, special
from .catalogue import VerificationReport
from .errors import UmbraError
from .explicit_formula import compute_zeros, default_zeros_path, load_zeros, psi_explicit_side
from .numerics import DEFAULT_PRECISION, MAX_PRECISION, MIN_PRECISION, set_precision
from .oracles import oracle_names
from .umbral import MODES, SHIFTED_EM, EngineConfig, line_integral_value, ramanujan_sum
from .xi_operator import PLAIN, SIN_WEIGHTED, scan_xi_zeros, xi_b

ENV_PRECISION = "UMBRA_PRECISION"
FORMATS = ("human", "json", "csv")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CSV_HEADER = VerificationReport.FIELDS + ("timestamp",)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    precision: int = DEFAULT_PRECISION
    precision_source: str = "default"
    tolerances: dict = field(default_factory=lambda: {k: mp.nstr(v, 3) for k, v in catalogue.DEFAULT_TOLERANCES.items()})
    N: int | None = None
    M: int | None = None
    format: str = "human"
    output: str | None = None

    @classmethod
    def resolve(cls, ns: argparse.Namespace, environ=None) -> "RunConfig":
        environ = os.environ if environ is None else environ
        cfg = cls()
        if getattr(ns, "precision", None) is not None:
            cfg.precision, cfg.precision_source = ns.precision, "flag"
        elif environ.get(ENV_PRECISION):
            raw = environ[ENV_PRECISION]
            try:
                cfg.precision = int(raw)
            except ValueError:
                raise UsageError(f"{ENV_PRECISION}={raw!r} is not an integer") from None
            cfg.precision_source = "env"
        if not MIN_PRECISION <= cfg.precision <= MAX_PRECISION:
            raise UsageError(f"precision must lie in [{MIN_PRECISION}, {MAX_PRECISION}], got {cfg.precision}")
        cfg.N = getattr(ns, "engine_n", None)
        cfg.M = getattr(ns, "engine_m", None)
        cfg.format = getattr(ns, "format", None) or "human"
        cfg.output = getattr(ns, "report", None)
        return cfg

    def engine(self, mode: str = "auto") -> EngineConfig:
        return EngineConfig(self.N, self.M, mode)

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("output")
        return d


# ---------------------------------------------------------------------------
# Rendering


def _cell(v) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=False)
    return str(v)


def render_report(reports: list[VerificationReport], fmt: str = "json", timestamps: bool = True) -> str:
    """Serialize reports in a fixed field order; the timestamp is always last."""
    rows = [r.to_dict() if timestamps else r.body() for r in reports]
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        header = CSV_HEADER if timestamps else VerificationReport.FIELDS
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(row[k]) for k in header])
        return buf.getvalue()
    if fmt == "human":
        lines = []
        for r in reports:
            lines.append(f"{r.id:<28} {r.status:<9} residual={r.residual:<12} tol={r.tolerance}")
            for d in r.diagnostics:
                lines.append(f"    ! {d}")
        passed = sum(r.passed for r in reports)
        lines.append(f"{passed}/{len(reports)} ok")
        return "\n".join(lines) + "\n"
    raise UsageError(f"unknown format {fmt!r}")


def exit_code_for(reports: list[VerificationReport]) -> int:
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _rows_out(rows: list[dict], cfg: RunConfig, human_cols: list[str]) -> str:
    if cfg.format == "json":
        return json.dumps(rows, indent=2) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else human_cols, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    widths = {c: max([len(c)] + [len(str(r[c])) for r in rows]) for c in human_cols}
    lines = ["  ".join(c.ljust(widths[c]) for c in human_cols)]
    lines += ["  ".join(str(r[c]).ljust(widths[c]) for c in human_cols) for r in rows]
    return "\n".join(lines) + "\n"


def _emit(text: str, cfg: RunConfig, out) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        out.write(text)


def _num(x, digits=None) -> str:
    text = mp.nstr(x, digits or mp.mp.dps)
    return text[1:-1] if text.startswith("(") else text


# ---------------------------------------------------------------------------
# Argument parsing


def parse_number(text: str):
    """'2', '2.5', '3,2' (re,im), '3+2j' or '1/3' to an mpmath number."""
    text = text.strip()
    try:
        if "," in text:
            re_, im_ = text.split(",", 1)
            return mp.mpc(mp.mpf(re_), mp.mpf(im_))
        if "/" in text:
            num, den = text.split("/", 1)
            return mp.mpf(num) / mp.mpf(den)
        if text.endswith("j"):
            return mp.mpc(complex(text))
        return mp.mpf(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _char_table(text: str) -> tuple:
    try:
        return tuple(complex(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"character values must be numbers: {text!r}") from None


def _param(text: str) -> tuple:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    k, v = text.split("=", 1)
    return k.strip(), parse_number(v)


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS, help=f"decimal digits (env {ENV_PRECISION})")
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    common.add_argument("--report", "--output", dest="report", default=argparse.SUPPRESS, help="write output here")

    ap = _Parser(prog="umbra", description="Bernoulli-operator sums and identity checks.", parents=[common])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("constants", parents=[common], help="umbral constants against their closed forms")

    p = sub.add_parser("verify", parents=[common], help="run registered identity checks")
    p.add_argument("--id", action="append", dest="ids", default=[], metavar="ID")
    p.add_argument("--all", action="store_true")
    p.add_argument("--list", action="store_true", help="list identity ids and exit")
    p.add_argument("--no-timestamp", action="store_true", help="omit timestamps from the report")
    p.add_argument("--n", type=_positive_int, dest="engine_n", help="engine shift N")
    p.add_argument("--m", type=_positive_int, dest="engine_m", help="engine truncation order M")

    p = sub.add_parser("eval", parents=[common], help="evaluate a special function")
    p.add_argument("function", choices=("zeta", "hurwitz", "lfunc", "gammapi", "xi"))
    p.add_argument("--s", type=parse_number, required=True, metavar="RE[,IM]")
    p.add_argument("--alpha", type=parse_number, help="Hurwitz shift")
    p.add_argument("--modulus", type=_positive_int)
    p.add_argument("--char-table", type=_char_table, metavar="v1,v2,...")
    p.add_argument("--order", type=int, default=0, help="derivative order (zeta, hurwitz)")
    p.add_argument("--operator", action="store_true", help="xi: the operator value xi(B + s)")
    p.add_argument("--weighted", action="store_true", help="xi --operator: sin-weighted kernel")

    p = sub.add_parser("xi-scan", parents=[common], help="sign changes of t -> xi(B + it)")
    p.add_argument("--t-max", type=parse_number, required=True)
    p.add_argument("--step", type=parse_number, required=True)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--tol", type=parse_number, default=None, help="quadrature tolerance")

    p = sub.add_parser("zeros", parents=[common], help="zeta zero tables")
    zsub = p.add_subparsers(dest="zeros_command", required=True, parser_class=_Parser)
    q = zsub.add_parser("compute", parents=[common])
    q.add_argument("--count", type=_positive_int, required=True)
    q.add_argument("--out", type=Path)
    q = zsub.add_parser("check", parents=[common])
    q.add_argument("--file", type=Path, required=True)
    q.add_argument("--against", type=_positive_int, default=3, help="ordinates compared with the internal scan")

    p = sub.add_parser("explicit", parents=[common], help="explicit formula against the prime side")
    p.add_argument("--x", type=parse_number, action="append", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--zeros-file", type=Path)
    g.add_argument("--compute-zeros", type=_positive_int, metavar="K")
    p.add_argument("--num-zeros", type=_positive_int, metavar="K")

    p = sub.add_parser("sum", parents=[common], help="f(B + a) for a registered summand")
    p.add_argument("--function", required=True, choices=oracle_names(), metavar="NAME")
    p.add_argument("--shift", type=parse_number, default=mp.mpf(0))
    p.add_argument("--n", type=_positive_int, dest="engine_n")
    p.add_argument("--m", type=_positive_int, dest="engine_m")
    p.add_argument("--param", type=_param, action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--mode", choices=("auto",) + MODES, default="auto")
    return ap


# ---------------------------------------------------------------------------
# Commands


def _constants_rows() -> list[dict]:
    half_pi = mp.pi / 2
    lam1 = catalogue.lambda1_brute()
    lam2 = catalogue.lambda2_brute()
    entries = [
        ("B log B", ramanujan_sum("xlogx").value, (1 - mp.log(2 * mp.pi)) / 2, "shifted-EM"),
        ("log sin(pi B/2)", line_integral_value("log-sin", c=half_pi).value, mp.mpf(1) / 2 - mp.log(2), "line-integral"),
        (
            "log Pi(B)",
            ramanujan_sum("log-gamma-pi", cfg=EngineConfig(mode=SHIFTED_EM)).value,
            (mp.log(2 * mp.pi) - 1) / 2 - mp.euler,
            "shifted-EM",
        ),
        (
            "zeta'(B)/zeta(B)",
            mp.pi**2 / 6 + (mp.euler + mp.log(mp.pi)) / 2 + lam1,
            (1 + mp.euler + mp.log(2 * mp.pi)) / 2 + mp.pi**2 / 16,
            "lambda_1 double sum",
        ),
        (
            "sin(pi B) zeta'(B)/zeta(B)",
            mp.pi * mp.log(2) + (mp.euler + mp.log(mp.pi)) * mp.pi / 4 + mp.pi * lam2,
            (mp.pi / 4) * (1 + mp.euler + mp.log(4 * mp.pi)),
            "lambda_2 double sum",
        ),
        ("gamma", catalogue.gamma_by_series(), +mp.euler, "sum (-1)^n zeta(n)/n"),
        ("lambda_1", lam1, (1 + mp.log(2)) / 2 - 5 * mp.pi**2 / 48, "Hurwitz inner, Euler-Maclaurin outer"),
        ("lambda_2", lam2, (1 - 2 * mp.log(2)) / 4, "alternating inner, Richardson outer"),
    ]
    digits = min(20, mp.mp.dps)
    return [
        {
            "name": name,
            "computed": _num(c, digits),
            "closed_form": _num(f, digits),
            "abs_diff": mp.nstr(abs(c - f), 3),
            "method": method,
        }
        for name, c, f, method in entries
    ]


def cmd_constants(ns, cfg: RunConfig, out) -> int:
    rows = _constants_rows()
    _emit(_rows_out(rows, cfg, ["name", "computed", "closed_form", "abs_diff", "method"]), cfg, out)
    return EXIT_OK


def cmd_verify(ns, cfg: RunConfig, out) -> int:
    if ns.list:
        out.write("\n".join(catalogue.list_identities()) + "\n")
        return EXIT_OK
    if not ns.all and not ns.ids:
        raise UsageError("verify needs --id ID (repeatable) or --all")
    ids = None if ns.all else list(dict.fromkeys(ns.ids))
    reports = catalogue.run_all(cfg.engine(), ids)
    for r in reports:
        r.metadata["config"] = cfg.echo()
    fmt = cfg.format
    if cfg.output and fmt == "human":
        fmt = "json"
    text = render_report(reports, fmt, timestamps=not ns.no_timestamp)
    if cfg.output:
        Path(cfg.output).write_text(text)
        out.write(render_report(reports, "human"))
    else:
        out.write(text)
    return exit_code_for(reports)


def _complex_clean(v):
    if isinstance(v, mp.mpc) and abs(mp.im(v)) <= abs(v) * mp.mpf(10) ** (-mp.mp.dps + 3):
        return mp.re(v)
    return v


def cmd_eval(ns, cfg: RunConfig, out) -> int:
    s, fn = ns.s, ns.function
    if ns.order < 0:
        raise UsageError("--order must be non-negative")
    if ns.order and fn not in ("zeta", "hurwitz"):
        raise UsageError("--order applies to zeta and hurwitz only")
    if fn == "zeta":
        value, label = special.zeta(s, ns.order), "zeta"
    elif fn == "hurwitz":
        if ns.alpha is None:
            raise UsageError("hurwitz needs --alpha")
        value, label = special.hurwitz_zeta(s, ns.alpha, ns.order), "hurwitz"
        args = f"{_num(s)}, {_num(ns.alpha)}"
    elif fn == "lfunc":
        if ns.char_table is None:
            raise UsageError("lfunc needs --char-table (and optionally --modulus)")
        k = ns.modulus or len(ns.char_table)
        chi = special.DirichletCharacter(k, ns.char_table)
        value, label = special.dirichlet_l(s, chi), "L"
    elif fn == "gammapi":
        value, label = mp.exp(special.log_gamma_pi(s)), "Pi"
    elif ns.operator:
        flavor = SIN_WEIGHTED if ns.weighted else PLAIN
        value, label = xi_b(s, flavor), f"xi_B[{flavor}]"
    else:
        value, label = special.xi_complete(s), "xi"
    value = _complex_clean(value)
    if fn != "hurwitz":
        args = _num(s)
    row = {"function": label, "s": _num(s), "order": ns.order, "value": _num(value), "precision": cfg.precision}
    if cfg.format == "human":
        prime = "'" * ns.order if ns.order <= 3 else f"^({ns.order})"
        _emit(f"{label}{prime}({args}) = {_num(value)}\n", cfg, out)
    else:
        _emit(_rows_out([row], cfg, list(row)), cfg, out)
    return EXIT_OK


def cmd_xi_scan(ns, cfg: RunConfig, out) -> int:
    flavor = SIN_WEIGHTED if ns.weighted else PLAIN
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        zeros = scan_xi_zeros(ns.t_max, ns.step, flavor, ns.tol)
    for w in caught:
        sys.stderr.write(f"warning: {w.message}\n")
    rows = [{"k": k, "t": _num(t, 12), "flavor": flavor} for k, t in enumerate(zeros, 1)]
    _emit(_rows_out(rows, cfg, ["k", "t", "flavor"]), cfg, out)
    return EXIT_OK


def _zero_file_text(zeros, note: str) -> str:
    return "\n".join([f"# {note}"] + [mp.nstr(g, 15) for g in zeros.ordinates]) + "\n"


def cmd_zeros(ns, cfg: RunConfig, out) -> int:
    if ns.zeros_command == "compute":
        zeros = compute_zeros(ns.count)
        text = _zero_file_text(zeros, f"first {zeros.count} zeta zero ordinates by sign changes of Xi(t)")
        if ns.out:
            ns.out.write_text(text)
            out.write(f"wrote {zeros.count} ordinates to {ns.out}\n")
        else:
            out.write(text)
        return EXIT_OK
    table = load_zeros(ns.file)
    k = min(ns.against, table.count)
    internal = compute_zeros(k) if k else None
    devs = [abs(a - b) for a, b in zip(table.first(k), internal.ordinates)] if k else []
    worst = max(devs, default=mp.mpf(0))
    ok = worst < mp.mpf("1e-4")
    row = {
        "file": str(ns.file),
        "count": table.count,
        "compared": k,
        "max_deviation": mp.nstr(worst, 3),
        "status": "pass" if ok else "fail",
    }
    _emit(_rows_out([row], cfg, list(row)), cfg, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_explicit(ns, cfg: RunConfig, out) -> int:
    if ns.compute_zeros:
        zeros = compute_zeros(ns.compute_zeros)
    else:
        zeros = load_zeros(ns.zeros_file or default_zeros_path())
    K = ns.num_zeros
    if K is not None and K > zeros.count:
        raise UsageError(f"--num-zeros {K} exceeds the {zeros.count} zeros available")
    rows = []
    for x in ns.x:
        c = psi_explicit_side(x, zeros, K)
        rows.append(
            {
                "x": _num(c.x, 10),
                "zeros_used": c.zeros_used,
                "zeros_source": zeros.source,
                "prime_side": _num(c.prime_side, 15),
                "explicit_side": _num(c.explicit_side, 15),
                "|diff|": mp.nstr(c.difference, 6),
            }
        )
    _emit(_rows_out(rows, cfg, ["x", "zeros_used", "prime_side", "explicit_side", "|diff|"]), cfg, out)
    return EXIT_OK


def cmd_sum(ns, cfg: RunConfig, out) -> int:
    params = dict(ns.param)
    r = ramanujan_sum(ns.function, ns.shift, cfg.engine(ns.mode), **params)
    row = {
        "function": ns.function,
        "shift": _num(ns.shift),
        "value": _num(_complex_clean(r.value)),
        "error_estimate": mp.nstr(r.error_estimate, 3),
        "method": r.method,
        "N": r.shift,
        "M": r.order,
        "convergence": r.convergence,
    }
    if cfg.format == "human":
        lines = [f"{k}: {v}" for k, v in row.items()]
        _emit("\n".join(lines) + "\n", cfg, out)
    else:
        _emit(_rows_out([row], cfg, list(row)), cfg, out)
    return EXIT_OK


COMMANDS = {
    "constants": cmd_constants,
    "verify": cmd_verify,
    "eval": cmd_eval,
    "xi-scan": cmd_xi_scan,
    "zeros": cmd_zeros,
    "explicit": cmd_explicit,
    "sum": cmd_sum,
}


def dispatch(argv=None, out=None, environ=None) -> int:
    out = out or sys.stdout
    try:
        ns = build_parser().parse_args(argv)
        cfg = RunConfig.resolve(ns, environ)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    previous = mp.mp.dps
    try:
        set_precision(cfg.precision)
        return COMMANDS[ns.command](ns, cfg, out)
    except UsageError as exc:
        sys.stderr.write(f"umbra: {exc}\n")
        return EXIT_USAGE
    except (UmbraError, ValueError, OSError, ZeroDivisionError) as exc:
        sys.stderr.write(f"umbra: error: {exc}\n")
        return EXIT_USAGE
    finally:
        mp.mp.dps = previous


def main(argv=None) -> int:
    return dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
