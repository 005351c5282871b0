"""gammaseq command line: eval, seq, roots, na, verify.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 inconclusive verification. Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import csv
import datetime
import functools
import io
import json
import math
import sys
from decimal import Decimal, InvalidOperation

import click

from . import __version__, _backend, analysis, sequences
from .certified import CertifiedValue, DomainError, EvalConfig
from .constants import ConstantCheckError, validate_euler_gamma
from .gfun import FIELD_NAMES, eval_point

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

SEQ_NAMES = ("sigma", "S", "C", "D", "harmonic")
VERIFY_NAMES = analysis.SUITES + ("all",)


class UsageFailure(click.ClickException):
    exit_code = EXIT_USAGE


def fmt_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return v
    v = float(v)
    if not math.isfinite(v):
        return "inf" if v > 0 else ("-inf" if v < 0 else "nan")
    return format(v, ".17g")


def fmt_err(v):
    return format(float(v), ".3g")


def parse_decimal(text, name):
    try:
        d = Decimal(text.strip())
    except (InvalidOperation, AttributeError):
        raise UsageFailure(f"{name}: cannot parse {text!r} as a decimal number") from None
    if not d.is_finite():
        raise UsageFailure(f"{name}: {text!r} is not finite")
    return d


def _cell(key, v):
    if isinstance(v, CertifiedValue):
        raise TypeError(key)
    return fmt_err(v) if key == "err" or key.endswith("_err") else fmt_value(v)


def _json_scalar(text):
    # numbers stay numbers; everything else is a string
    if text in ("true", "false"):
        return text == "true"
    try:
        v = int(text)
        return v
    except ValueError:
        pass
    try:
        v = float(text)
    except ValueError:
        return text
    return v if math.isfinite(v) else text


def render(records, fmt, meta=None):
    """records: list of dicts with identical keys, values already plain Python scalars."""
    rows = [{k: _cell(k, v) for k, v in r.items()} for r in records]
    if fmt == "json":
        doc = {}
        if meta is not None:
            doc["meta"] = meta
        doc["records"] = [{k: _json_scalar(v) for k, v in r.items()} for r in rows]
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    if meta is not None:
        for k, v in meta.items():
            buf.write(f"# {k}={v}\n")
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def _meta(ctx, cfg):
    return {
        "version": __version__,
        "backend": _backend.NAME,
        "command": ctx.command_path,
        "target_err": fmt_err(cfg.target_err),
        "max_terms": str(cfg.max_terms),
        "generated": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
    }


def common(fn):
    """Format, metadata, thread and evaluation-budget options shared by every subcommand."""

    @click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
    @click.option("--meta", is_flag=True, help="Prepend a metadata header.")
    @click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True)
    @click.option("--target-err", type=str, default=None, help="Absolute error target (env GAMMASEQ_TARGET_ERR).")
    @click.option("--max-terms", type=str, default=None, help="Series term budget (env GAMMASEQ_MAX_TERMS).")
    @click.pass_context
    @functools.wraps(fn)
    def wrapper(ctx, fmt, meta, threads, target_err, max_terms, **kw):
        try:
            cfg = EvalConfig.from_env(
                float(parse_decimal(target_err, "--target-err")) if target_err is not None else None,
                int(parse_decimal(max_terms, "--max-terms")) if max_terms is not None else None,
            )
        except (ValueError, DomainError) as exc:
            raise UsageFailure(str(exc)) from None
        try:
            records, code = fn(cfg=cfg, threads=threads, **kw)
        except DomainError as exc:
            raise UsageFailure(str(exc)) from None
        click.echo(render(records, fmt, _meta(ctx, cfg) if meta else None), nl=False)
        ctx.exit(code)

    return wrapper


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__)
def cli():
    """Certified evaluation of G(x) = Gamma(x+1)^(1/x), its sequences and inequalities."""
    try:
        validate_euler_gamma()
    except ConstantCheckError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_FAIL)


@cli.command("eval")
@click.option("--x", "x_text", required=True, help="Point x >= 0.01, as a decimal string.")
@click.option("--fields", default=",".join(FIELD_NAMES), show_default=True, help="Comma-separated field names.")
@common
def cmd_eval(cfg, threads, x_text, fields):
    """Evaluate G and its relatives at one point."""
    x = float(parse_decimal(x_text, "--x"))
    names = [f.strip() for f in fields.split(",") if f.strip()]
    bad = [f for f in names if f not in FIELD_NAMES]
    if bad or not names:
        raise UsageFailure(f"unknown field(s) {bad}; choose from {', '.join(FIELD_NAMES)}")
    p = eval_point(x, cfg)
    out = []
    for name in names:
        cv = p.field(name)
        out.append({"kind": "point", "x": x, "field": name, "value": cv.value, "err": cv.err, "accurate": cv.accurate})
    return out, EXIT_OK


def _seq_rows(name, n_from, n_to):
    if name in ("sigma", "S"):
        tab = sequences.sigma_table(n_to)[n_from - 1 :]
        for t in tab:
            cv = t.sigma if name == "sigma" else t.S
            yield {"kind": "sequence_row", "seq": name, "n": t.n, "value": cv.value, "err": cv.err}
    elif name in ("C", "D"):
        ht = sequences.harmonic_rows(n_to)
        for m in range(n_from, n_to + 1):
            v = ht.c(m) if name == "C" else ht.d(m)
            yield {"kind": "sequence_row", "seq": name, "n": m, "value": v}
    else:
        ht = sequences.harmonic_rows(n_to)
        for m in range(n_from, n_to + 1):
            r = ht.row(m)
            yield {"kind": "sequence_row", "seq": name, "n": m, "H": r.H, "H2": r.H2, "C_m": r.C_m, "D_m": r.D_m}


@cli.command("seq")
@click.argument("name", type=click.Choice(SEQ_NAMES))
@click.argument("n_from", type=int)
@click.argument("n_to", type=int)
@common
def cmd_seq(cfg, threads, name, n_from, n_to):
    """Rows n_from..n_to of sigma, S, C, D or the harmonic table."""
    if not 1 <= n_from <= n_to:
        raise UsageFailure(f"need 1 <= n_from <= n_to, got {n_from}, {n_to}")
    return list(_seq_rows(name, n_from, n_to)), EXIT_OK


@cli.command("roots")
@click.option("--tol", "tol_text", default="1e-7", show_default=True)
@common
def cmd_roots(cfg, threads, tol_text):
    """Brackets for the zero a of d5' and the zero c of d5."""
    tol = float(parse_decimal(tol_text, "--tol"))
    if not tol > 0:
        raise UsageFailure(f"--tol must be > 0, got {tol_text}")
    out, code = [], EXIT_OK
    for rb in (analysis.find_root_a(tol), analysis.find_root_c(tol)):
        # published 5-decimal enclosures only apply once the bracket is that narrow
        fine = rb.width <= 1e-5
        ok = analysis.root_contained(rb, fine=fine) and analysis.root_contained(rb, fine=False)
        if not ok:
            click.echo(f"error: {rb.target.value} bracket [{rb.lo!r}, {rb.hi!r}] outside its enclosure", err=True)
            code = EXIT_FAIL
        out.append(
            {
                "kind": "root",
                "target": rb.target.value,
                "lo": rb.lo,
                "hi": rb.hi,
                "width": rb.width,
                "iterations": rb.iterations,
                "contained": ok,
            }
        )
    return out, code


@cli.command("na")
@click.option("--a", "a_text", required=True, help="Real a > 1, as a decimal string.")
@click.option("--exact", is_flag=True, help="Decide n <= 25 in exact rational arithmetic.")
@common
def cmd_na(cfg, threads, a_text, exact):
    """Smallest n with a^n <= n! and its interval."""
    parse_decimal(a_text, "--a")
    r = sequences.n_a(a_text.strip(), exact=exact)
    row = {"kind": "na", "a": r.a_in, "n_a": r.n_a, "interval_lo": r.interval_lo, "interval_hi": r.interval_hi}
    return [row], EXIT_OK


def _int_option(text, name, minimum=1):
    d = parse_decimal(text, name)
    if d != d.to_integral_value() or d < minimum:
        raise UsageFailure(f"{name} must be an integer >= {minimum}, got {text}")
    return int(d)


def _run_suite(name, m_max, n_max, grid, threads):
    if name == "euler":
        return analysis.verify_cor_euler(m_max, threads)
    if name == "polygamma":
        return analysis.verify_cor_polygamma(m_max, threads)
    if name == "bounds":
        return analysis.verify_bounds(grid or analysis.DEFAULT_BOUNDS_GRID, threads)
    if name == "majorant":
        return analysis.verify_majorant(grid or analysis.DEFAULT_BOUNDS_GRID, threads)
    if name == "limits":
        return analysis.verify_limits(grid or analysis.DEFAULT_LIMIT_XS)
    if name == "monotone":
        return analysis.verify_monotone(n_max)
    if name == "sign_bridge":
        return analysis.verify_sign_bridge(grid or analysis.BRIDGE_XS, threads)
    if name == "identities":
        return analysis.verify_identities(grid or analysis.IDENTITY_XS, threads)
    if name == "s_sandwich":
        return analysis.verify_s_sandwich(18, n_max if n_max >= 18 else 18, threads)
    raise UsageFailure(f"unknown suite {name!r}")


@cli.command("verify")
@click.argument("suite")
@click.option("--m-max", "m_text", default="10000", show_default=True, help="Upper index for euler/polygamma.")
@click.option("--n-max", "n_text", default=None, help="Upper index for monotone (5000) and s_sandwich (1000).")
@click.option("--grid", "grid_text", default=None, help="Comma-separated points for grid suites.")
@common
def cmd_verify(cfg, threads, suite, m_text, n_text, grid_text):
    """Run a verification suite (or all of them)."""
    if suite not in VERIFY_NAMES:
        raise UsageFailure(f"unknown suite {suite!r}; choose from {', '.join(VERIFY_NAMES)}")
    m_max = _int_option(m_text, "--m-max")
    n_max = _int_option(n_text, "--n-max") if n_text is not None else None
    grid = None
    if grid_text is not None:
        grid = tuple(float(parse_decimal(t, "--grid")) for t in grid_text.split(",") if t.strip())
        if not grid:
            raise UsageFailure("--grid is empty")
    names = analysis.SUITES if suite == "all" else (suite,)
    out, reports = [], []
    for name in names:
        nm = n_max if n_max is not None else (1000 if name == "s_sandwich" else 5000)
        rep = _run_suite(name, m_max, nm, grid, threads)
        reports.append(rep)
        for rec in rep.failures[:20]:
            click.echo(f"FAIL {rep.suite_id} at {rec.where!r}: {rec.check}: lhs={rec.lhs!r} rhs={rec.rhs!r}", err=True)
        for rec in rep.inconclusive[:20]:
            click.echo(f"INCONCLUSIVE {rep.suite_id} at {rec.where!r}: {rec.check}: lhs={rec.lhs!r} rhs={rec.rhs!r}", err=True)
        out.append(
            {
                "kind": "suite",
                "suite_id": rep.suite_id,
                "range": rep.range_descr,
                "n_checked": rep.n_checked,
                "n_failed": rep.n_failed,
                "n_inconclusive": rep.n_inconclusive,
                "worst_margin": rep.worst_margin,
                "verdict": rep.verdict,
            }
        )
    if any(r.n_failed for r in reports):
        code = EXIT_FAIL
    elif any(r.n_inconclusive for r in reports):
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_OK
    return out, code


def main(argv=None):
    try:
        rv = cli.main(args=argv, prog_name="gammaseq", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except (DomainError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - only the documented codes may escape
        click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
        return EXIT_FAIL
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
