"""Command line front end.

Commands mirror the library: classify, iset, resonances, enumerate, count,
table, scan.  Output is deterministic: human text by default, JSON with
sorted keys via --format json, CSV for scan rows.  The elapsed-time field
lives only at the top of the JSON envelope, never inside result payloads, so
payloads are byte-stable across runs.

Exit codes: 0 success, 1 invalid input, 2 internal mismatch (a correctness
failure that must never occur), 3 negative mathematical answer (weight not
in the class, or resonances found).
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor

import click

from qcweights import core, counting
from qcweights.model import MembershipVerdict, ObstructionSet, WeightError, WeightTuple

FORMAT_ENVVAR = "QCW_FORMAT"

_format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json"]),
    default="text",
    envvar=FORMAT_ENVVAR,
    help="Output format (env default: QCW_FORMAT).",
)
_scan_format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json", "csv"]),
    default="text",
    envvar=FORMAT_ENVVAR,
    help="Output format (env default: QCW_FORMAT).",
)
_out_option = click.option(
    "--out",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Write output to a file instead of stdout.",
)
_backend_option = click.option(
    "--backend",
    type=click.Choice(list(core.BACKENDS)),
    default="sieve",
    help="Membership backend for set computation.",
)


def _fmt_set(values) -> str:
    return "{" + ", ".join(str(v) for v in values) + "}"


def _fmt_list(values) -> str:
    return "[" + ", ".join(str(v) for v in values) + "]"


def _fmt_bool(value: bool) -> str:
    return "true" if value else "false"


def _write(rendered: str, out: str | None) -> None:
    if out is None:
        click.echo(rendered, nl=False)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(rendered)


def _finish(
    command: str,
    input_echo: dict,
    result: dict,
    backend: str | None,
    fmt: str,
    out: str | None,
    started: float,
    text_lines: list[str],
) -> None:
    if fmt == "json":
        envelope = {
            "command": command,
            "input": input_echo,
            "backend": backend,
            "result": result,
            "elapsed_ms": round((time.perf_counter() - started) * 1000.0, 3),
        }
        rendered = json.dumps(envelope, sort_keys=True, indent=2) + "\n"
    else:
        rendered = "\n".join(text_lines) + "\n"
    _write(rendered, out)


def _verdict_result(verdict: MembershipVerdict) -> dict:
    failure = None
    if verdict.failure is not None:
        failure = {"reason": verdict.failure.reason, "level": verdict.failure.level}
    return {
        "weight": list(verdict.weight.m),
        "in_class": verdict.in_class,
        "witnesses": list(verdict.witnesses),
        "failure": failure,
    }


def _verdict_text(verdict: MembershipVerdict) -> list[str]:
    lines = [
        f"weight: {' '.join(str(x) for x in verdict.weight.m)}",
        f"in_class: {_fmt_bool(verdict.in_class)}",
        f"witnesses: {_fmt_list(verdict.witnesses)}",
    ]
    if verdict.failure is not None:
        lines.append(f"failure: {verdict.failure.reason} (level {verdict.failure.level})")
    return lines


def _iset_result(iset: ObstructionSet) -> dict:
    return {
        "prefix": list(iset.prefix),
        "M": iset.window,
        "interval": list(iset.interval),
        "elements": list(iset.elements),
        "size": iset.size,
    }


@click.group()
def cli() -> None:
    """Exact analyzer for quasi-circular domain weights."""


@cli.command()
@click.argument("weights", nargs=-1, type=int, required=True)
@_format_option
@_out_option
@click.pass_context
def classify(ctx: click.Context, weights: tuple[int, ...], fmt: str, out: str | None) -> None:
    """Decide class membership and report the window witness chain.

    Exits 3 when the weight is not in the class (a valid negative answer).
    """
    started = time.perf_counter()
    verdict = core.is_in_class(core.validate_weight(weights))
    _finish(
        "classify",
        {"weights": list(weights)},
        _verdict_result(verdict),
        "apery",
        fmt,
        out,
        started,
        _verdict_text(verdict),
    )
    if not verdict.in_class:
        ctx.exit(3)


@cli.command()
@click.argument("prefix", nargs=-1, type=int, required=True)
@click.option("--M", "window", type=int, required=True, help="Window index, >= 1.")
@_backend_option
@_format_option
@_out_option
def iset(prefix: tuple[int, ...], window: int, backend: str, fmt: str, out: str | None) -> None:
    """Compute the obstruction set of one window over a prefix."""
    started = time.perf_counter()
    result_set = core.obstruction_set(prefix, window, backend)
    text = [
        f"prefix: {' '.join(str(x) for x in result_set.prefix)}",
        f"M: {result_set.window}",
        f"interval: ({result_set.interval[0]}, {result_set.interval[1]})",
        f"elements: {_fmt_set(result_set.elements)}",
        f"size: {result_set.size}",
    ]
    _finish(
        "iset",
        {"prefix": list(prefix), "M": window, "backend": backend},
        _iset_result(result_set),
        backend,
        fmt,
        out,
        started,
        text,
    )


@cli.command("resonances")
@click.argument("weights", nargs=-1, type=int, required=True)
@_format_option
@_out_option
@click.pass_context
def resonances_cmd(ctx: click.Context, weights: tuple[int, ...], fmt: str, out: str | None) -> None:
    """List all resonance witnesses of a weight.

    Exits 0 with an empty list when the weight is resonance-free, 3 when
    witnesses exist.
    """
    started = time.perf_counter()
    witnesses = core.resonances(core.validate_weight(weights))
    result = {
        "weight": list(weights),
        "count": len(witnesses),
        "witnesses": [{"i": w.i, "j": w.j, "k": list(w.k)} for w in witnesses],
    }
    text = [
        f"weight: {' '.join(str(x) for x in weights)}",
        f"count: {len(witnesses)}",
    ]
    text.extend(f"(i={w.i}, j={w.j}, k={_fmt_list(w.k)})" for w in witnesses)
    _finish("resonances", {"weights": list(weights)}, result, None, fmt, out, started, text)
    if witnesses:
        ctx.exit(3)


@cli.command("enumerate")
@click.argument("prefix", nargs=-1, type=int, required=True)
@click.option("--M", "window", type=int, required=True, help="Window index, >= 1.")
@_backend_option
@_format_option
@_out_option
def enumerate_cmd(
    prefix: tuple[int, ...], window: int, backend: str, fmt: str, out: str | None
) -> None:
    """Enumerate the admissible next weights of one window over a prefix."""
    started = time.perf_counter()
    admissible = core.enumerate_admissible(prefix, window, backend)
    sigma = sum(prefix)
    lo, hi = (window - 1) * sigma, window * sigma
    result = {
        "prefix": list(prefix),
        "M": window,
        "interval": [lo, hi],
        "admissible": admissible,
        "count": len(admissible),
    }
    text = [
        f"prefix: {' '.join(str(x) for x in prefix)}",
        f"M: {window}",
        f"interval: ({lo}, {hi})",
        f"admissible: {_fmt_set(admissible)}",
        f"count: {len(admissible)}",
    ]
    _finish(
        "enumerate",
        {"prefix": list(prefix), "M": window, "backend": backend},
        result,
        backend,
        fmt,
        out,
        started,
        text,
    )


@cli.command()
@click.argument("m1", type=int)
@click.argument("m2", type=int)
@_format_option
@_out_option
@click.pass_context
def count(ctx: click.Context, m1: int, m2: int, fmt: str, out: str | None) -> None:
    """Report the window-2 gap census with the closed-form count when proven.

    Exits 2 if the closed form disagrees with enumeration; that exit must be
    unreachable.
    """
    started = time.perf_counter()
    report = counting.closed_form_count(m1, m2)
    result = {
        "m1": report.m1,
        "m2": report.m2,
        "window_size": report.window_size,
        "i_set_size": report.i_set_size,
        "gap_set": list(report.gap_set),
        "formula": report.formula,
        "closed_form": report.closed_form,
        "matches": report.matches,
    }
    text = [
        f"m1: {report.m1}",
        f"m2: {report.m2}",
        f"window_size: {report.window_size}",
        f"i_set_size: {report.i_set_size}",
        f"gap_set: {_fmt_set(report.gap_set)}",
        f"formula: {report.formula if report.formula is not None else 'none'}",
        f"closed_form: {report.closed_form if report.closed_form is not None else 'none'}",
        f"matches: {_fmt_bool(report.matches)}",
    ]
    _finish("count", {"m1": m1, "m2": m2}, result, "sieve", fmt, out, started, text)
    if not report.matches:
        click.echo("internal mismatch: closed form disagrees with enumeration", err=True)
        ctx.exit(2)


def _d_table_lines(m1: int, rows) -> list[str]:
    lines = [f"d and S for m1 = {m1}", "m2  d   S"]
    for m2, d, gap in rows:
        d_text = str(d) if d is not None else "-"
        lines.append(f"{m2:<4}{d_text:<4}{_fmt_set(gap)}")
    return lines


def _f_table_lines(rows) -> list[str]:
    lines = ["f(m2) for m1 = 3", "m2  f"]
    for m2, f in rows:
        lines.append(f"{m2:<4}{f}")
    return lines


@cli.command()
@click.argument("name", type=click.Choice(["d-table", "f-table"]))
@_format_option
@_out_option
def table(name: str, fmt: str, out: str | None) -> None:
    """Reproduce a reference table (gap counts and gap sets)."""
    started = time.perf_counter()
    if name == "d-table":
        rows = counting.table_d(counting.TABLE_D_M1, counting.TABLE_D_M2)
        result = {
            "m1": counting.TABLE_D_M1,
            "rows": [{"m2": m2, "d": d, "S": list(gap)} for m2, d, gap in rows],
        }
        text = _d_table_lines(counting.TABLE_D_M1, rows)
    else:
        rows = counting.table_f(counting.TABLE_F_M2)
        result = {"rows": [{"m2": m2, "f": f} for m2, f in rows]}
        text = _f_table_lines(rows)
    _finish("table", {"name": name}, result, "sieve", fmt, out, started, text)


def _level_i_sizes(m: tuple[int, ...]) -> list[int | None]:
    sizes: list[int | None] = []
    for j in range(3, len(m) + 1):
        prefix = m[: j - 1]
        sigma = sum(prefix)
        mj = m[j - 1]
        if mj % sigma == 0:
            sizes.append(None)
        else:
            window = mj // sigma + 1
            sizes.append(core.obstruction_set(prefix, window).size)
    return sizes


def _scan_row(m: tuple[int, ...], row_filter: str) -> dict | None:
    verdict = core.is_in_class(WeightTuple(m))
    if row_filter == "in-class" and not verdict.in_class:
        return None
    n_res = len(core.resonances(WeightTuple(m)))
    if row_filter == "resonance-free" and n_res > 0:
        return None
    if row_filter == "both" and not (verdict.in_class and n_res == 0):
        return None
    if row_filter == "disagree" and not (verdict.in_class and n_res > 0):
        return None
    row = _verdict_result(verdict)
    row["n_resonances"] = n_res
    row["i_set_sizes"] = _level_i_sizes(m)
    return row


def _scan_rows(arity: int, max_weight: int, row_filter: str, workers: int) -> list[dict]:
    firsts = range(1, max_weight - arity + 2)

    def work(first: int) -> list[dict]:
        rows = []
        for rest in itertools.combinations(range(first + 1, max_weight + 1), arity - 1):
            m = (first, *rest)
            if math.gcd(*m) != 1:
                continue
            row = _scan_row(m, row_filter)
            if row is not None:
                rows.append(row)
        return rows

    if workers <= 1:
        chunks = [work(first) for first in firsts]
    else:
        # Disjoint lexicographic ranges per worker; map preserves order, so
        # the merged output is schedule-independent.
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(work, firsts))
    return [row for chunk in chunks for row in chunk]


def _scan_text(rows: list[dict]) -> list[str]:
    lines = []
    for row in rows:
        parts = [
            " ".join(str(x) for x in row["weight"]),
            f"in_class={_fmt_bool(row['in_class'])}",
            f"witnesses={_fmt_list(row['witnesses'])}",
            f"resonances={row['n_resonances']}",
            "i_sizes=" + _fmt_list("-" if s is None else s for s in row["i_set_sizes"]),
        ]
        if row["failure"] is not None:
            parts.append(f"failure={row['failure']['reason']}@{row['failure']['level']}")
        lines.append("  ".join(parts))
    lines.append(f"rows: {len(rows)}")
    return lines


def _scan_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["weight", "in_class", "witnesses", "n_resonances", "i_set_sizes", "failure"])
    for row in rows:
        failure = row["failure"]
        writer.writerow(
            [
                " ".join(str(x) for x in row["weight"]),
                _fmt_bool(row["in_class"]),
                " ".join(str(x) for x in row["witnesses"]),
                row["n_resonances"],
                " ".join("-" if s is None else str(s) for s in row["i_set_sizes"]),
                "" if failure is None else f"{failure['reason']}@{failure['level']}",
            ]
        )
    return buf.getvalue()


@cli.command()
@click.option("--n", "arity", type=int, required=True, help="Weight length, >= 2.")
@click.option("--max", "max_weight", type=int, required=True, help="Largest entry to scan.")
@click.option(
    "--filter",
    "row_filter",
    type=click.Choice(["in-class", "resonance-free", "both", "disagree"]),
    default="in-class",
    help="Which weights become rows.",
)
@click.option("--workers", type=int, default=1, help="Worker threads over disjoint ranges.")
@_scan_format_option
@_out_option
@click.pass_context
def scan(
    ctx: click.Context,
    arity: int,
    max_weight: int,
    row_filter: str,
    workers: int,
    fmt: str,
    out: str | None,
) -> None:
    """Scan all valid weights of one length up to a bound.

    Weights are enumerated in lexicographic order; tuples that fail
    validation (gcd > 1) are skipped silently.  The disagree filter selects
    in-class weights with resonances and must produce zero rows; any row
    makes the scan exit 2.
    """
    started = time.perf_counter()
    if arity < 2:
        raise WeightError(f"scan needs n >= 2, got {arity}")
    if max_weight < arity:
        raise WeightError(f"scan needs max >= n, got max {max_weight} with n {arity}")
    rows = _scan_rows(arity, max_weight, row_filter, workers)
    input_echo = {
        "n": arity,
        "max": max_weight,
        "filter": row_filter,
        "workers": workers,
    }
    if fmt == "csv":
        _write(_scan_csv(rows), out)
    else:
        result = {"rows": rows, "count": len(rows)}
        _finish("scan", input_echo, result, "apery", fmt, out, started, _scan_text(rows))
    if row_filter == "disagree" and rows:
        click.echo(
            f"internal mismatch: {len(rows)} in-class weights have resonances", err=True
        )
        ctx.exit(2)


def main(argv: list[str] | None = None) -> int:
    """Entry point with the documented exit-code contract."""
    try:
        # Without standalone mode, click returns ctx.exit codes instead of
        # calling sys.exit, which keeps the code mapping in one place.
        rv = cli.main(args=argv, prog_name="qcw", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 1
    except WeightError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return rv if isinstance(rv, int) else 0
