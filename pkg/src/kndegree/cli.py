"""Command line front end: ``kndegree {rw,group,sweep,check}``.

Exit codes: 0 ok, 2 configuration error, 3 math-pipeline error, 4 check failure.
All error paths print a JSON error object with a stable ``code``.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from . import serialize
from .algebra import cyclic_group_algebra, cyclic_group_table, group_algebra
from .errors import KnDegreeError, NotAGroup
from .linalg import CoefficientContext, is_prime
from .morava import EMAlgebra, invariant_report, rw_algebra, rw_presentation

EXIT_OK, EXIT_CONFIG, EXIT_MATH, EXIT_CHECK = 0, 2, 3, 4
DEFAULT_RANK_BUDGET = 4096


class ErrorCode(str, Enum):
    INVALID_ARGUMENT = "INVALID_ARGUMENT"
    INVALID_PRIME = "INVALID_PRIME"
    EMPTY_GRID = "EMPTY_GRID"
    FILE_ERROR = "FILE_ERROR"
    NOT_A_GROUP = "NOT_A_GROUP"
    RANK_BUDGET_EXCEEDED = "RANK_BUDGET_EXCEEDED"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"
    AXIOM_FAILURE = "AXIOM_FAILURE"
    ANNIHILATOR_RANK = "ANNIHILATOR_RANK"
    NOT_FROBENIUS = "NOT_FROBENIUS"
    CLOSED_FORM_MISMATCH = "CLOSED_FORM_MISMATCH"
    BAD_PRESENTATION = "BAD_PRESENTATION"
    CONTEXT_MISMATCH = "CONTEXT_MISMATCH"
    MISSING_AUGMENTATION = "MISSING_AUGMENTATION"
    MATH_ERROR = "MATH_ERROR"
    CHECK_FAILURE = "CHECK_FAILURE"


CONFIG_CODES = {ErrorCode.INVALID_ARGUMENT, ErrorCode.INVALID_PRIME, ErrorCode.EMPTY_GRID,
                ErrorCode.FILE_ERROR, ErrorCode.NOT_A_GROUP, ErrorCode.RANK_BUDGET_EXCEEDED}


class CliError(Exception):
    def __init__(self, code: ErrorCode, message: str):
        self.code = ErrorCode(code)
        super().__init__(message)

    @property
    def exit_code(self) -> int:
        if self.code is ErrorCode.CHECK_FAILURE:
            return EXIT_CHECK
        return EXIT_CONFIG if self.code in CONFIG_CODES else EXIT_MATH

    @classmethod
    def from_math(cls, exc: KnDegreeError) -> "CliError":
        try:
            code = ErrorCode(exc.code)
        except ValueError:
            code = ErrorCode.MATH_ERROR
        return cls(code, str(exc))

    def to_json(self) -> dict:
        return {"schema": serialize.SCHEMA_VERSION,
                "error": {"code": self.code.value, "exit_code": self.exit_code, "message": str(self)}}


def rank_budget() -> int:
    return int(os.environ.get("MORAVA_BUDGET", DEFAULT_RANK_BUDGET))


@dataclass
class RunConfig:
    command: str
    p: Optional[int] = None
    n: Optional[int] = None
    q: Optional[int] = None
    p_set: tuple = ()
    n_range: tuple = ()
    q_range: Optional[tuple] = None
    group_cyclic: Optional[int] = None
    group_table: Optional[str] = None
    smax: int = 2
    format: str = "json"
    out: Optional[str] = None
    fast: bool = False
    inject_fault: bool = False
    budget: int = field(default_factory=rank_budget)

    def validate(self):
        for name in ("p",):
            v = getattr(self, name)
            if v is not None and not is_prime(v):
                raise CliError(ErrorCode.INVALID_PRIME, f"--{name} {v} is not prime")
        for v in self.p_set:
            if not is_prime(v):
                raise CliError(ErrorCode.INVALID_PRIME, f"--p-set entry {v} is not prime")
        if self.n is not None and self.n < 1:
            raise CliError(ErrorCode.INVALID_ARGUMENT, "--n must be >= 1")
        if any(v < 1 for v in self.n_range):
            raise CliError(ErrorCode.INVALID_ARGUMENT, "--n-range entries must be >= 1")
        if self.q is not None and self.q < 0:
            raise CliError(ErrorCode.INVALID_ARGUMENT, "--q must be >= 0")
        if self.smax < 0:
            raise CliError(ErrorCode.INVALID_ARGUMENT, "--smax must be >= 0")
        if self.format not in ("json", "csv", "text"):
            raise CliError(ErrorCode.INVALID_ARGUMENT, f"unknown format {self.format!r}")
        return self


# ---------------------------------------------------------------------------
# pipeline


def _degree_fields(d) -> dict:
    return {"degree_lift": d.lift, "degree_mod": d.value}


def expected_rw_rank(ctx: CoefficientContext, q: int) -> int:
    if q == 0:
        return ctx.p
    return int(np.prod([g.truncation for g in rw_presentation(ctx, q).generators] or [1]))


def _invariants(alg, report, smax) -> dict:
    inv = {
        "pi": serialize.element_terms(alg, report.pi),
        "pi_text": alg.format(report.pi),
        **_degree_fields(report.degree),
        "epsilon_pi": int(report.epsilon_pi),
        "frobenius": {"xi": serialize.element_terms(alg, report.frobenius.xi),
                      "nondegenerate": bool(report.frobenius.nondegenerate),
                      "degree_mod": report.frobenius.degree.value,
                      "method": report.frobenius.method},
        "indecomposables": _degree_fields(report.indecomposables_degree),
        "tor": None if report.tor is None else report.tor.to_json(),
    }
    if "tor" in report.errors:
        exc = report.errors["tor"]
        inv["tor_error"] = {"code": exc.code, "message": str(exc)}
    return inv


def rw_document(cfg: RunConfig, p: int, n: int, q: int) -> dict:
    ctx = CoefficientContext(p, n)
    want = expected_rw_rank(ctx, q)
    if want > cfg.budget:
        raise CliError(ErrorCode.RANK_BUDGET_EXCEEDED, f"K({n})_*K(Z/{p},{q}) has rank {want} > budget {cfg.budget}")
    E = rw_algebra(ctx, q, check=not cfg.fast)
    report = invariant_report(E, cfg.smax)
    return {
        "schema": serialize.SCHEMA_VERSION,
        "command": "rw",
        "context": serialize.context_json(ctx),
        "algebra": E.metadata(),
        "presentation": serialize.presentation_to_json(ctx, E.presentation) if E.presentation else [],
        "invariants": _invariants(E.algebra, report, cfg.smax),
    }


def group_document(cfg: RunConfig) -> dict:
    n = cfg.n or 1
    ctx = CoefficientContext(cfg.p, n)
    if cfg.group_table:
        try:
            table, labels = serialize.load_group_table(cfg.group_table)
        except (OSError, ValueError, KeyError) as exc:
            raise CliError(ErrorCode.FILE_ERROR, f"cannot read group table: {exc}") from exc
        desc = {"family": "group", "order": len(table), "source": "table"}
    elif cfg.group_cyclic is not None:
        if cfg.group_cyclic < 1:
            raise CliError(ErrorCode.INVALID_ARGUMENT, "--group-cyclic must be >= 1")
        table, labels = cyclic_group_table(cfg.group_cyclic), None
        desc = {"family": "group", "order": cfg.group_cyclic, "source": "cyclic"}
    else:
        raise CliError(ErrorCode.INVALID_ARGUMENT, "group needs --group-cyclic or --group-table")
    if len(table) > cfg.budget:
        raise CliError(ErrorCode.RANK_BUDGET_EXCEEDED, f"group of order {len(table)} > budget {cfg.budget}")
    if labels is None and cfg.group_cyclic is not None:
        labels = cyclic_group_algebra(ctx, cfg.group_cyclic, check=False).labels
    try:
        A = group_algebra(ctx, table, labels=labels, check=not cfg.fast)
    except NotAGroup as exc:
        raise CliError(ErrorCode.NOT_A_GROUP, str(exc)) from exc
    report = invariant_report(A, cfg.smax)
    desc["rank"] = A.rank
    return {
        "schema": serialize.SCHEMA_VERSION,
        "command": "group",
        "context": serialize.context_json(ctx),
        "algebra": desc,
        "presentation": [],
        "invariants": _invariants(A, report, cfg.smax),
    }


def _parse_range(text: str) -> tuple:
    """'1:3' (inclusive) or '1,2,3'."""
    text = text.strip()
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":"))
            return tuple(range(lo, hi + 1))
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise CliError(ErrorCode.INVALID_ARGUMENT, f"bad range {text!r}") from exc


def sweep_grid(cfg: RunConfig) -> list:
    grid = []
    for p in cfg.p_set:
        for n in cfg.n_range:
            qs = cfg.q_range if cfg.q_range is not None else tuple(range(1, n + 1))
            for q in qs:
                grid.append((p, n, q))
    if not grid:
        raise CliError(ErrorCode.EMPTY_GRID, "sweep grid is empty")
    return grid


def row_columns(smax: int) -> list:
    return (["p", "n", "q", "family", "rank", "degree_lift", "degree_mod", "epsilon_pi", "frobenius_ok"]
            + [f"tor_{s}" for s in range(1, smax + 1)] + ["error"])


def _row_from_doc(doc, smax) -> dict:
    inv = doc["invariants"]
    row = {"p": doc["context"]["p"], "n": doc["context"]["n"], "q": doc["algebra"].get("q"),
           "family": doc["algebra"]["family"], "rank": doc["algebra"]["rank"],
           "degree_lift": inv["degree_lift"], "degree_mod": inv["degree_mod"],
           "epsilon_pi": inv["epsilon_pi"], "frobenius_ok": inv["frobenius"]["nondegenerate"]}
    tor = inv["tor"]
    for s in range(1, smax + 1):
        row[f"tor_{s}"] = tor[s]["rank"] if tor else None
    row["error"] = inv["tor_error"]["code"] if "tor_error" in inv else None
    return row


def sweep_row(cfg: RunConfig, p: int, n: int, q: int) -> dict:
    try:
        return _row_from_doc(rw_document(cfg, p, n, q), cfg.smax)
    except (CliError, KnDegreeError) as exc:
        code = exc.code.value if isinstance(exc, CliError) else exc.code
        row = {c: None for c in row_columns(cfg.smax)}
        row.update(p=p, n=n, q=q, error=code)
        return row


def cmd_rw(cfg: RunConfig) -> dict:
    if None in (cfg.p, cfg.n, cfg.q):
        raise CliError(ErrorCode.INVALID_ARGUMENT, "rw needs --p, --n and --q")
    return rw_document(cfg, cfg.p, cfg.n, cfg.q)


def cmd_group(cfg: RunConfig) -> dict:
    if cfg.p is None:
        raise CliError(ErrorCode.INVALID_ARGUMENT, "group needs --p")
    return group_document(cfg)


def cmd_sweep(cfg: RunConfig) -> dict:
    grid = sweep_grid(cfg)
    rows = [sweep_row(cfg, p, n, q) for p, n, q in grid]
    return {
        "schema": serialize.SCHEMA_VERSION,
        "command": "sweep",
        "config": {"p_set": list(cfg.p_set), "n_range": list(cfg.n_range),
                   "q_range": None if cfg.q_range is None else list(cfg.q_range),
                   "smax": cfg.smax, "budget": cfg.budget},
        "columns": row_columns(cfg.smax),
        "rows": rows,
    }


def cmd_check(cfg: RunConfig):
    from .checks import run_checks
    return run_checks(p_set=cfg.p_set or (2, 3, 5), n_range=cfg.n_range or (1, 2, 3),
                      s_max=cfg.smax, fast=cfg.fast, inject_fault=cfg.inject_fault)


# ---------------------------------------------------------------------------
# rendering


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _rows_of(doc) -> tuple:
    if doc["command"] == "sweep":
        return doc["columns"], doc["rows"]
    smax = sum(1 for _ in (doc["invariants"]["tor"] or [])) - 1
    smax = max(smax, 0)
    return row_columns(smax), [_row_from_doc(doc, smax)]


def render_csv(doc) -> str:
    cols, rows = _rows_of(doc)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([_cell(row[c]) for c in cols])
    return buf.getvalue()


def render_text(doc) -> str:
    if doc["command"] != "sweep":
        inv = doc["invariants"]
        ctx = doc["context"]
        lines = [f"{'context':<18}p={ctx['p']} n={ctx['n']} period={ctx['period']}"]
        for k, v in doc["algebra"].items():
            lines.append(f"{k:<18}{_cell(v)}")
        for g in doc["presentation"]:
            rel = " + ".join(f"{c}*{g['name']}^{e}" for c, e in g["relation_rhs"]) or "0"
            lines.append(f"{'generator':<18}{g['name']}  |.|={g['degree_lift']} ({g['degree_mod']} mod "
                         f"{ctx['period']})  {g['name']}^{g['truncation']} = {rel}")
        lines.append(f"{'pi':<18}{inv['pi_text']}")
        lines.append(f"{'K(n)-degree':<18}{_cell(inv['degree_lift'])} ({inv['degree_mod']} mod {ctx['period']})")
        lines.append(f"{'epsilon(pi)':<18}{inv['epsilon_pi']}")
        lines.append(f"{'frobenius':<18}{'nondegenerate' if inv['frobenius']['nondegenerate'] else 'degenerate'}"
                     f" ({inv['frobenius']['method']})")
        ind = inv["indecomposables"]
        lines.append(f"{'indecomposables':<18}{_cell(ind['degree_lift'])} ({ind['degree_mod']} mod {ctx['period']})")
        for row in inv["tor"] or []:
            lines.append(f"{'Tor_' + str(row['s']):<18}rank {row['rank']}  degrees {row['degrees']}")
        if "tor_error" in inv:
            lines.append(f"{'Tor':<18}{inv['tor_error']['code']}")
        return "\n".join(lines) + "\n"
    cols, rows = _rows_of(doc)
    widths = {c: max(len(c), 6) for c in cols}
    widths["family"] = 9
    widths["error"] = 20
    out = ["  ".join(f"{c:>{widths[c]}}" for c in cols)]
    for row in rows:
        out.append("  ".join(f"{_cell(row[c]):>{widths[c]}}" for c in cols))
    return "\n".join(out) + "\n"


def render(doc, fmt: str) -> str:
    if fmt == "json":
        return serialize.dumps(doc)
    if fmt == "csv":
        return render_csv(doc)
    return render_text(doc)


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(ErrorCode.INVALID_ARGUMENT, message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kndegree", description="K(n)-local invariants of Eilenberg-MacLane spaces and finite groups.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--smax", type=int, default=2, help="top Tor degree (0 skips Tor)")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
        sp.add_argument("--out", default=None, help="write output here instead of stdout")
        sp.add_argument("--fast", action="store_true", help="skip eager axiom checks")

    rw = sub.add_parser("rw", help="K(n)_* K(Z/p, q)")
    rw.add_argument("--p", type=int, required=True)
    rw.add_argument("--n", type=int, required=True)
    rw.add_argument("--q", type=int, required=True)
    common(rw)

    grp = sub.add_parser("group", help="group algebra of a finite group")
    grp.add_argument("--p", type=int, required=True)
    grp.add_argument("--n", type=int, default=1)
    g = grp.add_mutually_exclusive_group(required=True)
    g.add_argument("--group-cyclic", type=int, metavar="M")
    g.add_argument("--group-table", metavar="FILE")
    common(grp)

    sw = sub.add_parser("sweep", help="run rw over a grid")
    sw.add_argument("--p-set", required=True)
    sw.add_argument("--n-range", required=True)
    sw.add_argument("--q-range", default=None)
    common(sw)

    ck = sub.add_parser("check", help="run the invariant suite")
    ck.add_argument("--p-set", default=None)
    ck.add_argument("--n-range", default=None)
    ck.add_argument("--smax", type=int, default=2)
    ck.add_argument("--fast", action="store_true")
    ck.add_argument("--out", default=None)
    return parser


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in ("p", "n", "q", "group_cyclic", "group_table", "smax", "format", "out", "fast"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if getattr(args, "p_set", None):
        cfg.p_set = _parse_range(args.p_set)
    if getattr(args, "n_range", None):
        cfg.n_range = _parse_range(args.n_range)
    if getattr(args, "q_range", None):
        cfg.q_range = _parse_range(args.q_range)
    cfg.inject_fault = os.environ.get("MORAVA_INJECT_FAULT") == "1"
    return cfg.validate()


def _emit(text: str, out: Optional[str], stream):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stream.write(text)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise CliError(ErrorCode.INVALID_ARGUMENT, "a command is required: rw, group, sweep or check")
        cfg = config_from_args(args)
        if cfg.command == "check":
            ok, lines = cmd_check(cfg)
            _emit("\n".join(lines) + "\n", cfg.out, stdout)
            if not ok:
                failure = next(l for l in lines if l.startswith("FAIL"))
                raise CliError(ErrorCode.CHECK_FAILURE, failure)
            return EXIT_OK
        doc = {"rw": cmd_rw, "group": cmd_group, "sweep": cmd_sweep}[cfg.command](cfg)
        _emit(render(doc, cfg.format), cfg.out, stdout)
        return EXIT_OK
    except CliError as exc:
        stderr.write(serialize.dumps(exc.to_json()))
        return exc.exit_code
    except KnDegreeError as exc:
        err = CliError.from_math(exc)
        stderr.write(serialize.dumps(err.to_json()))
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
