"""Rendering of evaluation results in the published tables' layout.

``emit_report`` turns per-(model, test) WER reports into rows carrying
NWER / WERR / S / I / D against a designated baseline, then renders a wide
table (all five columns per test set) and a WERR-only table, plus a
machine-readable payload mirroring the same columns.  When a (model, test)
cell holds several reports (runs with different seeds), their WERs are
averaged and their error counts pooled for the share columns.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Mapping, Sequence

from .errors import MissingBaseline, ZeroBaseline
from .metrics import TableRow, WerReport
from .published import DISFLUENCIES_TEST, ORDINARY_TEST, STUTTER_TEST

ReportCell = WerReport | Sequence[WerReport]


def _as_runs(cell: ReportCell) -> list[WerReport]:
    if isinstance(cell, WerReport):
        return [cell]
    return list(cell)


def _mean_wer(runs: Sequence[WerReport]) -> float:
    return sum(r.wer for r in runs) / len(runs)


def _pooled_shares(runs: Sequence[WerReport]) -> tuple[float | None, float | None, float | None]:
    sub = sum(r.num_sub for r in runs)
    ins = sum(r.num_ins for r in runs)
    dele = sum(r.num_del for r in runs)
    err = sub + ins + dele
    if err == 0:
        return (None, None, None)
    return (100.0 * sub / err, 100.0 * ins / err, 100.0 * dele / err)


def derive_rows(
    reports: Mapping[tuple[str, str], ReportCell],
    baseline: str,
    ordinary_test: str = ORDINARY_TEST,
) -> list[TableRow]:
    """Compute NWER/WERR/S/I/D rows from raw reports against ``baseline``."""
    if (baseline, ordinary_test) not in reports:
        raise MissingBaseline(f"no report for baseline {baseline!r} on test {ordinary_test!r}")
    base_ord_wer = _mean_wer(_as_runs(reports[(baseline, ordinary_test)]))
    if base_ord_wer == 0:
        raise ZeroBaseline("baseline WER on the ordinary test is zero")
    base_wer_by_test: dict[str, float] = {}
    for (model, test), cell in reports.items():
        if model == baseline:
            base_wer_by_test[test] = _mean_wer(_as_runs(cell))

    rows: list[TableRow] = []
    for (model, test), cell in sorted(reports.items()):
        runs = _as_runs(cell)
        wer = _mean_wer(runs)
        if test not in base_wer_by_test:
            raise MissingBaseline(f"no baseline report on test {test!r}")
        base_wer = base_wer_by_test[test]
        if base_wer == 0:
            raise ZeroBaseline(f"baseline WER on test {test!r} is zero")
        s, i, d = _pooled_shares(runs)
        if s is not None and not (99.0 <= s + i + d <= 101.0):
            raise ValueError(f"share sum out of range for {model!r} on {test!r}: {s + i + d}")
        rows.append(
            TableRow(
                model=model,
                test=test,
                nwer=wer / base_ord_wer,
                werr=100.0 * (base_wer - wer) / base_wer,
                sub_share=s,
                ins_share=i,
                del_share=d,
                is_baseline=model == baseline,
            )
        )
    return rows


def _fmt(value: float | None, spec: str) -> str:
    return "-" if value is None else format(value, spec)


def _test_order(rows: Sequence[TableRow]) -> list[str]:
    preferred = [ORDINARY_TEST, DISFLUENCIES_TEST, STUTTER_TEST]
    seen = {row.test for row in rows}
    ordered = [t for t in preferred if t in seen]
    ordered += sorted(seen - set(preferred))
    return ordered


def _model_order(rows: Sequence[TableRow]) -> list[str]:
    out: list[str] = []
    for row in rows:  # baselines first, otherwise first-seen order
        if row.is_baseline and row.model not in out:
            out.append(row.model)
    for row in rows:
        if row.model not in out:
            out.append(row.model)
    return out


def render_wide(rows: Sequence[TableRow]) -> str:
    """Text table with NWER, WERR, S, I, D columns per test set."""
    tests = _test_order(rows)
    models = _model_order(rows)
    cells = {(r.model, r.test): r for r in rows}
    model_width = max([len("model")] + [len(m) for m in models])
    group_width = 6 + 6 + 4 * 3 + 4  # nwer + werr + three shares + padding
    lines = []
    header = "model".ljust(model_width)
    subheader = " " * model_width
    for test in tests:
        header += " | " + test.center(group_width)
        subheader += " | " + f"{'NWER':>6}{'WERR':>6}{'S':>4}{'I':>4}{'D':>4}".center(group_width)
    lines.append(header)
    lines.append(subheader)
    lines.append("-" * len(header))
    for model in models:
        line = model.ljust(model_width)
        for test in tests:
            row = cells.get((model, test))
            if row is None:
                line += " | " + "-".center(group_width)
                continue
            body = (
                f"{_fmt(row.nwer, '.2f'):>6}"
                f"{_fmt(row.werr, '.1f'):>6}"
                f"{_fmt(row.sub_share, '.0f'):>4}"
                f"{_fmt(row.ins_share, '.0f'):>4}"
                f"{_fmt(row.del_share, '.0f'):>4}"
            )
            line += " | " + body.center(group_width)
        lines.append(line)
    return "\n".join(lines)


def render_werr_only(rows: Sequence[TableRow]) -> str:
    """Text table with one WERR column per test set."""
    tests = _test_order(rows)
    models = _model_order(rows)
    cells = {(r.model, r.test): r for r in rows}
    model_width = max([len("model")] + [len(m) for m in models])
    lines = ["model".ljust(model_width) + "".join(f"{t:>16}" for t in tests)]
    lines.append("-" * len(lines[0]))
    for model in models:
        line = model.ljust(model_width)
        for test in tests:
            row = cells.get((model, test))
            line += f"{_fmt(row.werr if row else None, '.1f'):>16}"
        lines.append(line)
    return "\n".join(lines)


def rows_payload(rows: Sequence[TableRow]) -> list[dict]:
    """Machine-readable twin of the rendered tables."""
    return [
        {
            "model": r.model,
            "test": r.test,
            "baseline": r.is_baseline,
            "nwer": r.nwer,
            "werr": r.werr,
            "s_share": r.sub_share,
            "i_share": r.ins_share,
            "d_share": r.del_share,
        }
        for r in rows
    ]


def best_reduction(rows: Sequence[TableRow], tests: Sequence[str] = (DISFLUENCIES_TEST, STUTTER_TEST)) -> dict[str, tuple[str, float]]:
    """Best (model, WERR) per test set among non-baseline rows."""
    out: dict[str, tuple[str, float]] = {}
    for test in tests:
        candidates = [r for r in rows if r.test == test and not r.is_baseline]
        if not candidates:
            continue
        best = max(candidates, key=lambda r: (r.werr, r.model))
        out[test] = (best.model, best.werr)
    return out


def headline_reductions(rows: Sequence[TableRow]) -> str:
    """One-line summary of the best relative WER reductions."""
    best = best_reduction(rows)
    parts = [f"{werr:.1f}% on {test} ({model})" for test, (model, werr) in best.items()]
    return "best relative WER reduction: " + ", ".join(parts)


@dataclass(frozen=True)
class ReportTables:
    rows: tuple[TableRow, ...]
    wide: str
    werr_only: str

    def to_json(self) -> str:
        return json.dumps(rows_payload(list(self.rows)), indent=2)


def emit_report(
    reports: Mapping[tuple[str, str], ReportCell],
    baseline: str,
    ordinary_test: str = ORDINARY_TEST,
) -> ReportTables:
    """Full report: computed rows plus both rendered layouts."""
    rows = derive_rows(reports, baseline, ordinary_test)
    return ReportTables(rows=tuple(rows), wide=render_wide(rows), werr_only=render_werr_only(rows))


_SCORES_HEADER = ("model", "test", "ref_words", "sub", "ins", "del", "utts", "missing")


def write_scores_line(
    model: str,
    test: str,
    report: WerReport,
    sink: str | Path | IO[str],
    header: bool = True,
) -> None:
    """Append-friendly one-line scores record for later ``report`` runs."""
    line = "\t".join(
        (
            model,
            test,
            str(report.ref_words),
            str(report.num_sub),
            str(report.num_ins),
            str(report.num_del),
            str(report.num_utterances),
            str(report.num_missing_hyps),
        )
    )
    if isinstance(sink, (str, Path)):
        path = Path(sink)
        exists = path.exists() and path.stat().st_size > 0
        with open(path, "a", encoding="utf-8", newline="\n") as fh:
            if header and not exists:
                fh.write("\t".join(_SCORES_HEADER) + "\n")
            fh.write(line + "\n")
    else:
        if header:
            sink.write("\t".join(_SCORES_HEADER) + "\n")
        sink.write(line + "\n")


def read_scores_tsv(source: str | Path | IO[str]) -> dict[tuple[str, str], list[WerReport]]:
    """Read a scores table into per-(model, test) run lists."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    else:
        lines = source.read().splitlines()
    out: dict[tuple[str, str], list[WerReport]] = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        cols = line.split("\t")
        if lineno == 1 and cols[0] == "model":
            continue
        cols += ["0"] * (len(_SCORES_HEADER) - len(cols))
        report = WerReport(
            ref_words=int(cols[2]),
            num_sub=int(cols[3]),
            num_ins=int(cols[4]),
            num_del=int(cols[5]),
            num_utterances=int(cols[6] or 0),
            num_missing_hyps=int(cols[7] or 0),
        )
        out.setdefault((cols[0], cols[1]), []).append(report)
    return out
