"""Published evaluation rows used as golden consistency fixtures.

Two tables ship with the toolkit.  The strategy table compares partial-word
handling across the ordinary, disfluencies and stutter test sets with NWER,
WERR and S/I/D share columns; the fraction table sweeps the amount of
disfluent training data with WERR-only columns.  ``check-tables`` verifies
their internal arithmetic (WERR recomputable from NWER, share sums near
100).  One quirk worth knowing: the strategy table's replaced-by-tag row on
the stutter test has published shares 39/34/29 which sum to 102, so the
share check reports exactly that one finding on the shipped fixtures.

Fixture file format: UTF-8 TSV with header
``model test baseline nwer werr s i d`` (blank cells for absent values).
"""

from __future__ import annotations

from pathlib import Path
from typing import IO, Sequence

from .metrics import TableRow

ORDINARY_TEST = "ordinary"
DISFLUENCIES_TEST = "disfluencies"
STUTTER_TEST = "stutter"

TESTS = (ORDINARY_TEST, DISFLUENCIES_TEST, STUTTER_TEST)


def _strategy_rows(model, baseline, ordinary, disfluencies, stutter):
    cells = zip(TESTS, (ordinary, disfluencies, stutter))
    return [
        TableRow(
            model=model,
            test=test,
            nwer=nwer,
            werr=werr,
            sub_share=s,
            ins_share=i,
            del_share=d,
            is_baseline=baseline,
        )
        for test, (nwer, werr, s, i, d) in cells
    ]


# Strategy comparison: five models, three test sets, columns NWER / WERR / S / I / D.
STRATEGY_TABLE: tuple[TableRow, ...] = tuple(
    row
    for rows in (
        _strategy_rows("baseline", True, (1.0, 0.0, 60, 18, 23), (3.02, 0.0, 29, 57, 13), (2.35, 0.0, 34, 49, 17)),
        _strategy_rows("partials-deleted", False, (1.0, 0.2, 59, 18, 23), (2.38, 21.0, 33, 47, 20), (2.02, 14.0, 40, 39, 21)),
        _strategy_rows("partials-replaced-by-tag", False, (1.0, 0.5, 59, 17, 24), (2.34, 22.4, 33, 45, 22), (1.93, 17.9, 39, 34, 29)),
        _strategy_rows("partials-appended-tag", False, (1.0, 0.2, 59, 18, 23), (2.6, 13.7, 31, 51, 18), (2.33, 0.9, 37, 45, 18)),
        _strategy_rows("partials-first-letter-tag", False, (1.0, 0.4, 59, 17, 24), (2.49, 17.4, 31, 49, 20), (2.1, 10.5, 36, 40, 23)),
    )
    for row in rows
)


def _fraction_rows(model, baseline, ordinary, disfluencies, stutter):
    return [
        TableRow(model=model, test=test, werr=werr, is_baseline=baseline)
        for test, werr in zip(TESTS, (ordinary, disfluencies, stutter))
    ]


# Disfluent-data fraction sweep: WERR-only columns.
FRACTION_TABLE: tuple[TableRow, ...] = tuple(
    row
    for rows in (
        _fraction_rows("baseline", True, 0.0, 0.0, 0.0),
        _fraction_rows("tag-tenth", False, 0.3, 8.7, 5.8),
        _fraction_rows("tag-quarter", False, 0.2, 13.9, 6.6),
        _fraction_rows("tag-half", False, 0.0, 18.3, 14.5),
        _fraction_rows("tag-full", False, 0.0, 22.5, 16.4),
        _fraction_rows("deleted-full", False, -0.1, 19.1, 13.1),
    )
    for row in rows
)

BUILTIN_TABLES = {"strategy": STRATEGY_TABLE, "fractions": FRACTION_TABLE}

_FIXTURE_HEADER = ("model", "test", "baseline", "nwer", "werr", "s", "i", "d")


def _cell(value: float | None) -> str:
    return "" if value is None else str(value)


def write_fixture_tsv(rows: Sequence[TableRow], sink: str | Path | IO[str]) -> None:
    lines = ["\t".join(_FIXTURE_HEADER)]
    for row in rows:
        lines.append(
            "\t".join(
                (
                    row.model,
                    row.test,
                    "1" if row.is_baseline else "0",
                    _cell(row.nwer),
                    _cell(row.werr),
                    _cell(row.sub_share),
                    _cell(row.ins_share),
                    _cell(row.del_share),
                )
            )
        )
    payload = "\n".join(lines) + "\n"
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
    else:
        sink.write(payload)


def read_fixture_tsv(source: str | Path | IO[str]) -> list[TableRow]:
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    else:
        lines = source.read().splitlines()
    rows: list[TableRow] = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        cols = line.split("\t")
        if lineno == 1 and cols[0] == "model":
            continue
        cols += [""] * (len(_FIXTURE_HEADER) - len(cols))
        rows.append(
            TableRow(
                model=cols[0],
                test=cols[1],
                is_baseline=cols[2].strip() in ("1", "true", "yes"),
                nwer=float(cols[3]) if cols[3].strip() else None,
                werr=float(cols[4]) if cols[4].strip() else 0.0,
                sub_share=float(cols[5]) if cols[5].strip() else None,
                ins_share=float(cols[6]) if cols[6].strip() else None,
                del_share=float(cols[7]) if cols[7].strip() else None,
            )
        )
    return rows
