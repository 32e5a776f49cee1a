"""Word-level alignment and error-rate scoring.

Alignment is minimum edit distance with unit costs over words; the
backtrace tie-break prefers match > substitution > deletion > insertion so
the S/I/D decomposition is reproducible (the total distance never depends
on the tie-break).  Corpus WER pools counts: total errors over total
reference words, not a mean of per-utterance rates.

Relative numbers follow the evaluation-table conventions: NWER is a model's
WER divided by the baseline model's WER on the ordinary test set, and WERR
is ``100*(y - x)/y`` with ``x`` the model's WER and ``y`` the baseline's
WER on the same test set.  WERR is unchanged when both WERs are divided by
a common constant, so published NWER rows can be cross-checked without ever
knowing absolute WERs; ``check_table_consistency`` does exactly that and
also verifies that published S/I/D shares sum to 100 within rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import IO, Mapping, Sequence

from .corpus import Manifest
from .errors import DuplicateId, EmptyReference, UnknownUtteranceId, ZeroBaseline
from .transforms import PartialWordStrategy, normalize_reference, postprocess


class EditOp(Enum):
    MATCH = "match"
    SUBSTITUTE = "substitute"
    INSERT = "insert"
    DELETE = "delete"


@dataclass(frozen=True)
class AlignedPair:
    op: EditOp
    ref: str | None
    hyp: str | None


@dataclass(frozen=True)
class AlignmentResult:
    ops: tuple[AlignedPair, ...]
    num_match: int
    num_sub: int
    num_ins: int
    num_del: int

    @property
    def distance(self) -> int:
        return self.num_sub + self.num_ins + self.num_del


def align(ref: Sequence[str], hyp: Sequence[str], ignore_case: bool = True) -> AlignmentResult:
    """Minimum word edit alignment of hypothesis against reference."""
    r = [w.lower() for w in ref] if ignore_case else list(ref)
    h = [w.lower() for w in hyp] if ignore_case else list(hyp)
    nr, nh = len(r), len(h)
    dist = [[0] * (nh + 1) for _ in range(nr + 1)]
    for i in range(1, nr + 1):
        dist[i][0] = i
    for j in range(1, nh + 1):
        dist[0][j] = j
    for i in range(1, nr + 1):
        row, prev = dist[i], dist[i - 1]
        for j in range(1, nh + 1):
            same = r[i - 1] == h[j - 1]
            row[j] = min(prev[j - 1] + (0 if same else 1), prev[j] + 1, row[j - 1] + 1)

    ops: list[AlignedPair] = []
    i, j = nr, nh
    while i > 0 or j > 0:
        if i > 0 and j > 0 and r[i - 1] == h[j - 1] and dist[i][j] == dist[i - 1][j - 1]:
            ops.append(AlignedPair(EditOp.MATCH, ref[i - 1], hyp[j - 1]))
            i, j = i - 1, j - 1
        elif i > 0 and j > 0 and dist[i][j] == dist[i - 1][j - 1] + 1:
            ops.append(AlignedPair(EditOp.SUBSTITUTE, ref[i - 1], hyp[j - 1]))
            i, j = i - 1, j - 1
        elif i > 0 and dist[i][j] == dist[i - 1][j] + 1:
            ops.append(AlignedPair(EditOp.DELETE, ref[i - 1], None))
            i = i - 1
        else:
            ops.append(AlignedPair(EditOp.INSERT, None, hyp[j - 1]))
            j = j - 1
    ops.reverse()
    counts = {op: 0 for op in EditOp}
    for pair in ops:
        counts[pair.op] += 1
    return AlignmentResult(
        ops=tuple(ops),
        num_match=counts[EditOp.MATCH],
        num_sub=counts[EditOp.SUBSTITUTE],
        num_ins=counts[EditOp.INSERT],
        num_del=counts[EditOp.DELETE],
    )


@dataclass(frozen=True)
class WerReport:
    ref_words: int
    num_sub: int
    num_ins: int
    num_del: int
    num_utterances: int = 1
    num_missing_hyps: int = 0

    @property
    def err_total(self) -> int:
        return self.num_sub + self.num_ins + self.num_del

    @property
    def wer(self) -> float:
        if self.ref_words == 0:
            raise EmptyReference("WER undefined for zero reference words")
        return self.err_total / self.ref_words

    def _share(self, count: int) -> float | None:
        return 100.0 * count / self.err_total if self.err_total else None

    @property
    def s_share(self) -> float | None:
        return self._share(self.num_sub)

    @property
    def i_share(self) -> float | None:
        return self._share(self.num_ins)

    @property
    def d_share(self) -> float | None:
        return self._share(self.num_del)


def score_pair(ref: Sequence[str], hyp: Sequence[str], ignore_case: bool = True) -> WerReport:
    """WER of a single reference/hypothesis pair of word lists."""
    if not ref:
        raise EmptyReference("reference has no words; WER undefined")
    result = align(ref, hyp, ignore_case)
    return WerReport(
        ref_words=len(ref),
        num_sub=result.num_sub,
        num_ins=result.num_ins,
        num_del=result.num_del,
    )


def score_corpus(
    refs: Manifest,
    hyps: Mapping[str, str],
    strategy: PartialWordStrategy,
    ignore_case: bool = True,
    keep_hesitations: bool = False,
) -> WerReport:
    """Pooled corpus WER after strategy-specific post-processing.

    References are normalized from their transcripts; hypotheses get
    ``postprocess`` under ``strategy``.  Utterances lacking a hypothesis are
    scored against an empty one and counted in ``num_missing_hyps``.
    """
    ref_ids = {rec.utterance_id for rec in refs.records}
    unknown = sorted(set(hyps) - ref_ids)
    if unknown:
        raise UnknownUtteranceId(f"hypotheses for unknown utterance ids: {', '.join(unknown[:5])}")
    total_ref = total_sub = total_ins = total_del = missing = 0
    for rec in refs.records:
        ref_words = normalize_reference(rec.transcript, keep_hesitations=keep_hesitations, tag_text=strategy.tag_text)
        if rec.utterance_id in hyps:
            hyp_words = postprocess(hyps[rec.utterance_id], strategy, keep_hesitations=keep_hesitations)
        else:
            missing += 1
            hyp_words = []
        result = align(ref_words, hyp_words, ignore_case)
        total_ref += len(ref_words)
        total_sub += result.num_sub
        total_ins += result.num_ins
        total_del += result.num_del
    if total_ref == 0:
        raise EmptyReference("corpus references contain no words; WER undefined")
    return WerReport(
        ref_words=total_ref,
        num_sub=total_sub,
        num_ins=total_ins,
        num_del=total_del,
        num_utterances=len(refs.records),
        num_missing_hyps=missing,
    )


def read_hypotheses(source: str | Path | IO[str]) -> dict[str, str]:
    """Read a hypothesis table: one ``utterance_id<TAB>text`` line each."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    else:
        lines = source.read().splitlines()
    table: dict[str, str] = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        utt_id, _, text = line.partition("\t")
        utt_id = utt_id.strip()
        if utt_id in table:
            raise DuplicateId(f"line {lineno}: duplicate hypothesis for {utt_id!r}")
        table[utt_id] = text.strip()
    return table


@dataclass(frozen=True)
class RelativeMetrics:
    nwer: float
    werr: float


def relative_metrics(model: WerReport, baseline: WerReport, baseline_ordinary: WerReport) -> RelativeMetrics:
    """NWER and WERR of a model against the baseline on one test set."""
    if baseline.wer == 0 or baseline_ordinary.wer == 0:
        raise ZeroBaseline("baseline WER is zero; relative metrics undefined")
    return RelativeMetrics(
        nwer=model.wer / baseline_ordinary.wer,
        werr=100.0 * (baseline.wer - model.wer) / baseline.wer,
    )


def recompute_werr(nwer: float, baseline_nwer: float) -> float:
    """WERR from NWER values alone; valid because WERR is scale-invariant."""
    return 100.0 * (baseline_nwer - nwer) / baseline_nwer


@dataclass(frozen=True)
class TableRow:
    """One published evaluation-table cell: a model on one test set."""

    model: str
    test: str
    werr: float
    nwer: float | None = None
    sub_share: float | None = None
    ins_share: float | None = None
    del_share: float | None = None
    is_baseline: bool = False

    def shares(self) -> tuple[float, float, float] | None:
        if self.sub_share is None or self.ins_share is None or self.del_share is None:
            return None
        return (self.sub_share, self.ins_share, self.del_share)


@dataclass(frozen=True)
class Discrepancy:
    kind: str  # "werr-mismatch" | "share-sum" | "missing-baseline"
    model: str
    test: str
    detail: str
    published: float | None = None
    recomputed: float | None = None


def check_table_consistency(
    rows: Sequence[TableRow],
    werr_tolerance: float = 0.6,
    share_bounds: tuple[float, float] = (99.0, 101.0),
) -> list[Discrepancy]:
    """Cross-check published rows for internal arithmetic consistency.

    Recomputes each WERR from the row's NWER and the baseline row's NWER on
    the same test set and flags differences beyond ``werr_tolerance``
    percentage points; flags S/I/D share sums outside ``share_bounds``;
    flags baseline rows whose published WERR is not zero.
    """
    out: list[Discrepancy] = []
    baselines: dict[str, TableRow] = {}
    for row in rows:
        if row.is_baseline:
            baselines[row.test] = row

    for row in rows:
        if row.is_baseline and abs(row.werr) > werr_tolerance:
            out.append(
                Discrepancy(
                    kind="werr-mismatch",
                    model=row.model,
                    test=row.test,
                    detail="baseline row must have WERR 0",
                    published=row.werr,
                    recomputed=0.0,
                )
            )
        if row.nwer is not None and not row.is_baseline:
            base = baselines.get(row.test)
            if base is None or base.nwer is None:
                out.append(
                    Discrepancy(
                        kind="missing-baseline",
                        model=row.model,
                        test=row.test,
                        detail="no baseline NWER on this test set to recompute WERR",
                    )
                )
            else:
                recomputed = recompute_werr(row.nwer, base.nwer)
                if abs(recomputed - row.werr) > werr_tolerance:
                    out.append(
                        Discrepancy(
                            kind="werr-mismatch",
                            model=row.model,
                            test=row.test,
                            detail=(
                                f"published WERR {row.werr} vs {recomputed:.1f} recomputed "
                                f"from NWER {row.nwer} over baseline {base.nwer}"
                            ),
                            published=row.werr,
                            recomputed=recomputed,
                        )
                    )
        shares = row.shares()
        if shares is not None:
            total = sum(shares)
            if not (share_bounds[0] <= total <= share_bounds[1]):
                out.append(
                    Discrepancy(
                        kind="share-sum",
                        model=row.model,
                        test=row.test,
                        detail=f"S+I+D = {total:g}, outside [{share_bounds[0]:g}, {share_bounds[1]:g}]",
                        published=total,
                    )
                )
    return out
