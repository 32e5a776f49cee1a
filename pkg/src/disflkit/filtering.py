"""Transcript-level selection of disfluent utterances.

The composite rule accepts an utterance when its transcript contains a
partial word with a later completion (a word starting with the partial's
prefix, e.g. ``tw-`` then ``twelve``) and at least one of:

* the transcript is short (at most ``max_words`` spoken tokens, where
  spoken tokens are words and partial words);
* there is at least one other partial word (with or without completion);
* there are hesitations (lexicon tokens or a tag named ``hesitation``);
* there are repetitions (an immediately repeated word n-gram, n <= 3,
  with partial words, hesitations and tags transparent in between).

The single-partial rule accepts any transcript containing a partial word,
so its acceptance set always contains the composite rule's.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .corpus import Manifest, TokenKind, Transcript


class RuleVariant(Enum):
    COMPOSITE = "composite"
    SINGLE_PARTIAL = "single-partial"


class Condition(Enum):
    PARTIAL_WITH_COMPLETION = "partial-with-completion"
    SHORT_TRANSCRIPT = "short-transcript"
    ANOTHER_PARTIAL = "another-partial"
    HESITATION = "hesitation"
    REPETITION = "repetition"


@dataclass(frozen=True)
class FilterRule:
    variant: RuleVariant = RuleVariant.COMPOSITE
    max_words: int = 4
    ignore_case: bool = True

    def __post_init__(self):
        if self.max_words < 1:
            raise ValueError("max_words must be >= 1")

    @classmethod
    def named(cls, name: str, max_words: int = 4) -> "FilterRule":
        return cls(RuleVariant(name), max_words)


@dataclass(frozen=True)
class FilterVerdict:
    accepted: bool
    matched: frozenset[Condition]
    evidence: tuple[tuple[Condition, tuple[int, ...]], ...]


def _fold(text: str, ignore_case: bool) -> str:
    return text.lower() if ignore_case else text


def has_partial_with_completion(t: Transcript, ignore_case: bool = True) -> tuple[int, int] | None:
    """First (partial index, completion index) pair, scanning left to right."""
    for i, tok in enumerate(t.tokens):
        if tok.kind is not TokenKind.PARTIAL:
            continue
        prefix = _fold(tok.text, ignore_case)
        for j in range(i + 1, len(t.tokens)):
            later = t.tokens[j]
            if later.kind is TokenKind.WORD and _fold(later.text, ignore_case).startswith(prefix):
                return (i, j)
    return None


def detect_repetition(t: Transcript, ignore_case: bool = True) -> tuple[int, ...] | None:
    """Token indices of the first immediately repeated word n-gram (n <= 3)."""
    words = [(i, _fold(tok.text, ignore_case)) for i, tok in enumerate(t.tokens) if tok.kind is TokenKind.WORD]
    for n in (1, 2, 3):
        for k in range(len(words) - 2 * n + 1):
            first = words[k : k + n]
            second = words[k + n : k + 2 * n]
            if [w for _, w in first] == [w for _, w in second]:
                return tuple(i for i, _ in first) + tuple(i for i, _ in second)
    return None


def _spoken_token_count(t: Transcript) -> int:
    # "words in the transcription" counts spoken material: words and partials.
    return sum(1 for tok in t.tokens if tok.kind in (TokenKind.WORD, TokenKind.PARTIAL))


def _hesitation_indices(t: Transcript) -> tuple[int, ...]:
    out = []
    for i, tok in enumerate(t.tokens):
        if tok.kind is TokenKind.HESITATION:
            out.append(i)
        elif tok.kind is TokenKind.TAG and tok.text.lower() == "hesitation":
            out.append(i)
    return tuple(out)


def apply_filter(t: Transcript, rule: FilterRule) -> FilterVerdict:
    """Evaluate every condition on ``t`` and decide per the rule variant."""
    matched: set[Condition] = set()
    evidence: list[tuple[Condition, tuple[int, ...]]] = []

    pair = has_partial_with_completion(t, rule.ignore_case)
    if pair is not None:
        matched.add(Condition.PARTIAL_WITH_COMPLETION)
        evidence.append((Condition.PARTIAL_WITH_COMPLETION, pair))

    if _spoken_token_count(t) <= rule.max_words:
        matched.add(Condition.SHORT_TRANSCRIPT)
        evidence.append((Condition.SHORT_TRANSCRIPT, ()))

    partial_indices = tuple(i for i, tok in enumerate(t.tokens) if tok.kind is TokenKind.PARTIAL)
    if len(partial_indices) >= 2:
        matched.add(Condition.ANOTHER_PARTIAL)
        evidence.append((Condition.ANOTHER_PARTIAL, partial_indices))

    hes = _hesitation_indices(t)
    if hes:
        matched.add(Condition.HESITATION)
        evidence.append((Condition.HESITATION, hes))

    rep = detect_repetition(t, rule.ignore_case)
    if rep is not None:
        matched.add(Condition.REPETITION)
        evidence.append((Condition.REPETITION, rep))

    if rule.variant is RuleVariant.SINGLE_PARTIAL:
        accepted = bool(partial_indices)
    else:
        auxiliary = matched - {Condition.PARTIAL_WITH_COMPLETION}
        accepted = Condition.PARTIAL_WITH_COMPLETION in matched and bool(auxiliary)

    return FilterVerdict(accepted=accepted, matched=frozenset(matched), evidence=tuple(evidence))


@dataclass
class FilterOutcome:
    accepted: Manifest
    rejected: Manifest
    condition_counts: dict[Condition, int] = field(default_factory=dict)

    @property
    def acceptance_rate(self) -> float:
        total = len(self.accepted) + len(self.rejected)
        return len(self.accepted) / total if total else 0.0

    def summary_lines(self) -> list[str]:
        total = len(self.accepted) + len(self.rejected)
        lines = [
            f"records          {total}",
            f"accepted         {len(self.accepted)}",
            f"rejected         {len(self.rejected)}",
            f"acceptance rate  {100.0 * self.acceptance_rate:.2f}%",
        ]
        for cond in Condition:
            lines.append(f"condition {cond.value:<24} {self.condition_counts.get(cond, 0)}")
        return lines


def filter_manifest(m: Manifest, rule: FilterRule) -> FilterOutcome:
    """Partition ``m`` into accepted/rejected, keeping input order."""
    acc, rej = [], []
    counts: dict[Condition, int] = {cond: 0 for cond in Condition}
    for rec in m.records:
        verdict = apply_filter(rec.transcript, rule)
        for cond in verdict.matched:
            counts[cond] += 1
        (acc if verdict.accepted else rej).append(rec)
    return FilterOutcome(
        accepted=Manifest(name=f"{m.name}-accepted", records=tuple(acc)),
        rejected=Manifest(name=f"{m.name}-rejected", records=tuple(rej)),
        condition_counts=counts,
    )
