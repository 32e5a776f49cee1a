"""Wordpiece segmentation under a unigram model.

``segment`` tiles the characters of the input with vocabulary pieces and
returns the maximum-score tiling (score = sum of piece log-probabilities),
found by dynamic programming over piece boundaries.  Ties go to fewer
pieces, then to the lexicographically smallest piece sequence, so output is
byte-deterministic.  Special symbols (the partial-word tag by default) are
matched atomically wherever they occur: they are never split across pieces
and no piece may contain one.

Word boundaries are a text-level convention, not a segmenter concern:
``mark_words`` rewrites ``"on twelve"`` to ``"▁on▁twelve"`` and
``unmark`` inverts that, which makes piece concatenation lossless.  The
fallback vocabulary builder stands in for a full unigram-LM trainer: it
guarantees character coverage and scores pieces by corpus frequency, which
is all the segmentation contract needs.

Vocabulary file format: UTF-8 lines ``piece<TAB>log_prob`` with a third
column ``special`` flagging atomic symbols.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Mapping

from .corpus import Manifest, render_transcript
from .errors import TargetTooSmall, UncoverableCharacter
from .transforms import DEFAULT_TAG

MARKER = "▁"  # word-boundary marker, rendered like a low underscore


def mark_words(text: str) -> str:
    """Prefix every word with the boundary marker and drop the spaces."""
    return "".join(MARKER + w for w in text.split())


def unmark(text: str) -> str:
    """Inverse of :func:`mark_words` on piece concatenations."""
    return text.replace(MARKER, " ").strip()


@dataclass(frozen=True)
class WordpieceVocab:
    entries: Mapping[str, float]
    specials: frozenset[str] = frozenset()
    _max_piece_len: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        for piece in self.entries:
            if not piece or any(c.isspace() for c in piece):
                raise ValueError(f"piece must be non-empty and whitespace-free: {piece!r}")
        for special in self.specials:
            if special not in self.entries:
                raise ValueError(f"special {special!r} is not in the vocabulary")
        for piece in self.entries:
            for special in self.specials:
                if special in piece and piece != special:
                    raise ValueError(f"piece {piece!r} must not contain special {special!r}")
        object.__setattr__(self, "_max_piece_len", max((len(p) for p in self.entries), default=0))

    @property
    def size(self) -> int:
        return len(self.entries)

    def max_piece_len(self) -> int:
        return self._max_piece_len


@dataclass(frozen=True)
class Segmentation:
    pieces: tuple[str, ...]
    score: float

    def text(self) -> str:
        return "".join(self.pieces)


def _split_specials(token: str, specials: tuple[str, ...]) -> list[tuple[str, int, bool]]:
    """Split a token into (fragment, offset, is_special) parts.

    Specials are matched left to right, longest first, so overlapping
    specials resolve deterministically.
    """
    parts: list[tuple[str, int, bool]] = []
    pos = 0
    plain_start = 0
    while pos < len(token):
        hit = None
        for special in specials:
            if token.startswith(special, pos):
                hit = special
                break
        if hit is None:
            pos += 1
            continue
        if plain_start < pos:
            parts.append((token[plain_start:pos], plain_start, False))
        parts.append((hit, pos, True))
        pos += len(hit)
        plain_start = pos
    if plain_start < len(token):
        parts.append((token[plain_start:], plain_start, False))
    return parts


def _tile(fragment: str, offset: int, vocab: WordpieceVocab) -> tuple[list[str], float]:
    """Best tiling of a special-free fragment; raises on uncoverable chars."""
    entries = vocab.entries
    max_len = vocab.max_piece_len()
    n = len(fragment)
    # best[i]: (score, piece_count, pieces) for fragment[:i], or None
    best: list[tuple[float, int, tuple[str, ...]] | None] = [None] * (n + 1)
    best[0] = (0.0, 0, ())
    for j in range(1, n + 1):
        winner = None
        for i in range(max(0, j - max_len), j):
            prev = best[i]
            if prev is None:
                continue
            logprob = entries.get(fragment[i:j])
            if logprob is None:
                continue
            cand = (prev[0] + logprob, prev[1] + 1, prev[2] + (fragment[i:j],))
            if winner is None or _better(cand, winner):
                winner = cand
        best[j] = winner
    if best[n] is None:
        stuck = max(i for i in range(n + 1) if best[i] is not None)
        raise UncoverableCharacter(offset + stuck)
    score, _, pieces = best[n]
    return list(pieces), score


def _better(a: tuple[float, int, tuple[str, ...]], b: tuple[float, int, tuple[str, ...]]) -> bool:
    if a[0] != b[0]:
        return a[0] > b[0]
    if a[1] != b[1]:
        return a[1] < b[1]
    return a[2] < b[2]


def segment(text: str, vocab: WordpieceVocab) -> Segmentation:
    """Maximum-score segmentation of ``text`` under the unigram vocabulary."""
    specials = tuple(sorted(vocab.specials, key=lambda s: (-len(s), s)))
    pieces: list[str] = []
    total = 0.0
    for match in re.finditer(r"\S+", text):
        token = match.group()
        for fragment, rel_offset, is_special in _split_specials(token, specials):
            if is_special:
                pieces.append(fragment)
                total += vocab.entries[fragment]
            else:
                tiled, score = _tile(fragment, match.start() + rel_offset, vocab)
                pieces.extend(tiled)
                total += score
    return Segmentation(pieces=tuple(pieces), score=total)


def build_char_fallback_vocab(
    corpus: Manifest,
    target_size: int,
    specials: Iterable[str] = (DEFAULT_TAG,),
    max_piece_len: int = 8,
) -> WordpieceVocab:
    """Frequency-based vocabulary guaranteed to cover the corpus.

    Contains every character of the marked corpus text, the specials, and
    then the most frequent substrings until ``target_size`` entries.
    Deterministic for a given corpus order.
    """
    specials = tuple(sorted(set(specials), key=lambda s: (-len(s), s)))
    counts: dict[str, int] = {}
    special_counts: dict[str, int] = {s: 0 for s in specials}
    alphabet: set[str] = set()
    for rec in corpus.records:
        for word in render_transcript(rec.transcript).split():
            marked = MARKER + word
            for fragment, _, is_special in _split_specials(marked, specials):
                if is_special:
                    special_counts[fragment] += 1
                    continue
                alphabet.update(fragment)
                for length in range(1, min(max_piece_len, len(fragment)) + 1):
                    for start in range(len(fragment) - length + 1):
                        piece = fragment[start : start + length]
                        counts[piece] = counts.get(piece, 0) + 1

    mandatory = sorted(alphabet) + list(specials)
    if target_size < len(mandatory):
        raise TargetTooSmall(
            f"target_size {target_size} < alphabet plus specials ({len(mandatory)})"
        )

    chosen: dict[str, int] = {c: counts.get(c, 0) for c in sorted(alphabet)}
    for s in specials:
        chosen[s] = special_counts[s]
    candidates = sorted(
        (p for p in counts if len(p) > 1),
        key=lambda p: (-counts[p], len(p), p),
    )
    for piece in candidates:
        if len(chosen) >= target_size:
            break
        if piece not in chosen:
            chosen[piece] = counts[piece]

    total_weight = sum(c + 1 for c in chosen.values())
    entries = {p: math.log((c + 1) / total_weight) for p, c in chosen.items()}
    return WordpieceVocab(entries=entries, specials=frozenset(specials))


def write_vocab(vocab: WordpieceVocab, sink: str | Path | IO[str]) -> None:
    lines = []
    for piece in sorted(vocab.entries):
        cols = [piece, repr(vocab.entries[piece])]
        if piece in vocab.specials:
            cols.append("special")
        lines.append("\t".join(cols))
    payload = "\n".join(lines) + ("\n" if lines else "")
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
    else:
        sink.write(payload)


def read_vocab(source: str | Path | IO[str]) -> WordpieceVocab:
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    else:
        lines = source.read().splitlines()
    entries: dict[str, float] = {}
    specials: set[str] = set()
    for line in lines:
        if not line.strip():
            continue
        cols = line.split("\t")
        entries[cols[0]] = float(cols[1])
        if len(cols) > 2 and cols[2] == "special":
            specials.add(cols[0])
    return WordpieceVocab(entries=entries, specials=frozenset(specials))
