"""Transcript and manifest data model.

Annotation syntax (one utterance per line, whitespace-separated items):

* ``tw-``     an item with a single trailing hyphen is a partial word; the
              hyphen is markup, the token text is the uttered prefix ``tw``.
* ``<noise>`` a fully bracketed item is a transcriber tag.
* ``uh``      an item found in the hesitation lexicon is a hesitation.
* anything else is a plain word.  Items mixing letters with well-formed
  ``<...>`` spans (``p<pw>``, produced by the partial-word transforms) are
  words too, so transformed manifests round-trip through the parser.

Manifests are UTF-8 JSON lines, one utterance per line, with the fields
``utterance_id``, ``speaker_id``, ``audio_ref``, ``duration_sec`` and
``transcript`` (the annotated string).  Unknown fields are preserved on
round-trip.  Audio is never touched; ``audio_ref`` is an opaque string.
"""

from __future__ import annotations

import io
import json
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import IO, Iterable, Iterator

from .errors import (
    BadDuration,
    DuplicateId,
    EmptyPartial,
    MalformedRecord,
    MalformedTag,
    MissingField,
)

DEFAULT_HESITATIONS = frozenset({"uh", "um", "hmm", "er"})

MANIFEST_FIELDS = ("utterance_id", "speaker_id", "audio_ref", "duration_sec", "transcript")

_TAG_SPAN = re.compile(r"<[^<>\s]+>")


class TokenKind(Enum):
    WORD = "word"
    PARTIAL = "partial"
    HESITATION = "hesitation"
    TAG = "tag"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str

    @classmethod
    def word(cls, text: str) -> "Token":
        return cls(TokenKind.WORD, text)

    @classmethod
    def partial(cls, text: str) -> "Token":
        return cls(TokenKind.PARTIAL, text)

    @classmethod
    def hesitation(cls, text: str) -> "Token":
        return cls(TokenKind.HESITATION, text)

    @classmethod
    def tag(cls, name: str) -> "Token":
        return cls(TokenKind.TAG, name)

    def render(self) -> str:
        if self.kind is TokenKind.PARTIAL:
            return self.text + "-"
        if self.kind is TokenKind.TAG:
            return f"<{self.text}>"
        return self.text


@dataclass(frozen=True)
class Transcript:
    tokens: tuple[Token, ...]
    raw: str

    @classmethod
    def from_tokens(cls, tokens: Iterable[Token]) -> "Transcript":
        toks = tuple(tokens)
        return cls(tokens=toks, raw=" ".join(t.render() for t in toks))

    def words(self) -> list[str]:
        return [t.text for t in self.tokens if t.kind is TokenKind.WORD]

    def count(self, kind: TokenKind) -> int:
        return sum(1 for t in self.tokens if t.kind is kind)

    def __len__(self) -> int:
        return len(self.tokens)


def _classify_item(item: str, lexicon: frozenset[str]) -> Token:
    if "<" in item or ">" in item:
        # Every bracket must belong to a well-formed <...> span.
        stripped = _TAG_SPAN.sub("", item)
        if "<" in stripped or ">" in stripped:
            raise MalformedTag(f"unbalanced tag delimiters in {item!r}")
        if not stripped and item.count("<") == 1:
            return Token.tag(item[1:-1])
        return Token.word(item)
    if item.endswith("-"):
        # A single trailing hyphen marks a partial word; hyphen runs do not.
        prefix = item[:-1]
        if not prefix:
            raise EmptyPartial("bare hyphen with no prefix letters")
        if prefix.endswith("-"):
            return Token.word(item)
        return Token.partial(prefix)
    if item.lower() in lexicon:
        return Token.hesitation(item)
    return Token.word(item)


def parse_transcript(raw: str, lexicon: frozenset[str] = DEFAULT_HESITATIONS) -> Transcript:
    """Parse an annotated transcript string into a token sequence."""
    tokens = tuple(_classify_item(item, lexicon) for item in raw.split())
    return Transcript(tokens=tokens, raw=raw)


def render_transcript(t: Transcript) -> str:
    """Inverse of parsing: render tokens back to the annotation syntax."""
    return " ".join(tok.render() for tok in t.tokens)


@dataclass(frozen=True)
class UtteranceRecord:
    utterance_id: str
    speaker_id: str
    audio_ref: str
    duration_sec: float
    transcript: Transcript
    extras: tuple[tuple[str, object], ...] = ()

    def replace_transcript(self, transcript: Transcript) -> "UtteranceRecord":
        return UtteranceRecord(
            utterance_id=self.utterance_id,
            speaker_id=self.speaker_id,
            audio_ref=self.audio_ref,
            duration_sec=self.duration_sec,
            transcript=transcript,
            extras=self.extras,
        )


@dataclass(frozen=True)
class Manifest:
    name: str
    records: tuple[UtteranceRecord, ...]

    @classmethod
    def build(cls, name: str, records: Iterable[UtteranceRecord]) -> "Manifest":
        recs = tuple(records)
        seen: set[str] = set()
        for rec in recs:
            if rec.utterance_id in seen:
                raise DuplicateId(f"duplicate utterance_id {rec.utterance_id!r} in {name!r}")
            seen.add(rec.utterance_id)
        return cls(name=name, records=recs)

    def total_duration(self) -> float:
        return sum(rec.duration_sec for rec in self.records)

    def speakers(self) -> set[str]:
        return {rec.speaker_id for rec in self.records}

    def ids(self) -> set[str]:
        return {rec.utterance_id for rec in self.records}

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[UtteranceRecord]:
        return iter(self.records)


def parse_record(obj: dict, lexicon: frozenset[str] = DEFAULT_HESITATIONS) -> UtteranceRecord:
    for name in MANIFEST_FIELDS:
        if name not in obj:
            raise MissingField(name)
    duration = obj["duration_sec"]
    if isinstance(duration, bool) or not isinstance(duration, (int, float)):
        raise BadDuration(f"duration_sec must be a number, got {duration!r}")
    if duration < 0:
        raise BadDuration(f"duration_sec must be nonnegative, got {duration!r}")
    extras = tuple(sorted((k, v) for k, v in obj.items() if k not in MANIFEST_FIELDS))
    return UtteranceRecord(
        utterance_id=str(obj["utterance_id"]),
        speaker_id=str(obj["speaker_id"]),
        audio_ref=str(obj["audio_ref"]),
        duration_sec=float(duration),
        transcript=parse_transcript(str(obj["transcript"]), lexicon),
        extras=extras,
    )


def format_record(rec: UtteranceRecord) -> str:
    """One manifest line for one record; byte-deterministic."""
    obj: dict[str, object] = {
        "utterance_id": rec.utterance_id,
        "speaker_id": rec.speaker_id,
        "audio_ref": rec.audio_ref,
        "duration_sec": rec.duration_sec,
        "transcript": rec.transcript.raw,
    }
    for key, value in rec.extras:
        obj[key] = value
    return json.dumps(obj, ensure_ascii=False)


def _open_text(source: str | Path | IO, mode: str) -> tuple[IO[str], bool]:
    if isinstance(source, (str, Path)):
        return open(source, mode, encoding="utf-8", newline="\n" if "w" in mode else None), True
    if isinstance(source, io.TextIOBase):
        return source, False
    # binary stream
    return io.TextIOWrapper(source, encoding="utf-8", newline="\n" if "w" in mode else None), False


def iter_manifest(
    source: str | Path | IO,
    lexicon: frozenset[str] = DEFAULT_HESITATIONS,
) -> Iterator[UtteranceRecord]:
    """Stream records off a manifest, validating ids as they come."""
    stream, owned = _open_text(source, "r")
    seen: set[str] = set()
    try:
        for lineno, line in enumerate(stream, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as err:
                raise MalformedRecord(f"line {lineno}: not a valid record: {err}") from err
            if not isinstance(obj, dict):
                raise MalformedRecord(f"line {lineno}: record must be an object")
            try:
                rec = parse_record(obj, lexicon)
            except MissingField as err:
                raise MissingField(err.field, f"line {lineno}: {err}") from err
            except (BadDuration, MalformedTag, EmptyPartial) as err:
                raise type(err)(f"line {lineno}: {err}") from err
            if rec.utterance_id in seen:
                raise DuplicateId(f"line {lineno}: duplicate utterance_id {rec.utterance_id!r}")
            seen.add(rec.utterance_id)
            yield rec
    finally:
        if owned:
            stream.close()
        elif isinstance(stream, io.TextIOWrapper):
            stream.detach()


def read_manifest(
    source: str | Path | IO,
    name: str = "manifest",
    lexicon: frozenset[str] = DEFAULT_HESITATIONS,
) -> Manifest:
    """Read a whole manifest eagerly, parsing transcripts as it goes."""
    return Manifest(name=name, records=tuple(iter_manifest(source, lexicon)))


def write_manifest(m: Manifest, sink: str | Path | IO) -> None:
    """Write a manifest; identical manifests produce identical bytes."""
    stream, owned = _open_text(sink, "w")
    try:
        for rec in m.records:
            stream.write(format_record(rec))
            stream.write("\n")
    finally:
        if owned:
            stream.close()
        else:
            stream.flush()
            if isinstance(stream, io.TextIOWrapper):
                stream.detach()
