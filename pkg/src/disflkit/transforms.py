"""Partial-word rewrites for training transcripts and scoring-side cleanup.

Four rewrite strategies for a partial word such as ``p-`` (uttered prefix
``p``):

* ``delete``            the token is dropped: ``p- play`` -> ``play``
* ``replace-tag``       the token becomes the tag: ``<pw> play``
* ``append-tag``        prefix + tag as one token: ``p<pw> play``
* ``first-letter-tag``  first letter + tag: ``tw- twelve`` -> ``t<pw> twelve``

``postprocess`` undoes the matching strategy on decoded hypotheses (and on
rendered references), yielding a plain word list with no partial words, no
tags and, by default, no hesitations.  ``normalize_reference`` produces the
same word list straight from a parsed transcript.  For every well-formed
transcript and every strategy the two routes agree; the scoring code relies
on that.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .corpus import DEFAULT_HESITATIONS, Token, TokenKind, Transcript, render_transcript

DEFAULT_TAG = "<pw>"


class StrategyKind(Enum):
    DELETE = "delete"
    REPLACE_TAG = "replace-tag"
    APPEND_TAG = "append-tag"
    FIRST_LETTER_TAG = "first-letter-tag"


@dataclass(frozen=True)
class PartialWordStrategy:
    kind: StrategyKind
    tag_text: str = DEFAULT_TAG

    def __post_init__(self):
        if not self.tag_text or any(c.isspace() for c in self.tag_text):
            raise ValueError(f"tag_text must be a single whitespace-free token, got {self.tag_text!r}")

    @classmethod
    def named(cls, name: str, tag_text: str = DEFAULT_TAG) -> "PartialWordStrategy":
        return cls(StrategyKind(name), tag_text)


def _tag_token(tag_text: str) -> Token:
    # "<pw>" round-trips through the parser as a tag; other shapes as a word.
    if (
        tag_text.startswith("<")
        and tag_text.endswith(">")
        and len(tag_text) > 2
        and "<" not in tag_text[1:-1]
        and ">" not in tag_text[1:-1]
    ):
        return Token.tag(tag_text[1:-1])
    return Token.word(tag_text)


def transform(t: Transcript, strategy: PartialWordStrategy) -> Transcript:
    """Rewrite every partial word of ``t`` under ``strategy``."""
    out: list[Token] = []
    for tok in t.tokens:
        if tok.kind is not TokenKind.PARTIAL:
            out.append(tok)
            continue
        if strategy.kind is StrategyKind.DELETE:
            continue
        if strategy.kind is StrategyKind.REPLACE_TAG:
            out.append(_tag_token(strategy.tag_text))
        elif strategy.kind is StrategyKind.APPEND_TAG:
            out.append(Token.word(tok.text + strategy.tag_text))
        else:  # FIRST_LETTER_TAG; parser guarantees a non-empty prefix
            out.append(Token.word(tok.text[0] + strategy.tag_text))
    return Transcript.from_tokens(out)


def _is_tag_item(item: str) -> bool:
    return (
        item.startswith("<")
        and item.endswith(">")
        and len(item) > 2
        and "<" not in item[1:-1]
        and ">" not in item[1:-1]
    )


def _is_partial_markup(item: str) -> bool:
    # single trailing hyphen, including the degenerate bare "-"
    return item.endswith("-") and not item.endswith("--")


def postprocess(
    text: str,
    strategy: PartialWordStrategy,
    lexicon: frozenset[str] = DEFAULT_HESITATIONS,
    keep_hesitations: bool = False,
) -> list[str]:
    """Strip strategy tags and disfluency markup from a decoded or rendered string.

    For ``append-tag`` and ``first-letter-tag`` the tag disappears together
    with everything between it and the previous space; for ``replace-tag``
    standalone tags disappear.  Leftover markup (stray tags, trailing-hyphen
    tokens, transcriber tags, hesitations unless kept) is removed in all
    cases, so the result is a plain word list whatever the input.
    """
    tag = strategy.tag_text
    words: list[str] = []
    for item in text.split():
        if strategy.kind in (StrategyKind.APPEND_TAG, StrategyKind.FIRST_LETTER_TAG) and tag in item:
            item = item.split(tag)[-1]
        elif strategy.kind is StrategyKind.REPLACE_TAG and item == tag:
            continue
        if tag in item:
            item = item.replace(tag, "")
        if not item:
            continue
        if _is_tag_item(item):
            continue
        if _is_partial_markup(item):
            continue
        if not keep_hesitations and item.lower() in lexicon:
            continue
        words.append(item)
    return words


def normalize_reference(
    t: Transcript,
    keep_hesitations: bool = False,
    tag_text: str = DEFAULT_TAG,
) -> list[str]:
    """Plain word list of a reference: partial words and tags removed.

    Hesitations are removed too unless ``keep_hesitations``.  Words carrying
    ``tag_text`` (possible only in already-transformed data) are dropped
    outright so no partial-word content leaks into a reference.
    """
    words: list[str] = []
    for tok in t.tokens:
        if tok.kind is TokenKind.WORD:
            if tag_text in tok.text:
                continue
            words.append(tok.text)
        elif tok.kind is TokenKind.HESITATION and keep_hesitations:
            words.append(tok.text)
    return words


def postprocess_transcript(
    t: Transcript,
    strategy: PartialWordStrategy,
    lexicon: frozenset[str] = DEFAULT_HESITATIONS,
    keep_hesitations: bool = False,
) -> list[str]:
    """``postprocess`` applied to the rendered form of a transcript."""
    return postprocess(render_transcript(t), strategy, lexicon, keep_hesitations)
