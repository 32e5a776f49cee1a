"""Shared randomized-data generators for the test suite.

All generators take an explicit ``random.Random`` so every test is
reproducible from its seed.  Generated transcripts are well-formed by
construction: word texts never collide with the hesitation lexicon, never
carry tag delimiters, and never end in a single trailing hyphen, so
render/parse round-trips are exact.
"""

from __future__ import annotations

import random

from disflkit.corpus import DEFAULT_HESITATIONS, Manifest, Token, Transcript, UtteranceRecord

LETTERS = "abcdefghijklmnopqrstuvwxyz"
TAG_NAMES = ("noise", "breath", "music", "hesitation", "pw", "overlap")


def random_word(rng: random.Random, min_len: int = 1, max_len: int = 8) -> str:
    while True:
        length = rng.randint(min_len, max_len)
        word = "".join(rng.choice(LETTERS) for _ in range(length))
        if rng.random() < 0.1:
            word = word.capitalize()
        if rng.random() < 0.05 and length >= 2:
            cut = rng.randint(1, length - 1)
            word = word[:cut] + "-" + word[cut:]
        if word.lower() not in DEFAULT_HESITATIONS and not word.endswith("-"):
            return word


def random_token(rng: random.Random) -> Token:
    roll = rng.random()
    if roll < 0.55:
        return Token.word(random_word(rng))
    if roll < 0.75:
        return Token.partial("".join(rng.choice(LETTERS) for _ in range(rng.randint(1, 5))))
    if roll < 0.87:
        hes = rng.choice(sorted(DEFAULT_HESITATIONS))
        return Token.hesitation(hes.capitalize() if rng.random() < 0.2 else hes)
    return Token.tag(rng.choice(TAG_NAMES))


def random_transcript(rng: random.Random, max_tokens: int = 8) -> Transcript:
    tokens = [random_token(rng) for _ in range(rng.randint(0, max_tokens))]
    # Bias towards the interesting structures: completions and repetitions.
    partial_positions = [i for i, t in enumerate(tokens) if t.kind.value == "partial"]
    if partial_positions and rng.random() < 0.6:
        anchor = rng.choice(partial_positions)
        suffix = "".join(rng.choice(LETTERS) for _ in range(rng.randint(0, 4)))
        completion = tokens[anchor].text + suffix
        if completion.lower() not in DEFAULT_HESITATIONS:
            where = rng.randint(anchor + 1, len(tokens))
            tokens.insert(where, Token.word(completion))
    words = [i for i, t in enumerate(tokens) if t.kind.value == "word"]
    if words and rng.random() < 0.3:
        i = rng.choice(words)
        tokens.insert(i + rng.randint(0, 1), Token.word(tokens[i].text))
    return Transcript.from_tokens(tokens)


def random_record(rng: random.Random, index: int, speaker_pool: int = 20) -> UtteranceRecord:
    extras = ()
    if rng.random() < 0.3:
        extras = (("channel", rng.choice(["near", "far"])), ("snr_db", rng.randint(-5, 30)))
    return UtteranceRecord(
        utterance_id=f"utt-{index:06d}",
        speaker_id=f"spk-{rng.randrange(speaker_pool):04d}",
        audio_ref=f"audio/{index:06d}.wav",
        duration_sec=round(rng.uniform(0.4, 12.0), 3),
        transcript=random_transcript(rng),
        extras=extras,
    )


def random_manifest(rng: random.Random, n_records: int, name: str = "pool", speaker_pool: int = 20) -> Manifest:
    return Manifest(name=name, records=tuple(random_record(rng, i, speaker_pool) for i in range(n_records)))
