"""Training-mixture construction: splits, fraction subsets, merges.

Speaker partitioning hashes ``(seed, speaker_id)`` to a point in [0, 1) and
cuts it against the cumulative ratios, so every speaker lands wholly in one
partition and the assignment is reproducible across machines.  Fraction
subsetting sorts records by a per-record hash and takes a prefix, which
makes the subsets for growing fractions form a chain under a fixed seed;
the fraction applies to utterance counts, with duration shares reported so
either accounting can be inspected.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

from .corpus import Manifest, UtteranceRecord
from .errors import IdCollision
from .transforms import PartialWordStrategy, transform


def _unit_hash(seed: int, key: str) -> float:
    digest = hashlib.blake2b(f"{seed}\x1f{key}".encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big") / 2**64


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class SplitSpec:
    train: float = 0.8
    dev: float = 0.1
    test: float = 0.1
    seed: int = 0

    def __post_init__(self):
        for share in (self.train, self.dev, self.test):
            if share < 0:
                raise ValueError("split ratios must be nonnegative")
        if abs(self.train + self.dev + self.test - 1.0) > 1e-9:
            raise ValueError("split ratios must sum to 1")


def speaker_disjoint_split(m: Manifest, spec: SplitSpec) -> tuple[Manifest, Manifest, Manifest]:
    """Partition ``m`` into train/dev/test with no speaker overlap."""
    cut_train = spec.train
    cut_dev = spec.train + spec.dev
    buckets: dict[str, list[UtteranceRecord]] = {"train": [], "dev": [], "test": []}
    assignment: dict[str, str] = {}
    for rec in m.records:
        part = assignment.get(rec.speaker_id)
        if part is None:
            u = _unit_hash(spec.seed, rec.speaker_id)
            part = "train" if u < cut_train else "dev" if u < cut_dev else "test"
            assignment[rec.speaker_id] = part
        buckets[part].append(rec)
    return tuple(
        Manifest(name=f"{m.name}-{part}", records=tuple(buckets[part]))
        for part in ("train", "dev", "test")
    )


def take_fraction(m: Manifest, fraction: float, seed: int) -> Manifest:
    """Deterministic pseudo-random subset of round(fraction * len) records.

    Subsets are nested: under one seed, the subset for a smaller fraction is
    contained in the subset for any larger one.
    """
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction must be in [0, 1], got {fraction}")
    k = _round_half_up(fraction * len(m.records))
    ranked = sorted(m.records, key=lambda r: (_unit_hash(seed, r.utterance_id), r.utterance_id))
    chosen = {rec.utterance_id for rec in ranked[:k]}
    kept = tuple(rec for rec in m.records if rec.utterance_id in chosen)
    return Manifest(name=f"{m.name}-{fraction:g}", records=kept)


@dataclass(frozen=True)
class MixSpec:
    fraction: float
    seed: int
    strategy: PartialWordStrategy

    def __post_init__(self):
        if not 0.0 <= self.fraction <= 1.0:
            raise ValueError(f"fraction must be in [0, 1], got {self.fraction}")


@dataclass(frozen=True)
class MixReport:
    ordinary_records: int
    disfluent_records: int
    ordinary_hours: float
    disfluent_hours: float
    ordinary_speakers: int
    disfluent_speakers: int

    @property
    def total_records(self) -> int:
        return self.ordinary_records + self.disfluent_records

    @property
    def total_hours(self) -> float:
        return self.ordinary_hours + self.disfluent_hours

    @property
    def disfluent_share_pct(self) -> float:
        """Disfluent share of the total mix duration, in percent."""
        return 100.0 * self.disfluent_hours / self.total_hours if self.total_hours else 0.0

    @property
    def disfluent_vs_ordinary_pct(self) -> float:
        """Disfluent duration as a percentage of the ordinary pool's."""
        return 100.0 * self.disfluent_hours / self.ordinary_hours if self.ordinary_hours else 0.0

    def summary_lines(self) -> list[str]:
        return [
            f"total records        {self.total_records}",
            f"total hours          {self.total_hours:.2f}",
            f"ordinary records     {self.ordinary_records} ({self.ordinary_speakers} speakers, {self.ordinary_hours:.2f} h)",
            f"disfluent records    {self.disfluent_records} ({self.disfluent_speakers} speakers, {self.disfluent_hours:.2f} h)",
            f"disfluent share      {self.disfluent_share_pct:.2f}% of total duration",
            f"disfluent vs ordinary {self.disfluent_vs_ordinary_pct:.2f}% of ordinary duration",
        ]


def build_mix(ordinary: Manifest, disfluencies: Manifest, spec: MixSpec) -> tuple[Manifest, MixReport]:
    """Merge the ordinary pool with a transformed fraction of the disfluent pool."""
    collisions = ordinary.ids() & disfluencies.ids()
    if collisions:
        raise IdCollision(f"utterance ids in both pools: {', '.join(sorted(collisions)[:5])}")
    subset = take_fraction(disfluencies, spec.fraction, spec.seed)
    transformed = tuple(
        rec.replace_transcript(transform(rec.transcript, spec.strategy)) for rec in subset.records
    )
    mixed = Manifest(
        name=f"{ordinary.name}+{disfluencies.name}",
        records=ordinary.records + transformed,
    )
    report = MixReport(
        ordinary_records=len(ordinary.records),
        disfluent_records=len(transformed),
        ordinary_hours=sum(r.duration_sec for r in ordinary.records) / 3600.0,
        disfluent_hours=sum(r.duration_sec for r in transformed) / 3600.0,
        ordinary_speakers=len(ordinary.speakers()),
        disfluent_speakers=len({r.speaker_id for r in transformed}),
    )
    return mixed, report
