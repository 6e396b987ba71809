"""Raise a dataset's heterogeneity by swapping frequent lines for pooled outliers.

The user knob runs from 0 to 1 and maps linearly onto replacing 0% to 25% of
the dataset: the records with the most frequent templates are overwritten in
place by lines sampled from the outlier pool, so line ids and dataset size
stay fixed and results remain comparable across strengths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import groupby

from ._rng import generator
from .corpus import Dataset, LogRecord, canonicalize_template
from .errors import EmptyPoolError, ShapeError
from .pool import OutlierPool

#: Replacement fraction at strength 1.0.
MAX_REPLACEMENT_FRACTION = 0.25


@dataclass(frozen=True)
class MixConfig:
    strength: float
    seed: int
    exclude_source: bool = True

    def __post_init__(self) -> None:
        if not 0.0 <= self.strength <= 1.0:
            raise ValueError(f"strength must be in [0, 1], got {self.strength}")


def replacement_count(strength: float, size: int) -> int:
    return math.floor(round(MAX_REPLACEMENT_FRACTION * strength * size, 9))


def replacement_targets(labels: list[str], k: int) -> list[int]:
    """Indices of the k records with the most frequent templates.

    Templates are ranked by descending frequency; records of one template
    are taken in ascending line order; templates of equal frequency are
    drained round-robin so none is exhausted before its peers.
    """
    by_template: dict[str, list[int]] = {}
    for idx, label in enumerate(labels):
        by_template.setdefault(label, []).append(idx)
    # Descending frequency, ties broken by first occurrence.
    ordered = sorted(by_template.values(), key=lambda idxs: (-len(idxs), idxs[0]))
    targets: list[int] = []
    for freq, peer_group in groupby(ordered, key=len):
        peers = list(peer_group)
        for round_no in range(freq):
            for idxs in peers:
                if len(targets) == k:
                    return targets
                targets.append(idxs[round_no])
    return targets


def _mix(
    ds: Dataset, labels: list[str], pool: OutlierPool, cfg: MixConfig
) -> Dataset:
    k = replacement_count(cfg.strength, len(ds.records))
    records = list(ds.records)
    if k == 0:
        return Dataset(name=ds.name, records=records)
    candidates = pool.excluding(ds.name) if cfg.exclude_source else pool.entries
    if not candidates:
        raise EmptyPoolError(
            f"outlier pool is empty after excluding source {ds.name!r}"
        )
    targets = replacement_targets(labels, k)
    picks = generator(cfg.seed).integers(0, len(candidates), size=k)
    for pos, pick in zip(targets, picks):
        entry = candidates[pick]
        records[pos] = LogRecord(
            line_id=pos + 1,
            content=entry.content,
            ground_truth=entry.ground_truth,
            source=entry.source,
        )
    return Dataset(name=ds.name, records=records)


def mix(ds: Dataset, pool: OutlierPool, cfg: MixConfig) -> Dataset:
    """Replace the most frequent entries (by ground-truth template) with pool lines.

    Replaced records adopt the pool entry's content, ground truth, and source;
    everything else is untouched and the output has the input's size.
    """
    labels = [canonicalize_template(t) for t in ds.labels()]
    return _mix(ds, labels, pool, cfg)


def mix_with_parser_labels(
    ds: Dataset, parsed: list[str], pool: OutlierPool, cfg: MixConfig
) -> Dataset:
    """Same as :func:`mix` but frequency-ranked by parser output templates.

    Lets the pipeline run without ground-truth labels: lines a parser lumped
    under one template are treated as the frequent entries to replace.
    """
    if len(parsed) != len(ds.records):
        raise ShapeError(
            f"parse result has {len(parsed)} entries for {len(ds.records)} records"
        )
    labels = [canonicalize_template(t) for t in parsed]
    return _mix(ds, labels, pool, cfg)
