"""Dataset heterogeneity estimation from three proxy statistics.

The proxies are the number of unique whitespace-delimited words, unique
characters, and unique line lengths in a dataset. Each is normalized by a
reference corpus (an industry log sample by default), capped at 1.0, and
combined with 40/20/40 weights into a single score H in (0, 1]. The unique
character count gets half the weight of the other two because its normalized
spread across datasets is roughly half as large.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Dataset
from .errors import EmptyDatasetError, InsufficientDataError, InvalidReferenceError

#: Default weights for (unique words, unique characters, unique line lengths).
DEFAULT_WEIGHTS = (0.4, 0.2, 0.4)


@dataclass(frozen=True)
class ProxyStats:
    """Unique-word, unique-character, and unique-line-length counts."""

    nuw: int
    nuc: int
    nuldl: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.nuw, self.nuc, self.nuldl)

    def as_dict(self) -> dict[str, int]:
        return {"nuw": self.nuw, "nuc": self.nuc, "nuldl": self.nuldl}


@dataclass(frozen=True)
class ReferenceStats:
    """Normalization anchor; the reference corpus itself scores H = 1."""

    nuw: int
    nuc: int
    nuldl: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.nuw, self.nuc, self.nuldl)

    def validate(self) -> None:
        if min(self.as_tuple()) <= 0:
            raise InvalidReferenceError(
                f"reference components must be positive, got {self.as_tuple()}"
            )


#: Measured on a 2K-line industry log sample from a large production system.
INDUSTRY_REFERENCE = ReferenceStats(nuw=4421, nuc=92, nuldl=181)


@dataclass(frozen=True)
class HeterogeneityScore:
    h: float
    components: tuple[float, float, float]

    def as_dict(self) -> dict:
        return {
            "h": self.h,
            "components": {
                "nuw_ratio": self.components[0],
                "nuc_ratio": self.components[1],
                "nuldl_ratio": self.components[2],
            },
        }


def proxy_stats(ds: Dataset) -> ProxyStats:
    """Count unique words, characters, and line lengths over all contents.

    A word is a maximal run of non-whitespace characters; characters include
    spaces (contents carry no line terminators); line length is the
    code-point count of the content.
    """
    if not ds.records:
        raise EmptyDatasetError(f"dataset {ds.name!r} is empty")
    words: set[str] = set()
    chars: set[str] = set()
    lengths: set[int] = set()
    for rec in ds.records:
        words.update(rec.content.split())
        chars.update(rec.content)
        lengths.add(len(rec.content))
    return ProxyStats(nuw=len(words), nuc=len(chars), nuldl=len(lengths))


def h_score(
    stats: ProxyStats,
    ref: ReferenceStats = INDUSTRY_REFERENCE,
    weights: tuple[float, float, float] = DEFAULT_WEIGHTS,
) -> HeterogeneityScore:
    """Weighted sum of reference-normalized proxy ratios, each capped at 1."""
    ref.validate()
    components = tuple(
        min(s / r, 1.0) for s, r in zip(stats.as_tuple(), ref.as_tuple())
    )
    h = sum(w * c for w, c in zip(weights, components))
    return HeterogeneityScore(h=h, components=components)  # type: ignore[arg-type]


def dataset_h(
    ds: Dataset,
    ref: ReferenceStats = INDUSTRY_REFERENCE,
    weights: tuple[float, float, float] = DEFAULT_WEIGHTS,
) -> HeterogeneityScore:
    return h_score(proxy_stats(ds), ref, weights)


def metric_variability(
    stats_list: list[ProxyStats],
    ref: ReferenceStats = INDUSTRY_REFERENCE,
) -> tuple[float, float, float]:
    """Spread of each proxy metric across datasets, reference-normalized.

    Returns the sample standard deviation (n-1 divisor) of each normalized
    component. A larger spread means the metric separates homogeneous from
    heterogeneous datasets more strongly, which is what motivates weighting
    the components differently.
    """
    if len(stats_list) < 2:
        raise InsufficientDataError(
            f"need at least 2 datasets, got {len(stats_list)}"
        )
    ref.validate()
    values = np.array([s.as_tuple() for s in stats_list], dtype=np.float64)
    normalized = values / np.array(ref.as_tuple(), dtype=np.float64)
    spread = np.std(normalized, axis=0, ddof=1)
    return (float(spread[0]), float(spread[1]), float(spread[2]))
