"""Raise heterogeneity further by refilling every variable slot from a pool.

Each line keeps its template structure: the variables are extracted against
the line's template (ground truth, or a parser's output when no labels
exist), replaced with values sampled uniformly from the variable pool, and
substituted back. The output dataset is labeled with the templates that were
used, so it stays evaluable.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._rng import record_generator
from .corpus import (
    Dataset,
    LogRecord,
    canonicalize_template,
    count_wildcards,
    extract_variables,
    substitute_variables,
)
from .errors import AlignmentError, EmptyPoolError, ShapeError
from .pool import VariablePool

MODE_LABELED = "labeled"
MODE_PARSED = "parsed"


@dataclass(frozen=True)
class FuzzConfig:
    seed: int
    mode: str = MODE_LABELED

    def __post_init__(self) -> None:
        if self.mode not in (MODE_LABELED, MODE_PARSED):
            raise ValueError(f"mode must be {MODE_LABELED!r} or {MODE_PARSED!r}")


@dataclass
class FuzzResult:
    dataset: Dataset
    #: Line ids that could not be aligned and passed through unchanged.
    skipped_line_ids: list[int]


def fuzz(
    ds: Dataset,
    vpool: VariablePool,
    cfg: FuzzConfig,
    parsed: list[str] | None = None,
) -> FuzzResult:
    """Replace every variable of every line with pool samples.

    Randomness is derived from (seed, line id), so the output is identical
    however the records are scheduled. Lines whose template has no wildcard
    pass through unchanged; lines that fail alignment (possible when parser
    templates are wrong) also pass through and are listed in the result's
    skip report.
    """
    if not vpool.values:
        raise EmptyPoolError("variable pool is empty")
    if cfg.mode == MODE_PARSED:
        if parsed is None:
            raise ValueError("parsed templates are required in parsed mode")
        if len(parsed) != len(ds.records):
            raise ShapeError(
                f"parse result has {len(parsed)} entries for {len(ds.records)} records"
            )
        templates = [canonicalize_template(t) for t in parsed]
    else:
        templates = [canonicalize_template(t) for t in ds.labels()]

    values = vpool.values
    records: list[LogRecord] = []
    skipped: list[int] = []
    for rec, template in zip(ds.records, templates):
        slots = count_wildcards(template)
        if slots == 0:
            records.append(
                LogRecord(
                    line_id=rec.line_id,
                    content=rec.content,
                    ground_truth=template or None,
                    source=rec.source,
                )
            )
            continue
        try:
            extract_variables(rec.content, template)
        except AlignmentError:
            skipped.append(rec.line_id)
            records.append(rec)
            continue
        rng = record_generator(cfg.seed, rec.line_id)
        picks = rng.integers(0, len(values), size=slots)
        content = substitute_variables(template, [values[i] for i in picks])
        records.append(
            LogRecord(
                line_id=rec.line_id,
                content=content,
                ground_truth=template,
                source=rec.source,
            )
        )
    return FuzzResult(
        dataset=Dataset(name=ds.name, records=records), skipped_line_ids=skipped
    )
