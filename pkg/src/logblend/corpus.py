"""Log dataset representation, ingestion, and template/variable alignment.

A dataset is an ordered list of log records. Each record carries the free-text
message content (no timestamp/level/PID header) and, when available, a
ground-truth template whose variable positions are marked with the ``<*>``
wildcard token.
"""

from __future__ import annotations

import csv
import functools
import re
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import AlignmentError, DataFormatError, LabelingError

WILDCARD = "<*>"

_WS_RUN = re.compile(r"\s+")


def canonicalize_template(text: str) -> str:
    """Collapse whitespace runs to single spaces and trim the ends.

    Ground-truth files vary in incidental spacing; metric comparisons must
    not hinge on it.
    """
    return _WS_RUN.sub(" ", text).strip()


def template_tokens(template: str) -> list[str]:
    return template.split(" ") if template else []


def count_wildcards(template: str) -> int:
    return template.count(WILDCARD)


@dataclass(frozen=True, slots=True)
class LogRecord:
    """One log line: 1-based position, message content, optional template."""

    line_id: int
    content: str
    ground_truth: str | None = None
    source: str = ""


@dataclass
class Dataset:
    """Named, ordered collection of log records with contiguous line ids."""

    name: str
    records: list[LogRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def contents(self) -> list[str]:
        return [r.content for r in self.records]

    def labels(self) -> list[str]:
        """Ground-truth templates in line order; raises if any are missing."""
        missing = [r.line_id for r in self.records if r.ground_truth is None]
        if missing:
            raise LabelingError(
                f"dataset {self.name!r} has records without ground truth", missing
            )
        return [r.ground_truth for r in self.records]  # type: ignore[misc]

    def is_labeled(self) -> bool:
        return all(r.ground_truth is not None for r in self.records)

    def validate(self) -> None:
        for i, rec in enumerate(self.records, start=1):
            if rec.line_id != i:
                raise DataFormatError(
                    f"dataset {self.name!r}: line_id {rec.line_id} at position {i}"
                )
            if "\n" in rec.content or "\r" in rec.content:
                raise DataFormatError(
                    f"dataset {self.name!r}: line {i} contains a line break"
                )


def load_structured(path: str | Path, name: str | None = None) -> Dataset:
    """Load a comma-separated dataset with `Content` and `EventTemplate` columns.

    `LineId` is honored when present (must be contiguous from 1), otherwise
    line ids follow row order. An optional `Source` column overrides the
    per-record source tag; an empty `EventTemplate` field means unlabeled.
    """
    path = Path(path)
    if name is None:
        name = path.stem
    records: list[LogRecord] = []
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f, strict=True)
        try:
            header = next(reader, None)
            if header is None:
                raise DataFormatError(f"{path}: empty file, expected a header row")
            cols = {col: idx for idx, col in enumerate(header)}
            for required in ("Content", "EventTemplate"):
                if required not in cols:
                    raise DataFormatError(f"{path}: missing column {required!r}")
            content_idx = cols["Content"]
            template_idx = cols["EventTemplate"]
            line_idx = cols.get("LineId")
            source_idx = cols.get("Source")
            for row in reader:
                if not row:
                    continue
                if len(row) != len(header):
                    raise DataFormatError(
                        f"{path}: row {reader.line_num} has {len(row)} fields, "
                        f"expected {len(header)}"
                    )
                content = row[content_idx]
                if "\n" in content or "\r" in content:
                    raise DataFormatError(
                        f"{path}: row {reader.line_num} content contains a line break"
                    )
                template = canonicalize_template(row[template_idx])
                if line_idx is not None:
                    try:
                        line_id = int(row[line_idx])
                    except ValueError as exc:
                        raise DataFormatError(
                            f"{path}: row {reader.line_num} has non-integer LineId "
                            f"{row[line_idx]!r}"
                        ) from exc
                else:
                    line_id = len(records) + 1
                records.append(
                    LogRecord(
                        line_id=line_id,
                        content=content,
                        ground_truth=template or None,
                        source=row[source_idx] if source_idx is not None else name,
                    )
                )
        except csv.Error as exc:
            raise DataFormatError(f"{path}: row {reader.line_num}: {exc}") from exc
    ds = Dataset(name=name, records=records)
    ds.validate()
    return ds


def load_raw(path: str | Path, name: str | None = None) -> Dataset:
    """Load a newline-delimited text file, one message per line.

    Blank lines are skipped; line ids stay contiguous. Records carry no
    ground truth.
    """
    path = Path(path)
    if name is None:
        name = path.stem
    records: list[LogRecord] = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            content = line.rstrip("\r\n")
            if not content.strip():
                continue
            records.append(
                LogRecord(line_id=len(records) + 1, content=content, source=name)
            )
    return Dataset(name=name, records=records)


def write_dataset(ds: Dataset, path: str | Path) -> None:
    """Write a dataset in the structured format; round-trips exactly.

    A `Source` column is emitted only when some record's source differs from
    the dataset name (as after mixing).
    """
    path = Path(path)
    with_source = any(r.source != ds.name for r in ds.records)
    header = ["LineId", "Content", "EventTemplate"]
    if with_source:
        header.append("Source")
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for rec in ds.records:
            row = [str(rec.line_id), rec.content, rec.ground_truth or ""]
            if with_source:
                row.append(rec.source)
            writer.writerow(row)


def _token_pattern(template: str) -> re.Pattern | None:
    """Token-level matcher: wildcards absorb one-or-more space-separated tokens.

    Returns None when a wildcard is embedded inside a token (e.g. ``id=<*>``);
    those templates only admit character-level alignment.
    """
    parts = []
    for tok in template_tokens(template):
        if tok == WILDCARD:
            parts.append(r"(\S+(?: \S+)*?)")
        elif WILDCARD in tok:
            return None
        else:
            parts.append(re.escape(tok))
    return re.compile(" ".join(parts))


def _char_pattern(template: str) -> re.Pattern:
    """Character-level matcher: each wildcard captures one-or-more characters."""
    pieces = template.split(WILDCARD)
    return re.compile(r"(.+?)".join(re.escape(p) for p in pieces))


@functools.lru_cache(maxsize=None)
def _matchers(template: str) -> tuple[re.Pattern | None, re.Pattern]:
    return _token_pattern(template), _char_pattern(template)


def extract_variables(content: str, template: str) -> list[str]:
    """Return the substring captured by each ``<*>`` of `template`, in order.

    Matching is leftmost-shortest: token-level alignment first (a wildcard
    absorbs whole tokens), character-level as fallback. Every wildcard must
    absorb at least one character and the full content must be consumed.
    """
    template = canonicalize_template(template)
    token_pat, char_pat = _matchers(template)
    if token_pat is not None:
        m = token_pat.fullmatch(content)
        if m is not None:
            return list(m.groups())
    m = char_pat.fullmatch(content)
    if m is not None:
        return list(m.groups())
    raise AlignmentError(content, template)


def substitute_variables(template: str, variables: list[str]) -> str:
    """Inverse of :func:`extract_variables`: fill wildcard slots in order."""
    pieces = template.split(WILDCARD)
    if len(variables) != len(pieces) - 1:
        raise ValueError(
            f"template has {len(pieces) - 1} wildcard slots, "
            f"got {len(variables)} values"
        )
    out = [pieces[0]]
    for value, piece in zip(variables, pieces[1:]):
        out.append(value)
        out.append(piece)
    return "".join(out)


def matches_template(content: str, template: str) -> bool:
    try:
        extract_variables(content, template)
        return True
    except AlignmentError:
        return False


def template_frequency_map(ds: Dataset) -> dict[str, int]:
    """Count records per canonical ground-truth template."""
    missing = [r.line_id for r in ds.records if r.ground_truth is None]
    if missing:
        raise LabelingError(
            f"dataset {ds.name!r} has unlabeled records", missing
        )
    counts: Counter[str] = Counter(
        canonicalize_template(r.ground_truth) for r in ds.records  # type: ignore[arg-type]
    )
    return dict(counts)


def relabel(ds: Dataset, templates: list[str]) -> Dataset:
    """Copy of `ds` with ground truths replaced by `templates` (index-aligned)."""
    if len(templates) != len(ds.records):
        raise ValueError(
            f"{len(templates)} templates for {len(ds.records)} records"
        )
    return Dataset(
        name=ds.name,
        records=[
            replace(rec, ground_truth=canonicalize_template(t) or None)
            for rec, t in zip(ds.records, templates)
        ],
    )
