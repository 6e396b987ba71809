"""Reference log parsers behind one interface.

Two baselines are built in, enough to exercise the synthesis/evaluation loop:

* a streaming fixed-depth-tree parser: lines are routed by token count and
  leading tokens, matched against groups by positional token similarity, and
  group templates generalize disagreeing positions to ``<*>``. Membership is
  decided online, in one pass; each record reports its group's final
  template.
* an offline token-frequency parser: two passes; a token is kept when its
  occurrence ratio within its (position, token-count) slot meets a
  threshold, otherwise it becomes ``<*>``.

Any other parser integrates by writing a `LineId,EventTemplate` file,
index-aligned with the input dataset (see :func:`read_parse_result`).
"""

from __future__ import annotations

import csv
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path

from .corpus import WILDCARD, Dataset, canonicalize_template
from .errors import DataFormatError, EmptyDatasetError, LabelingError, ShapeError
from .metrics import ParseResult


@dataclass(frozen=True)
class TreeParserConfig:
    depth: int = 4
    similarity_threshold: float = 0.4
    max_children: int = 100
    #: Optional regex masks substituted with the wildcard before tokenizing.
    #: Off by default: canned masks encode per-dataset heuristics.
    masks: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise ValueError(f"depth must be positive, got {self.depth}")
        if not 0.0 < self.similarity_threshold < 1.0:
            raise ValueError(
                f"similarity_threshold must be in (0, 1), got {self.similarity_threshold}"
            )
        if self.max_children < 1:
            raise ValueError(f"max_children must be positive, got {self.max_children}")

    @property
    def name(self) -> str:
        return "tree"


@dataclass(frozen=True)
class TokenFrequencyParserConfig:
    threshold: float = 0.6

    def __post_init__(self) -> None:
        if not 0.0 < self.threshold <= 1.0:
            raise ValueError(f"threshold must be in (0, 1], got {self.threshold}")

    @property
    def name(self) -> str:
        return "tokenfreq"


@dataclass(frozen=True)
class IdentityParserConfig:
    """Echoes stored ground truth; an oracle for metric and label validation."""

    @property
    def name(self) -> str:
        return "identity"


ParserConfig = TreeParserConfig | TokenFrequencyParserConfig | IdentityParserConfig

_DIGIT = re.compile(r"\d")


class _Group:
    __slots__ = ("template", "members")

    def __init__(self, template: list[str], first_member: int):
        self.template = template
        self.members = [first_member]


class _Node:
    __slots__ = ("children", "groups")

    def __init__(self) -> None:
        self.children: dict[str, _Node] = {}
        self.groups: list[_Group] = []


def _similarity(template: list[str], tokens: list[str]) -> tuple[float, int]:
    """Fraction of positions with equal tokens, plus the wildcard count."""
    same = 0
    params = 0
    for t, s in zip(template, tokens):
        if t == WILDCARD:
            params += 1
        elif t == s:
            same += 1
    return same / len(template), params


def _parse_tree(ds: Dataset, cfg: TreeParserConfig) -> ParseResult:
    masks = [re.compile(m) for m in cfg.masks]
    token_layers = max(cfg.depth - 2, 0)
    root: dict[int, _Node] = {}
    all_groups: list[_Group] = []
    results: list[str | None] = [None] * len(ds.records)
    for idx, rec in enumerate(ds.records):
        content = rec.content
        for mask in masks:
            content = mask.sub(WILDCARD, content)
        tokens = content.split()
        if not tokens:
            results[idx] = ""
            continue

        node = root.setdefault(len(tokens), _Node())
        for level in range(min(token_layers, len(tokens))):
            key = tokens[level]
            if _DIGIT.search(key):
                key = WILDCARD
            child = node.children.get(key)
            if child is None:
                if key != WILDCARD and len(node.children) + (
                    0 if WILDCARD in node.children else 1
                ) >= cfg.max_children:
                    # Leave room for the spill bucket once the fan-out fills up.
                    key = WILDCARD
                    child = node.children.get(key)
                if child is None:
                    child = _Node()
                    node.children[key] = child
            node = child

        best = None
        best_sim = -1.0
        best_params = -1
        for group in node.groups:
            sim, params = _similarity(group.template, tokens)
            if sim > best_sim or (sim == best_sim and params > best_params):
                best, best_sim, best_params = group, sim, params
        if best is None or best_sim < cfg.similarity_threshold:
            group = _Group(list(tokens), idx)
            node.groups.append(group)
            all_groups.append(group)
        else:
            group = best
            group.members.append(idx)
            for i, tok in enumerate(tokens):
                if group.template[i] != tok:
                    group.template[i] = WILDCARD
            # Two groups can converge to one template after wildcarding; merge
            # so a leaf never holds duplicate templates.
            survivors = []
            for g in node.groups:
                if g is not group and g.template == group.template:
                    group.members.extend(g.members)
                    g.members.clear()
                else:
                    survivors.append(g)
            node.groups = survivors
    for group in all_groups:
        template = " ".join(group.template)
        for idx in group.members:
            results[idx] = template
    return results  # type: ignore[return-value]


def _parse_tokenfreq(ds: Dataset, cfg: TokenFrequencyParserConfig) -> ParseResult:
    token_lists = [rec.content.split() for rec in ds.records]
    class_sizes: Counter[int] = Counter(len(toks) for toks in token_lists)
    freq: dict[tuple[int, int, str], int] = defaultdict(int)
    for toks in token_lists:
        n = len(toks)
        for pos, tok in enumerate(toks):
            freq[(n, pos, tok)] += 1
    results: list[str] = []
    for toks in token_lists:
        n = len(toks)
        kept = [
            tok if freq[(n, pos, tok)] / class_sizes[n] >= cfg.threshold else WILDCARD
            for pos, tok in enumerate(toks)
        ]
        results.append(" ".join(kept))
    return results


def identity_parser(ds: Dataset) -> ParseResult:
    """Return each record's stored ground truth."""
    missing = [r.line_id for r in ds.records if r.ground_truth is None]
    if missing:
        raise LabelingError(
            f"dataset {ds.name!r} has unlabeled records", missing
        )
    return [canonicalize_template(r.ground_truth) for r in ds.records]  # type: ignore[arg-type]


def parse(ds: Dataset, cfg: ParserConfig) -> ParseResult:
    """One canonical template per record, index-aligned with the dataset."""
    if not ds.records:
        raise EmptyDatasetError(f"dataset {ds.name!r} is empty")
    if isinstance(cfg, TreeParserConfig):
        return _parse_tree(ds, cfg)
    if isinstance(cfg, TokenFrequencyParserConfig):
        return _parse_tokenfreq(ds, cfg)
    if isinstance(cfg, IdentityParserConfig):
        return identity_parser(ds)
    raise TypeError(f"unknown parser config: {cfg!r}")


def write_parse_result(result: ParseResult, path: str | Path) -> None:
    """Write the two-column integration format: LineId,EventTemplate."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["LineId", "EventTemplate"])
        for i, template in enumerate(result, start=1):
            writer.writerow([str(i), template])


def read_parse_result(path: str | Path, expected_len: int | None = None) -> ParseResult:
    """Read a parser-output file; how external parsers plug into the harness."""
    path = Path(path)
    rows: list[tuple[int, str]] = []
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f, strict=True)
        try:
            header = next(reader, None)
            if header is None or "EventTemplate" not in header:
                raise DataFormatError(f"{path}: missing column 'EventTemplate'")
            cols = {col: idx for idx, col in enumerate(header)}
            template_idx = cols["EventTemplate"]
            line_idx = cols.get("LineId")
            for row in reader:
                if not row:
                    continue
                line_id = int(row[line_idx]) if line_idx is not None else len(rows) + 1
                rows.append((line_id, canonicalize_template(row[template_idx])))
        except csv.Error as exc:
            raise DataFormatError(f"{path}: row {reader.line_num}: {exc}") from exc
        except ValueError as exc:
            raise DataFormatError(f"{path}: non-integer LineId: {exc}") from exc
    rows.sort(key=lambda r: r[0])
    ids = [line_id for line_id, _ in rows]
    if ids != list(range(1, len(ids) + 1)):
        raise DataFormatError(
            f"{path}: LineId values must be contiguous from 1 "
            f"(duplicates or gaps break index alignment)"
        )
    result = [template for _, template in rows]
    if expected_len is not None and len(result) != expected_len:
        raise ShapeError(
            f"{path}: {len(result)} templates for {expected_len} records"
        )
    return result
