"""Synthetic multi-source log corpora for tests.

Nine generated datasets stand in for the usual public 2K-line benchmark
sets: distinct vocabularies per source, skewed template frequencies with a
rare tail, and value pools that mix single-token values (ids, ips, paths)
with multi-token phrases (error descriptions), which is what makes fuzzed
data genuinely hard to parse.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from logblend.corpus import Dataset, LogRecord, substitute_variables
from logblend.pool import OutlierPool, VariablePool, build_outlier_pool, build_variable_pool

_ADJ = [
    "stale", "primary", "remote", "secondary", "invalid", "degraded",
    "active", "orphaned", "cold", "split", "readonly", "shadow",
    "pending", "foreign", "misplaced", "unbound", "frozen", "partial",
    "rotated", "inherited",
]
_NOUN = [
    "replica", "shard", "bucket", "channel", "segment", "lease",
    "cursor", "handle", "quota", "token", "snapshot", "mirror",
    "ledger", "manifest", "journal", "backlog", "fence", "epoch",
    "watermark", "heartbeat",
]
_VERB = [
    "exceeded", "rejected", "expired", "recovered", "detached",
    "throttled", "corrupted", "drained", "evicted", "fenced",
    "reconciled", "suspended", "escalated", "quarantined", "rewound",
    "truncated",
]


def phrases(rng: random.Random, n: int) -> list[str]:
    """Multi-token values, 2 or 3 words each."""
    out = set()
    while len(out) < n:
        words = [rng.choice(_ADJ), rng.choice(_NOUN)]
        if rng.random() < 0.6:
            words.append(rng.choice(_VERB))
        out.add(" ".join(words))
    return sorted(out)


def hexids(rng: random.Random, n: int, width: int = 8) -> list[str]:
    out = set()
    while len(out) < n:
        out.add("".join(rng.choice("0123456789abcdef") for _ in range(width)))
    return sorted(out)


def ips(rng: random.Random, n: int) -> list[str]:
    out = set()
    while len(out) < n:
        out.add(".".join(str(rng.randint(1, 254)) for _ in range(4)))
    return sorted(out)


def ints(lo: int, hi: int) -> list[str]:
    return [str(i) for i in range(lo, hi + 1)]


def paths(rng: random.Random, n: int) -> list[str]:
    dirs = ["var", "srv", "data", "tmp", "opt", "cache"]
    out = set()
    while len(out) < n:
        out.add(
            "/" + rng.choice(dirs) + "/" + rng.choice(_NOUN) + str(rng.randint(0, 99))
        )
    return sorted(out)


def names(rng: random.Random, n: int, prefix: str) -> list[str]:
    return [f"{prefix}_{i:03d}" for i in range(n)]


@dataclass(frozen=True)
class TemplateSpec:
    template: str
    weight: float
    slots: tuple[tuple[str, ...], ...]


def _spec(template: str, weight: float, *slots: list[str]) -> TemplateSpec:
    assert template.count("<*>") == len(slots)
    return TemplateSpec(template, weight, tuple(tuple(s) for s in slots))


def build_dataset(name: str, n: int, seed: int, specs: list[TemplateSpec]) -> Dataset:
    """Sample n lines from weighted templates, filling slots from their pools.

    Every template gets at least two lines and every slot sees at least two
    distinct values (cycled on the first occurrences), so a competent parser
    can converge on every template.
    """
    rng = random.Random(seed)
    total_w = sum(s.weight for s in specs)
    counts = [max(2, round(s.weight / total_w * n)) for s in specs]
    while sum(counts) > n:
        counts[counts.index(max(counts))] -= 1
    while sum(counts) < n:
        counts[counts.index(max(counts))] += 1
    line_specs: list[TemplateSpec] = []
    for spec, count in zip(specs, counts):
        line_specs.extend([spec] * count)
    rng.shuffle(line_specs)

    seen_per_spec: dict[str, int] = {}
    records: list[LogRecord] = []
    for i, spec in enumerate(line_specs):
        occurrence = seen_per_spec.get(spec.template, 0)
        seen_per_spec[spec.template] = occurrence + 1
        values = []
        for slot in spec.slots:
            if occurrence < 2:
                values.append(slot[occurrence % len(slot)])
            else:
                values.append(rng.choice(slot))
        content = substitute_variables(spec.template, values)
        records.append(
            LogRecord(
                line_id=i + 1, content=content, ground_truth=spec.template, source=name
            )
        )
    return Dataset(name=name, records=records)


def apacheish_specs() -> list[TemplateSpec]:
    """Six templates, two slots each, heavily skewed like a single-service log.

    Frequent templates draw from small value pools so replacing their lines
    rarely removes unique words; the rare tail carries diverse values.
    """
    rng = random.Random(101)
    return [
        _spec(
            "child worker <*> registered in slot <*>", 0.38,
            ints(0, 15), ints(0, 9),
        ),
        _spec(
            "connection from <*> closed after <*> ms", 0.24,
            ips(rng, 12), ints(1, 40),
        ),
        _spec(
            "cache segment <*> flushed in <*> ms", 0.16,
            ints(0, 31), ints(1, 25),
        ),
        _spec(
            "config profile <*> reloaded from <*>", 0.12,
            names(rng, 6, "profile"), paths(rng, 8),
        ),
        _spec(
            "request <*> rejected by rule <*>", 0.06,
            hexids(rng, 60), ints(1, 12),
        ),
        _spec(
            "scheduler job <*> finished with status <*>", 0.04,
            names(rng, 70, "job"), phrases(rng, 120),
        ),
    ]


def _source_specs() -> dict[str, list[TemplateSpec]]:
    rng = random.Random(202)
    return {
        "apacheish": apacheish_specs(),
        "dbsvc": [
            _spec("query on table <*> finished in <*> ms", 0.4,
                  names(rng, 24, "tbl"), ints(1, 30)),
            _spec("transaction <*> committed at offset <*>", 0.3,
                  hexids(rng, 40), phrases(rng, 300)),
            _spec("vacuum of table <*> reclaimed <*> pages", 0.2,
                  names(rng, 24, "tbl"), ints(1, 30)),
            _spec("replication lag on <*> is <*>", 0.07,
                  names(rng, 20, "node"), phrases(rng, 300)),
            _spec("deadlock detected between <*> and <*>", 0.03,
                  hexids(rng, 40, 6), phrases(rng, 300)),
        ],
        "authsvc": [
            _spec("login for user <*> from <*> succeeded", 0.45,
                  names(rng, 30, "user"), ips(rng, 25)),
            _spec("session <*> expired after <*> minutes", 0.3,
                  hexids(rng, 40, 12), ints(5, 35)),
            _spec("password change for <*> denied because <*>", 0.15,
                  names(rng, 30, "user"), phrases(rng, 320)),
            _spec("token refresh for <*> returned <*>", 0.07,
                  names(rng, 30, "user"), phrases(rng, 320)),
            _spec("lockout triggered for <*> on host <*>", 0.03,
                  names(rng, 30, "user"), phrases(rng, 280)),
        ],
        "netmon": [
            _spec("interface <*> link state changed to <*>", 0.4,
                  names(rng, 16, "eth"), phrases(rng, 300)),
            _spec("packet loss on <*> reached <*> percent", 0.3,
                  names(rng, 16, "eth"), ints(1, 30)),
            _spec("neighbor <*> advertised route <*>", 0.2,
                  ips(rng, 25), phrases(rng, 300)),
            _spec("arp cache entry <*> for <*> evicted", 0.07,
                  hexids(rng, 50, 12), ips(rng, 25)),
            _spec("probe to <*> timed out after <*> ms", 0.03,
                  ips(rng, 25), ints(100, 130)),
        ],
        "queue": [
            _spec("consumer <*> polled <*> messages", 0.45,
                  names(rng, 20, "cons"), ints(0, 30)),
            _spec("partition <*> rebalanced to broker <*>", 0.25,
                  ints(0, 40), ints(1, 9)),
            _spec("offset commit for <*> failed because <*>", 0.17,
                  names(rng, 20, "cons"), phrases(rng, 340)),
            _spec("topic <*> retention moved to <*> hours", 0.1,
                  names(rng, 25, "topic"), ints(1, 48)),
            _spec("dead letter from <*> carrying <*>", 0.03,
                  names(rng, 25, "topic"), phrases(rng, 340)),
        ],
        "storage": [
            _spec("volume <*> usage at <*> percent", 0.45,
                  names(rng, 16, "vol"), ints(1, 100)),
            _spec("scrub of <*> repaired <*> blocks", 0.25,
                  names(rng, 16, "vol"), ints(0, 30)),
            _spec("snapshot <*> created under <*>", 0.15,
                  hexids(rng, 40, 10), paths(rng, 30)),
            _spec("tier migration of <*> is <*>", 0.1,
                  paths(rng, 30), phrases(rng, 320)),
            _spec("disk <*> reported smart warning <*>", 0.05,
                  names(rng, 20, "sd"), phrases(rng, 320)),
        ],
        "webapp": [
            _spec("GET <*> served in <*> ms", 0.5,
                  paths(rng, 35), ints(1, 45)),
            _spec("upstream <*> returned status <*>", 0.25,
                  names(rng, 12, "backend"), ints(200, 230)),
            _spec("rate limit for client <*> now <*>", 0.15,
                  ips(rng, 25), phrases(rng, 340)),
            _spec("render of view <*> used <*> queries", 0.07,
                  names(rng, 30, "view"), ints(1, 40)),
            _spec("websocket <*> closed with reason <*>", 0.03,
                  hexids(rng, 40, 10), phrases(rng, 340)),
        ],
        "sensor": [
            _spec("reading from probe <*> is <*> celsius", 0.5,
                  names(rng, 24, "probe"), ints(-20, 10)),
            _spec("calibration of <*> drifted by <*>", 0.25,
                  names(rng, 24, "probe"), phrases(rng, 320)),
            _spec("battery on node <*> at <*> percent", 0.15,
                  ints(100, 125), ints(1, 100)),
            _spec("radio sync with <*> lost near <*>", 0.07,
                  hexids(rng, 40, 6), phrases(rng, 300)),
            _spec("firmware on <*> updated to <*>", 0.03,
                  names(rng, 24, "probe"), phrases(rng, 300)),
        ],
        "batchjob": [
            _spec("stage <*> of pipeline <*> completed", 0.45,
                  ints(1, 12), names(rng, 24, "pipe")),
            _spec("retrying task <*> attempt <*>", 0.25,
                  hexids(rng, 40, 10), ints(1, 8)),
            _spec("input split <*> skipped because <*>", 0.15,
                  paths(rng, 30), phrases(rng, 360)),
            _spec("checkpoint for <*> stored at <*>", 0.1,
                  names(rng, 24, "pipe"), paths(rng, 30)),
            _spec("executor <*> lost with <*>", 0.05,
                  ints(1, 40), phrases(rng, 360)),
        ],
    }


@lru_cache(maxsize=None)
def source_datasets(n: int = 2000) -> tuple[Dataset, ...]:
    """The nine synthetic source datasets, 2K lines each by default."""
    specs = _source_specs()
    return tuple(
        build_dataset(name, n, seed=300 + i, specs=spec_list)
        for i, (name, spec_list) in enumerate(specs.items())
    )


@lru_cache(maxsize=None)
def apacheish(n: int = 2000) -> Dataset:
    return source_datasets(n)[0]


@lru_cache(maxsize=None)
def standard_pools(n: int = 2000) -> tuple[OutlierPool, VariablePool]:
    datasets = list(source_datasets(n))
    return (
        build_outlier_pool(datasets, outlier_fraction=0.05),
        build_variable_pool(datasets),
    )


def small_labeled_dataset(name: str = "tiny") -> Dataset:
    records = [
        LogRecord(1, "child worker 3 registered in slot 7",
                  "child worker <*> registered in slot <*>", name),
        LogRecord(2, "child worker 5 registered in slot 2",
                  "child worker <*> registered in slot <*>", name),
        LogRecord(3, "cache segment 9 flushed in 12 ms",
                  "cache segment <*> flushed in <*> ms", name),
        LogRecord(4, "scheduler heartbeat ok", "scheduler heartbeat ok", name),
    ]
    return Dataset(name=name, records=records)
