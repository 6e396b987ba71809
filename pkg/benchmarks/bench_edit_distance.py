"""Benchmark the njit and pure-numpy Levenshtein kernels side by side.

Workload mirrors real evaluation: pairs of template-like strings (mixed
literal tokens and short alphanumeric values) at benchmark scale, 2000 pairs
per round. Run directly:

    python benchmarks/bench_edit_distance.py [--pairs 2000] [--rounds 5]
"""

from __future__ import annotations

import argparse
import random
import string
import time

from logblend._kernels import HAS_NUMBA, levenshtein

WORDS = [
    "worker", "session", "cache", "request", "timeout", "error", "node",
    "started", "closed", "failed", "retry", "flush", "commit", "replica",
]


def template_like(rng: random.Random, length: int) -> str:
    parts = []
    while sum(len(p) + 1 for p in parts) < length:
        if rng.random() < 0.3:
            parts.append(
                "".join(rng.choices(string.ascii_lowercase + string.digits, k=rng.randint(2, 12)))
            )
        else:
            parts.append(rng.choice(WORDS))
    return " ".join(parts)


def make_pairs(n: int, seed: int = 0) -> list[tuple[str, str]]:
    rng = random.Random(seed)
    pairs = []
    for _ in range(n):
        a = template_like(rng, rng.randint(20, 160))
        # Half the pairs are near-identical, like a decent parser's output.
        if rng.random() < 0.5:
            b = a[: max(1, len(a) - rng.randint(0, 8))]
        else:
            b = template_like(rng, rng.randint(20, 160))
        pairs.append((a, b))
    return pairs


def run(pairs: list[tuple[str, str]], use_numba: bool, rounds: int) -> tuple[float, int]:
    best = float("inf")
    checksum = 0
    for _ in range(rounds):
        start = time.perf_counter()
        checksum = 0
        for a, b in pairs:
            checksum += levenshtein(a, b, use_numba=use_numba)
        best = min(best, time.perf_counter() - start)
    return best, checksum


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=2000)
    ap.add_argument("--rounds", type=int, default=5)
    args = ap.parse_args()

    pairs = make_pairs(args.pairs)
    print(f"{args.pairs} template pairs, best of {args.rounds} rounds")

    numpy_time, numpy_sum = run(pairs, use_numba=False, rounds=args.rounds)
    print(f"numpy : {numpy_time * 1e3:8.1f} ms  ({args.pairs / numpy_time:,.0f} pairs/s)")

    if HAS_NUMBA:
        run(pairs[:10], use_numba=True, rounds=1)  # JIT warmup
        numba_time, numba_sum = run(pairs, use_numba=True, rounds=args.rounds)
        assert numba_sum == numpy_sum, "kernel paths disagree"
        print(f"numba : {numba_time * 1e3:8.1f} ms  ({args.pairs / numba_time:,.0f} pairs/s)")
        print(f"speedup: {numpy_time / numba_time:.1f}x")
    else:
        print("numba : not installed")


if __name__ == "__main__":
    main()
