"""Time the pure-Python scalar kernel against the compiled one.

Runs each workload in a fresh interpreter with KKMFIX_KERNEL pinned, so
both kernels execute identical code paths; reports the best wall time of
the requested repeats and the speedup.  Usage:

    python3 benchmarks/bench_kernel.py [--repeat N] [--scale N]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

WORKLOADS = ("arithmetic", "search")


def _workload_arithmetic(scale: int) -> int:
    import random

    from kkmfix import QuadExt, dist

    rng = random.Random(0)
    values = [
        QuadExt(rng.randint(-50, 50), rng.randint(-50, 50)) for _ in range(64)
    ]
    acc = 0
    for i in range(scale):
        a = values[i % 64]
        b = values[(i * 7 + 3) % 64]
        c = a * b + a - b
        if b != 0:
            c = c / b
        acc += (c < a) + (dist(a, b) > 1)
    return acc


def _workload_search(scale: int) -> int:
    from kkmfix import BKind, SearchStrategy, falsify_b
    from kkmfix.verdict import corpus_entry

    spec = corpus_entry(9).spec
    strategy = SearchStrategy(max_subsets=scale)
    verdict = falsify_b(BKind.RESIDUAL, spec, strategy)
    return verdict.search_stats.subsets_checked


def _run_worker(name: str, scale: int) -> None:
    from kkmfix import KERNEL

    fn = {"arithmetic": _workload_arithmetic, "search": _workload_search}[name]
    start = time.perf_counter()
    checksum = fn(scale)
    elapsed = time.perf_counter() - start
    print(json.dumps({"kernel": KERNEL, "seconds": elapsed, "checksum": checksum}))


def _time_kernel(kernel: str, workload: str, scale: int, repeat: int) -> dict | None:
    env = dict(os.environ, KKMFIX_KERNEL=kernel)
    env.setdefault("PYTHONPATH", "")
    env["PYTHONPATH"] = os.pathsep.join(
        p for p in [env["PYTHONPATH"], *sys.path] if p
    )
    best = None
    for _ in range(repeat):
        proc = subprocess.run(
            [sys.executable, __file__, "--worker", workload, "--scale", str(scale)],
            capture_output=True,
            text=True,
            env=env,
        )
        if proc.returncode != 0:
            print(proc.stderr.strip(), file=sys.stderr)
            return None
        result = json.loads(proc.stdout)
        if best is None or result["seconds"] < best["seconds"]:
            best = result
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="runs per cell")
    parser.add_argument(
        "--scale", type=int, default=None, help="iterations (workload-specific)"
    )
    parser.add_argument("--worker", choices=WORKLOADS, help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        _run_worker(args.worker, args.scale)
        return 0

    scales = {"arithmetic": args.scale or 100_000, "search": args.scale or 2000}
    print(f"{'workload':<14}{'pure':>10}{'compiled':>12}{'speedup':>10}")
    for workload in WORKLOADS:
        cells = {}
        for kernel in ("pure", "compiled"):
            result = _time_kernel(kernel, workload, scales[workload], args.repeat)
            if result is None:
                return 1
            cells[kernel] = result
        if cells["compiled"]["kernel"] != "compiled":
            print(
                f"{workload:<14}{cells['pure']['seconds']:>9.2f}s"
                f"{'(unavailable)':>12}{'-':>10}"
            )
            continue
        if cells["pure"]["checksum"] != cells["compiled"]["checksum"]:
            print(f"{workload}: kernels disagree", file=sys.stderr)
            return 1
        speedup = cells["pure"]["seconds"] / cells["compiled"]["seconds"]
        print(
            f"{workload:<14}{cells['pure']['seconds']:>9.2f}s"
            f"{cells['compiled']['seconds']:>11.2f}s{speedup:>9.1f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
