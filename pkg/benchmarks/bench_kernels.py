#!/usr/bin/env python3
"""Benchmark the pure-Python geometry kernels against the compiled twin.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import math
import random
import time


def _workloads(seed: int = 7):
    rng = random.Random(seed)

    def star(n, span):
        ring = []
        for i in range(n):
            a = 2 * math.pi * (i + rng.uniform(0, 0.9)) / n
            r = rng.uniform(1.0, span)
            ring.append((r * math.cos(a), r * math.sin(a)))
        return ring

    big_ring = star(400, 50.0)
    rings = [star(rng.randint(5, 12), 10.0) for _ in range(40)]
    probes = [(rng.uniform(-12, 12), rng.uniform(-12, 12)) for _ in range(4000)]
    segs = []
    for _ in range(900):
        x, y = rng.uniform(0, 100), rng.uniform(0, 100)
        segs.append((x, y, x + rng.uniform(-4, 4), y + rng.uniform(-4, 4)))
    seg_pairs = [tuple(rng.uniform(-5, 5) for _ in range(8)) for _ in range(30000)]
    planes = [
        (rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-20, 20)) for _ in range(8000)
    ]
    return {
        "signed_area(400-gon) x2000": lambda k: [k.signed_area(big_ring) for _ in range(2000)],
        "point_in_rings x4000": lambda k: [k.point_in_rings(x, y, rings) for x, y in probes],
        "segment_cuts(900 segs)": lambda k: k.segment_cuts(segs, 1e-9),
        "seg_seg_closest x30000": lambda k: [k.seg_seg_closest(*p) for p in seg_pairs],
        "clip_ring_halfplane x8000": lambda k: [
            k.clip_ring_halfplane(big_ring, a, b, c) for a, b, c in planes
        ],
    }


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    from shapegpt.geom import _kernels_py as pyk

    backends = [("python", pyk)]
    try:
        from shapegpt.geom import _kernels_c as cyk

        backends.append(("cython", cyk))
    except ImportError:
        print("compiled kernels not built (python setup.py build_ext --inplace); "
              "benchmarking the pure backend only")

    workloads = _workloads()
    times: dict[str, dict[str, float]] = {name: {} for name in workloads}
    for bname, mod in backends:
        for wname, fn in workloads.items():
            best = math.inf
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                fn(mod)
                best = min(best, time.perf_counter() - t0)
            times[wname][bname] = best

    width = max(len(w) for w in workloads)
    header = f"{'workload':<{width}}  {'python':>10}"
    if len(backends) > 1:
        header += f"  {'cython':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for wname in workloads:
        row = f"{wname:<{width}}  {times[wname]['python'] * 1e3:>8.2f}ms"
        if "cython" in times[wname]:
            cy = times[wname]["cython"]
            row += f"  {cy * 1e3:>8.2f}ms  {times[wname]['python'] / cy:>7.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
