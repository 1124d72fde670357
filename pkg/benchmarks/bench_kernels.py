"""Time the compiled and pure-Python enumeration kernels on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends must return identical counts; the script exits 1 otherwise.
"""

import argparse
import sys
import time

from homix.graph import make_cycle, make_path, tensor_product
from homix.homsearch import enumerate_homs
from homix.kernels import available_backends

WORKLOADS = [
    ("P6 -> C4", lambda: (make_path(6), make_cycle(4))),
    ("C8 -> C5", lambda: (make_cycle(8), make_cycle(5))),
    ("C12 -> C4", lambda: (make_cycle(12), make_cycle(4))),
    ("P1xC4 -> C4", lambda: (tensor_product(make_path(1), make_cycle(4)), make_cycle(4))),
    ("C8 -> C8", lambda: (make_cycle(8), make_cycle(8))),
]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'workload':<14}{'count':>10}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    bad = False
    for name, make in WORKLOADS:
        G, H = make()
        times, counts = [], []
        for b in backends:
            t, hs = best_of(lambda: enumerate_homs(G, H, count_only=True, backend=b, node_budget=10**9, max_maps=10**9), args.repeat)
            times.append(t)
            counts.append(hs.count)
        bad |= len(set(counts)) != 1
        row = f"{name:<14}{counts[0]:>10}" + "".join(f"{t * 1e3:>10.1f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)
    if bad:
        print("count mismatch between backends")
        sys.exit(1)


if __name__ == "__main__":
    main()
