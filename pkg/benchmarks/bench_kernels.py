"""Time the pure-Python and compiled drawing loops on the same workloads.

    python3 benchmarks/bench_kernels.py [--draws 200000] [--repeat 3]

Both backends consume the same generator stream, so the tallies are also
compared and any mismatch is reported.
"""

import argparse
import time

from popsample.stats import sample_biased_tuples, sample_indices, sample_tuples
from popsample.stats._backend import BACKENDS

WORKLOADS = [
    ("count discrete N=4 n=2", lambda k, b: sample_tuples("discrete", 4, 2, k, 1, backend=b).counts),
    ("count continuous N=4 n=2", lambda k, b: sample_tuples("continuous", 4, 2, k, 1, backend=b).counts),
    ("count continuous N=10 n=5", lambda k, b: sample_tuples("continuous", 10, 5, k, 1, backend=b).counts),
    ("count biased N=4 n=2", lambda k, b: sample_biased_tuples(4, 2, k, 1, backend=b).counts),
    ("stream discrete N=6 n=3", lambda k, b: sample_indices("discrete", 6, 3, k, 1, backend=b)),
]


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--draws", type=int, default=200000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if "compiled" not in BACKENDS:
        print("compiled backend not built; timing the pure backend only")
    names = [b for b in ("pure", "compiled") if b in BACKENDS]
    print(f"{'workload':28s}" + "".join(f"{b:>12s}" for b in names) + f"{'speedup':>10s}")
    for label, fn in WORKLOADS:
        times, outs = [], []
        for b in names:
            t, out = best_of(lambda: fn(args.draws, b), args.repeat)
            times.append(t)
            outs.append(out)
        row = f"{label:28s}" + "".join(f"{t:11.4f}s" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:9.1f}x"
            if outs[0] != outs[1]:
                row += "  MISMATCH"
        print(row)


if __name__ == "__main__":
    main()
