"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py --n-max 8

Times three workloads per backend: counting each family by running the
enumerator, building mode objects for BP_n, and tabulating the dynamics of
a random network under every mode of a sample.
"""

import argparse
import time

import numpy as np

from blockpar import available_backends
from blockpar.cli import bench_rows
from blockpar.dynamics import random_network, transition_graph
from blockpar.enumeration import ModeStream


def timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--dyn-n", type=int, default=10, help="automata in the dynamics workload")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    backends = available_backends()

    print("enumeration (count only), seconds")
    print(f"{'n':>3} " + " ".join(f"{c + ' ' + b:>16}" for b in backends for c in ("bp", "bp0", "bpstar")))
    for n, _, times in bench_rows(args.n_max, backends):
        print(f"{n:>3} " + " ".join(f"{t:>16.4f}" for b in backends for t in times[b]))

    print(f"\nbuilding BP_{args.n_max} mode objects, seconds")
    for b in backends:
        t = timed(lambda: sum(1 for _ in ModeStream(args.n_max, "bp", backend=b)))
        print(f"  {b:<8} {t:.3f}")

    rng = np.random.default_rng(args.seed)
    f = random_network([2] * args.dyn_n, rng)
    modes = list(ModeStream(args.dyn_n, "bpstar", limit=200))
    print(f"\ntransition graphs: {len(modes)} modes, 2^{args.dyn_n} configurations, seconds")
    for b in backends:
        t = timed(lambda: [transition_graph(f, mu, backend=b).limit for mu in modes])
        print(f"  {b:<8} {t:.3f}")


if __name__ == "__main__":
    main()
