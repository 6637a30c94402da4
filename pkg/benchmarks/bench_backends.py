"""Compare the numba and numpy pulse-kernel backends.

Runs the same two workloads under each backend in a child interpreter
(the backend is chosen at import time from IONCHAIN_BACKEND):

1. repeated ideal runs of the six-ion program (pulse kernels dominate);
2. a Monte Carlo jitter sweep, the hot path the numba kernels exist for.

Usage:
    python benchmarks/bench_backends.py [--repeats 300] [--trials 500]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def worker(repeats: int, trials: int) -> dict:
    import ionchain as ic

    seq = ic.cluster6_sequence()

    # Warm up: first call pays any jit compilation.
    ic.run(seq, n_max=2)

    start = time.perf_counter()
    for _ in range(repeats):
        ic.run(seq, n_max=2)
    ideal_seconds = time.perf_counter() - start

    cfg = ic.NoiseConfig(jitter_sigma=0.02, trials=trials, seed=1)
    ic.monte_carlo(seq, ic.NoiseConfig(jitter_sigma=0.02, trials=5, seed=1), n_max=4)
    start = time.perf_counter()
    result = ic.monte_carlo(seq, cfg, n_max=4)
    mc_seconds = time.perf_counter() - start

    return {
        "backend": ic.BACKEND,
        "ideal_seconds": ideal_seconds,
        "ideal_runs": repeats,
        "mc_seconds": mc_seconds,
        "mc_trials": trials,
        "mc_mean_fidelity": result.mean_fidelity,
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=300)
    parser.add_argument("--trials", type=int, default=500)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        print(json.dumps(worker(args.repeats, args.trials)))
        return

    results = []
    for backend in ("numba", "numpy"):
        env = dict(os.environ, IONCHAIN_BACKEND=backend)
        out = subprocess.run(
            [sys.executable, __file__, "--worker",
             "--repeats", str(args.repeats), "--trials", str(args.trials)],
            env=env, capture_output=True, text=True, check=True,
        )
        results.append(json.loads(out.stdout.splitlines()[-1]))

    numba_res, numpy_res = results
    if numba_res["mc_mean_fidelity"] != numpy_res["mc_mean_fidelity"]:
        print("warning: backends disagree on the Monte Carlo mean", file=sys.stderr)

    steps = 11
    print(f"{'workload':<34}{'numba':>12}{'numpy':>12}{'speedup':>10}")
    print("-" * 68)
    ideal_nb = numba_res["ideal_seconds"] / args.repeats * 1e6
    ideal_np = numpy_res["ideal_seconds"] / args.repeats * 1e6
    print(
        f"{'ideal run (us/run, 11 pulses)':<34}{ideal_nb:>12.1f}{ideal_np:>12.1f}"
        f"{ideal_np / ideal_nb:>9.2f}x"
    )
    pulse_nb = ideal_nb / steps
    pulse_np = ideal_np / steps
    print(
        f"{'single pulse (us/pulse)':<34}{pulse_nb:>12.2f}{pulse_np:>12.2f}"
        f"{pulse_np / pulse_nb:>9.2f}x"
    )
    mc_nb = numba_res["mc_seconds"]
    mc_np = numpy_res["mc_seconds"]
    print(
        f"{f'monte carlo ({args.trials} trials, s)':<34}{mc_nb:>12.3f}{mc_np:>12.3f}"
        f"{mc_np / mc_nb:>9.2f}x"
    )


if __name__ == "__main__":
    main()
