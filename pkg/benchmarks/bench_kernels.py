"""Timing comparison of the compiled and pure-Python kernel lanes.

Run without arguments to benchmark both lanes (the numpy lane runs in a
subprocess with INFODECOMP_NO_NUMBA=1 so the import-time lane choice can
differ); pass --lane-only to time just the current process's lane.

Usage: python benchmarks/bench_kernels.py [--repeats N] [--lane-only]
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def make_cases():
    from infodecomp import _kernels

    rng = np.random.default_rng(0)
    j2 = rng.dirichlet(np.ones(64 * 64)).reshape(64, 64)
    j3 = rng.dirichlet(np.ones(8)).reshape(2, 2, 2)
    j3_big = rng.dirichlet(np.ones(16 * 16 * 8)).reshape(16, 16, 8)
    v = rng.normal(size=256)

    # optimizer cases are kept deliberately small: the uncompiled lane runs
    # the same loop nests in the interpreter and would otherwise take minutes
    def wyner():
        from infodecomp.common_info import wyner_common_information
        from infodecomp.core_prob import JointPMF
        pair = j2[:2, :2] / j2[:2, :2].sum()
        wyner_common_information(JointPMF.from_array(pair), restarts=1,
                                 iters_per_stage=10, seed=0)

    def intrinsic():
        from infodecomp.core_prob import JointPMF
        from infodecomp.secrecy_opt import intrinsic_information
        intrinsic_information(JointPMF.from_array(j3), restarts=1,
                              max_iters=40, seed=0)

    def intrinsic_oracle():
        from infodecomp.core_prob import JointPMF
        from infodecomp.secrecy_opt import intrinsic_grid_oracle
        intrinsic_grid_oracle(JointPMF.from_array(j3), resolution=0.05)

    return [
        ("entropy_bits 16x16x8", lambda: _kernels.entropy_bits(j3_big)),
        ("mi_bits 64x64", lambda: _kernels.mi_bits(j2)),
        ("cmi_bits 16x16x8", lambda: _kernels.cmi_bits(j3_big)),
        ("simplex_project 256", lambda: _kernels._project_simplex_row(v)),
        ("wyner_descent 2x2 r1", wyner),
        ("intrinsic_descent 2x2x2 r1", intrinsic),
        ("intrinsic_grid_oracle res0.05", intrinsic_oracle),
    ]


def time_case(fn, repeats):
    fn()  # warm-up / jit compile
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_lane(repeats):
    from infodecomp import _kernels

    lane = "numba" if _kernels.USE_NUMBA else "numpy"
    return lane, {name: time_case(fn, repeats) for name, fn in make_cases()}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--lane-only", action="store_true")
    args = ap.parse_args()

    lane, times = run_lane(args.repeats)
    if args.lane_only:
        print(json.dumps({"lane": lane, "times": times}))
        return

    env = dict(os.environ, INFODECOMP_NO_NUMBA="1")
    proc = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--lane-only",
         "--repeats", str(args.repeats)],
        env=env, capture_output=True, text=True, check=True)
    other = json.loads(proc.stdout)
    numpy_times = other["times"] if other["lane"] == "numpy" else times
    numba_times = times if lane == "numba" else other["times"]

    width = max(len(n) for n, _ in make_cases())
    print(f"{'kernel':<{width}}  {'numpy (s)':>12}  {'numba (s)':>12}  speedup")
    for name, _ in make_cases():
        tn, tb = numpy_times[name], numba_times[name]
        print(f"{name:<{width}}  {tn:>12.6f}  {tb:>12.6f}  {tn / tb:>6.1f}x")


if __name__ == "__main__":
    main()
