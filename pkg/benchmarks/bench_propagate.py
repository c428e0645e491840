"""Time the compiled and NumPy Crank-Nicolson steppers on the wavepacket problem.

    python benchmarks/bench_propagate.py [--repeat 3]
"""

import argparse
import math
import time

import numpy as np

from crwscatter import LorentzianCavityParams, WaveguideParams, propagate
from crwscatter.oracle import WavepacketSpec, discretize_modes

CASES = [
    # (lattice sites, reservoir modes, steps)
    (600, 2000, 1200),
    (2000, 2000, 1200),
    (600, 8000, 1200),
    (4000, 16000, 600),
]


def run_case(backend, sites, modes, steps, repeat):
    wg = WaveguideParams(10.0, 4.0)
    disc = discretize_modes(LorentzianCavityParams(10.0, 8.0, 1.0), modes)
    packet = WavepacketSpec(math.pi / 2, 15, -90)
    lattice = np.arange(sites) - sites // 2
    stepper = propagate.get_stepper(backend)
    best = math.inf
    for _ in range(repeat):
        alpha = packet.amplitudes(lattice.astype(float)).astype(np.complex128)
        beta = np.zeros(modes, dtype=np.complex128)
        start = time.perf_counter()
        stepper(alpha, beta, wg.omega, wg.hopping, disc.frequencies, disc.couplings, sites // 2, 0.02, steps)
        best = min(best, time.perf_counter() - start)
    return best, np.concatenate([alpha, beta])


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    print(f"available backends: {', '.join(propagate.AVAILABLE)}; default: {propagate.BACKEND}")
    print(f"{'sites':>6} {'modes':>6} {'steps':>6} " + " ".join(f"{b + ' [s]':>14}" for b in propagate.AVAILABLE)
          + f" {'speedup':>8} {'max |diff|':>11}")
    for sites, modes, steps in CASES:
        results = {b: run_case(b, sites, modes, steps, args.repeat) for b in propagate.AVAILABLE}
        times = " ".join(f"{results[b][0]:14.4f}" for b in propagate.AVAILABLE)
        if len(results) == 2:
            speedup = results["python"][0] / results["compiled"][0]
            diff = np.max(np.abs(results["python"][1] - results["compiled"][1]))
            extra = f" {speedup:8.1f} {diff:11.1e}"
        else:
            extra = ""
        print(f"{sites:6d} {modes:6d} {steps:6d} {times}{extra}")


if __name__ == "__main__":
    main()
