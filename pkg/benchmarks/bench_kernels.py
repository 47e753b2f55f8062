"""Timing of the crossing kernel: compiled extension against the Python reference.

Usage: ``python3 benchmarks/bench_kernels.py [--repeat N] [--quartics K]``.
The inputs are the face samples of the line-vertex arrangement of the worked
example and of ``K`` random quartics, exactly as the class sweep feeds them.
"""

import argparse
import random
import time
from importlib.resources import files

from tropbt import _kernel_py, kernel
from tropbt.arrangement import build_arrangement
from tropbt.classes import CurveIndex, critical_lines, sweep
from tropbt.newton import dual_curve
from tropbt.quartic import parse_spec
from tropbt.sampling import sample_generic


def workload(curve):
    index = CurveIndex(curve)
    arr = build_arrangement(critical_lines(curve))
    pts = [index.homogeneous(arr.cells[f].sample) for f in arr.of_dim(2)]
    return index.int_pieces, index.prims, pts


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--quartics", type=int, default=3)
    args = ap.parse_args()
    curves = [dual_curve(parse_spec((files("tropbt") / "data" / "worked_example.q").read_text(encoding="utf-8")))]
    rng = random.Random(1)
    curves += [sample_generic(rng).curve for _ in range(args.quartics)]
    print(f"kernel backend at import: {kernel.BACKEND}")
    print(f"{'curve':>5} {'faces':>6} {'python ms':>10} {'compiled ms':>12} {'speedup':>8} {'sweep ms':>9}")
    for k, curve in enumerate(curves):
        pieces, prims, pts = workload(curve)
        py = best_of(lambda: _kernel_py.crossings(pieces, prims, pts), args.repeat)
        if kernel._compiled is not None:
            assert kernel._compiled.crossings(pieces, prims, pts) == _kernel_py.crossings(pieces, prims, pts)
            cc = best_of(lambda: kernel._compiled.crossings(pieces, prims, pts), args.repeat)
            ctext, speed = f"{cc * 1e3:12.2f}", f"{py / cc:8.1f}"
        else:
            ctext, speed = f"{'n/a':>12}", f"{'n/a':>8}"
        sw = best_of(lambda: sweep(curve), 1)
        print(f"{k:>5} {len(pts):>6} {py * 1e3:10.2f} {ctext} {speed} {sw * 1e3:9.1f}")


if __name__ == "__main__":
    main()
