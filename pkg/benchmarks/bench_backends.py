"""Time the compiled core against the pure-Python fallback.

    python3 benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import math
import time

from gammaseq import _backend
from gammaseq.series import KINDS

CASES = {
    "partial_sum g, 1e5 terms": lambda b: b.partial_sum(KINDS["g"], 2.5, 1, 100_001),
    "partial_sum trigamma, 1e5 terms": lambda b: b.partial_sum(KINDS["trigamma"], 2.5, 0, 100_000),
    "harmonic_table 1e5": lambda b: b.harmonic_table(100_000),
    "scan_na a=1e6": lambda b: b.scan_na(math.log(1e6), 10**8),
    "lgamma_asym x2000": lambda b: [b.lgamma_asym(0.1 + k, 40.0) for k in range(2000)],
    "trigamma_excess_asym x2000": lambda b: [b.trigamma_excess_asym(0.1 + k, 40.0) for k in range(2000)],
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    names = _backend.available()
    if "cython" not in names:
        print("compiled core not built; timing the Python fallback only")
    print(f"{'case':34s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in CASES.items():
        ts = [best_of(lambda: fn(_backend.get(n)), args.repeat) for n in names]
        line = f"{label:34s}" + "".join(f"{t * 1e3:10.3f}ms" for t in ts)
        if len(ts) > 1:
            line += f"{ts[names.index('python')] / ts[names.index('cython')]:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
