"""Compare the compiled and pure-Python kernels on the package's hot loops.

    python benchmarks/bench_kernels.py [--repeat 5]

Workloads: the non-shrinking fuzz (interval images along random words),
a long exact point orbit, and a full witness construction. The witness
workload runs in a subprocess per backend since the backend is fixed at
import time.
"""

import argparse
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from skewspec import _pykernel
from skewspec.pwl import tent, valley, zigzag3

try:
    from skewspec import _ckernel
except ImportError:
    _ckernel = None


def fuzz_workload(k, trials=2000, length=200, seed=1):
    tabs = [None, tent().table, valley().table]
    rng = random.Random(seed)
    out = None
    for _ in range(trials):
        word = [rng.randint(1, 2) for _ in range(length)]
        lo = rng.randint(0, 2048)
        out = k.min_chain_length(tabs, word, lo, 4096, lo + 2048, 4096)
    return out


def orbit_workload(k, length=3000, seed=2):
    tabs = [None, tent().table, zigzag3().table]
    rng = random.Random(seed)
    word = [rng.randint(1, 2) for _ in range(length)]
    return k.orbit_trace(tabs, word, 1, 7)[-1]


WITNESS_SNIPPET = """
import time
from fractions import Fraction as F
from skewspec import BACKEND, Sft, SkewSystem, SkewPoint, OrbitSegmentSpec, BasePoint, tent, valley, witness
sys_ = SkewSystem(Sft.golden_mean(), (tent(), valley()))
segs = [OrbitSegmentSpec(SkewPoint(BasePoint.parse(b), F(x)), n)
        for b, x, n in [("1", "1/3", 8), ("12", "2/7", 8), ("1|12", "5/9", 8), ("121", "1/5", 8)]]
t = time.perf_counter()
for _ in range(REPEAT):
    witness(sys_, segs, F(1, 8))
print(BACKEND, (time.perf_counter() - t) / REPEAT)
"""


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", _pykernel)] + ([("cython", _ckernel)] if _ckernel else [])
    if _ckernel is None:
        print("compiled kernel not built; only the fallback is timed")

    print(f"{'workload':<22}{'backend':<10}{'seconds':>10}{'speedup':>10}")
    for name, fn in [("fuzz 2000x200", fuzz_workload), ("orbit 3000 steps", orbit_workload)]:
        results = {b: fn(k) for b, k in backends}
        assert len(set(results.values())) == 1, f"backends disagree on {name}"
        base = None
        for b, k in backends:
            t = best_of(lambda: fn(k), args.repeat)
            base = base or t
            print(f"{name:<22}{b:<10}{t:>10.4f}{base / t:>9.2f}x")

    base = None
    for b, _ in backends:
        env = dict(os.environ, SKEWSPEC_PURE_PYTHON="1" if b == "python" else "0")
        out = subprocess.run([sys.executable, "-c", WITNESS_SNIPPET.replace("REPEAT", str(args.repeat))],
                             env=env, capture_output=True, text=True, check=True).stdout.split()
        t = float(out[1])
        base = base or t
        print(f"{'witness k=4, eps=1/8':<22}{out[0]:<10}{t:>10.4f}{base / t:>9.2f}x")


if __name__ == "__main__":
    main()
