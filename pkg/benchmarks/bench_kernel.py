"""Compare the compiled and pure-Python rewriting kernels.

    python3 benchmarks/bench_kernel.py [--n 3] [--words 300] [--length 7] [--repeat 3]

Each timed run starts from an empty cache so memoization does not hide the
kernel cost.  Results are also checked for equality.
"""
import argparse
import random
import time

from qbundle import _kernel, _rewrite_py


def run(cls, n, words):
    rw = cls(n)
    t0 = time.perf_counter()
    out = [rw.normal_form(w) for w in words]
    return time.perf_counter() - t0, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--words", type=int, default=300)
    ap.add_argument("--length", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    words = [tuple(rng.randrange(args.n * args.n) for _ in range(args.length)) for _ in range(args.words)]
    if not _kernel.COMPILED:
        print("compiled kernel unavailable; timing the pure-Python kernel only")
    kernels = [("pure", _rewrite_py.Rewriter)]
    if _kernel.COMPILED:
        kernels.append(("compiled", _kernel.Rewriter))
    best = {}
    results = {}
    for name, cls in kernels:
        times = []
        for _ in range(args.repeat):
            dt, out = run(cls, args.n, words)
            times.append(dt)
        best[name] = min(times)
        results[name] = out
        print(f"{name:9s} n={args.n} words={args.words} length={args.length}: {best[name] * 1000:.1f} ms")
    if "compiled" in best:
        same = results["pure"] == results["compiled"]
        print(f"speedup  {best['pure'] / best['compiled']:.2f}x   outputs identical: {same}")


if __name__ == "__main__":
    main()
