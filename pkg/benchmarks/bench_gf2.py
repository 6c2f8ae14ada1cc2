"""Compare the numba kernels against the pure-numpy fallback.

Two measurements:

* end to end: compute_index(n) in a fresh interpreter per backend, the
  backend chosen through GRASSINDEX_NUMBA exactly as a user would;
* kernel only: one degree's span rows are packed once, then fed through
  nb_reduce_lowest and np_reduce_lowest in the same process.

    python benchmarks/bench_gf2.py --n 6 8 10 --kernel-n 9
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

CHILD = """
import json, sys, time
from grassindex import _kernels
from grassindex.kernel import compute_index
n = int(sys.argv[1])
compute_index(1)  # warm caches and JIT
t0 = time.perf_counter()
rep = compute_index(n)
print(json.dumps({"backend": _kernels.BACKEND, "n": n, "hind": rep.hind,
                  "seconds": time.perf_counter() - t0}))
"""


def end_to_end(n: int, numba: bool) -> dict:
    env = dict(os.environ, GRASSINDEX_NUMBA="1" if numba else "0")
    out = subprocess.run([sys.executable, "-c", CHILD, str(n)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def kernel_only(n: int, d: int | None, repeats: int) -> dict:
    from grassindex import _kernels as K
    from grassindex.gf2 import pack
    from grassindex.kernel import _row_stream, kernel_generators
    from grassindex.wreath import wreath_basis

    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not installed; kernel comparison needs both backends")
    gens = kernel_generators(n)
    d = d or 2 * n
    dim = len(wreath_basis(n, d))
    rows = np.array([pack(c, dim) for c in _row_stream(gens, d, ())])
    nw = K.n_words(dim)

    def run(reduce):
        pivots = np.zeros((min(len(rows), dim), nw), dtype=np.uint64)
        slot = np.full(dim, -1, dtype=np.int64)
        rank = 0
        for src in rows:
            row = src.copy()
            col = reduce(row, pivots, slot)
            if col >= 0:
                pivots[rank] = row
                slot[col] = rank
                rank += 1
        return rank

    run(K.nb_reduce_lowest)  # compile
    result = {"n": n, "d": d, "dim": dim, "rows": len(rows)}
    for name, fn in (("numba", K.nb_reduce_lowest), ("numpy", K.np_reduce_lowest)):
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            rank = run(fn)
            best = min(best, time.perf_counter() - t0)
        result[name] = {"seconds": best, "rank": rank}
    if result["numba"]["rank"] != result["numpy"]["rank"]:
        raise SystemExit("backends disagree on rank")
    return result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, nargs="+", default=[6, 8, 10])
    ap.add_argument("--kernel-n", type=int, default=9)
    ap.add_argument("--kernel-degree", type=int)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="print raw results as JSON")
    args = ap.parse_args(argv)

    e2e = []
    for n in args.n:
        a, b = end_to_end(n, True), end_to_end(n, False)
        if a["hind"] != b["hind"]:
            raise SystemExit(f"backends disagree at n={n}: {a['hind']} vs {b['hind']}")
        e2e.append({"n": n, "hind": a["hind"], a["backend"]: a["seconds"], b["backend"]: b["seconds"]})
    kern = kernel_only(args.kernel_n, args.kernel_degree, args.repeats)

    if args.json:
        print(json.dumps({"endToEnd": e2e, "kernel": kern}, indent=2))
        return 0
    print("compute_index, fresh process per backend")
    print(f"{'n':>4} {'hind':>5} {'numba s':>9} {'numpy s':>9} {'speedup':>8}")
    for r in e2e:
        nb, np_ = r.get("numba", float("nan")), r["numpy"]
        print(f"{r['n']:>4} {r['hind']:>5} {nb:>9.3f} {np_:>9.3f} {np_ / nb:>7.1f}x")
    print(f"\nreduce_lowest only, n={kern['n']} d={kern['d']} ({kern['rows']} rows, dim {kern['dim']}), best of {args.repeats}")
    nb, np_ = kern["numba"]["seconds"], kern["numpy"]["seconds"]
    print(f"numba {nb:.3f}s  numpy {np_:.3f}s  speedup {np_ / nb:.1f}x  rank {kern['numba']['rank']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
