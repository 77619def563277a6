"""Compare the compiled and pure-Python search kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each case runs an exhaustive single-thread search with both backends and
checks that they return the same tuples.
"""

import argparse
import time

from clifford_forge import GF, roby
from clifford_forge.kernels import backends
from clifford_forge.parse import parse_poly
from clifford_forge.presentation import clifford_relations
from clifford_forge.representations import encoded_relations

CASES = [
    ("cubic over F_2, size 3", "x1^3 + x2^3", 2, 3, 3),
    ("quadric over F_3, size 2", "x1^2 + x2^2", 3, 2, 2),
    ("cubic over F_3, size 2", "x1^3 + x1*x2^2 + x2^3", 3, 3, 2),
    ("quadric over F_5, size 2", "x1^2 + 2*x2^2", 5, 2, 2),
]


def time_search(impl, p, N, g, rels, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        found = impl.search_fp(p, N, g, rels, 0, p ** (N * N))
        best = min(best, time.perf_counter() - start)
    return best, [tuple(x) for x in found]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = backends()
    if "cython" not in impls:
        print("compiled kernel not built; only the pure backend is available")
    print(f"{'case':28} {'found':>6} " + " ".join(f"{name:>10}" for name in impls) + "   speedup")
    for title, form, p, d, N in CASES:
        spec = roby(parse_poly(form, ["x1", "x2"], GF(p)), d)
        pres = clifford_relations(spec)
        rels = encoded_relations(pres)
        g = len(pres.generators)
        timings, results = {}, {}
        for name, impl in impls.items():
            timings[name], results[name] = time_search(impl, p, N, g, rels, args.repeat)
        assert len({tuple(r) for r in results.values()}) == 1, title
        cols = " ".join(f"{timings[name]:9.3f}s" for name in impls)
        speed = timings["python"] / timings["cython"] if "cython" in timings else 1.0
        print(f"{title:28} {len(results['python']):>6} {cols}   {speed:6.1f}x")


if __name__ == "__main__":
    main()
