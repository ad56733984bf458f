"""Time the compiled product kernel against its pure-Python twin.

    python benchmarks/bench_kernels.py [--repeat N]

Both kernels build the full 430 x 430 product table of A(Z,5) and scan it
for associativity failures; the script also confirms they agree.
"""
import argparse
import random
import timeit

import numpy as np

from bsskein import kernels
from bsskein.algebra import _codec, enumerate_basis
from bsskein.diagram import build_skein_arc_diagram


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    d = build_skein_arc_diagram()
    codec = _codec(d)
    codes = [codec.encode(g) for g in enumerate_basis(d, 5)]
    rng = random.Random(0)
    pairs = [(rng.choice(codes), rng.choice(codes)) for _ in range(20000)]

    backends = {"python": kernels.python_kernel}
    if kernels.compiled_kernel is not None:
        backends["compiled"] = kernels.compiled_kernel
    else:
        print("compiled kernel not available; timing the Python kernel only")

    results, tables = {}, {}
    for name, k in backends.items():
        tables[name] = k.mul_index_table(codes, codec.cls, codec.n)
        t = tables[name]
        results[name] = {
            "product table": min(timeit.repeat(lambda: k.mul_index_table(codes, codec.cls, codec.n),
                                               number=1, repeat=args.repeat)),
            "associativity scan": min(timeit.repeat(lambda: k.associativity_violations(t, 5),
                                                    number=1, repeat=args.repeat)),
            "20k random products": min(timeit.repeat(
                lambda: [k.mul_code(a, b, codec.cls, codec.n) for a, b in pairs],
                number=1, repeat=args.repeat)),
        }

    if len(tables) == 2:
        assert np.array_equal(tables["python"], tables["compiled"]), "kernels disagree"

    print(f"{'task':<22}" + "".join(f"{n:>12}" for n in results) + ("     speedup" if len(results) == 2 else ""))
    for task in results["python"]:
        row = f"{task:<22}" + "".join(f"{results[n][task]:>11.4f}s" for n in results)
        if len(results) == 2:
            row += f"{results['python'][task] / results['compiled'][task]:>11.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
