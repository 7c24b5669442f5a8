"""Compare the compiled and pure-Python scan backends on exhaustive checks.

    python benchmarks/bench_scan.py [--sizes 4 5 6 7 8] [--repeat 3]

Inputs are the algebras reconstructed from so(p) acting on Q^p (n = 3), so
every check passes and each scan runs to completion.
"""

from __future__ import annotations

import argparse
import time
from array import array

from nleibniz import _scan_py, axioms, kernels
from nleibniz.correspondence import reconstruct
from nleibniz.generate import so_triple

CHECKS = {
    "fundamental_identity": axioms.check_fundamental_identity,
    "unitarity": axioms.check_unitarity,
    "symmetry": axioms.check_symmetry,
    "cyclic_sum": axioms.check_cyclic_sum,
}


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def kernel_inputs(A):
    """Integer inputs of the fundamental-identity scan, prepared once."""
    d, n = A.dim, A.arity
    ops = kernels.scaled_ints(axioms.d_operator_table(A))
    consts = kernels.scaled_ints(A.dense_constants())
    return ops, d ** (n - 1), consts, d, n


def kernel_table(sizes, repeat) -> None:
    print()
    print("fundamental-identity kernel only (inputs already integer):")
    print(f"{'algebra':<12} {'tuples':>9} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for p in sizes:
        ops, nops, consts, d, n = kernel_inputs(reconstruct(so_triple(p)))
        slow = best_of(lambda: _scan_py.first_derivation_failure(ops, nops, consts, d, n), repeat)
        qo, qc = array("q", ops), array("q", consts)
        fast = best_of(lambda: kernels._compiled.first_derivation_failure(qo, nops, qc, d, n), repeat)
        print(f"{'so' + str(p):<12} {d ** (2 * n - 1):>9} {fast:10.5f} {slow:10.4f} {slow / fast:7.0f}x")


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 5, 6])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    if kernels.BACKEND != "cython":
        print("compiled extension not available; only the Python backend will be timed")
    print(f"{'algebra':<12} {'check':<22} {'tuples':>9} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for p in args.sizes:
        A = reconstruct(so_triple(p))
        for name, check in CHECKS.items():
            rep = check(A, force_python=True)
            assert rep.passed, (p, name)
            slow = best_of(lambda: check(A, force_python=True), args.repeat)
            if kernels.BACKEND == "cython":
                assert check(A).to_json() == rep.to_json()
                fast = best_of(lambda: check(A), args.repeat)
                ratio = f"{slow / fast:8.1f}x" if fast else "     inf"
                fast_s = f"{fast:10.4f}"
            else:
                fast_s, ratio = f"{'n/a':>10}", f"{'n/a':>8}"
            print(f"{'so' + str(p):<12} {name:<22} {rep.tuples_scanned:>9} {fast_s} {slow:10.4f} {ratio}")
    if kernels.BACKEND == "cython":
        kernel_table(args.sizes, args.repeat)


if __name__ == "__main__":
    main()
