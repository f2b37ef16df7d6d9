"""Compare the compiled and pure-Python kernels on the two hot loops.

    python benchmarks/bench_kernels.py [--repeat 3] [--size 6]

Reports the best wall time per backend and checks that both return the
same results.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from nelson_s import kernels
from nelson_s.algebra import compile_statement, interpretation, parse_statement
from nelson_s.model_search import enumerate_class, lattices

STATEMENT = "x * (y | z) => (u & v) | w == (x * y | x * z) => (u & v) | w"


def best_of(repeat: int, fn):
    times, out = [], None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def scan_job(mod, a, q):
    interp = interpretation(a)
    c = compile_statement(q, interp)
    total = interp.size ** len(c.names)

    def run():
        return mod.scan_valuations(
            interp.binary, interp.unary, c.code, c.bounds, c.n_premises, len(c.names), interp.size, c.depth, 0, total, True
        )

    return run, total


def fusion_job(mod, size):
    sks = lattices(size)

    def run():
        out = []
        for sk in sks:
            fs = mod.enumerate_fusions(np.ascontiguousarray(sk.leq, dtype=np.uint8), sk.meet, sk.join, 0, size - 1, -1)
            out.append([np.asarray(f).tolist() for f in fs])
        return out

    return run


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--size", type=int, default=6, help="lattice size for the fusion search")
    args = p.parse_args(argv)

    try:
        backends = {"compiled": kernels.backend("compiled"), "python": kernels.backend("python")}
    except ImportError:
        print("compiled kernels are not built; nothing to compare")
        return 1

    a = enumerate_class("cibrl", 6).algebras[-1]
    q = parse_statement(STATEMENT)
    rows = []
    results = {}
    for name, mod in backends.items():
        run, total = scan_job(mod, a, q)
        t, out = best_of(args.repeat, run)
        results.setdefault("scan", []).append(out)
        rows.append((f"scan {total} valuations", name, t))
    for name, mod in backends.items():
        t, out = best_of(args.repeat, fusion_job(mod, args.size))
        results.setdefault("fusions", []).append(out)
        rows.append((f"fusions on {len(lattices(args.size))} lattices of size {args.size}", name, t))

    width = max(len(r[0]) for r in rows)
    for task, name, t in rows:
        print(f"{task:<{width}}  {name:<8}  {t * 1000:9.2f} ms")
    for task, outs in results.items():
        agree = all(o == outs[0] for o in outs)
        print(f"{task}: backends {'agree' if agree else 'DISAGREE'}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
