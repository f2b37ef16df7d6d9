"""Pure-Python/numpy versions of the compiled kernels (same signatures)."""
from __future__ import annotations

import numpy as np

OP_VAR, OP_CONST, OP_UNARY, OP_BINARY = 0, 1, 2, 3
_CHUNK = 1 << 16


def _run(code, lo, hi, vals, binary, unary, width):
    stack: list[np.ndarray] = []
    for pc in range(lo, hi, 2):
        op, arg = int(code[pc]), int(code[pc + 1])
        if op == OP_VAR:
            stack.append(vals[arg])
        elif op == OP_CONST:
            stack.append(np.full(width, arg, dtype=np.intc))
        elif op == OP_UNARY:
            stack[-1] = unary[arg][stack[-1]]
        else:
            b = stack.pop()
            stack[-1] = binary[arg][stack[-1], b]
    return stack[0]


def scan_valuations(binary, unary, code, bounds, n_premises, nvars, n, depth, start, stop, count_all):
    binary = np.asarray(binary)
    unary = np.asarray(unary)
    first, fails = -1, 0
    for lo in range(start, stop, _CHUNK):
        hi = min(stop, lo + _CHUNK)
        idx = np.arange(lo, hi, dtype=np.int64)
        vals = []
        rem = idx.copy()
        for _ in range(nvars):
            vals.append((rem % n).astype(np.intc))
            rem //= n
        vals.reverse()
        width = hi - lo
        mask = np.ones(width, dtype=bool)
        for k in range(n_premises):
            left = _run(code, bounds[2 * k], bounds[2 * k + 1], vals, binary, unary, width)
            right = _run(code, bounds[2 * k + 1], bounds[2 * k + 2], vals, binary, unary, width)
            mask &= left == right
        k = n_premises
        left = _run(code, bounds[2 * k], bounds[2 * k + 1], vals, binary, unary, width)
        right = _run(code, bounds[2 * k + 1], bounds[2 * k + 2], vals, binary, unary, width)
        bad = np.flatnonzero(mask & (left != right))
        if bad.size:
            if first < 0:
                first = lo + int(bad[0])
            if not count_all:
                return first, 1
            fails += int(bad.size)
    return first, fails


def _leaf_ok(f: np.ndarray, join: np.ndarray) -> bool:
    # a * (b | c) == (a * b) | (a * c)
    lhs = f[:, join]
    rhs = join[f[:, :, None], f[:, None, :]]
    if not np.array_equal(lhs, rhs):
        return False
    idx = np.arange(len(f))
    return np.array_equal(f[idx[:, None, None], f[None, :, :]], f[f[:, :, None], idx[None, None, :]])


def enumerate_fusions(leq, meet, join, bot, top, limit=-1):
    leq = np.asarray(leq, dtype=bool)
    meet = np.asarray(meet)
    join = np.asarray(join)
    n = len(leq)
    inner = [x for x in range(n) if x not in (bot, top)]
    cells = [(x, y) for i, x in enumerate(inner) for y in inner[i:]]
    f = np.zeros((n, n), dtype=np.intc)
    f[:, bot] = bot
    f[bot, :] = bot
    f[:, top] = np.arange(n)
    f[top, :] = np.arange(n)
    f[bot, top] = f[top, bot] = bot
    out: list[np.ndarray] = []
    # candidate values per cell, ascending
    domains = [[v for v in range(n) if leq[v, meet[a, b]]] for a, b in cells]
    below = [
        [j for j in range(k) if (leq[cells[j][0], a] and leq[cells[j][1], b]) or (leq[cells[j][0], b] and leq[cells[j][1], a])]
        for k, (a, b) in enumerate(cells)
    ]
    above = [
        [j for j in range(k) if (leq[a, cells[j][0]] and leq[b, cells[j][1]]) or (leq[a, cells[j][1]] and leq[b, cells[j][0]])]
        for k, (a, b) in enumerate(cells)
    ]

    def rec(k: int) -> bool:
        if k == len(cells):
            if _leaf_ok(f, join):
                out.append(f.copy())
                return 0 <= limit <= len(out)
            return False
        a, b = cells[k]
        for v in domains[k]:
            if any(not leq[f[cells[j]], v] for j in below[k]):
                continue
            if any(not leq[v, f[cells[j]]] for j in above[k]):
                continue
            f[a, b] = f[b, a] = v
            if rec(k + 1):
                return True
        return False

    rec(0)
    return out
