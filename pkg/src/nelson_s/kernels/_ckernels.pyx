# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops: valuation scanning and fusion-table search."""
import numpy as np

cdef enum:
    OP_VAR = 0
    OP_CONST = 1
    OP_UNARY = 2
    OP_BINARY = 3


cdef inline int _run(const int[::1] code, Py_ssize_t lo, Py_ssize_t hi, int* stack,
                     const int* vals, const int[:, :, ::1] binary, const int[:, ::1] unary) noexcept nogil:
    cdef Py_ssize_t pc = lo
    cdef int sp = 0
    cdef int op, arg, a, b
    while pc < hi:
        op = code[pc]
        arg = code[pc + 1]
        pc += 2
        if op == OP_VAR:
            stack[sp] = vals[arg]
            sp += 1
        elif op == OP_CONST:
            stack[sp] = arg
            sp += 1
        elif op == OP_UNARY:
            stack[sp - 1] = unary[arg, stack[sp - 1]]
        else:
            b = stack[sp - 1]
            a = stack[sp - 2]
            sp -= 1
            stack[sp - 1] = binary[arg, a, b]
    return stack[0]


def scan_valuations(const int[:, :, ::1] binary, const int[:, ::1] unary, const int[::1] code,
                    const long[::1] bounds, int n_premises, int nvars, int n, int depth,
                    long long start, long long stop, bint count_all):
    """Scan valuations ``start..stop-1``; return (first failing index or -1, failures).

    ``bounds`` holds ``2 * (n_premises + 1) + 1`` offsets into ``code``; programs
    come in (lhs, rhs) pairs, premises first.  Variable 0 is the most
    significant digit of the valuation index.
    """
    cdef int[64] vals
    stack_buf = np.zeros(max(depth, 1), dtype=np.intc)
    cdef int[::1] stack = stack_buf
    cdef long long v, rem, first = -1, fails = 0
    cdef int i, k, l, r
    cdef bint ok
    if nvars > 64:
        raise ValueError("too many variables")
    with nogil:
        for v in range(start, stop):
            rem = v
            for i in range(nvars - 1, -1, -1):
                vals[i] = <int>(rem % n)
                rem = rem // n
            ok = True
            for k in range(n_premises):
                l = _run(code, bounds[2 * k], bounds[2 * k + 1], &stack[0], vals, binary, unary)
                r = _run(code, bounds[2 * k + 1], bounds[2 * k + 2], &stack[0], vals, binary, unary)
                if l != r:
                    ok = False
                    break
            if not ok:
                continue
            k = n_premises
            l = _run(code, bounds[2 * k], bounds[2 * k + 1], &stack[0], vals, binary, unary)
            r = _run(code, bounds[2 * k + 1], bounds[2 * k + 2], &stack[0], vals, binary, unary)
            if l != r:
                fails += 1
                if first < 0:
                    first = v
                if not count_all:
                    break
    return first, fails


cdef bint _leaf_ok(int[:, ::1] f, const int[:, ::1] join, int n) noexcept nogil:
    cdef int a, b, c
    for a in range(n):
        for b in range(n):
            for c in range(b + 1, n):
                if f[a, join[b, c]] != join[f[a, b], f[a, c]]:
                    return False
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if f[a, f[b, c]] != f[f[a, b], c]:
                    return False
    return True


def enumerate_fusions(const unsigned char[:, ::1] leq, const int[:, ::1] meet, const int[:, ::1] join,
                      int bot, int top, long long limit=-1):
    """All commutative, associative, join-preserving fusions with unit ``top``.

    Interior cells are filled by backtracking, pruned by monotonicity and the
    bound ``a * b <= a & b``.
    """
    cdef int n = leq.shape[0]
    cdef int a, b, c, d, k, j, v, m, ncells
    inner = [x for x in range(n) if x != bot and x != top]
    cells = [(x, y) for i, x in enumerate(inner) for y in inner[i:]]
    ncells = len(cells)
    ca_buf = np.array([p[0] for p in cells] or [0], dtype=np.intc)
    cb_buf = np.array([p[1] for p in cells] or [0], dtype=np.intc)
    cdef int[::1] ca = ca_buf
    cdef int[::1] cb = cb_buf
    f_buf = np.zeros((n, n), dtype=np.intc)
    cdef int[:, ::1] f = f_buf
    choice_buf = np.full(max(ncells, 1), -1, dtype=np.intc)
    cdef int[::1] choice = choice_buf
    cdef bint ok
    out = []
    for a in range(n):
        f[a, bot] = bot
        f[bot, a] = bot
        f[a, top] = a
        f[top, a] = a
    f[bot, top] = bot
    f[top, bot] = bot
    if ncells == 0:
        if _leaf_ok(f, join, n):
            out.append(f_buf.copy())
        return out
    k = 0
    while k >= 0:
        a = ca[k]
        b = cb[k]
        m = meet[a, b]
        v = choice[k] + 1
        ok = False
        while v < n:
            if leq[v, m]:
                ok = True
                for j in range(k):
                    c = ca[j]
                    d = cb[j]
                    if ((leq[c, a] and leq[d, b]) or (leq[c, b] and leq[d, a])) and not leq[f[c, d], v]:
                        ok = False
                        break
                    if ((leq[a, c] and leq[b, d]) or (leq[a, d] and leq[b, c])) and not leq[v, f[c, d]]:
                        ok = False
                        break
                if ok:
                    break
            v += 1
        if not ok:
            choice[k] = -1
            k -= 1
            continue
        choice[k] = v
        f[a, b] = v
        f[b, a] = v
        if k == ncells - 1:
            if _leaf_ok(f, join, n):
                out.append(f_buf.copy())
                if 0 <= limit <= len(out):
                    return out
        else:
            k += 1
    return out
