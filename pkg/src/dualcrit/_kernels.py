"""Compiled inner loops: subset dynamic programs and GF(2^64) elimination.

Vertex-set arguments are int64 bitmasks, so every kernel here is limited to
n <= 62; callers enforce tighter limits of their own.
"""

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def parity64(x):
    x ^= x >> 32
    x ^= x >> 16
    x ^= x >> 8
    x ^= x >> 4
    x ^= x >> 2
    x ^= x >> 1
    return x & 1


@njit(cache=True)
def completable_prefixes(adj, n, target, free_first):
    """``out[S] == 1`` iff the prefix set ``S`` extends to a full ordering in
    which each appended vertex ``v`` has back-degree parity ``target >> v & 1``.

    With ``free_first`` the vertex appended to the empty prefix is exempt.
    """
    full = (1 << n) - 1
    out = np.zeros(1 << n, np.uint8)
    out[full] = 1
    for S in range(full - 1, -1, -1):
        for v in range(n):
            bit = 1 << v
            if S & bit or out[S | bit] == 0:
                continue
            if S == 0 and free_first:
                out[S] = 1
                break
            if parity64(adj[v] & S) == (target >> v) & 1:
                out[S] = 1
                break
    return out


@njit(cache=True)
def odd_split_closure(adj, n):
    """Subset DP for the recursive odd-cut bipartition characterization.

    ``ok[S]`` is 1 iff ``S`` is a single vertex or splits into ``A, S-A`` with
    both sides ok and an odd number of edges between them.
    """
    full = (1 << n) - 1
    ok = np.zeros(1 << n, np.uint8)
    for S in range(1, full + 1):
        if S & (S - 1) == 0:
            ok[S] = 1
            continue
        low = S & -S
        rest = S ^ low
        sub = rest
        while True:
            A = sub | low
            if A != S:
                B = S ^ A
                if ok[A] and ok[B]:
                    p = 0
                    for v in range(n):
                        if A >> v & 1:
                            p ^= parity64(adj[v] & B)
                    if p:
                        ok[S] = 1
                        break
            if sub == 0:
                break
            sub = (sub - 1) & rest
    return ok


@njit(cache=True)
def longest_pair_tail(adj, n):
    """Largest class count of a good partition whose non-first classes have
    one or two vertices.

    ``tail[S]`` is the longest sequence of such classes covering ``V - S``
    where each class has an odd cut to everything placed before it; ``-1``
    marks infeasible prefixes.
    """
    full = (1 << n) - 1
    tail = np.full(1 << n, -1, np.int8)
    tail[full] = 0
    par = np.zeros(n, np.int64)
    best = 1
    for S in range(full - 1, 0, -1):
        for v in range(n):
            if not S >> v & 1:
                par[v] = parity64(adj[v] & S)
        cur = -1
        for v in range(n):
            bv = 1 << v
            if S & bv:
                continue
            if par[v] == 1 and tail[S | bv] >= 0 and tail[S | bv] + 1 > cur:
                cur = tail[S | bv] + 1
            for w in range(v + 1, n):
                bw = 1 << w
                if S & bw:
                    continue
                if par[v] ^ par[w]:
                    t = tail[S | bv | bw]
                    if t >= 0 and t + 1 > cur:
                        cur = t + 1
        tail[S] = cur
        if cur >= 1 and cur + 1 > best:
            best = cur + 1
    return best


# --------------------------------------------------------------------------
# GF(2^64) modulo x^64 + x^4 + x^3 + x + 1

_ONE = np.uint64(1)


@njit(cache=True, inline="always")
def gf_mul(a, b):
    lo = np.uint64(0)
    hi = np.uint64(0)
    for i in range(64):
        if (b >> np.uint64(i)) & _ONE:
            lo ^= a << np.uint64(i)
            if i > 0:
                hi ^= a >> np.uint64(64 - i)
    t = (hi >> np.uint64(63)) ^ (hi >> np.uint64(61)) ^ (hi >> np.uint64(60))
    lo ^= hi ^ (hi << np.uint64(1)) ^ (hi << np.uint64(3)) ^ (hi << np.uint64(4))
    lo ^= t ^ (t << np.uint64(1)) ^ (t << np.uint64(3)) ^ (t << np.uint64(4))
    return lo


@njit(cache=True)
def gf_mul_many(a, b):
    out = np.empty(a.shape[0], np.uint64)
    for i in range(a.shape[0]):
        out[i] = gf_mul(a[i], b[i])
    return out


@njit(cache=True)
def _nonsingular(M, q):
    # division-free elimination: row_r <- p*row_r + a*row_c keeps rank
    for c in range(q):
        piv = -1
        for r in range(c, q):
            if M[r, c] != 0:
                piv = r
                break
        if piv < 0:
            return False
        if piv != c:
            for j in range(c, q):
                tmp = M[c, j]
                M[c, j] = M[piv, j]
                M[piv, j] = tmp
        p = M[c, c]
        for r in range(c + 1, q):
            a = M[r, c]
            if a == 0:
                continue
            for j in range(c, q):
                M[r, j] = gf_mul(p, M[r, j]) ^ gf_mul(a, M[c, j])
    return True


@njit(cache=True)
def first_nonsingular_trial(inc, zero_diag, values):
    """Index of the first row of ``values`` at which the intersection matrix is
    nonsingular, or -1.

    ``inc[i, e]`` marks tree variable ``e`` on the fundamental cycle of
    non-tree edge ``i``; entry ``(i, j)`` is the XOR of the shared variables.
    """
    q, nv = inc.shape
    M = np.empty((q, q), np.uint64)
    for t in range(values.shape[0]):
        x = values[t]
        for i in range(q):
            for j in range(i, q):
                s = np.uint64(0)
                if not (zero_diag and i == j):
                    for e in range(nv):
                        if inc[i, e] & inc[j, e]:
                            s ^= x[e]
                M[i, j] = s
                M[j, i] = s
        if _nonsingular(M, q):
            return t
    return -1
