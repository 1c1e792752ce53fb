"""Vectorized arithmetic mod a prime, for the enumeration-heavy loops.

Entries live in int64 numpy arrays reduced into [0, q); q must be small
enough that (q-1)^2 fits comfortably in int64, which every census prime does.
The batched elimination processes one column per step across the whole batch,
so a census of N small matrices costs O(columns) vectorized passes instead of
N python-level eliminations.  Results agree with pfgr.linalg over F_q; the
test suite cross-checks the two paths on random batches.
"""

import numpy as np


def inverse_table(q):
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = pow(a, q - 2, q)
    return inv


def batch_rank(mats, q, inv=None):
    """Ranks of a batch of matrices over F_q.  mats: (N, m, n) int64."""
    M = np.ascontiguousarray(mats % q)
    if M.ndim == 2:
        M = M[None, :, :]
    N, m, n = M.shape
    if inv is None:
        inv = inverse_table(q)
    r = np.zeros(N, dtype=np.int64)
    rows = np.arange(m)
    for c in range(n):
        col = M[:, :, c]
        active = (rows[None, :] >= r[:, None]) & (col != 0)
        has = active.any(axis=1)
        if not has.any():
            continue
        hi = np.nonzero(has)[0]
        piv = np.argmax(active[hi], axis=1)
        ri = r[hi]
        tmp = M[hi, piv].copy()
        M[hi, piv] = M[hi, ri]
        M[hi, ri] = tmp
        pivrow = (M[hi, ri] * inv[M[hi, ri, c]][:, None]) % q
        M[hi, ri] = pivrow
        sub = M[hi]
        coef = np.where(rows[None, :] > ri[:, None], sub[:, :, c], 0)
        M[hi] = (sub - coef[:, :, None] * pivrow[:, None, :]) % q
        r[has] += 1
        if (r == m).all():
            break
    return r


def rank_and_kernel(mat, q):
    """Rank and a right-kernel basis of a single matrix over F_q."""
    M = np.array(mat, dtype=np.int64) % q
    m, n = M.shape
    r = 0
    pivots = []
    for c in range(n):
        piv = None
        for i in range(r, m):
            if M[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = (M[r] * pow(int(M[r, c]), q - 2, q)) % q
        nz = np.nonzero(M[:, c])[0]
        for i in nz:
            if i != r:
                M[i] = (M[i] - M[i, c] * M[r]) % q
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for ri, c in enumerate(pivots):
            basis[t, c] = (-M[ri, f]) % q
    return r, basis % q


def solve(mat, vec, q):
    """One solution of mat @ x = vec over F_q, or None.  mat: (m, n) int64."""
    M = np.concatenate([np.asarray(mat, dtype=np.int64) % q,
                        (np.asarray(vec, dtype=np.int64) % q)[:, None]], axis=1)
    m, n1 = M.shape
    n = n1 - 1
    r = 0
    pivots = []
    for c in range(n):
        piv = None
        for i in range(r, m):
            if M[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = (M[r] * pow(int(M[r, c]), q - 2, q)) % q
        nz = np.nonzero(M[:, c])[0]
        for i in nz:
            if i != r:
                M[i] = (M[i] - M[i, c] * M[r]) % q
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if M[i, n]:
            return None
    x = np.zeros(n, dtype=np.int64)
    for ri, c in enumerate(pivots):
        x[c] = M[ri, n]
    return x


def projective_points(d, q):
    """All points of P^(d-1)(F_q) as an (N, d) array, first nonzero entry 1."""
    blocks = []
    for lead in range(d):
        tail = d - lead - 1
        count = q ** tail
        block = np.zeros((count, d), dtype=np.int64)
        block[:, lead] = 1
        if tail:
            idx = np.arange(count)
            for t in range(tail):
                block[:, lead + 1 + t] = (idx // q ** (tail - 1 - t)) % q
        blocks.append(block)
    return np.concatenate(blocks)
