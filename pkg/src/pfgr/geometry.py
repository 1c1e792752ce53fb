"""Exact-arithmetic geometry of a generic linear system of 2-forms.

A model is a surjective integer matrix A taking wedge-basis coordinates on
Lambda^2 V to V, dim V = d odd (7 by default).  Every point p of the dual
projective space gives an antisymmetric d x d matrix omega_p, and the two
varieties of interest are

  Y1: 2-planes U in V with A(Lambda^2 U) = 0, inside Gr(2, d), and
  Y2: points p where rank(omega_p) drops to d - 3, inside P^(d-1).

Everything here is computed over Q or a prime field, with no floating point:
rank strata by exhaustive census over small fields, smoothness by exact
Jacobian ranks at sampled points, the critical-locus equivalence for the
cubic invariant W(x, p) by direct evaluation, and the normal-space pairing
against the kernel 2-forms.  Hot loops (censuses, point sampling, bulk rank
checks) run through the vectorized mod-q routines in pfgr.modq; pointwise
results are exact field computations via pfgr.linalg.

Sampling is deterministic given a seed, and batches are merged in a fixed
order, so reports are reproducible regardless of batch sizes.
"""

import json
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
import random

import numpy as np

from . import linalg, modq, reps
from .fields import QQ, PrimeField, field_from_spec


class ModelCertificateError(RuntimeError):
    """A freshly sampled model failed one of its genericity certificates."""


def wedge_pairs(d):
    return list(combinations(range(d), 2))


@lru_cache(maxsize=None)
def perfect_matchings(indices):
    """All perfect matchings of a tuple of indices, with signs."""
    idx = list(indices)
    if not idx:
        return [((), 1)]
    out = []
    i0 = idx[0]
    for t in range(1, len(idx)):
        j = idx[t]
        rest = tuple(k for k in idx[1:] if k != j)
        for sub, sign in perfect_matchings(rest):
            out.append((((i0, j),) + sub, sign * (-1) ** (t - 1)))
    return out


@dataclass(frozen=True)
class PfaffianModel:
    """The defining data: dimensions, the integer matrix A, a seed, a field.

    A has d rows and C(d, 2) columns (wedge-basis order from wedge_pairs) and
    full row rank; entries are small integers so the same model reduces
    soundly mod every census prime.
    """

    d: int
    A: tuple
    seed: int
    field: object

    def __post_init__(self):
        if self.d < 5 or self.d % 2 == 0:
            raise ValueError("d must be odd and at least 5")
        npairs = len(wedge_pairs(self.d))
        if len(self.A) != self.d or any(len(r) != npairs for r in self.A):
            raise ValueError("A must be d x C(d,2)")

    @property
    def pairs(self):
        return wedge_pairs(self.d)

    @property
    def generic_rank(self):
        return self.d - 1

    @property
    def degenerate_rank(self):
        """The rank defining the Pfaffian variety: d - 3."""
        return self.d - 3

    @property
    def forbidden_rank(self):
        """Deeper degeneracy that a generic model must avoid: d - 5."""
        return self.d - 5

    def coefficient_tensor(self):
        """T[i][a][b] = d(omega[a, b]) / d(p_i), as python ints."""
        d = self.d
        T = [[[0] * d for _ in range(d)] for _ in range(d)]
        for c, (a, b) in enumerate(self.pairs):
            for i in range(d):
                T[i][a][b] = self.A[i][c]
                T[i][b][a] = -self.A[i][c]
        return T

    def tensor_mod(self, q):
        return np.array(self.coefficient_tensor(), dtype=np.int64) % q


# ---------------------------------------------------------------------------
# pointwise exact evaluations


def omega_at(model, p):
    """The antisymmetric matrix omega_p over the model's field."""
    F = model.field
    pv = [F.of_int(c) if isinstance(c, int) else c for c in p]
    if all(F.is_zero(c) for c in pv):
        raise ValueError("p must be a nonzero point")
    d = model.d
    M = [[F.zero] * d for _ in range(d)]
    for c, (a, b) in enumerate(model.pairs):
        v = F.zero
        for i in range(d):
            if model.A[i][c]:
                v = F.add(v, F.mul(pv[i], F.of_int(model.A[i][c])))
        M[a][b] = v
        M[b][a] = F.neg(v)
    return M


def omega_rank(model, p):
    return linalg.rank(model.field, omega_at(model, p))


def plucker_vector(field, u, v):
    """Wedge coordinates of the 2-plane spanned by u and v."""
    d = len(u)
    return [field.sub(field.mul(u[a], v[b]), field.mul(u[b], v[a]))
            for a, b in wedge_pairs(d)]


def apply_A(model, wedge):
    F = model.field
    out = []
    for i in range(model.d):
        s = F.zero
        for c, w in enumerate(wedge):
            if model.A[i][c] and not F.is_zero(w):
                s = F.add(s, F.mul(F.of_int(model.A[i][c]), w))
        out.append(s)
    return out


def _coerce_matrix(field, x):
    return [[field.of_int(c) if isinstance(c, int) else c for c in row] for row in x]


def y1_membership(model, x):
    """Whether the full-rank 2 x d matrix x spans a plane killed by A."""
    F = model.field
    xm = _coerce_matrix(F, x)
    if linalg.rank(F, xm) != 2:
        raise ValueError("x must have rank 2")
    image = apply_A(model, plucker_vector(F, xm[0], xm[1]))
    return all(F.is_zero(c) for c in image)


def y2_membership(model, p):
    """(rank of omega_p, whether the rank is at most d - 3)."""
    r = omega_rank(model, p)
    return r, r <= model.degenerate_rank


def contraction_oracle(model, x):
    """A(wedge of x) computed the slow way, pairing against basis 2-forms.

    Evaluates omega at each coordinate vector e_i and contracts with the two
    rows of x; used as the independent route for y1_membership.
    """
    F = model.field
    xm = _coerce_matrix(F, x)
    u, v = xm
    T = model.coefficient_tensor()
    out = []
    for i in range(model.d):
        s = F.zero
        for a in range(model.d):
            if F.is_zero(u[a]):
                continue
            for b in range(model.d):
                if T[i][a][b]:
                    s = F.add(s, F.mul(F.mul(u[a], v[b]), F.of_int(T[i][a][b])))
        out.append(s)
    return out


def principal_pfaffians(model, p):
    """The d sub-Pfaffians of omega_p deleting one index each.

    Their simultaneous vanishing is equivalent to rank(omega_p) <= d - 3.
    """
    F = model.field
    M = omega_at(model, p)
    out = []
    for i in range(model.d):
        idx = tuple(a for a in range(model.d) if a != i)
        s = F.zero
        for matching, sign in perfect_matchings(idx):
            term = F.of_int(sign)
            for a, b in matching:
                term = F.mul(term, M[a][b])
            s = F.add(s, term)
        out.append(s)
    return out


def quadratic_form_matrix(model, p):
    """The symmetric 2d x 2d matrix of W_p on pairs of columns (u, v).

    W_p(u, v) = omega_p(u, v), polarized; needs an invertible 2, so the model
    field must not have characteristic 2.
    """
    F = model.field
    if F.characteristic == 2:
        raise ValueError("quadratic form matrix needs characteristic != 2")
    M = omega_at(model, p)
    d = model.d
    half = F.inv(F.of_int(2))
    B = [[F.zero] * (2 * d) for _ in range(2 * d)]
    for a in range(d):
        for b in range(d):
            hb = F.mul(half, M[a][b])
            B[a][d + b] = hb
            B[d + b][a] = hb
    return B


# ---------------------------------------------------------------------------
# censuses over small fields


def rank_census(model, q):
    """Counts of each omega rank stratum over P^(d-1)(F_q), exhaustively."""
    if q > 11:
        raise ValueError("census fields are capped at q = 11")
    PrimeField(q)
    pts = modq.projective_points(model.d, q)
    Tq = model.tensor_mod(q)
    mats = np.einsum("xi,iab->xab", pts, Tq) % q
    ranks = modq.batch_rank(mats, q)
    vals, counts = np.unique(ranks, return_counts=True)
    out = {int(v): int(c) for v, c in zip(vals, counts)}
    assert sum(out.values()) == (q ** model.d - 1) // (q - 1)
    return out


def gaussian_binomial_2(n, q):
    """Number of 2-planes in F_q^n."""
    return ((q ** n - 1) * (q ** (n - 1) - 1)) // ((q ** 2 - 1) * (q - 1))


def grassmannian_census(model, q):
    """(number of 2-planes over F_q, number of them lying on Y1).

    Enumerates reduced row echelon representatives per pivot pattern, in
    vectorized blocks, so each 2-plane is visited exactly once.
    """
    if q > 3:
        raise ValueError("full Grassmannian enumeration is capped at q = 3")
    d = model.d
    Aq = np.array(model.A, dtype=np.int64) % q
    pairs = model.pairs
    total = 0
    solutions = 0
    for i in range(d):
        for j in range(i + 1, d):
            free0 = [c for c in range(i + 1, d) if c != j]
            free1 = list(range(j + 1, d))
            k = len(free0) + len(free1)
            count = q ** k
            total += count
            rows0 = np.zeros((count, d), dtype=np.int64)
            rows1 = np.zeros((count, d), dtype=np.int64)
            rows0[:, i] = 1
            rows1[:, j] = 1
            idx = np.arange(count)
            for t, c in enumerate(free0 + free1):
                digit = (idx // q ** (k - 1 - t)) % q
                if t < len(free0):
                    rows0[:, c] = digit
                else:
                    rows1[:, c] = digit
            wedge = np.empty((count, len(pairs)), dtype=np.int64)
            for cidx, (a, b) in enumerate(pairs):
                wedge[:, cidx] = (rows0[:, a] * rows1[:, b] - rows0[:, b] * rows1[:, a]) % q
            image = (wedge @ Aq.T) % q
            solutions += int(((image == 0).all(axis=1)).sum())
    assert total == gaussian_binomial_2(d, q)
    return total, solutions


# ---------------------------------------------------------------------------
# point sampling over larger prime fields


def _rng_ints(rng, q, shape):
    return rng.integers(0, q, size=shape, dtype=np.int64)


def sample_y2_points(model, q, count, seed=0, max_tries=4_000_000):
    """Points p with rank(omega_p) = d - 3 over F_q, by kernel search.

    A random vector k determines the linear system {p : k in ker(omega_p)};
    when its solution space is a single projective point p_k, that point lies
    on Y2 roughly once in q tries, which is fast enough to batch.
    """
    d = model.d
    Tq = model.tensor_mod(q)
    rng = np.random.default_rng(seed)
    found = []
    tries = 0
    batch = 4096
    while len(found) < count and tries < max_tries:
        ks = _rng_ints(rng, q, (batch, d))
        tries += batch
        keep = ks.any(axis=1)
        ks = ks[keep]
        # B_k maps p to the contraction of omega_p with k
        Bs = np.einsum("xl,ilj->xji", ks, Tq) % q
        ranks = modq.batch_rank(Bs, q)
        for row in np.nonzero(ranks == d - 1)[0]:
            _, ker = modq.rank_and_kernel(Bs[row], q)
            p = ker[0]
            M = np.einsum("i,iab->ab", p, Tq) % q
            if modq.batch_rank(M[None], q)[0] <= model.degenerate_rank:
                found.append([int(c) for c in p])
                if len(found) == count:
                    break
    return found


def _sample_y1_column_trick(model, q, count, seed, max_tries):
    """Rank-2 solutions via the kernel of v -> A(u wedge v) for random u."""
    d = model.d
    Aq = np.array(model.A, dtype=np.int64) % q
    # U[l, j, m]: coefficient of v_m in A(u wedge v)_j, contracted with u_l
    U = np.zeros((d, d, d), dtype=np.int64)
    for c, (a, b) in enumerate(model.pairs):
        U[a, :, b] = (U[a, :, b] + Aq[:, c]) % q
        U[b, :, a] = (U[b, :, a] - Aq[:, c]) % q
    rng = np.random.default_rng(seed)
    found = []
    tries = 0
    batch = 20000
    while len(found) < count and tries < max_tries:
        us = _rng_ints(rng, q, (batch, d))
        tries += batch
        us = us[us.any(axis=1)]
        Cs = np.einsum("xl,ljm->xjm", us, U) % q
        ranks = modq.batch_rank(Cs, q)
        for row in np.nonzero(ranks <= d - 2)[0]:
            u = us[row]
            _, ker = modq.rank_and_kernel(Cs[row], q)
            for v in ker:
                x = np.stack([u, v]) % q
                if modq.batch_rank(x[None], q)[0] == 2:
                    found.append([[int(c) for c in u], [int(c) for c in v]])
                    break
            if len(found) == count:
                break
    return found


def _sample_y1_kernel_form_trick(model, q, count, seed, max_tries):
    """Decomposable 2-forms inside ker A, for d = 5.

    For a random u, the forms in ker A annihilated by u form a line; its
    generator lies on the rank-2 locus about once in q tries.
    """
    d = model.d
    pairs = model.pairs
    Aq = np.array(model.A, dtype=np.int64) % q
    _, kerA = modq.rank_and_kernel(Aq, q)
    kdim = kerA.shape[0]
    # contraction tensor: (iota_u w)_j for w in wedge coordinates
    C = np.zeros((d, len(pairs), d), dtype=np.int64)  # u-index, pair, output
    for cidx, (a, b) in enumerate(pairs):
        C[a, cidx, b] = 1
        C[b, cidx, a] = -1
    rng = np.random.default_rng(seed)
    found = []
    tries = 0
    while len(found) < count and tries < max_tries:
        tries += 1
        u = _rng_ints(rng, q, d)
        if not u.any():
            continue
        # rows: output coords, cols: kernel basis coefficients
        contr = np.einsum("l,lcj,kc->jk", u, C, kerA) % q
        r, ker = modq.rank_and_kernel(contr, q)
        if len(ker) != 1:
            continue
        w = (ker[0] @ kerA) % q
        W = np.zeros((d, d), dtype=np.int64)
        for cidx, (a, b) in enumerate(pairs):
            W[a, b] = w[cidx]
            W[b, a] = (-w[cidx]) % q
        if modq.batch_rank(W[None], q)[0] != 2:
            continue
        # the column space of a rank-2 form w = u' wedge v' is its plane
        rows = [W[:, c] for c in range(d)]
        basis = []
        for col in rows:
            if col.any():
                cand = np.stack(basis + [col])
                if modq.batch_rank(cand[None], q)[0] == len(basis) + 1:
                    basis.append(col % q)
            if len(basis) == 2:
                break
        if len(basis) == 2:
            found.append([[int(c) for c in basis[0]], [int(c) for c in basis[1]]])
    return found


def sample_y1_points(model, q, count, seed=0, max_tries=4_000_000):
    """Full-rank 2 x d matrices x over F_q with A(wedge of x) = 0."""
    if model.d == 5:
        return _sample_y1_kernel_form_trick(model, q, count, seed, max_tries)
    return _sample_y1_column_trick(model, q, count, seed, max_tries)


# ---------------------------------------------------------------------------
# smoothness certificates


def principal_pfaffians_batch(model, omegas, q):
    """Principal sub-Pfaffians of a batch of 2-form matrices over F_q.

    omegas: (N, d, d) int64.  Returns an (N, d) array; row vanishing is
    equivalent to rank <= d - 3, which the census tests exploit exhaustively.
    """
    d = model.d
    N = omegas.shape[0]
    out = np.zeros((N, d), dtype=np.int64)
    for i in range(d):
        idx = tuple(a for a in range(d) if a != i)
        acc = np.zeros(N, dtype=np.int64)
        for matching, sign in perfect_matchings(idx):
            term = np.full(N, sign, dtype=np.int64)
            for a, b in matching:
                term = (term * omegas[:, a, b]) % q
            acc = (acc + term) % q
        out[:, i] = acc
    return out


def pfaffian_jacobian_mod(model, p, q):
    """Jacobian of the d principal sub-Pfaffians at p, over F_q."""
    d = model.d
    Tq = model.tensor_mod(q)
    M = np.einsum("i,iab->ab", np.asarray(p, dtype=np.int64) % q, Tq) % q
    J = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        idx = tuple(a for a in range(d) if a != i)
        for matching, sign in perfect_matchings(idx):
            vals = [int(M[a, b]) for a, b in matching]
            for t, (a, b) in enumerate(matching):
                others = sign
                for s, val in enumerate(vals):
                    if s != t:
                        others = (others * val) % q
                J[i] = (J[i] + others * Tq[:, a, b]) % q
    return J


def y1_jacobian_mod(model, x, q):
    """Differential of the d equations A(wedge) at x, on all of Hom(S, V)."""
    d = model.d
    Aq = np.array(model.A, dtype=np.int64) % q
    u, v = (np.asarray(row, dtype=np.int64) % q for row in x)
    D = np.zeros((d, 2 * d), dtype=np.int64)
    for c, (a, b) in enumerate(model.pairs):
        col = Aq[:, c]
        D[:, a] = (D[:, a] + col * v[b]) % q
        D[:, b] = (D[:, b] - col * v[a]) % q
        D[:, d + b] = (D[:, d + b] + col * u[a]) % q
        D[:, d + a] = (D[:, d + a] - col * u[b]) % q
    return D


@dataclass
class SmoothnessReport:
    variety: str
    q: int
    requested: int
    found: int
    expected_rank: int
    ranks: list
    passed: bool
    witnesses: list = dc_field(default_factory=list)


def smoothness_sample(model, variety, n_samples=100, q=101, seed=0):
    """Exact Jacobian ranks at sampled points of Y1 or Y2 over F_q.

    Y2 points must have Jacobian rank 3 (the codimension of the stratum);
    Y1 points must have differential rank d, i.e. the linear conditions are
    transverse to the Grassmannian cone.  Finding no points at all is
    reported as a failure only when the field is large enough to expect some.
    """
    if variety not in ("Y1", "Y2"):
        raise ValueError("variety must be 'Y1' or 'Y2'")
    if q < 101:
        raise ValueError("smoothness sampling needs q >= 101; tiny fields "
                         "carry too few points for the sample budgets")
    witnesses = []
    ranks = []
    if variety == "Y2":
        pts = sample_y2_points(model, q, n_samples, seed=seed)
        expected = 3
        for p in pts:
            r = int(modq.batch_rank(pfaffian_jacobian_mod(model, p, q)[None], q)[0])
            ranks.append(r)
            if r != expected:
                witnesses.append({"point": p, "rank": r})
    else:
        xs = sample_y1_points(model, q, n_samples, seed=seed)
        expected = model.d
        for x in xs:
            r = int(modq.batch_rank(y1_jacobian_mod(model, x, q)[None], q)[0])
            ranks.append(r)
            if r != expected:
                witnesses.append({"point": x, "rank": r})
    found = len(ranks)
    passed = found == n_samples and not witnesses
    return SmoothnessReport(variety, q, n_samples, found, expected, ranks, passed, witnesses)


# ---------------------------------------------------------------------------
# kernels, isotropic extensions, critical locus


@dataclass
class KernelExtension:
    kernel: list
    extension: list
    failure: str = ""

    @property
    def ok(self):
        return not self.failure


def kernel_basis(model, p):
    """Basis of ker(omega_p) over the model field; dimension 3 on Y2."""
    return linalg.right_kernel(model.field, omega_at(model, p))


def _is_isotropic(field, omega, basis):
    for i, u in enumerate(basis):
        mu = linalg.mat_vec(field, omega, u)
        for v in basis[i:]:
            s = field.zero
            for a, b in zip(mu, v):
                s = field.add(s, field.mul(a, b))
            if not field.is_zero(s):
                return False
    return True


def isotropic_target_dim(d):
    """Largest isotropic dimension for a form of rank d - 3 on V."""
    return 3 + (d - 3) // 2


def kernel_and_extend(model, p, x):
    """Extend ker(omega_p) by directions from a Y1 plane to a maximal isotropic.

    For d = 7 the extension is the full plane of x and needs the kernel and
    the plane to be transverse; the locus where they meet is a genuine curve
    and is reported as the named failure 'kernel_meets_image'.  For d = 5 a
    single column of x suffices.
    """
    F = model.field
    r, in_y2 = y2_membership(model, p)
    if not in_y2 or r != model.degenerate_rank:
        raise ValueError(f"p has omega rank {r}, expected {model.degenerate_rank}")
    if not y1_membership(model, x):
        raise ValueError("x is not a Y1 point")
    K = kernel_basis(model, p)
    assert len(K) == 3
    xm = _coerce_matrix(F, x)
    target = isotropic_target_dim(model.d)
    need = target - 3
    stacked = [list(v) for v in K]
    added = []
    for row in xm:
        if len(added) == need:
            break
        if linalg.rank(F, stacked + [row]) == len(stacked) + 1:
            stacked.append(list(row))
            added.append(row)
    if len(added) < need:
        return KernelExtension(K, [], failure="kernel_meets_image")
    omega = omega_at(model, p)
    if not _is_isotropic(F, omega, stacked):
        return KernelExtension(K, [], failure="extension_not_isotropic")
    return KernelExtension(K, stacked)


def maximal_isotropic(model, p, seed=0):
    """A maximal isotropic subspace containing ker(omega_p), by random search."""
    F = model.field
    omega = omega_at(model, p)
    basis = kernel_basis(model, p)
    target = isotropic_target_dim(model.d)
    rng = random.Random(seed)
    guard = 0
    while len(basis) < target:
        guard += 1
        if guard > 500:
            raise RuntimeError("failed to extend isotropic subspace")
        # candidates must pair to zero with the current span
        rows = [linalg.mat_vec(F, omega, v) for v in basis]
        perp = linalg.right_kernel(F, rows) if rows else []
        cand = [F.zero] * model.d
        for v in perp:
            c = F.of_int(rng.randrange(1, 97))
            cand = [F.add(a, F.mul(c, b)) for a, b in zip(cand, v)]
        if linalg.rank(F, basis + [cand]) == len(basis) + 1:
            basis.append(cand)
    assert _is_isotropic(F, omega, basis)
    return basis


def grad_W(model, x, p):
    """All 3d partial derivatives of W(x, p) on the affine atlas.

    W is the contraction of omega_p with the wedge of the two columns of x,
    so the u- and v-partials are omega_p applied to the other column and the
    p-partials are the d wedge contractions.
    """
    F = model.field
    xm = _coerce_matrix(F, x)
    u, v = xm
    pv = [F.of_int(c) if isinstance(c, int) else c for c in p]
    omega = omega_at(model, pv)
    gu = linalg.mat_vec(F, omega, v)
    gv = [F.neg(c) for c in linalg.mat_vec(F, omega, u)]
    gp = apply_A(model, plucker_vector(F, u, v))
    return gu + gv + gp


def critical_test(model, x, p):
    """Compare the gradient verdict with the geometric one.

    Gradient: all 3d partials vanish.  Geometric: both columns lie in
    ker(omega_p) and the matrix x has rank at most 1.  The two are computed
    by disjoint routes so their agreement is a real check.
    """
    F = model.field
    xm = _coerce_matrix(F, x)
    grad = grad_W(model, xm, p)
    gradient_zero = all(F.is_zero(c) for c in grad)
    K = kernel_basis(model, p)
    rk_k = linalg.rank(F, K)
    in_kernel = all(
        linalg.rank(F, K + [row]) == rk_k for row in xm if any(not F.is_zero(c) for c in row)
    )
    rank_le_1 = linalg.rank(F, xm) <= 1
    geometric = in_kernel and rank_le_1
    flags = {
        "gradient_zero": gradient_zero,
        "image_in_kernel": in_kernel,
        "rank_le_1": rank_le_1,
        "geometric": geometric,
    }
    return gradient_zero, flags


@dataclass
class NormalMapResult:
    rank: int
    jacobian_rank: int
    kernels_match: bool

    @property
    def passed(self):
        return self.rank == 3 and self.jacobian_rank == 3 and self.kernels_match


def normal_map_check(model, p, q=101):
    """Rank of the pairing between normal directions and kernel 2-forms.

    The Jacobian J of the principal sub-Pfaffians cuts out the tangent space
    at p; each direction vector e_i restricts to the 2-form omega_{e_i} on
    the 3-dimensional kernel K_p, giving a map into the 3-dimensional space
    of 2-forms on K_p.  The check certifies that this map has rank 3 and
    kills exactly the tangent directions, which together make the induced
    map on the normal space an isomorphism.
    """
    Tq = model.tensor_mod(q)
    pv = np.asarray(p, dtype=np.int64) % q
    M = np.einsum("i,iab->ab", pv, Tq) % q
    r, K = modq.rank_and_kernel(M, q)
    if r != model.degenerate_rank:
        raise ValueError(f"omega rank {r} at p, expected {model.degenerate_rank}")
    assert K.shape[0] == 3
    pairsK = [(0, 1), (0, 2), (1, 2)]
    M3 = np.zeros((model.d, 3), dtype=np.int64)
    for i in range(model.d):
        for cidx, (s, t) in enumerate(pairsK):
            M3[i, cidx] = int(K[s] @ (Tq[i] @ K[t]) % q)
    J = pfaffian_jacobian_mod(model, p, q)
    rank_m = int(modq.batch_rank(M3.T[None] % q, q)[0])
    rank_j = int(modq.batch_rank(J[None], q)[0])
    stacked = np.concatenate([J, M3.T % q])
    match = int(modq.batch_rank(stacked[None], q)[0]) == rank_j == rank_m
    return NormalMapResult(rank_m, rank_j, match)


def underlying_scheme_probe(model, p, max_degree=6):
    """Dimensions of SL(2)-invariant functions on Hom(S, ker omega_p).

    Degree 2k carries the k-th symmetric power of the three wedge
    coordinates, so the dimensions must match a polynomial ring on three
    generators of degree 2; returned alongside that comparison.
    """
    r, in_y2 = y2_membership(model, p)
    if r != model.degenerate_rank:
        raise ValueError("probe needs a point with 3-dimensional kernel")
    base = {(1, 0): 3, (0, 1): 3}
    chars = reps.sym_power_characters(base, max_degree)
    dims = {}
    expected = {}
    for t in range(max_degree + 1):
        dims[t] = sum(reps.diagonal_isotypic(chars[t]).values())
        expected[t] = 0 if t % 2 else (t // 2 + 1) * (t // 2 + 2) // 2
    return dims, dims == expected


def rank_parity_sample(model, count, q=101, seed=0):
    """Check rank(W_p) = 2 rank(omega_p) on a batch of random points."""
    d = model.d
    Tq = model.tensor_mod(q)
    rng = np.random.default_rng(seed)
    checked = 0
    failures = []
    inv2 = pow(2, q - 2, q)
    batch = 2048
    while checked < count:
        take = min(batch, count - checked)
        ps = _rng_ints(rng, q, (take, d))
        ps = ps[ps.any(axis=1)]
        if not len(ps):
            continue
        omegas = np.einsum("xi,iab->xab", ps, Tq) % q
        r_omega = modq.batch_rank(omegas, q)
        W = np.zeros((len(ps), 2 * d, 2 * d), dtype=np.int64)
        W[:, :d, d:] = (omegas * inv2) % q
        W[:, d:, :d] = (-W[:, :d, d:].transpose(0, 2, 1)) % q
        r_w = modq.batch_rank(W, q)
        bad = np.nonzero(r_w != 2 * r_omega)[0]
        for b in bad:
            failures.append({"p": [int(c) for c in ps[b]],
                             "rank_omega": int(r_omega[b]), "rank_W": int(r_w[b])})
        checked += len(ps)
    return checked, failures


# ---------------------------------------------------------------------------
# model construction with eager certificates


def _random_A(rng, d):
    npairs = len(wedge_pairs(d))
    return tuple(tuple(rng.randint(-9, 9) for _ in range(npairs)) for _ in range(d))


def certify_model(model, census_qs=(2, 3, 5), cert_samples=5, sample_q=101):
    """Run the genericity certificates; return the name of a failure or ''."""
    if linalg.rank(QQ, [[QQ.of_int(c) for c in row] for row in model.A]) != model.d:
        return "A_not_surjective"
    for q in list(census_qs) + [sample_q]:
        Aq = np.array(model.A, dtype=np.int64) % q
        if int(modq.batch_rank(Aq[None], q)[0]) != model.d:
            return f"A_rank_drop_mod_{q}"
    for q in census_qs:
        census = rank_census(model, q)
        deep = sum(c for r, c in census.items() if r <= model.forbidden_rank)
        if deep:
            return f"deep_stratum_nonempty_q{q}"
    for variety in ("Y2", "Y1"):
        rep = smoothness_sample(model, variety, n_samples=cert_samples, q=sample_q, seed=model.seed)
        if not rep.passed:
            return f"smoothness_{variety}"
    return ""


def random_model(seed, field=None, q=101, d=7, census_qs=(2, 3, 5),
                 cert_samples=5, max_retries=25):
    """A certified-generic model, deterministic in the seed.

    Samples small integer matrices until the certificates pass: A surjective
    (also mod every census prime), the deep rank stratum empty over each
    census field, and Jacobian ranks correct at sampled points of both
    varieties.  Raises ModelCertificateError when retries run out.
    """
    if field is None:
        field = PrimeField(q)
    if isinstance(field, str):
        field = field_from_spec(field, q)
    if field.characteristic and field.characteristic < 5:
        raise ValueError("model field must be Q or F_q with q >= 5")
    rng = random.Random(seed)
    last = ""
    sample_q = field.characteristic if field.characteristic >= 101 else 101
    for attempt in range(max_retries):
        model = PfaffianModel(d=d, A=_random_A(rng, d), seed=seed + attempt, field=field)
        last = certify_model(model, census_qs, cert_samples, sample_q)
        if not last:
            return model
    raise ModelCertificateError(f"no generic model after {max_retries} tries: {last}")


# ---------------------------------------------------------------------------
# serialization


def model_to_json(model):
    fieldspec = {"name": "QQ"} if model.field == QQ else {"name": "Fq", "q": model.field.q}
    return json.dumps({
        "d": model.d,
        "seed": model.seed,
        "field": fieldspec,
        "A": [list(row) for row in model.A],
    }, indent=2, sort_keys=True)


def model_from_json(text):
    data = json.loads(text)
    f = data["field"]
    field = QQ if f["name"] == "QQ" else PrimeField(f["q"])
    return PfaffianModel(
        d=data["d"],
        A=tuple(tuple(row) for row in data["A"]),
        seed=data["seed"],
        field=field,
    )


def census_to_csv(census):
    lines = ["stratum,count"]
    for r in sorted(census):
        lines.append(f"rank_{r},{census[r]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# bulk critical-locus sweeps


@dataclass
class CriticalSweep:
    positives: int
    near_misses: int
    randoms: int
    disagreements: list
    positive_failures: int

    @property
    def consistent(self):
        return not self.disagreements


def _batch_verdicts(model, q, us, vs, ps):
    """Vectorized gradient and geometric verdicts for batches of (x, p).

    The shared conditions (both columns killed by omega_p) are computed once;
    the gradient verdict adds the vanishing of the wedge contractions, the
    geometric verdict adds the vanishing of the 2 x 2 minors of x.
    """
    Tq = model.tensor_mod(q)
    Aq = np.array(model.A, dtype=np.int64) % q
    omegas = np.einsum("xi,iab->xab", ps % q, Tq) % q
    gu = np.einsum("xab,xb->xa", omegas, vs % q) % q
    gv = np.einsum("xab,xb->xa", omegas, us % q) % q
    pairs = model.pairs
    wedge = np.empty((len(us), len(pairs)), dtype=np.int64)
    for c, (a, b) in enumerate(pairs):
        wedge[:, c] = (us[:, a] * vs[:, b] - us[:, b] * vs[:, a]) % q
    contr = (wedge @ Aq.T) % q
    in_kernel = (gu == 0).all(axis=1) & (gv == 0).all(axis=1)
    gradient_zero = in_kernel & (contr == 0).all(axis=1)
    rank_le_1 = (wedge == 0).all(axis=1)
    geometric = in_kernel & rank_le_1
    return gradient_zero, geometric


def critical_equivalence_sweep(model, q=101, n_pos=1000, n_near=1000,
                               n_rand=10000, seed=0):
    """Compare gradient and geometric criticality verdicts in bulk.

    Constructed positives are rank-one maps into the kernel at sampled
    degenerate points; near-misses are rank-two maps into the kernel and
    rank-one maps off the kernel; the rest are uniform random.  Any
    disagreement between the two verdicts is returned as a witness.
    """
    d = model.d
    rng = np.random.default_rng(seed)
    base_points = sample_y2_points(model, q, max(4, min(16, n_pos)), seed=seed + 1)
    if not base_points:
        raise RuntimeError("no degenerate points found for the sweep")
    kernels = []
    Tq = model.tensor_mod(q)
    for p in base_points:
        M = np.einsum("i,iab->ab", np.asarray(p, dtype=np.int64), Tq) % q
        _, K = modq.rank_and_kernel(M, q)
        kernels.append((np.asarray(p, dtype=np.int64), K))

    disagreements = []
    positive_failures = 0

    def record(us, vs, ps, expect_positive=False):
        nonlocal positive_failures
        grad, geo = _batch_verdicts(model, q, us, vs, ps)
        for t in np.nonzero(grad != geo)[0]:
            disagreements.append({
                "x": [[int(c) for c in us[t]], [int(c) for c in vs[t]]],
                "p": [int(c) for c in ps[t]],
                "gradient_zero": bool(grad[t]), "geometric": bool(geo[t]),
            })
        if expect_positive:
            positive_failures += int((~(grad & geo)).sum())

    # positives: u, v multiples of one kernel vector
    per = max(1, n_pos // len(kernels))
    total_pos = 0
    for p, K in kernels:
        m = min(per, n_pos - total_pos)
        if m <= 0:
            break
        coeff = _rng_ints(rng, q, (m, K.shape[0]))
        k = (coeff @ K) % q
        a = _rng_ints(rng, q, (m, 1))
        b = _rng_ints(rng, q, (m, 1))
        us = (a * k) % q
        vs = (b * k) % q
        ps = np.tile(p, (m, 1))
        record(us, vs, ps, expect_positive=True)
        total_pos += m

    # near-misses: rank 2 inside the kernel, rank 1 outside it
    half = n_near // 2
    done = 0
    for p, K in kernels:
        m = min(max(1, half // len(kernels)), half - done)
        if m <= 0:
            break
        c1 = _rng_ints(rng, q, (m, K.shape[0]))
        c2 = _rng_ints(rng, q, (m, K.shape[0]))
        us = (c1 @ K) % q
        vs = (c2 @ K) % q
        keep = np.array([
            int(modq.batch_rank(np.stack([u, v])[None], q)[0]) == 2
            for u, v in zip(us, vs)])
        ps = np.tile(p, (m, 1))
        if keep.any():
            record(us[keep.astype(bool)], vs[keep.astype(bool)],
                   ps[keep.astype(bool)])
            done += int(keep.sum())
    rest = n_near - done
    p0, K0 = kernels[0]
    us = _rng_ints(rng, q, (rest, d))
    lam = _rng_ints(rng, q, (rest, 1))
    vs = (lam * us) % q
    ps = np.tile(p0, (rest, 1))
    record(us, vs, ps)

    # uniform random points
    us = _rng_ints(rng, q, (n_rand, d))
    vs = _rng_ints(rng, q, (n_rand, d))
    ps = _rng_ints(rng, q, (n_rand, d))
    keep = ps.any(axis=1)
    record(us[keep], vs[keep], ps[keep])

    return CriticalSweep(
        positives=total_pos, near_misses=n_near, randoms=int(keep.sum()),
        disagreements=disagreements, positive_failures=positive_failures)


def find_extension_failure(model, q=101, seed=0, budget=20):
    """A pair (p, x) on the locus where the kernel meets the plane of x.

    For k inside the plane of a Y1 point, the forms annihilating k make up a
    pencil (both plane directions give universal relations, so the solution
    space is 2-dimensional); scanning the pencil for degenerate members
    produces points whose kernel meets the plane.  Returns (p, x) or None.
    """
    d = model.d
    Tq = model.tensor_mod(q)
    xs = sample_y1_points(model, q, budget, seed=seed)
    for x in xs:
        u, v = (np.asarray(row, dtype=np.int64) % q for row in x)
        candidates = [(1, t) for t in range(q)] + [(0, 1)]
        for (a, b) in candidates:
            k = (a * u + b * v) % q
            if not k.any():
                continue
            Bk = np.einsum("l,ilj->ji", k, Tq) % q
            r, ker = modq.rank_and_kernel(Bk, q)
            if r > d - 2:
                continue
            # scan the pencil of solutions for degenerate members
            pencil = [(ker[0] + t * ker[1]) % q for t in range(q)] + [ker[1] % q]
            mats = np.einsum("xi,iab->xab", np.stack(pencil), Tq) % q
            ranks = modq.batch_rank(mats, q)
            for row in np.nonzero(ranks == model.degenerate_rank)[0]:
                p = pencil[row]
                # the kernel of omega_p contains k, which lies in the plane
                stacked = np.concatenate([np.stack([u, v]), k[None]]) % q
                if int(modq.batch_rank(stacked[None], q)[0]) == 2:
                    return [int(c) for c in p], x
    return None
