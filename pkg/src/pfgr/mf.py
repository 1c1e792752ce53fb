"""Matrix factorizations with an auxiliary charge grading.

A matrix factorization of a superpotential W is a pair of free-module blocks
with an odd differential squaring to W times the identity; the charge grading
(W homogeneous of charge 2, differential of charge 1) upgrades the 2-periodic
theory to an integer-graded one.  This module verifies the defining
identities exactly, computes morphism spaces by truncated exact linear
algebra, folds resolutions into factorizations by solving lifting problems
degree by degree, and certifies the determinantal resolution of the rank-one
locus of a 2 x c matrix weight space by weight space.
"""

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb

import numpy as np

from . import linalg, modq
from .fields import QQ, PrimeField
from .poly import Poly, PolyRing, poly_mat_mul, poly_mat_is_zero


class LiftObstruction(RuntimeError):
    def __init__(self, level, column, degree):
        super().__init__(
            f"lifting failed at level {level}, column {column}, degree {degree}")
        self.level = level
        self.column = column
        self.degree = degree


def _zmat(ring, nrows, ncols):
    zero = ring.zero()
    return [[zero for _ in range(ncols)] for _ in range(nrows)]


def _mat_mul_sized(ring, a, b, nrows, ncols):
    if not a or not b or not b[0]:
        return _zmat(ring, nrows, ncols)
    return poly_mat_mul(a, b)


# ---------------------------------------------------------------------------
# matrix factorizations


class MatrixFactorization:
    """Even/odd generator charges plus the two differential blocks.

    d0 maps the odd block to the even block (rows = even generators), d1 the
    even block to the odd block (rows = odd generators); the composites must
    both equal W times the identity.
    """

    def __init__(self, ring, W, even_charges, odd_charges, d0, d1):
        self.ring = ring
        self.W = W
        self.even_charges = tuple(even_charges)
        self.odd_charges = tuple(odd_charges)
        self.d0 = d0
        self.d1 = d1

    @property
    def rank(self):
        return len(self.even_charges) + len(self.odd_charges)

    def generators(self):
        """(parity, charge) pairs, even block first."""
        return ([(0, c) for c in self.even_charges]
                + [(1, c) for c in self.odd_charges])

    def full_differential(self):
        """The rank x rank differential in the even-first generator order."""
        n0, n1 = len(self.even_charges), len(self.odd_charges)
        D = _zmat(self.ring, n0 + n1, n0 + n1)
        for i in range(n0):
            for j in range(n1):
                D[i][n0 + j] = self.d0[i][j]
        for i in range(n1):
            for j in range(n0):
                D[n0 + i][j] = self.d1[i][j]
        return D

    def shift(self, k=1):
        """Tensor with the invertible charge twist: [1] flips parity,
        raises every charge by one and negates the differential."""
        out = self
        step = 1 if k >= 0 else -1
        for _ in range(abs(k)):
            out = MatrixFactorization(
                out.ring, out.W,
                even_charges=[c + step for c in out.odd_charges],
                odd_charges=[c + step for c in out.even_charges],
                d0=[[-e for e in row] for row in out.d1],
                d1=[[-e for e in row] for row in out.d0],
            )
        return out

    def tensor(self, other):
        """Tensor product; the curvatures add."""
        if self.ring != other.ring:
            raise ValueError("tensor factors must share a ring")
        gens_a = self.generators()
        gens_b = other.generators()
        Da = self.full_differential()
        Db = other.full_differential()
        na, nb = len(gens_a), len(gens_b)
        pairs = [(i, j) for i in range(na) for j in range(nb)]
        order = sorted(pairs, key=lambda p: ((gens_a[p[0]][0] + gens_b[p[1]][0]) % 2, p))
        index = {p: t for t, p in enumerate(order)}
        D = _zmat(self.ring, len(order), len(order))
        for (i, j) in pairs:
            src = index[(i, j)]
            for i2 in range(na):
                e = Da[i2][i]
                if not e.is_zero():
                    tgt = index[(i2, j)]
                    D[tgt][src] = D[tgt][src] + e
            sign = -1 if gens_a[i][0] else 1
            for j2 in range(nb):
                e = Db[j2][j]
                if not e.is_zero():
                    tgt = index[(i, j2)]
                    D[tgt][src] = D[tgt][src] + e * sign
        gens = [((gens_a[p[0]][0] + gens_b[p[1]][0]) % 2,
                 gens_a[p[0]][1] + gens_b[p[1]][1]) for p in order]
        return from_full_differential(self.ring, self.W + other.W, gens, D)


def from_full_differential(ring, W, gens, D):
    """Assemble a MatrixFactorization from generator data and a full matrix."""
    ev = [t for t, (p, _) in enumerate(gens) if p == 0]
    od = [t for t, (p, _) in enumerate(gens) if p == 1]
    d0 = [[D[i][j] for j in od] for i in ev]
    d1 = [[D[j][i] for i in ev] for j in od]
    return MatrixFactorization(
        ring, W,
        even_charges=[gens[t][1] for t in ev],
        odd_charges=[gens[t][1] for t in od],
        d0=d0, d1=d1)


@dataclass
class MFVerifyResult:
    ok: bool
    reason: str = ""
    witness: dict = dc_field(default_factory=dict)
    parity_consistent: bool = True

    def __bool__(self):
        return self.ok


def mf_verify(E, W=None):
    """Exact check of the square identity and all homogeneity constraints.

    The parity/charge evenness convention (even generators of even charge) is
    reported separately and does not fail the verdict: on dilation-weight-one
    fibres the convention is violated and the offending sign is absorbed by
    the gauge group.
    """
    if W is None:
        W = E.W
    ring = E.ring
    n0, n1 = len(E.even_charges), len(E.odd_charges)
    checks = (
        ("d0*d1", _mat_mul_sized(ring, E.d0, E.d1, n0, n0), n0),
        ("d1*d0", _mat_mul_sized(ring, E.d1, E.d0, n1, n1), n1),
    )
    for name, prod, size in checks:
        for i in range(size):
            for j in range(size):
                want = W if i == j else ring.zero()
                if prod[i][j] != want:
                    return MFVerifyResult(
                        False, f"{name} differs from W*id",
                        {"entry": (i, j), "difference": repr(prod[i][j] - want)})
    wc = W.homogeneous_charge()
    if not W.is_zero() and wc != 2:
        return MFVerifyResult(False, "W is not homogeneous of charge 2",
                              {"charge": wc})
    for name, block, rows, cols in (
        ("d0", E.d0, E.even_charges, E.odd_charges),
        ("d1", E.d1, E.odd_charges, E.even_charges),
    ):
        for i, ci in enumerate(rows):
            for j, cj in enumerate(cols):
                e = block[i][j]
                if e.is_zero():
                    continue
                want = cj + 1 - ci
                if e.homogeneous_charge() != want:
                    return MFVerifyResult(
                        False, f"{name} entry charge mismatch",
                        {"entry": (i, j), "expected": want,
                         "got": e.homogeneous_charge()})
    parity_ok = all(c % 2 == 0 for c in E.even_charges) and \
        all(c % 2 == 1 for c in E.odd_charges)
    return MFVerifyResult(True, parity_consistent=parity_ok)


def hypersurface_factor(ring, f, g):
    """The rank-2 factorization (O <-> O; f, g) of W = f*g."""
    cf = f.homogeneous_charge()
    cg = g.homogeneous_charge()
    if cf is None or cg is None or cf + cg != 2:
        raise ValueError("factor charges must sum to 2")
    return MatrixFactorization(
        ring, f * g,
        even_charges=[0], odd_charges=[cf - 1],
        d0=[[f]], d1=[[g]])


def zero_locus_stabilization(ring, W):
    """The factorization (O[1] <-> O; W, 1).

    It represents the structure sheaf of the whole zero locus of W and is
    contractible; the Ext computations exhibit this as vanishing morphism
    spaces against every object.
    """
    return MatrixFactorization(
        ring, W,
        even_charges=[0], odd_charges=[1],
        d0=[[W]], d1=[[ring.one()]])


def free_module_mf(ring, charge=0):
    """A single free generator with zero differential, for W = 0."""
    return MatrixFactorization(ring, ring.zero(),
                               even_charges=[charge], odd_charges=[],
                               d0=[[]], d1=[])


# ---------------------------------------------------------------------------
# graded complexes and the perturbation construction


class GradedComplex:
    """Free modules F_0..F_L with differentials d_k: F_{k+1} -> F_k.

    Generator charges follow the convention that makes every differential
    have charge 1 (entry charge = source charge + 1 - target charge).
    """

    def __init__(self, ring, charges, diffs):
        self.ring = ring
        self.charges = [tuple(c) for c in charges]
        self.diffs = diffs
        if len(diffs) != len(self.charges) - 1:
            raise ValueError("need one differential per adjacent pair")

    @property
    def length(self):
        return len(self.charges) - 1

    def verify(self):
        """Composites vanish and all entries are charge homogeneous."""
        for k in range(len(self.diffs) - 1):
            if not poly_mat_is_zero(poly_mat_mul(self.diffs[k], self.diffs[k + 1])):
                return False
        for k, mat in enumerate(self.diffs):
            tgt, src = self.charges[k], self.charges[k + 1]
            for i, ci in enumerate(tgt):
                for j, cj in enumerate(src):
                    e = mat[i][j]
                    if not e.is_zero() and e.homogeneous_charge() != cj + 1 - ci:
                        return False
        return True


def koszul_complex(ring, elements):
    """The Koszul complex of a list of homogeneous ring elements.

    The generator indexed by a subset I sits in term |I| with charge
    sum(charge(f_i) - 1 for i in I).
    """
    s = len(elements)
    charges_of = [f.homogeneous_charge() for f in elements]
    if any(c is None for c in charges_of):
        raise ValueError("Koszul inputs must be charge homogeneous")
    charges = []
    bases = []
    for k in range(s + 1):
        basis = list(combinations(range(s), k))
        bases.append(basis)
        charges.append(tuple(sum(charges_of[i] - 1 for i in I) for I in basis))
    diffs = []
    for k in range(s):
        tgt, src = bases[k], bases[k + 1]
        tidx = {I: t for t, I in enumerate(tgt)}
        mat = _zmat(ring, len(tgt), len(src))
        for j, J in enumerate(src):
            for pos, i in enumerate(J):
                I = tuple(a for a in J if a != i)
                sign = -1 if pos % 2 else 1
                mat[tidx[I]][j] = mat[tidx[I]][j] + elements[i] * sign
        diffs.append(mat)
    return GradedComplex(ring, charges, diffs)


def _solve_lift(ring, U, B, level):
    """Solve U @ X = B over the ring, column by column.

    The unknown support is found by closing the right-hand side's monomial
    support under division by monomials of U; each closure is one exact
    linear system over the ground field.  For the structured differentials
    this package feeds in, the closures stay small.  Raises LiftObstruction
    when a column is inconsistent.
    """
    F = ring.field
    nrows = len(B)
    nmid = len(U[0]) if U and U[0] else 0
    ncols = len(B[0]) if B else 0
    X = _zmat(ring, nmid, ncols)
    by_mid = {}
    by_row = {}
    for i in range(len(U)):
        for t in range(nmid):
            e = U[i][t]
            if not e.is_zero():
                by_mid.setdefault(t, []).append((i, e))
                by_row.setdefault(i, []).append((t, e))
    for j in range(ncols):
        rhs = {}
        for i in range(nrows):
            for m, c in B[i][j].coeffs.items():
                rhs[(i, m)] = c
        if not rhs:
            continue
        unknowns = {}
        rows = {}
        frontier = list(rhs)
        while frontier:
            fresh = []
            for (i, m) in frontier:
                if (i, m) in rows:
                    continue
                rows[(i, m)] = len(rows)
                for (t, e) in by_row.get(i, []):
                    for mu in e.coeffs:
                        if all(a >= b for a, b in zip(m, mu)):
                            key = (t, tuple(a - b for a, b in zip(m, mu)))
                            if key not in unknowns:
                                unknowns[key] = len(unknowns)
                                fresh.append(key)
            frontier = []
            for (t, m) in fresh:
                for (i, e) in by_mid.get(t, []):
                    for mu in e.coeffs:
                        key = (i, tuple(a + b for a, b in zip(m, mu)))
                        if key not in rows:
                            frontier.append(key)
        if isinstance(F, PrimeField):
            mat = np.zeros((len(rows), len(unknowns)), dtype=np.int64)
            vec = np.zeros(len(rows), dtype=np.int64)
            for (t, m), col in unknowns.items():
                for (i, e) in by_mid.get(t, []):
                    for mu, c in e.coeffs.items():
                        row = rows[(i, tuple(a + b for a, b in zip(m, mu)))]
                        mat[row, col] = (mat[row, col] + c) % F.q
            for key, c in rhs.items():
                vec[rows[key]] = c % F.q
            np_sol = modq.solve(mat, vec, F.q)
            sol = None if np_sol is None else [int(v) for v in np_sol]
        else:
            mat = [[F.zero] * len(unknowns) for _ in range(len(rows))]
            for (t, m), col in unknowns.items():
                for (i, e) in by_mid.get(t, []):
                    for mu, c in e.coeffs.items():
                        row = rows[(i, tuple(a + b for a, b in zip(m, mu)))]
                        mat[row][col] = F.add(mat[row][col], c)
            vec = [F.zero] * len(rows)
            for key, c in rhs.items():
                vec[rows[key]] = c
            sol = linalg.solve(F, mat, vec)
        if sol is None:
            raise LiftObstruction(level, j, min(sum(m) for (_, m) in rhs))
        for (t, m), col in unknowns.items():
            c = sol[col]
            if not F.is_zero(c):
                X[t][j] = X[t][j] + Poly(ring, {m: c})
    return X


def koszul_perturb(C, W):
    """Fold a resolution into a matrix factorization of W.

    Correction maps raising the homological index by 1, 3, 5, ... are solved
    for order by order, lowest internal degree first.  Each step is a lifting
    problem through the next differential; the lifts exist exactly when the
    complex is exact in positive degrees and W annihilates the resolved
    cokernel, and a failed lift raises LiftObstruction with the offending
    degree.  With W = 0 no corrections are needed and the complex comes back
    folded but otherwise unchanged.
    """
    ring = C.ring
    L = C.length
    sigmas = {}
    if not W.is_zero():
        j = 0
        while True:
            j += 1
            raise_by = 2 * j - 1
            if raise_by > L + 1:
                break
            prev = None
            solved_any = False
            for k in range(L + 1):
                target = k + raise_by - 1
                if target > L:
                    prev = None
                    continue
                nt = len(C.charges[target])
                nk = len(C.charges[k])
                rhs = _zmat(ring, nt, nk)
                if j == 1:
                    for i in range(nk):
                        rhs[i][i] = W
                else:
                    for a in range(1, j):
                        b = j - a
                        sa = sigmas.get((a, k + 2 * b - 1))
                        sb = sigmas.get((b, k))
                        if sa is not None and sb is not None:
                            prod = poly_mat_mul(sa, sb)
                            for r in range(nt):
                                for c2 in range(nk):
                                    rhs[r][c2] = rhs[r][c2] - prod[r][c2]
                if prev is not None and k >= 1:
                    corr = poly_mat_mul(prev, C.diffs[k - 1])
                    for r in range(nt):
                        for c2 in range(nk):
                            rhs[r][c2] = rhs[r][c2] - corr[r][c2]
                if k + raise_by > L:
                    # no room to lift: the identity must already hold
                    if any(not e.is_zero() for row in rhs for e in row):
                        raise LiftObstruction(k, -1,
                                              max(e.degree() for row in rhs
                                                  for e in row if not e.is_zero()))
                    prev = None
                    continue
                X = _solve_lift(ring, C.diffs[target], rhs, level=k)
                prev = X
                if any(not e.is_zero() for row in X for e in row):
                    sigmas[(j, k)] = X
                    solved_any = True
            if not solved_any:
                break

    gens = []
    offsets = []
    for k in range(L + 1):
        offsets.append(len(gens))
        gens.extend((k % 2, c) for c in C.charges[k])
    n = len(gens)
    D = _zmat(ring, n, n)
    for k in range(L):
        for i, row in enumerate(C.diffs[k]):
            for j2, e in enumerate(row):
                if not e.is_zero():
                    D[offsets[k] + i][offsets[k + 1] + j2] = e
    for (j, k), mat in sigmas.items():
        tgt = k + 2 * j - 1
        for i, row in enumerate(mat):
            for j2, e in enumerate(row):
                if not e.is_zero():
                    D[offsets[tgt] + i][offsets[k] + j2] = e
    return from_full_differential(ring, W, gens, D)


# ---------------------------------------------------------------------------
# morphism spaces by truncation


@dataclass
class ExtResult:
    dims: dict
    dims_previous: dict
    truncation: int
    charge_cap: int

    @property
    def stabilized(self):
        keys = {k for k in self.dims if k[1] <= self.charge_cap}
        keys |= {k for k in self.dims_previous if k[1] <= self.charge_cap}
        return all(self.dims.get(k, 0) == self.dims_previous.get(k, 0) for k in keys)

    @property
    def total_dimension(self):
        return sum(v for (p, r), v in self.dims.items() if r <= self.charge_cap)

    def parity_totals(self):
        out = {0: 0, 1: 0}
        for (p, r), v in self.dims.items():
            if r <= self.charge_cap:
                out[p] += v
        return out

    def capped(self):
        return {k: v for k, v in sorted(self.dims.items()) if k[1] <= self.charge_cap}


def hom_ext_truncated(E, F, trunc, charge_cap=None):
    """Graded dimensions of morphisms from E to F, truncated in total degree.

    Builds the finite-dimensional slabs of the Hom complex up to the degree
    cutoff, applies the graded-commutator differential, and computes homology
    by exact rank computations (vectorized over prime fields, fractions over
    Q).  Every variable must have charge at least 1: then a charge slab only
    contains monomials of degree at most its charge, so every slab below the
    cap is complete and its homology is exact, not an approximation.  The
    stabilization flag compares against the cutoff lowered by one and reports
    whether anything inside the cap moved.
    """
    if E.ring != F.ring:
        raise ValueError("objects must share a ring")
    if E.W != F.W:
        raise ValueError("morphisms only exist between factorizations of the "
                         "same superpotential")
    if trunc < 2:
        raise ValueError("truncation must be at least 2")
    if E.ring.nvars and min(E.ring.charges) < 1:
        raise ValueError(
            "morphism computations need every variable charge >= 1 "
            "(renormalize the charge torus; weight-0 conventions are only "
            "supported by the verification and perturbation routines)")
    dims = _ext_dims(E, F, trunc)
    dims_prev = _ext_dims(E, F, trunc - 1)
    if charge_cap is None:
        base_charges = [cf - ce for (_, cf) in F.generators()
                        for (_, ce) in E.generators()]
        # the window on which both runs are provably complete
        charge_cap = trunc - 2 + min(base_charges, default=0)
    return ExtResult(dims, dims_prev, trunc, charge_cap)


def _ext_dims(E, F, trunc):
    ring = E.ring
    field = ring.field
    gens_e = E.generators()
    gens_f = F.generators()
    Ed = E.full_differential()
    Fd = F.full_differential()

    monos = []
    for d in range(trunc + 1):
        monos.extend(ring.monomials_of_degree(d))
    slabs = {}
    base_charges = []
    for i, (pf, cf) in enumerate(gens_f):
        for j, (pe, ce) in enumerate(gens_e):
            par = (pf + pe) % 2
            base = cf - ce
            base_charges.append(base)
            for m in monos:
                key = (par, base + ring.monomial_charge(m))
                slabs.setdefault(key, []).append((i, j, m))
    index = {key: {b: t for t, b in enumerate(basis)} for key, basis in slabs.items()}
    # a slab at charge r is complete once r - base <= trunc for every
    # component, since charges >= 1 bound monomial degree by charge
    r_complete = trunc + (min(base_charges) if base_charges else 0)

    ranks = {}
    for key, src in slabs.items():
        par, r = key
        if r + 1 > r_complete:
            continue
        tgt_index = index.get(((par + 1) % 2, r + 1), {})
        if not tgt_index or not src:
            ranks[key] = 0
            continue
        entries = []
        for col, (i, j, m) in enumerate(src):
            # D(phi) = d_F o phi - (-1)^{parity(phi)} phi o d_E
            second_sign = -1 if par == 0 else 1
            for k in range(len(gens_f)):
                e = Fd[k][i]
                if e.is_zero():
                    continue
                for mu, c in e.coeffs.items():
                    mm = tuple(a + b for a, b in zip(m, mu))
                    if sum(mm) <= trunc:
                        t = tgt_index.get((k, j, mm))
                        if t is not None:
                            entries.append((t, col, c))
            for l in range(len(gens_e)):
                e = Ed[j][l]
                if e.is_zero():
                    continue
                for mu, c in e.coeffs.items():
                    mm = tuple(a + b for a, b in zip(m, mu))
                    if sum(mm) <= trunc:
                        t = tgt_index.get((i, l, mm))
                        if t is not None:
                            val = field.neg(c) if second_sign < 0 else c
                            entries.append((t, col, val))
        if not entries:
            ranks[key] = 0
        elif isinstance(field, PrimeField):
            mat = np.zeros((len(tgt_index), len(src)), dtype=np.int64)
            for t, c_, v in entries:
                mat[t, c_] = (mat[t, c_] + v) % field.q
            ranks[key] = int(modq.batch_rank(mat[None], field.q)[0])
        else:
            mat = [[field.zero] * len(src) for _ in range(len(tgt_index))]
            for t, c_, v in entries:
                mat[t][c_] = field.add(mat[t][c_], v)
            ranks[key] = linalg.rank(field, mat)

    dims = {}
    for (par, r), basis in slabs.items():
        if r + 1 > r_complete:
            continue
        h = len(basis) - ranks.get((par, r), 0) - ranks.get(((par + 1) % 2, r - 1), 0)
        assert h >= 0
        if h:
            dims[(par, r)] = h
    return dims


# ---------------------------------------------------------------------------
# the determinantal resolution of the rank-one locus


@dataclass
class DeterminantalResult:
    columns: int
    term_ranks: tuple
    generator_degrees: tuple
    sym_degrees: tuple
    composites_zero: bool
    homology_failures: list
    coker_dims: dict
    segre_dims: dict
    degree_cutoff: int

    @property
    def exact(self):
        return (self.composites_zero and not self.homology_failures
                and self.coker_dims == self.segre_dims)


def _en_terms(c):
    """Generators of the resolution terms for a generic 2 x c matrix.

    Term 0 is the free rank-one module; term 1 is indexed by column pairs;
    term k >= 2 by (k+1)-subsets of columns together with a symmetric tensor
    g1^a1 g2^a2 of the two rows, a1 + a2 = k - 1.  Each generator carries a
    multidegree (row part, column part) making all differentials homogeneous.
    """
    terms = [[((), (0, 0))]]
    terms.append([(I, (0, 0)) for I in combinations(range(c), 2)])
    k = 2
    while k + 1 <= c:
        gens = []
        for I in combinations(range(c), k + 1):
            for a1 in range(k):
                gens.append((I, (a1, k - 1 - a1)))
        terms.append(gens)
        k += 1
    return terms


def _en_gen_multidegree(c, level, gen):
    I, (a1, a2) = gen
    cols = [0] * c
    for i in I:
        cols[i] += 1
    rows = (0, 0) if level == 0 else (1 + a1, 1 + a2)
    return rows, tuple(cols)


def eagon_northcott_complex(ring, c):
    """The resolution of the rank-one locus ideal of a generic 2 x c matrix.

    Variables of the ring must be ordered y11..y1c, y21..y2c.  Differentials
    contract one column index against a row of the matrix, pairing the wedge
    factor with the symmetric factor.
    """

    def y(s, i):
        return ring.var(s * c + i)

    terms = _en_terms(c)
    diffs = []
    # term 1 -> term 0: the 2x2 minors
    m0 = _zmat(ring, 1, len(terms[1]))
    for j, (I, _) in enumerate(terms[1]):
        i1, i2 = I
        m0[0][j] = y(0, i1) * y(1, i2) - y(0, i2) * y(1, i1)
    diffs.append(m0)
    for k in range(2, len(terms)):
        src = terms[k]
        tgt = terms[k - 1]
        tidx = {g: t for t, g in enumerate(tgt)}
        mat = _zmat(ring, len(tgt), len(src))
        for j, (I, (a1, a2)) in enumerate(src):
            for pos, i in enumerate(I):
                sign = -1 if pos % 2 else 1
                rest = tuple(a for a in I if a != i)
                if a1 > 0:
                    t = tidx[(rest, (a1 - 1, a2))]
                    mat[t][j] = mat[t][j] + y(0, i) * sign
                if a2 > 0:
                    t = tidx[(rest, (a1, a2 - 1))]
                    mat[t][j] = mat[t][j] + y(1, i) * sign
        diffs.append(mat)
    return terms, diffs


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _monomials_with_multidegree(c, rows, cols):
    """Exponent tuples (y11..y1c, y21..y2c) with given row and column sums."""
    r1, r2 = rows

    def rec(i, remaining):
        if i == c:
            if remaining == 0:
                yield ()
            return
        hi = min(cols[i], remaining)
        for n1 in range(hi + 1):
            for tail in rec(i + 1, remaining - n1):
                yield (n1,) + tail

    out = []
    for top in rec(0, r1):
        if all(cols[i] - top[i] >= 0 for i in range(c)):
            bottom = tuple(cols[i] - top[i] for i in range(c))
            if sum(bottom) == r2:
                out.append(top + bottom)
    return out


def eagon_northcott_check(c=4, degree_cutoff=8, field=None):
    """Certify the rank-one locus resolution for a generic 2 x c matrix.

    Composites are checked as polynomial identities.  Exactness in every
    internal degree up to the cutoff is checked weight space by weight space
    (the differentials preserve the full torus multidegree, so each weight
    gives a small exact-arithmetic rank computation).  The cokernel dimensions
    are compared against the independent count of functions on the cone over
    the Segre product, dim_t = (t+1) * C(t+c-1, c-1).
    """
    if field is None:
        field = QQ
    if c < 2:
        raise ValueError("need at least two columns")
    names = [f"y1{i}" for i in range(c)] + [f"y2{i}" for i in range(c)]
    ring = PolyRing(field, names, charges=(1,) * (2 * c))
    terms, diffs = eagon_northcott_complex(ring, c)
    composites_zero = all(
        poly_mat_is_zero(poly_mat_mul(diffs[k], diffs[k + 1]))
        for k in range(len(diffs) - 1))

    multidegrees = [
        [_en_gen_multidegree(c, k, g) for g in gens] for k, gens in enumerate(terms)
    ]

    homology_failures = []
    coker = {}
    for t in range(degree_cutoff + 1):
        coker[t] = 0
        for r1 in range(t + 1):
            rows = (r1, t - r1)
            for cols in _compositions(t, c):
                # slab bases per term
                bases = []
                for k in range(len(terms)):
                    basis = []
                    for gi, (grows, gcols) in enumerate(multidegrees[k]):
                        mr = (rows[0] - grows[0], rows[1] - grows[1])
                        if mr[0] < 0 or mr[1] < 0:
                            continue
                        mc = tuple(cols[i] - gcols[i] for i in range(c))
                        if any(v < 0 for v in mc):
                            continue
                        for exp in _monomials_with_multidegree(c, mr, mc):
                            basis.append((gi, exp))
                    bases.append(basis)
                mats = []
                for k in range(len(diffs)):
                    tgt_index = {b: i for i, b in enumerate(bases[k])}
                    mat = [[field.zero] * len(bases[k + 1]) for _ in range(len(bases[k]))]
                    for col, (gi, exp) in enumerate(bases[k + 1]):
                        for ti in range(len(terms[k])):
                            e = diffs[k][ti][gi]
                            if e.is_zero():
                                continue
                            for mu, cf in e.coeffs.items():
                                key = (ti, tuple(a + b for a, b in zip(exp, mu)))
                                ri = tgt_index.get(key)
                                if ri is not None:
                                    mat[ri][col] = field.add(mat[ri][col], cf)
                    mats.append(mat)
                ranks = [linalg.rank(field, m) if m and m[0] else 0 for m in mats]
                for k in range(1, len(bases)):
                    rank_out = ranks[k - 1]
                    rank_in = ranks[k] if k < len(mats) else 0
                    h = len(bases[k]) - rank_out - rank_in
                    if h:
                        homology_failures.append(
                            {"spot": k, "weight": (rows, cols), "dim": h})
                coker[t] += len(bases[0]) - ranks[0]
    segre = {t: (t + 1) * comb(t + c - 1, c - 1) for t in range(degree_cutoff + 1)}
    term_ranks = tuple(len(g) for g in terms)
    gen_degrees = tuple(0 if k == 0 else k + 1 for k in range(len(terms)))
    sym_degrees = tuple(0 if k <= 1 else k - 1 for k in range(len(terms)))
    return DeterminantalResult(
        columns=c, term_ranks=term_ranks, generator_degrees=gen_degrees,
        sym_degrees=sym_degrees, composites_zero=composites_zero,
        homology_failures=homology_failures, coker_dims=coker,
        segre_dims=segre, degree_cutoff=degree_cutoff)


# ---------------------------------------------------------------------------
# the fibrewise point-object check


def convolve_dims(d1, d2, cap):
    out = {}
    for (p1, r1), v1 in d1.items():
        for (p2, r2), v2 in d2.items():
            if r1 + r2 <= cap:
                key = ((p1 + p2) % 2, r1 + r2)
                out[key] = out.get(key, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}


@dataclass
class KnorrerCheck:
    dims: dict
    radical_dimension: int
    hyperbolic_pairs: int
    split_certified: bool
    full_rank_factorization_ok: bool
    factor_totals: list
    stabilized: bool
    invariant_dims: dict
    kernel_function_dims: dict

    @property
    def matches_kernel_functions(self):
        return all(self.dims.get((0, r), 0) == v
                   for r, v in self.kernel_function_dims.items())


def knorrer_rank_check(model, p, L_basis, trunc=6):
    """Graded self-Ext of the structure sheaf of Hom(S, L_p) on one fibre.

    The quadratic form W_p is split exactly: a basis adapted to the chosen
    maximal isotropic M_p = Hom(S, L_p) is completed to hyperbolic pairs plus
    the radical, and the change of basis is certified by an exact matrix
    identity.  Each hyperbolic pair contributes a point-like factor (total
    dimension 1, computed honestly by truncation), the radical contributes
    the functions on the kernel of W_p, and the graded dimensions multiply.
    The output therefore matches the functions on Hom(S, ker omega_p): the
    object is a skyscraper along the kernel directions, fattened by nothing
    in the hyperbolic ones.  The SL(2)-invariant slice of those kernel
    functions (three quadratic generators) is reported alongside.

    As a model-level certificate, the Koszul resolution of M_p inside the
    full coordinate ring is also perturbed into a factorization of the actual
    quadratic polynomial and verified exactly.
    """
    from . import geometry
    F = model.field
    d = model.d
    n = 2 * d
    B = geometry.quadratic_form_matrix(model, p)

    def bform(u, v):
        s = F.zero
        for a in range(n):
            if F.is_zero(u[a]):
                continue
            for b in range(n):
                if B[a][b] != F.zero and not F.is_zero(v[b]):
                    s = F.add(s, F.mul(u[a], F.mul(B[a][b], v[b])))
        return s

    Lm = [[F.of_int(c) if isinstance(c, int) else c for c in row] for row in L_basis]
    M_vectors = [row + [F.zero] * d for row in Lm] + [[F.zero] * d + row for row in Lm]
    for i, u in enumerate(M_vectors):
        for v in M_vectors[i:]:
            if not F.is_zero(bform(u, v)):
                raise ValueError("the given subspace is not isotropic for W_p")
    radical = linalg.right_kernel(F, B)
    rad_dim = len(radical)
    stacked = [list(v) for v in M_vectors]
    if linalg.rank(F, stacked) != linalg.rank(F, stacked + [list(r) for r in radical]):
        raise ValueError("the radical is not contained in the isotropic subspace")

    adapted = [list(r) for r in radical]
    ms = []
    for v in M_vectors:
        if linalg.rank(F, adapted + [list(v)]) == len(adapted) + 1:
            adapted.append(list(v))
            ms.append(list(v))
    h = len(ms)

    pairing_rows = [linalg.mat_vec(F, B, m) for m in ms]
    ns = []
    for j in range(h):
        target = [F.one if i == j else F.zero for i in range(h)]
        v = linalg.solve(F, pairing_rows, target)
        assert v is not None
        ns.append(v)
    half = F.inv(F.of_int(2))
    corrected = []
    for j in range(h):
        nj = list(ns[j])
        for k in range(h):
            coef = F.mul(half, bform(ns[k], ns[j]))
            nj = [F.sub(a, F.mul(coef, b)) for a, b in zip(nj, ms[k])]
        corrected.append(nj)
    ns = corrected

    basis = ms + ns + [list(r) for r in radical]
    split_ok = len(basis) == n and linalg.rank(F, basis) == n
    if split_ok:
        for i, u in enumerate(basis):
            for j, v in enumerate(basis):
                val = bform(u, v)
                if i < h and j == h + i or j < h and i == h + j:
                    want = F.one
                else:
                    want = F.zero
                if val != want:
                    split_ok = False
                    break
            if not split_ok:
                break

    # honest truncated computation on each split factor
    ring2 = PolyRing(F, ("u", "v"), (1, 1))
    pair_mf = hypersurface_factor(ring2, ring2.var(0), ring2.var(1))
    pair_ext = hom_ext_truncated(pair_mf, pair_mf, trunc)
    factor_totals = [pair_ext.total_dimension] * h
    ring_rad = PolyRing(F, tuple(f"z{i}" for i in range(rad_dim)), (1,) * rad_dim)
    rad_ext = hom_ext_truncated(free_module_mf(ring_rad), free_module_mf(ring_rad), trunc)

    cap = min(pair_ext.charge_cap, rad_ext.charge_cap)
    dims = rad_ext.capped()
    for _ in range(h):
        dims = convolve_dims(dims, pair_ext.capped(), cap)

    # model-level certificate: perturb the actual Koszul resolution of M_p
    names = tuple(f"x{i}" for i in range(n))
    ring_full = PolyRing(F, names, (1,) * n)
    W_poly = ring_full.zero()
    for a in range(n):
        for b in range(n):
            if not F.is_zero(B[a][b]):
                mono = [0] * n
                mono[a] += 1
                mono[b] += 1
                W_poly = W_poly + Poly(ring_full, {tuple(mono): B[a][b]})
    cutters = []
    for m in ms:
        row = linalg.mat_vec(F, B, m)
        form = ring_full.zero()
        for a, cval in enumerate(row):
            if not F.is_zero(cval):
                mono = [0] * n
                mono[a] = 1
                form = form + Poly(ring_full, {tuple(mono): cval})
        cutters.append(form)
    full_ok = False
    if split_ok:
        stab = koszul_perturb(koszul_complex(ring_full, cutters), W_poly)
        full_ok = bool(mf_verify(stab))

    from .reps import sym_power_characters, diagonal_isotypic
    chars = sym_power_characters({(1, 0): 3, (0, 1): 3}, max(cap, 0))
    invariant_dims = {}
    kernel_fn = {}
    for r in range(max(cap + 1, 0)):
        invariant_dims[r] = sum(diagonal_isotypic(chars[r]).values()) if r < len(chars) else 0
        kernel_fn[r] = comb(r + rad_dim - 1, rad_dim - 1)
    return KnorrerCheck(
        dims=dims, radical_dimension=rad_dim, hyperbolic_pairs=h,
        split_certified=split_ok, full_rank_factorization_ok=full_ok,
        factor_totals=factor_totals,
        stabilized=pair_ext.stabilized and rad_ext.stabilized,
        invariant_dims=invariant_dims, kernel_function_dims=kernel_fn)
