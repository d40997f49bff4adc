"""Exact linear algebra over Z/n and small Galois fields.

Everything factors through prime-power components: a matrix over Z/n is
handled per prime power via CRT, and each Z/p^k component uses elimination
with minimal-valuation pivoting (every Z/p^k matrix is equivalent to a
diagonal of prime powers).  Dense work is done in numpy int64; a bitset
path handles large sparse rank computations over GF(2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np


class NotContained(Exception):
    """Raised when claimed subgroup generators do not lie in the span."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def factorize(n: int) -> dict[int, int]:
    """Prime factorization {p: k} of n >= 1 by trial division."""
    out: dict[int, int] = {}
    d, m = 2, n
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


@dataclass(frozen=True)
class PrimePower:
    p: int
    k: int

    @property
    def q(self) -> int:
        return self.p ** self.k


def _crt_split(n: int) -> list[PrimePower]:
    return [PrimePower(p, k) for p, k in sorted(factorize(n).items())]


def _idempotents(n: int) -> dict[int, int]:
    """e_p with e_p = 1 mod p^k and e_p = 0 mod n/p^k."""
    out = {}
    for pp in _crt_split(n):
        m = n // pp.q
        _, _, y = xgcd(pp.q, m)
        out[pp.p] = (m * y) % n
    return out


def _as_array(mat, q: int) -> np.ndarray:
    A = np.asarray(mat, dtype=np.int64) % q
    if A.ndim == 1:
        A = A.reshape(1, -1)
    return A


def _val(x: int, p: int, k: int) -> int:
    """p-adic valuation of x mod p^k (k if x == 0)."""
    if x == 0:
        return k
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


class ZpkOps:
    """Elimination toolkit over Z/p^k with minimal-valuation pivoting."""

    def __init__(self, p: int, k: int):
        self.p, self.k, self.q = p, k, p ** k

    def _unit_inv(self, u: int) -> int:
        return pow(int(u) % self.q, -1, self.q)

    def echelon(self, mat) -> tuple[np.ndarray, np.ndarray, list[tuple[int, int, int]]]:
        """Row reduce: returns (E, T, pivots) with T @ mat == E (mod q).

        Pivots are (row, col, valuation) with the pivot entry normalized to
        p^valuation.  Columns are scanned left to right; within the active
        block the entry of minimal valuation at the lowest row index wins.
        """
        q, p, k = self.q, self.p, self.k
        E = _as_array(mat, q).copy()
        m, n = E.shape
        T = np.eye(m, dtype=np.int64)
        pivots: list[tuple[int, int, int]] = []
        r = 0
        for c in range(n):
            if r >= m:
                break
            best_v, best_i = k, -1
            for i in range(r, m):
                x = int(E[i, c])
                if x:
                    v = _val(x, p, k)
                    if v < best_v:
                        best_v, best_i = v, i
                        if v == 0:
                            break
            if best_i < 0:
                continue
            if best_i != r:
                E[[r, best_i]] = E[[best_i, r]]
                T[[r, best_i]] = T[[best_i, r]]
            pv = p ** best_v
            u = int(E[r, c]) // pv
            ui = self._unit_inv(u)
            E[r] = (E[r] * ui) % q
            T[r] = (T[r] * ui) % q
            for i in range(m):
                if i == r:
                    continue
                x = int(E[i, c])
                if x and x % pv == 0:
                    f = x // pv
                    E[i] = (E[i] - f * E[r]) % q
                    T[i] = (T[i] - f * T[r]) % q
            pivots.append((r, c, best_v))
            r += 1
        return E, T, pivots

    def solve(self, mat, rhs) -> np.ndarray | None:
        """One solution x of mat @ x = rhs (mod q), or None."""
        q, p = self.q, self.p
        A = _as_array(mat, q)
        b = np.asarray(rhs, dtype=np.int64).reshape(-1) % q
        m, n = A.shape
        c = b.copy()
        D, U, V, vals = self.snf(A, want_U=False, carry=c)
        y = np.zeros(n, dtype=np.int64)
        for t, v in enumerate(vals):
            pv = p ** v
            if int(c[t]) % pv:
                return None
            y[t] = (int(c[t]) // pv) % q
        for t in range(len(vals), m):
            if int(c[t]) % q:
                return None
        x = (V @ y) % q
        assert not ((A @ x - b) % q).any()
        return x

    def snf(self, mat, want_U: bool = True, want_V: bool = True,
            carry: np.ndarray | None = None
            ) -> tuple[np.ndarray, np.ndarray | None, np.ndarray | None, list[int]]:
        """See _snf_impl; `carry` is a vector transformed like U @ carry."""
        return self._snf_impl(mat, want_U, want_V, carry)

    def _snf_impl(self, mat, want_U: bool = True, want_V: bool = True,
                  carry: np.ndarray | None = None
                  ) -> tuple[np.ndarray, np.ndarray | None, np.ndarray | None, list[int]]:
        """Diagonalize mod q: U @ mat @ V = D with D = diag(p^a_i), a_i ascending.

        Returns (D, U, V, valuations); U and V are invertible mod q (None when
        not requested -- skipping U matters for kernels of very tall matrices).
        Row/column clearing is vectorized; exact division by the pivot power
        is valid because the pivot has minimal valuation in the active block.
        """
        q, p, k = self.q, self.p, self.k
        A = _as_array(mat, q).copy()
        m, n = A.shape
        U = np.eye(m, dtype=np.int64) if want_U else None
        V = np.eye(n, dtype=np.int64) if want_V else None
        t = 0
        vals: list[int] = []
        while t < min(m, n):
            piv = self._find_pivot(A, t)
            if piv is None:
                break
            best_v, i0, j0 = piv
            if i0 != t:
                A[[t, i0]] = A[[i0, t]]
                if want_U:
                    U[[t, i0]] = U[[i0, t]]
                if carry is not None:
                    carry[[t, i0]] = carry[[i0, t]]
            if j0 != t:
                A[:, [t, j0]] = A[:, [j0, t]]
                if want_V:
                    V[:, [t, j0]] = V[:, [j0, t]]
            pv = p ** best_v
            ui = self._unit_inv(int(A[t, t]) // pv)
            A[t] = (A[t] * ui) % q
            if want_U:
                U[t] = (U[t] * ui) % q
            if carry is not None:
                carry[t] = (carry[t] * ui) % q
            col = A[:, t].copy()
            col[t] = 0
            rows = np.nonzero(col)[0]
            if rows.size:
                f = col[rows] // pv
                A[rows] = (A[rows] - np.outer(f, A[t])) % q
                if want_U:
                    U[rows] = (U[rows] - np.outer(f, U[t])) % q
                if carry is not None:
                    carry[rows] = (carry[rows] - f * carry[t]) % q
            row = A[t].copy()
            row[t] = 0
            cols = np.nonzero(row)[0]
            if cols.size:
                f = row[cols] // pv
                A[:, cols] = (A[:, cols] - np.outer(A[:, t], f)) % q
                if want_V:
                    V[:, cols] = (V[:, cols] - np.outer(V[:, t], f)) % q
            vals.append(best_v)
            t += 1
        return A, U, V, vals

    def _find_pivot(self, A: np.ndarray, t: int) -> tuple[int, int, int] | None:
        """Minimal-valuation entry (valuation, row, col) in the block A[t:, t:]."""
        m, n = A.shape
        if self.k == 1:
            for i in range(t, m):  # early exit on the first nonzero row
                nz = np.nonzero(A[i, t:])[0]
                if nz.size:
                    return 0, i, t + int(nz[0])
            return None
        block = A[t:, t:]
        # valuation-zero entries are pivots of choice and the common case
        for i in range(block.shape[0]):
            nz = np.nonzero(block[i] % self.p)[0]
            if nz.size:
                return 0, t + i, t + int(nz[0])
        best_v, best = self.k, None
        rows, cols = np.nonzero(block)
        for i, j in zip(rows, cols):
            v = _val(int(block[i, j]), self.p, self.k)
            if v < best_v:
                best_v, best = v, (v, t + int(i), t + int(j))
                if v == 1:
                    break
        return best

    def kernel(self, mat) -> np.ndarray:
        """Generators (rows) of {x : mat @ x = 0 mod q}."""
        q, p, k = self.q, self.p, self.k
        A = _as_array(mat, q)
        n = A.shape[1]
        _, _, V, vals = self.snf(A, want_U=False)
        gens = []
        for t in range(n):
            if t < len(vals):
                if vals[t] == 0:
                    continue
                g = (V[:, t] * (p ** (k - vals[t]))) % q
            else:
                g = V[:, t] % q
            if g.any():
                gens.append(g)
        if not gens:
            return np.zeros((0, n), dtype=np.int64)
        return np.array(gens, dtype=np.int64)

    def inv(self, mat) -> np.ndarray:
        """Inverse of a square matrix invertible mod q."""
        A = _as_array(mat, self.q)
        m = A.shape[0]
        E, T, pivots = self.echelon(A)
        if len(pivots) != m or any(v for (_, _, v) in pivots):
            raise ZeroDivisionError(f"matrix not invertible mod {self.q}")
        return T % self.q


# ---------------------------------------------------------------------------
# Z/n wrappers (CRT across prime powers)
# ---------------------------------------------------------------------------

def zn_solve(mat, rhs, n: int) -> np.ndarray | None:
    """Solve mat @ x = rhs over Z/n, or None."""
    A = np.asarray(mat, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    if n == 1:
        return np.zeros(A.shape[1], dtype=np.int64)
    eps = _idempotents(n)
    x = np.zeros(A.shape[1], dtype=np.int64)
    for pp in _crt_split(n):
        xi = ZpkOps(pp.p, pp.k).solve(A % pp.q, np.asarray(rhs, dtype=np.int64) % pp.q)
        if xi is None:
            return None
        x = (x + eps[pp.p] * xi) % n
    return x


def gf2_kernel(mat) -> np.ndarray:
    """Kernel basis (rows) over GF(2) by bitset column elimination."""
    A = np.asarray(mat, dtype=np.int64) % 2
    m, n = A.shape
    cols: list[int] = []
    for j in range(n):
        x = 0
        for i in np.nonzero(A[:, j])[0]:
            x |= 1 << int(i)
        cols.append(x)
    pivots: list[tuple[int, int, int]] = []  # (vec, combination, leading bit)
    kernel: list[int] = []
    for j, c in enumerate(cols):
        v, comb = c, 1 << j
        for pv, pcomb, lead in pivots:
            if v & lead:
                v ^= pv
                comb ^= pcomb
        if v:
            pivots.append((v, comb, v & -v))
        else:
            kernel.append(comb)
    out = np.zeros((len(kernel), n), dtype=np.int64)
    for r, comb in enumerate(kernel):
        while comb:
            low = comb & -comb
            out[r, low.bit_length() - 1] = 1
            comb ^= low
    return out


def zn_kernel(mat, n: int) -> np.ndarray:
    """Generators (rows) of the kernel of mat over Z/n.

    Any kernel element decomposes as sum_p e_p * (x mod p^k), so scaled
    per-prime generators suffice.
    """
    A = np.asarray(mat, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    if n == 2 and A.size > 50_000:
        return gf2_kernel(A)
    if n == 1:
        return np.eye(A.shape[1], dtype=np.int64)
    eps = _idempotents(n)
    parts = _crt_split(n)
    gens = []
    for pp in parts:
        coeff = eps[pp.p] if len(parts) > 1 else 1
        for g in ZpkOps(pp.p, pp.k).kernel(A % pp.q):
            gens.append((coeff * g) % n)
    if not gens:
        return np.zeros((0, A.shape[1]), dtype=np.int64)
    return np.array(gens, dtype=np.int64)


def zn_snf(mat, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form over Z/n: (D, U, V) with U @ mat @ V = D mod n.

    D is diagonal with d_i | d_{i+1} as integers; U, V invertible mod n.
    """
    A = np.asarray(mat, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    m, ncols = A.shape
    if n == 1:
        return np.zeros_like(A), np.eye(m, dtype=np.int64), np.eye(ncols, dtype=np.int64)
    eps = _idempotents(n)
    D = np.zeros((m, ncols), dtype=np.int64)
    U = np.zeros((m, m), dtype=np.int64)
    V = np.zeros((ncols, ncols), dtype=np.int64)
    for pp in _crt_split(n):
        Dp, Up, Vp, vals = ZpkOps(pp.p, pp.k).snf(A % pp.q)
        e = eps[pp.p]
        for t in range(min(m, ncols)):
            dv = pp.p ** vals[t] if t < len(vals) else 0
            D[t, t] = (D[t, t] + e * dv) % n
        U = (U + e * Up) % n
        V = (V + e * Vp) % n
    return D, U, V


def span_size(vectors, n: int) -> int:
    """Order of the subgroup of (Z/n)^N generated by the given rows."""
    V = np.asarray(vectors, dtype=np.int64)
    if V.size == 0 or n == 1:
        return 1
    if V.ndim == 1:
        V = V.reshape(1, -1)
    total = 1
    for pp in _crt_split(n):
        # |im| = prod p^(k - v_i) over the SNF diagonal of the generator matrix
        _, _, _, vals = ZpkOps(pp.p, pp.k).snf(V.T % pp.q, want_U=False, want_V=False)
        for v in vals:
            total *= pp.p ** (pp.k - v)
    return total


def in_span(vec, vectors, n: int) -> bool:
    """Is vec in the Z/n-span of the given rows?"""
    V = np.asarray(vectors, dtype=np.int64)
    if V.size == 0:
        return not (np.asarray(vec, dtype=np.int64) % n).any()
    if V.ndim == 1:
        V = V.reshape(1, -1)
    return zn_solve(V.T, vec, n) is not None


# ---------------------------------------------------------------------------
# subquotients
# ---------------------------------------------------------------------------

class _PrimeSubquotient:
    """Z/B over Z/p^k with coordinates, solver, and pinned basis.

    The Smith transform of the generator matrix is computed once and reused
    by every coordinate solve.
    """

    def __init__(self, z_gens: np.ndarray, b_gens: np.ndarray, pp: PrimePower):
        self.pp = pp
        q = pp.q
        ops = ZpkOps(pp.p, pp.k)
        self.ops = ops
        Z = np.asarray(z_gens, dtype=np.int64) % q
        self.ambient_dim = Z.shape[1]
        kz = Z.shape[0]
        self.S = Z.T.copy()  # ambient x kz, columns are generators
        # pinned Smith data of S, reused for all solves
        self._D, self._Us, self._Vs, self._vals = ops.snf(self.S)
        rel = self._kernel_from_snf()
        cols = [np.asarray(r) for r in rel]
        B = np.asarray(b_gens, dtype=np.int64) % q
        for b in B:
            w = self._solve(b)
            if w is None:
                raise NotContained("boundary generator outside the cycle span")
            cols.append(w)
        M = np.array(cols, dtype=np.int64).T if cols else np.zeros((kz, 0), dtype=np.int64)
        _, U, _, vals = ops.snf(M, want_V=False)
        self.U = U % q
        self.Uinv = ops.inv(U) if kz else U
        d = [pp.p ** vals[t] if t < len(vals) else q for t in range(kz)]
        self.keep = [t for t in range(kz) if d[t] > 1]
        self.torsion = tuple(d[t] for t in self.keep)
        self.size = 1
        for dt in self.torsion:
            self.size *= dt

    def _kernel_from_snf(self) -> np.ndarray:
        q, p, k = self.pp.q, self.pp.p, self.pp.k
        ncols = self.S.shape[1]
        gens = []
        for t in range(ncols):
            if t < len(self._vals):
                if self._vals[t] == 0:
                    continue
                g = (self._Vs[:, t] * (p ** (k - self._vals[t]))) % q
            else:
                g = self._Vs[:, t] % q
            if g.any():
                gens.append(g)
        if not gens:
            return np.zeros((0, ncols), dtype=np.int64)
        return np.array(gens, dtype=np.int64)

    def _solve(self, b) -> np.ndarray | None:
        """Solve S v = b using the cached Smith transform."""
        q, p = self.pp.q, self.pp.p
        m, ncols = self.S.shape
        c = (self._Us @ (np.asarray(b, dtype=np.int64) % q)) % q
        y = np.zeros(ncols, dtype=np.int64)
        for t, v in enumerate(self._vals):
            pv = p ** v
            if int(c[t]) % pv:
                return None
            y[t] = (int(c[t]) // pv) % q
        for t in range(len(self._vals), m):
            if int(c[t]) % q:
                return None
        return (self._Vs @ y) % q

    def coords(self, vec) -> np.ndarray | None:
        v = self._solve(vec)
        if v is None:
            return None
        y = (self.U @ v) % self.pp.q
        return np.array([int(y[t]) % self.torsion[i] for i, t in enumerate(self.keep)],
                        dtype=np.int64)

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.Uinv[:, self.keep[i]] % self.pp.q
        return (self.S @ v) % self.pp.q


class Subquotient:
    """Presentation of Z/B inside (Z/n)^N with a coordinate solver.

    Coordinates live in prod_i Z/d_i with d_1 | d_2 | ...; `coords` maps any
    element of Z to its coordinate tuple (kernel exactly B) and `basis_vector`
    returns a pinned representative of each standard generator.
    """

    def __init__(self, z_gens, b_gens, n: int):
        self.modulus = n
        Z = np.asarray(z_gens, dtype=np.int64)
        if Z.ndim == 1:
            Z = Z.reshape(1, -1) if Z.size else Z.reshape(0, 0)
        B = np.asarray(b_gens, dtype=np.int64)
        if B.ndim == 1:
            B = B.reshape(1, -1) if B.size else np.zeros((0, Z.shape[1]), dtype=np.int64)
        if B.size == 0:
            B = np.zeros((0, Z.shape[1]), dtype=np.int64)
        self.ambient_dim = Z.shape[1]
        if n == 1:
            self.parts: list[tuple[PrimePower, _PrimeSubquotient]] = []
            self.torsion: tuple[int, ...] = ()
            self.size = 1
            self._eps: dict[int, int] = {}
            return
        self.parts = [(pp, _PrimeSubquotient(Z, B, pp)) for pp in _crt_split(n)]
        self._eps = _idempotents(n)
        L = max((len(sq.torsion) for _, sq in self.parts), default=0)
        tor = []
        for i in range(L):
            d = 1
            for _, sq in self.parts:
                pad = L - len(sq.torsion)
                if i >= pad:
                    d *= sq.torsion[i - pad]
            tor.append(d)
        self.torsion = tuple(tor)
        self.size = 1
        for d in self.torsion:
            self.size *= d

    def __len__(self) -> int:
        return self.size

    @property
    def rank(self) -> int:
        return len(self.torsion)

    def coords(self, vec) -> np.ndarray:
        """Coordinates of vec; raises NotContained if vec is outside Z."""
        out = np.zeros(len(self.torsion), dtype=np.int64)
        L = len(self.torsion)
        for pp, sq in self.parts:
            c = sq.coords(vec)
            if c is None:
                raise NotContained("element outside the cycle span")
            pad = L - len(sq.torsion)
            for i, x in enumerate(c):
                out[pad + i] = (out[pad + i] + self._eps[pp.p] * int(x)) % self.torsion[pad + i]
        return out

    def contains(self, vec) -> bool:
        try:
            self.coords(vec)
            return True
        except NotContained:
            return False

    def is_zero(self, vec) -> bool:
        return not self.coords(vec).any()

    def basis_vector(self, i: int) -> np.ndarray:
        out = np.zeros(self.ambient_dim, dtype=np.int64)
        L = len(self.torsion)
        for pp, sq in self.parts:
            pad = L - len(sq.torsion)
            if i >= pad:
                out = (out + self._eps[pp.p] * sq.basis_vector(i - pad)) % self.modulus
        return out

    def basis(self) -> list[np.ndarray]:
        return [self.basis_vector(i) for i in range(len(self.torsion))]

    def element_from_coords(self, coords) -> np.ndarray:
        out = np.zeros(self.ambient_dim, dtype=np.int64)
        for i, c in enumerate(coords):
            out = (out + int(c) * self.basis_vector(i)) % self.modulus
        return out

    def all_coords(self):
        """Iterate over all coordinate tuples (small groups only)."""
        from itertools import product
        yield from product(*(range(d) for d in self.torsion))


def subquotient(z_gens, b_gens, n: int) -> Subquotient:
    """Torsion decomposition of span(z_gens)/span(b_gens) over Z/n."""
    return Subquotient(z_gens, b_gens, n)


# ---------------------------------------------------------------------------
# F_p rank (dense + sparse GF(2) bitset path)
# ---------------------------------------------------------------------------

SPARSE_COLUMN_THRESHOLD = 10_000


class SpanTester:
    """Reduced row basis over F_p with O(rank * width) membership tests."""

    def __init__(self, rows, p: int):
        self.p = p
        A = np.asarray(rows, dtype=np.int64) % p
        if A.ndim == 1:
            A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
        self.basis: list[np.ndarray] = []
        self.pivots: list[int] = []
        for row in A:
            r = self._reduce(row.copy())
            if r is not None:
                self._insert(r)

    def _reduce(self, v: np.ndarray) -> np.ndarray | None:
        p = self.p
        for b, c in zip(self.basis, self.pivots):
            if v[c] % p:
                v = (v - int(v[c]) * b) % p
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return None
        c = int(nz[0])
        v = (v * pow(int(v[c]), -1, p)) % p
        return v

    def _insert(self, v: np.ndarray) -> None:
        self.pivots.append(int(np.nonzero(v)[0][0]))
        self.basis.append(v)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, vec) -> bool:
        v = np.asarray(vec, dtype=np.int64) % self.p
        return self._reduce(v.copy()) is None


def fp_rank(mat, p: int, ncols: int | None = None) -> int:
    """Rank over F_p with deterministic lowest-row-index pivoting.

    `mat` is a dense 2d array-like, or (p == 2 with ncols given) a list of
    int bitsets, bit j = column j.  Wide GF(2) matrices take the bitset path.
    """
    if p == 2 and ncols is not None:
        return _gf2_rank_bitset([int(r) for r in mat], ncols)
    A = np.asarray(mat, dtype=np.int64) % p
    if A.size == 0:
        return 0
    if p == 2 and A.shape[1] >= SPARSE_COLUMN_THRESHOLD:
        rows = []
        for row in A:
            x = 0
            for j in np.nonzero(row)[0]:
                x |= 1 << int(j)
            rows.append(x)
        return _gf2_rank_bitset(rows, A.shape[1])
    m, n = A.shape
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if A[i, c] % p:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        for i in np.nonzero(A[r + 1:, c])[0]:
            i = r + 1 + int(i)
            A[i] = (A[i] - A[i, c] * A[r]) % p
        r += 1
        if r == m:
            break
    return r


def _gf2_rank_bitset(rows: list[int], ncols: int) -> int:
    pivots: list[int] = []
    for row in rows:
        cur = row
        for pr in pivots:
            if cur & (pr & -pr):
                cur ^= pr
        if cur:
            pivots.append(cur)
    return len(pivots)


# ---------------------------------------------------------------------------
# Galois fields
# ---------------------------------------------------------------------------

# Conway polynomials C(p, d), coefficients ascending (constant term first),
# for all prime powers p^d <= 64.  Primitivity is asserted by the test suite.
_CONWAY: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
    (11, 1): (9, 1),
    (13, 1): (11, 1),
    (17, 1): (14, 1),
    (19, 1): (17, 1),
    (23, 1): (18, 1),
    (29, 1): (27, 1),
    (31, 1): (28, 1),
    (37, 1): (35, 1),
    (41, 1): (35, 1),
    (43, 1): (40, 1),
    (47, 1): (42, 1),
    (53, 1): (51, 1),
    (59, 1): (57, 1),
    (61, 1): (59, 1),
}


def _poly_mul_mod(a: Sequence[int], b: Sequence[int], modpoly: Sequence[int], p: int) -> tuple[int, ...]:
    d = len(modpoly) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    lead_inv = pow(modpoly[-1], -1, p)
    for i in range(len(prod) - 1, d - 1, -1):
        c = prod[i] % p
        if c:
            f = (c * lead_inv) % p
            for j in range(len(modpoly)):
                prod[i - d + j] = (prod[i - d + j] - f * modpoly[j]) % p
    out = (prod + [0] * d)[:d]
    return tuple(x % p for x in out)


def _poly_pow(a: tuple[int, ...], e: int, modpoly: Sequence[int], p: int) -> tuple[int, ...]:
    d = len(modpoly) - 1
    r = tuple([1] + [0] * (d - 1))
    base = a
    while e:
        if e & 1:
            r = _poly_mul_mod(r, base, modpoly, p)
        base = _poly_mul_mod(base, base, modpoly, p)
        e >>= 1
    return r


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    d = len(poly) - 1
    if d == 1:
        return True
    x = tuple([0, 1] + [0] * (d - 2))
    cur = x
    for i in range(1, d + 1):
        cur = _poly_pow(cur, p, poly, p)  # Frobenius iterate: x^(p^i)
        if i < d and cur == x:
            return False
    return cur == x


def _least_lex_irreducible(p: int, d: int) -> tuple[int, ...]:
    from itertools import product
    for tail in product(*(range(p) for _ in range(d))):
        cand = tuple(tail) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise RuntimeError("no irreducible polynomial found")


class GaloisField:
    """F_{p^d} with multiplication by a pinned irreducible polynomial.

    Elements are integers in [0, q) encoding polynomial coordinates base p
    (least significant digit = constant term).  The Conway polynomial is
    used when tabulated, else the least lexicographic monic irreducible.
    """

    def __init__(self, p: int, d: int):
        if d < 1:
            raise ValueError("degree must be positive")
        self.p, self.d, self.q = p, d, p ** d
        self.modpoly = _CONWAY.get((p, d)) or _least_lex_irreducible(p, d)
        if not _is_irreducible(self.modpoly, p):
            raise ValueError("modulus polynomial not irreducible")

    def _enc(self, coeffs: Sequence[int]) -> int:
        x = 0
        for c in reversed(list(coeffs)):
            x = x * self.p + (c % self.p)
        return x

    def _dec(self, x: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.d):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def add(self, a: int, b: int) -> int:
        return self._enc([(x + y) % self.p for x, y in zip(self._dec(a), self._dec(b))])

    def neg(self, a: int) -> int:
        return self._enc([(-x) % self.p for x in self._dec(a)])

    def mul(self, a: int, b: int) -> int:
        return self._enc(_poly_mul_mod(self._dec(a), self._dec(b), self.modpoly, self.p))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r, base = 1, a
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverting 0")
        return self.pow(a, self.q - 2)

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def elements(self) -> range:
        return range(self.q)

    @property
    def generator(self) -> int:
        """Class of x (Conway root); for d = 1 the pinned primitive root."""
        if self.d == 1:
            return (-self.modpoly[0]) % self.p
        return self._enc([0, 1] + [0] * (self.d - 2))


def gl_order(e: int, q: int) -> int:
    """|GL_e(F_q)|."""
    out = 1
    for i in range(e):
        out *= q ** e - q ** i
    return out


def q_pochhammer(q: int | Fraction, m: int) -> Fraction:
    """(q)_m = prod_{i=1..m} (1 - q^{-i}); (q)_0 = 1."""
    out = Fraction(1)
    for i in range(1, m + 1):
        out *= 1 - Fraction(1, q) ** i
    return out
