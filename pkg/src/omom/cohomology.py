"""Group cohomology via normalized inhomogeneous cochains.

H^i(G, M) for i <= 4 is presented as a subquotient of normalized cocycles;
cup products, Bockstein maps, and pullbacks act on explicit cochain
representatives.  For semidirect products H x| Gamma with coefficient order
prime to |Gamma|, H^i is computed as the Gamma-invariant part of H^i(H, -),
with genuinely invariant (averaged) representatives.

Orientations are Z/n-valued functionals on H^3(H, Z/n); their omega/psi
pairings and the lifting invariant are computed through cup products and
Bockstein maps of explicit cocycles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Callable, Optional, Sequence

import numpy as np

from .gmodule import GModule
from .groups import FiniteGroup, GammaGroup, GroupHom, semidirect_product
from .znlinalg import Subquotient, zn_kernel, zn_solve


class CapExceeded(Exception):
    pass


class CoprimalityViolated(Exception):
    pass


class DegreeOverflow(Exception):
    pass


class ExponentViolation(Exception):
    pass


class NotSurjective(Exception):
    pass


MEMORY_CAP_ENTRIES = 20_000_000  # (|G|-1)^(i+1) * dim(M) guard


# ---------------------------------------------------------------------------
# cochain complexes
# ---------------------------------------------------------------------------

class CochainComplex:
    """Normalized inhomogeneous cochains of G with coefficients in M.

    C^i has one basis vector per (i-tuple of non-identity elements,
    coordinate of M); a cochain is a flat int64 vector mod n.
    """

    def __init__(self, G: FiniteGroup, M: GModule):
        assert M.group is G
        self.G = G
        self.M = M
        self.n = M.n
        self._d_cache: dict[int, np.ndarray] = {}

    def dim(self, i: int) -> int:
        return (self.G.order - 1) ** i * self.M.dim

    def tuple_count(self, i: int) -> int:
        return (self.G.order - 1) ** i

    def tuples(self, i: int):
        nonident = range(1, self.G.order)
        return itertools.product(nonident, repeat=i)

    def tuple_index(self, tup: Sequence[int]) -> int:
        m = self.G.order - 1
        idx = 0
        for g in tup:
            idx = idx * m + (g - 1)
        return idx

    def value(self, vec: np.ndarray, i: int, tup: Sequence[int]) -> np.ndarray:
        """Value of the normalized cochain at any tuple (0 if any entry is 1)."""
        d = self.M.dim
        if any(g == 0 for g in tup):
            return np.zeros(d, dtype=np.int64)
        t = self.tuple_index(tup)
        return vec[t * d:(t + 1) * d]

    def zero(self, i: int) -> np.ndarray:
        return np.zeros(self.dim(i), dtype=np.int64)

    def apply_d(self, i: int, vec: np.ndarray) -> np.ndarray:
        """Coboundary C^i -> C^{i+1} of one cochain."""
        G, M, n = self.G, self.M, self.n
        d = M.dim
        out = np.zeros(self.dim(i + 1), dtype=np.int64)
        for t_out, tup in enumerate(self.tuples(i + 1)):
            acc = M.act(tup[0], self.value(vec, i, tup[1:]))
            sign = 1
            for j in range(i):
                sign = -sign
                merged = tup[:j] + (G.mul(tup[j], tup[j + 1]),) + tup[j + 2:]
                acc = acc + sign * self.value(vec, i, merged)
            sign = -sign
            acc = acc + sign * self.value(vec, i, tup[:i])
            out[t_out * d:(t_out + 1) * d] = acc % n
        return out

    def d_matrix(self, i: int) -> np.ndarray:
        """Matrix of d: C^i -> C^{i+1} (rows = C^{i+1} basis)."""
        if i in self._d_cache:
            return self._d_cache[i]
        G, M, n = self.G, self.M, self.n
        d = M.dim
        rows = self.dim(i + 1)
        cols = self.dim(i)
        if rows * max(cols, 1) > MEMORY_CAP_ENTRIES:
            raise CapExceeded(f"coboundary matrix {rows}x{cols} exceeds memory cap")
        D = np.zeros((rows, cols), dtype=np.int64)
        m = G.order - 1

        def add_block(t_out: int, tup_in: Sequence[int], mat_or_sign):
            if any(g == 0 for g in tup_in):
                return
            t_in = self.tuple_index(tup_in)
            r0, c0 = t_out * d, t_in * d
            if isinstance(mat_or_sign, int):
                for j in range(d):
                    D[r0 + j, c0 + j] += mat_or_sign
            else:
                D[r0:r0 + d, c0:c0 + d] += mat_or_sign

        for t_out, tup in enumerate(self.tuples(i + 1)):
            add_block(t_out, tup[1:], M.mat(tup[0]) if not M.is_trivial_action else 1)
            sign = 1
            for j in range(i):
                sign = -sign
                merged = tup[:j] + (G.mul(tup[j], tup[j + 1]),) + tup[j + 2:]
                add_block(t_out, merged, sign)
            add_block(t_out, tup[:i], -sign)
        D %= n
        self._d_cache[i] = D
        return D

    def d_rank_fp(self, i: int) -> int:
        """Rank of d_i over F_p (prime coefficients); sparse path for p = 2.

        Used for size-only computations on carriers too large for the dense
        subquotient route.
        """
        from .znlinalg import fp_rank
        G, M, p = self.G, self.M, self.n
        d = M.dim
        if p != 2:
            return fp_rank(self.d_matrix(i), p)
        cols = self.dim(i)
        rows: list[int] = [0] * self.dim(i + 1)

        def add_block(t_out: int, tup_in: Sequence[int], mat_or_sign):
            if any(g == 0 for g in tup_in):
                return
            t_in = self.tuple_index(tup_in)
            r0, c0 = t_out * d, t_in * d
            if isinstance(mat_or_sign, int):
                for j in range(d):
                    rows[r0 + j] ^= 1 << (c0 + j)
            else:
                for rr in range(d):
                    for cc in range(d):
                        if mat_or_sign[rr, cc] % 2:
                            rows[r0 + rr] ^= 1 << (c0 + cc)

        for t_out, tup in enumerate(self.tuples(i + 1)):
            add_block(t_out, tup[1:], M.mat(tup[0]) if not M.is_trivial_action else 1)
            sign = 1
            for j in range(i):
                sign = -sign
                merged = tup[:j] + (G.mul(tup[j], tup[j + 1]),) + tup[j + 2:]
                add_block(t_out, merged, sign)
            add_block(t_out, tup[:i], -sign)
        return fp_rank(rows, 2, ncols=cols)

    def cocycles(self, i: int) -> np.ndarray:
        """Generators (rows) of Z^i = ker(d_i)."""
        D = self.d_matrix(i)
        if D.shape[0] == 0:
            return np.eye(self.dim(i), dtype=np.int64)
        return zn_kernel(D, self.n)

    def coboundaries(self, i: int) -> np.ndarray:
        """Generators (rows) of B^i = im(d_{i-1})."""
        if i == 0:
            return np.zeros((0, self.dim(0)), dtype=np.int64)
        D = self.d_matrix(i - 1)
        return D.T % self.n

    def is_cocycle(self, i: int, vec: np.ndarray) -> bool:
        return not self.apply_d(i, vec).any()


def _complex_for(M: GModule) -> CochainComplex:
    cached = getattr(M, "_cochain_complex", None)
    if cached is None:
        cached = CochainComplex(M.group, M)
        M._cochain_complex = cached
    return cached


# ---------------------------------------------------------------------------
# cohomology groups and classes
# ---------------------------------------------------------------------------

class CohomologyGroup:
    """Presentation of H^i(G, M) (or of its Gamma-invariant model).

    Representatives are cochains on `carrier`; when `gamma` is set the group
    models H^i(H x| Gamma, M) as the invariant classes of H^i(H, M) with
    averaged (hence Gamma-invariant) representatives.
    """

    def __init__(self, complex_: CochainComplex, degree: int, sub: Subquotient,
                 basis_cocycles: list[np.ndarray], gamma: Optional[GammaGroup] = None):
        self.complex = complex_
        self.carrier = complex_.G
        self.module = complex_.M
        self.degree = degree
        self.sub = sub
        self.basis_cocycles = basis_cocycles
        self.gamma = gamma

    @property
    def size(self) -> int:
        return self.sub.size

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.sub.torsion

    @property
    def rank(self) -> int:
        return len(self.sub.torsion)

    def fp_dim(self, p: int) -> int:
        """Dimension over F_p when every torsion coefficient is p."""
        if any(d != p for d in self.torsion):
            raise ValueError("not an F_p vector space")
        return self.rank

    def zero_class(self) -> "CohomClass":
        return CohomClass(self, tuple(0 for _ in self.torsion),
                          self.complex.zero(self.degree))

    def class_from_cocycle(self, vec: np.ndarray) -> "CohomClass":
        coords = tuple(int(c) for c in self.sub.coords(np.asarray(vec) % self.module.n))
        return CohomClass(self, coords, np.asarray(vec, dtype=np.int64) % self.module.n)

    def class_from_coords(self, coords: Sequence[int]) -> "CohomClass":
        vec = self.complex.zero(self.degree)
        for c, rep in zip(coords, self.basis_cocycles):
            vec = (vec + int(c) * rep) % self.module.n
        return CohomClass(self, tuple(int(c) % d for c, d in zip(coords, self.torsion)), vec)

    def basis_classes(self) -> list["CohomClass"]:
        out = []
        for i in range(self.rank):
            coords = tuple(int(i == j) for j in range(self.rank))
            out.append(CohomClass(self, coords, self.basis_cocycles[i]))
        return out

    def all_classes(self):
        for coords in self.sub.all_coords():
            yield self.class_from_coords(coords)

    def __repr__(self) -> str:
        red = " (invariant model)" if self.gamma is not None else ""
        return (f"H^{self.degree}({self.carrier.name}, {self.module.name}) "
                f"~ {self.torsion}{red}")


@dataclass
class CohomClass:
    parent: CohomologyGroup
    coords: tuple[int, ...]
    rep: np.ndarray

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "CohomClass") -> "CohomClass":
        assert other.parent is self.parent
        return self.parent.class_from_cocycle((self.rep + other.rep) % self.parent.module.n)

    def scale(self, c: int) -> "CohomClass":
        return self.parent.class_from_cocycle((c * self.rep) % self.parent.module.n)

    def same_class(self, other: "CohomClass") -> bool:
        return self.coords == other.coords


def cohomology_size_direct(G: FiniteGroup, M: GModule, i: int) -> int:
    """|H^i(G, M)| by ranks only, for prime M.n (larger carriers allowed)."""
    from .znlinalg import factorize
    fac = factorize(M.n)
    assert len(fac) == 1 and list(fac.values()) == [1], "prime coefficients only"
    p = M.n
    cx = _complex_for(M)
    r_i = cx.d_rank_fp(i)
    r_prev = cx.d_rank_fp(i - 1) if i >= 1 else 0
    dim_h = cx.dim(i) - r_i - r_prev
    return p ** dim_h


def cohomology(G: FiniteGroup, M: GModule, i: int) -> CohomologyGroup:
    """H^i(G, M) by direct normalized cochains on G (0 <= i <= 4)."""
    if i < 0 or i > 4:
        raise DegreeOverflow("only degrees 0..4 are supported")
    cx = _complex_for(M)
    cache = getattr(M, "_cohomology_cache", None)
    if cache is None:
        cache = {}
        M._cohomology_cache = cache
    if i in cache:
        return cache[i]
    Z = cx.cocycles(i)
    B = cx.coboundaries(i)
    sub = Subquotient(Z, B, M.n)
    basis = [sub.basis_vector(j) for j in range(sub.rank)]
    out = CohomologyGroup(cx, i, sub, basis)
    cache[i] = out
    return out


# ---------------------------------------------------------------------------
# cup products, Bockstein, functoriality
# ---------------------------------------------------------------------------

def cup_cochain(cx1: CochainComplex, p: int, a: np.ndarray,
                cx2: CochainComplex, q: int, b: np.ndarray,
                target: GModule,
                pairing: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> np.ndarray:
    """Cochain-level cup product via the front-face/back-face formula.

    (a u b)(g_1..g_{p+q}) = pairing(a(g_1..g_p), (g_1...g_p) . b(rest)).
    Both factors must live on the same carrier group.
    """
    G = cx1.G
    assert cx2.G is G
    cxt = _complex_for(target)
    out = cxt.zero(p + q)
    d = target.dim
    M2 = cx2.M
    for t_out, tup in enumerate(cxt.tuples(p + q)):
        va = cx1.value(a, p, tup[:p])
        if not va.any():
            continue
        prefix = 0
        for g in tup[:p]:
            prefix = G.mul(prefix, g)
        vb = M2.act(prefix, cx2.value(b, q, tup[p:]))
        out[t_out * d:(t_out + 1) * d] = pairing(va, vb) % target.n
    return out


def cup(a: CohomClass, b: CohomClass, target: GModule,
        pairing: Callable[[np.ndarray, np.ndarray], np.ndarray],
        result: Optional[CohomologyGroup] = None) -> CohomClass:
    """Cup product of classes through an equivariant bilinear pairing.

    `target` lives on the same carrier as the factors.  Pass `result` (for
    instance an invariant-model group) to control where the class lands;
    default is the direct cohomology of the carrier.
    """
    p, q = a.parent.degree, b.parent.degree
    if p + q > 4:
        raise DegreeOverflow("cup product beyond degree 4")
    vec = cup_cochain(a.parent.complex, p, a.rep, b.parent.complex, q, b.rep,
                      target, pairing)
    Ht = result if result is not None else cohomology(a.parent.carrier, target, p + q)
    return Ht.class_from_cocycle(vec)


def mult_pairing(n: int) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Multiplication Z/n x Z/n -> Z/n on one-dimensional modules."""
    def f(x, y):
        return np.array([int(x[0]) * int(y[0]) % n], dtype=np.int64)
    return f


def eval_pairing(n: int) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Evaluation V x V^dual -> Z/n, (v, u) -> u(v)."""
    def f(v, u):
        return np.array([int(np.dot(v, u)) % n], dtype=np.int64)
    return f


def bockstein_cocycle(G: FiniteGroup, i: int, vec: np.ndarray, m: int, n: int) -> np.ndarray:
    """Cocycle-level connecting map for 0 -> Z/n -> Z/nm -> Z/m -> 0.

    The input is a normalized i-cocycle on G with Z/m values; the lift fixes
    representatives in [0, m).
    """
    big = _trivial_cached(G, n * m)
    cx_big = _complex_for(big)
    lift = np.asarray(vec, dtype=np.int64) % m
    dbig = cx_big.apply_d(i, lift)
    assert not (dbig % m).any()
    return (dbig // m) % n


def bockstein(a: CohomClass, n: int) -> CohomClass:
    """Connecting map for 0 -> Z/n -> Z/nm -> Z/m -> 0 on H^i(G, Z/m).

    The lift fixes representatives in [0, m); the output lives in
    H^{i+1}(G, Z/n) on the same carrier (with the invariant model preserved).
    """
    src = a.parent
    M = src.module
    if M.dim != 1 or not M.is_trivial_action:
        raise ValueError("Bockstein needs trivial one-dimensional coefficients")
    m = M.n
    i = src.degree
    if i > 3:
        raise DegreeOverflow("Bockstein beyond degree 3")
    G = src.carrier
    out_vec = bockstein_cocycle(G, i, a.rep, m, n)
    if src.gamma is not None:
        M_sd = _trivial_cached(SemidirectData.of(src.gamma).G, n)
        Ht = cohomology_semidirect(src.gamma, M_sd, i + 1)
    else:
        Ht = cohomology(G, _trivial_cached(G, n), i + 1)
    return Ht.class_from_cocycle(out_vec)


_TRIVIAL_MODULES: dict[tuple[int, int], GModule] = {}


def _trivial_cached(G: FiniteGroup, n: int) -> GModule:
    key = (id(G), n)
    M = _TRIVIAL_MODULES.get(key)
    if M is None:
        M = GModule.trivial(G, n, 1)
        _TRIVIAL_MODULES[key] = M
    return M


def pullback_cochain(hom: GroupHom, cx_target: CochainComplex, i: int,
                     vec: np.ndarray, M_source: GModule) -> np.ndarray:
    """(f* a)(g_1..g_i) = a(f(g_1)..f(g_i)) as a cochain on hom.source."""
    cx_src = _complex_for(M_source)
    out = cx_src.zero(i)
    d = M_source.dim
    for t_out, tup in enumerate(cx_src.tuples(i)):
        img = tuple(hom(g) for g in tup)
        out[t_out * d:(t_out + 1) * d] = cx_target.value(vec, i, img)
    return out


def pullback(hom: GroupHom, a: CohomClass, M_source: Optional[GModule] = None) -> CohomClass:
    """Pull a class back along hom: source -> carrier(a)."""
    src = a.parent
    if M_source is None:
        M_source = src.module.restrict(hom)
    vec = pullback_cochain(hom, src.complex, src.degree, a.rep, M_source)
    H = cohomology(hom.source, M_source, src.degree)
    return H.class_from_cocycle(vec)


def push_coefficients(a: CohomClass, phi: Callable[[np.ndarray], np.ndarray],
                      target: GModule,
                      result: Optional[CohomologyGroup] = None) -> CohomClass:
    """Push a class forward along an equivariant map of coefficients."""
    src = a.parent
    cxt = _complex_for(target)
    i = src.degree
    d_in, d_out = src.module.dim, target.dim
    out = cxt.zero(i)
    for t in range(src.complex.tuple_count(i)):
        out[t * d_out:(t + 1) * d_out] = phi(a.rep[t * d_in:(t + 1) * d_in]) % target.n
    Ht = result if result is not None else cohomology(src.carrier, target, i)
    return Ht.class_from_cocycle(out)


# ---------------------------------------------------------------------------
# semidirect products: Gamma-invariant model
# ---------------------------------------------------------------------------

class SemidirectData:
    """The semidirect product of a GammaGroup with embeddings, cached."""

    _cache: dict[int, "SemidirectData"] = {}

    def __init__(self, hg: GammaGroup):
        self.hg = hg
        G, eh, eg, proj = semidirect_product(hg)
        self.G = G
        self.embed_H = eh
        self.embed_Gamma = eg
        self.project = proj

    @classmethod
    def of(cls, hg: GammaGroup) -> "SemidirectData":
        key = id(hg)
        if key not in cls._cache:
            cls._cache[key] = cls(hg)
        return cls._cache[key]


def module_over_semidirect(hg: GammaGroup, h_mats: Optional[dict[int, Sequence]],
                           gamma_mats: Optional[dict[int, Sequence]],
                           n: int, dim: int, name: str = "M") -> GModule:
    """Build a module over H x| Gamma from generator matrices on each factor.

    Omitted factors act trivially (identity matrices on their generators).
    """
    sd = SemidirectData.of(hg)
    if not h_mats and not gamma_mats:
        return GModule.trivial(sd.G, n, dim, name=name)
    ident = np.eye(dim, dtype=np.int64)
    gen_mats: dict[int, Sequence] = {}
    for h in hg.H.small_generating_set():
        gen_mats[sd.embed_H(h)] = ident
    for g in hg.Gamma.small_generating_set():
        gen_mats[sd.embed_Gamma(g)] = ident
    for h, m in (h_mats or {}).items():
        gen_mats[sd.embed_H(h)] = np.asarray(m, dtype=np.int64)
    for g, m in (gamma_mats or {}).items():
        gen_mats[sd.embed_Gamma(g)] = np.asarray(m, dtype=np.int64)
    return GModule.from_generator_matrices(sd.G, n, gen_mats, dim, name=name)


def _gamma_cochain_op(hg: GammaGroup, M: GModule, MH: GModule, i: int,
                      gamma: int) -> np.ndarray:
    """Matrix of f -> gamma.f on C^i(H, M|_H).

    (gamma.f)(h_1..h_i) = rho(gamma) f(gamma^{-1} h_1, ..., gamma^{-1} h_i).
    """
    sd = SemidirectData.of(hg)
    cx = _complex_for(MH)
    dim = MH.dim
    n = MH.n
    size = cx.dim(i)
    A = np.zeros((size, size), dtype=np.int64)
    rho = M.mat(sd.embed_Gamma(gamma))
    ginv = hg.Gamma.inv(gamma)
    for t_out, tup in enumerate(cx.tuples(i)):
        pre = tuple(hg.act(ginv, h) for h in tup)
        t_in = cx.tuple_index(pre)
        A[t_out * dim:(t_out + 1) * dim, t_in * dim:(t_in + 1) * dim] = rho % n
    return A


def invariant_class_subquotient(cx: CochainComplex, i: int,
                                ops: list[np.ndarray]) -> Subquotient:
    """Classes of H^i fixed by each cochain operator: (A - 1)z must bound.

    The operators must be cochain maps (commute with d).  Returns the
    subquotient Z'/B with Z' = {cocycles whose op-translates differ by
    coboundaries}.
    """
    n = cx.n
    dimC = cx.dim(i)
    dimB = cx.dim(i - 1) if i >= 1 else 0
    Z = cx.cocycles(i)
    nz = Z.shape[0]
    D_prev = cx.d_matrix(i - 1) if i >= 1 else np.zeros((dimC, 0), dtype=np.int64)
    blocks = []
    ncols = nz + dimB * len(ops)
    for gi, A_g in enumerate(ops):
        row = np.zeros((dimC, ncols), dtype=np.int64)
        row[:, :nz] = ((A_g - np.eye(dimC, dtype=np.int64)) @ Z.T) % n
        if dimB:
            row[:, nz + gi * dimB: nz + (gi + 1) * dimB] = (-D_prev) % n
        blocks.append(row)
    if blocks:
        big = np.vstack(blocks) % n
        ker = zn_kernel(big, n)
        Zp = (ker[:, :nz] @ Z) % n if ker.size else np.zeros((0, dimC), dtype=np.int64)
    else:
        Zp = Z
    return Subquotient(Zp, cx.coboundaries(i), n)


def cohomology_semidirect(hg: GammaGroup, M: GModule, i: int) -> CohomologyGroup:
    """H^i(H x| Gamma, M) as the Gamma-invariant classes of H^i(H, M|_H).

    M is a module over the semidirect product group; the pullback map to the
    invariants is an isomorphism because |M| is prime to |Gamma|.  The
    representatives returned are Gamma-invariant cochains on H (averaged).
    """
    sd = SemidirectData.of(hg)
    assert M.group is sd.G, "module must live over the semidirect product"
    if gcd(M.n, hg.Gamma.order) != 1:
        raise CoprimalityViolated("coefficient order must be prime to |Gamma|")
    cache = getattr(M, "_semidirect_cache", None)
    if cache is None:
        cache = {}
        M._semidirect_cache = cache
    if i in cache:
        return cache[i]
    MH = M.restrict(sd.embed_H)
    cx = _complex_for(MH)
    n = M.n
    gens = hg.Gamma.small_generating_set()
    gen_ops = [_gamma_cochain_op(hg, M, MH, i, g) for g in gens]
    sub = invariant_class_subquotient(cx, i, gen_ops)
    # average representatives over all of Gamma to pin invariant cochains
    inv_order = pow(hg.Gamma.order, -1, n)
    ops = [_gamma_cochain_op(hg, M, MH, i, g) for g in hg.Gamma.elements()]
    dimC = cx.dim(i)
    basis = []
    for j in range(sub.rank):
        z = sub.basis_vector(j)
        acc = np.zeros(dimC, dtype=np.int64)
        for A_g in ops:
            acc = (acc + A_g @ z) % n
        basis.append((inv_order * acc) % n)
    out = CohomologyGroup(cx, i, sub, basis, gamma=hg)
    cache[i] = out
    return out


# ---------------------------------------------------------------------------
# orientations
# ---------------------------------------------------------------------------

class Orientation:
    """A Z/n-valued functional on H^3(H, Z/n), pinned to the stored basis.

    `coeffs[i]` is the value on the i-th basis class; each satisfies
    torsion[i] * coeffs[i] = 0 mod n.
    """

    def __init__(self, h3: CohomologyGroup, coeffs: Sequence[int]):
        self.h3 = h3
        self.n = h3.module.n
        self.coeffs = tuple(int(c) % self.n for c in coeffs)
        for c, d in zip(self.coeffs, h3.torsion):
            if (c * d) % self.n:
                raise ValueError("functional value incompatible with torsion")

    def __eq__(self, other) -> bool:
        return isinstance(other, Orientation) and self.coeffs == other.coeffs and self.h3 is other.h3

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def value_on_coords(self, coords: Sequence[int]) -> int:
        return sum(int(c) * int(x) for c, x in zip(self.coeffs, coords)) % self.n

    def value(self, cls: CohomClass) -> int:
        """Evaluate on a degree-3 class represented on H (or restrict first)."""
        if cls.parent is self.h3:
            return self.value_on_coords(cls.coords)
        if cls.parent.gamma is not None and cls.parent.carrier is self.h3.carrier:
            # invariant model on the same carrier: same cocycle space
            return self.value_on_coords(self.h3.sub.coords(cls.rep))
        raise ValueError("class does not live on the orientation's carrier")

    def value_of_cocycle(self, vec: np.ndarray) -> int:
        return self.value_on_coords(self.h3.sub.coords(vec))


@dataclass
class OrientedGammaGroup:
    """A GammaGroup with modulus n and an invariant orientation functional."""

    hg: GammaGroup
    n: int
    s: Orientation

    @property
    def H(self) -> FiniteGroup:
        return self.hg.H


def h3_of(hg: GammaGroup, n: int) -> CohomologyGroup:
    MH = _trivial_cached(hg.H, n)
    return cohomology(hg.H, MH, 3)


def _class_action_matrix(hg: GammaGroup, H3: CohomologyGroup, gamma: int) -> list[list[int]]:
    """Per-basis-class coordinates of gamma acting on H^3(H, Z/n) classes."""
    cx = H3.complex
    n = H3.module.n
    A = np.zeros((cx.dim(3), cx.dim(3)), dtype=np.int64)
    ginv = hg.Gamma.inv(gamma)
    for t_out, tup in enumerate(cx.tuples(3)):
        pre = tuple(hg.act(ginv, h) for h in tup)
        A[t_out, cx.tuple_index(pre)] = 1
    mats = []
    for j in range(H3.rank):
        img = (A @ H3.basis_cocycles[j]) % n
        mats.append([int(c) for c in H3.sub.coords(img)])
    return mats


def orientations(hg: GammaGroup, n: int) -> list[OrientedGammaGroup]:
    """All Gamma-invariant Z/n-functionals on H^3(H, Z/n)."""
    if gcd(n, hg.Gamma.order) != 1:
        raise CoprimalityViolated("n must be prime to |Gamma|")
    H3 = h3_of(hg, n)
    gens = hg.Gamma.small_generating_set()
    actions = [_class_action_matrix(hg, H3, g) for g in gens]
    out = []
    for combo in itertools.product(*(range(d) for d in H3.torsion)):
        coeffs = [(n // d) * c for c, d in zip(combo, H3.torsion)]
        s = Orientation(H3, coeffs)
        ok = True
        for mats in actions:
            # invariance: s(gamma . b_j) = s(b_j) for each basis class
            for j in range(H3.rank):
                if s.value_on_coords(mats[j]) != s.value_on_coords(
                        [int(i == j) for i in range(H3.rank)]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(OrientedGammaGroup(hg, n, s))
    return out


def orientation_from_coeffs(hg: GammaGroup, n: int, coeffs: Sequence[int]) -> OrientedGammaGroup:
    H3 = h3_of(hg, n)
    s = Orientation(H3, coeffs)
    # verify invariance
    for g in hg.Gamma.small_generating_set():
        mats = _class_action_matrix(hg, H3, g)
        for j in range(H3.rank):
            if s.value_on_coords(mats[j]) != s.coeffs[j] % n:
                raise ValueError("functional is not Gamma-invariant")
    return OrientedGammaGroup(hg, n, s)


def aut_action_on_orientation(hg: GammaGroup, ohg: OrientedGammaGroup,
                              phi: Sequence[int]) -> Orientation:
    """The functional s o phi^* for a Gamma-automorphism phi of H."""
    H3 = ohg.s.h3
    cx = H3.complex
    n = ohg.n
    A = np.zeros((cx.dim(3), cx.dim(3)), dtype=np.int64)
    for t_out, tup in enumerate(cx.tuples(3)):
        pre = tuple(phi[h] for h in tup)
        t_in = cx.tuple_index(pre)
        A[t_out, t_in] = 1
    coeffs = []
    for j in range(H3.rank):
        img = (A @ H3.basis_cocycles[j]) % n
        coeffs.append(ohg.s.value_of_cocycle(img))
    return Orientation(H3, coeffs)


def orientation_stabilizer_order(ohg: OrientedGammaGroup,
                                 gamma_auts: Sequence[Sequence[int]]) -> int:
    """|Aut(H, s_H)|: the stabilizer of s_H inside Aut_Gamma(H)."""
    count = 0
    for phi in gamma_auts:
        if aut_action_on_orientation(ohg.hg, ohg, phi) == ohg.s:
            count += 1
    return count


def pushforward_orientation(f: GroupHom, s_G: Orientation,
                            hg_target: GammaGroup, n: int) -> Orientation:
    """s_H = s_G o f^* along a Gamma-equivariant surjection f: G -> H."""
    if not f.is_surjective:
        raise NotSurjective("orientation pushforward needs a surjection")
    H3_target = h3_of(hg_target, n)
    MG = _trivial_cached(f.source, n)
    cx_target = H3_target.complex
    coeffs = []
    for j in range(H3_target.rank):
        rep = H3_target.basis_cocycles[j]
        pulled = pullback_cochain(f, cx_target, 3, rep, MG)
        coeffs.append(s_G.value_of_cocycle(pulled))
    return Orientation(H3_target, coeffs)


# ---------------------------------------------------------------------------
# structure of H^2 of an abelian group
# ---------------------------------------------------------------------------

def h2_structure(A: FiniteGroup, n: int):
    """The Bockstein image, the Delta map to alternating forms, and the
    cardinality identity |H^2(A, Z/n)| = |Hom(A, Z/n)| * |wedge Hom(AxA, Z/n)|.

    A must be abelian with exponent not divisible by 4.
    Returns (H2, im_B_coords, delta, hom_count, wedge_count) where `delta`
    maps a CohomClass to the |A| x |A| table of f(b,a) - f(a,b).
    """
    if not A.is_abelian:
        raise ValueError("A must be abelian")
    exp = max(A.element_order(g) for g in A.elements())
    if exp % 4 == 0:
        raise ExponentViolation("exponent divisible by 4 is out of scope")
    M = _trivial_cached(A, n)
    H2 = cohomology(A, M, 2)
    H1 = cohomology(A, M, 1)
    imB = []
    for cls in H1.basis_classes():
        imB.append(bockstein(cls, n))

    def delta(cls: CohomClass) -> np.ndarray:
        cx = cls.parent.complex
        out = np.zeros((A.order, A.order), dtype=np.int64)
        for a in A.elements():
            for b in A.elements():
                f_ba = cx.value(cls.rep, 2, (b, a))
                f_ab = cx.value(cls.rep, 2, (a, b))
                out[a, b] = (int(f_ba[0]) - int(f_ab[0])) % n
        return out

    # |Hom(A, Z/n)| and |wedge Hom(A x A, Z/n)| from the cyclic decomposition
    invariants = _abelian_invariants(A)
    hom_count = 1
    for e in invariants:
        hom_count *= gcd(e, n)
    wedge_count = 1
    for i in range(len(invariants)):
        for j in range(i + 1, len(invariants)):
            wedge_count *= gcd(gcd(invariants[i], invariants[j]), n)
    return H2, imB, delta, hom_count, wedge_count


def _abelian_invariants(A: FiniteGroup) -> list[int]:
    """Cyclic decomposition orders of an abelian group (elementary divisors)."""
    # build via repeated maximal-order cyclic factors
    rem = set(A.elements())
    # use the structure: decompose via Smith form of relations is overkill;
    # greedy: pick highest-order element, quotient, recurse on the quotient.
    out = []
    G = A
    while G.order > 1:
        g = max(G.elements(), key=lambda x: (G.element_order(x), -x))
        out.append(G.element_order(g))
        Q, _ = G.quotient(G.generated_subgroup([g]))
        G = Q
    return out


# ---------------------------------------------------------------------------
# omega / psi pairings and the lifting invariant
# ---------------------------------------------------------------------------

class BadPrime(Exception):
    pass


def _s_ell(ohg: OrientedGammaGroup, ell: int, v: int, cls3: CohomClass) -> int:
    """s_H^ell: H^3(H, Z/ell^v) -> Z/ell^v via coefficient rescale into Z/n."""
    n = ohg.n
    t = n // ell ** v
    vec = (cls3.rep * t) % n
    val = ohg.s.value_of_cocycle(vec)
    assert val % t == 0
    return (val // t) % ell ** v


def omega_psi(ohg: OrientedGammaGroup, ell: int, m: int):
    """The omega_m and psi pairing tables of an orientation.

    omega_m(a, b) = -(1/2) s^ell(B(a u b))      a, b in H^1(H, Z/ell^m)
    <a, b>        = s^ell(a u B(b))             a in H^1(H, Z/ell^v)

    For ell = 2 the 1/2 factor is dropped (flagged variant).  Returns
    (omega_table, psi_table, meta) over the pinned H^1 bases.
    """
    n = ohg.n
    v = 0
    nn = n
    while nn % ell == 0:
        nn //= ell
        v += 1
    if v == 0:
        raise BadPrime(f"{ell} does not divide n = {n}")
    H = ohg.H
    lm = ell ** m
    lv = ell ** v
    Mm = _trivial_cached(H, lm)
    Mv = _trivial_cached(H, lv)
    H1m = cohomology(H, Mm, 1)
    H1v = cohomology(H, Mv, 1)
    if ell == 2:
        half = 1  # variant without the 1/2 normalization
        variant = "no-half-factor"
    else:
        half = (-pow(2, -1, lv)) % lv
        variant = "standard"

    def omega_pair(a: CohomClass, b: CohomClass) -> int:
        ab = cup(a, b, Mm, mult_pairing(lm))
        Bab = bockstein_pair(ab, lv, lm)
        return (half * _s_ell(ohg, ell, v, Bab)) % lv

    def psi_pair(a: CohomClass, b: CohomClass) -> int:
        Bb = bockstein_pair(b, lv, lm)
        aBb = cup(a, Bb, Mv, mult_pairing(lv))
        return _s_ell(ohg, ell, v, aBb)

    ra, rb = H1m.rank, H1m.rank
    omega_table = [[omega_pair(H1m.basis_classes()[i], H1m.basis_classes()[j])
                    for j in range(rb)] for i in range(ra)]
    psi_table = [[psi_pair(H1v.basis_classes()[i], H1m.basis_classes()[j])
                  for j in range(H1m.rank)] for i in range(H1v.rank)]
    meta = {"ell": ell, "v": v, "m": m, "variant": variant,
            "H1m_torsion": H1m.torsion, "H1v_torsion": H1v.torsion}
    return omega_table, psi_table, meta


def bockstein_pair(a: CohomClass, n: int, m: int) -> CohomClass:
    """Bockstein for 0 -> Z/n -> Z/nm -> Z/m -> 0 (coefficients of a are Z/m)."""
    assert a.parent.module.n == m
    return bockstein(a, n)


def lifting_invariant(ohg: OrientedGammaGroup, m: int):
    """The functional on H^2(H, Z/m) induced by s_H through the connecting map.

    Per prime ell dividing gcd(m, n) with v = v_ell(n): the ell-part of a
    class maps through the Bockstein to H^3(H, Z/ell^v), is rescaled into
    Z/n by (n/ell^v) * inverse(n/ell^v mod ell^v), and then paired with s_H.
    Returns a function CohomClass -> int (mod n).
    """
    n = ohg.n
    H = ohg.H

    def ell_parts(mm: int) -> list[tuple[int, int]]:
        from .znlinalg import factorize
        return [(p, k) for p, k in factorize(mm).items()]

    def functional(cls: CohomClass) -> int:
        assert cls.parent.module.n == m and cls.parent.module.dim == 1
        total = 0
        for ell, k in ell_parts(m):
            if n % ell:
                continue
            v = 0
            nn = n
            while nn % ell == 0:
                nn //= ell
                v += 1
            lk = ell ** k
            # project the class to Z/ell^k coefficients
            cofactor = m // lk
            inv_cof = pow(cofactor, -1, lk)
            Mlk = _trivial_cached(H, lk)
            cx = _complex_for(Mlk)
            vec = (np.asarray(cls.rep) * inv_cof) % lk
            Hlk = cohomology(H, Mlk, 2)
            cls_l = Hlk.class_from_cocycle(vec)
            B = bockstein_pair(cls_l, ell ** v, lk)
            t = n // ell ** v
            ntilde = pow(t % ell ** v, -1, ell ** v) if ell ** v > 1 else 0
            scaled = (B.rep * (t * ntilde)) % n
            total = (total + ohg.s.value_of_cocycle(scaled)) % n
        return total

    return functional
