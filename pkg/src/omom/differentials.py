"""Explicit degree-(0,2) differentials for extensions by abelian kernels.

For an extension of a base group G' by an elementary abelian kernel W with
an action by automorphisms, the first differential on kernel-H^2 invariants
splits into an extension-class part (pairing the alternating form of a class
against the extension cocycle) and an action part built from correction
cochains c_h solving  f(h^{-1}a, h^{-1}b) - f(a, b) = c_h(a) + c_h(b) - c_h(a+b).

The closed-form kernel counts keyed on the module's duality type are here
too, together with the cup/Bockstein-vanishing subspace of extension classes
attached to an orientation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional, Sequence

import numpy as np

from .cohomology import (
    CohomClass, CohomologyGroup, CochainComplex, Orientation, OrientedGammaGroup,
    _complex_for, _trivial_cached, bockstein_cocycle, cohomology,
    cohomology_semidirect, cup_cochain, invariant_class_subquotient,
)
from .gmodule import GModule
from .groups import FiniteGroup, GammaGroup, elementary_abelian
from .znlinalg import Subquotient, fp_rank, zn_kernel, zn_solve


class NoSolution(Exception):
    """The given class is not invariant (no correction cochain exists)."""


class HypothesisViolated(Exception):
    pass


class LevelDataMissing(Exception):
    pass


# ---------------------------------------------------------------------------
# kernels with an action: the d_{2,1}, d_{2,2} machinery
# ---------------------------------------------------------------------------

def digits(x: int, p: int, r: int) -> np.ndarray:
    out = np.zeros(r, dtype=np.int64)
    for i in range(r):
        out[i] = x % p
        x //= p
    return out


def undigits(v, p: int) -> int:
    x = 0
    for c in reversed(np.asarray(v, dtype=np.int64) % p):
        x = x * p + int(c)
    return int(x)


@dataclass
class ExtensionDatum:
    """Base group G', elementary abelian kernel W = F_p^r with G'-action,
    modulus n (p | n), and a normalized extension cocycle alpha: G'^2 -> W.

    alpha is stored as a cochain vector over C^2(G', W-module); pass None for
    the split extension.
    """

    Gp: FiniteGroup
    p: int
    r: int
    act: tuple[tuple[int, ...], ...]  # per G'-element, permutation of W
    n: int
    alpha_vec: Optional[np.ndarray] = None
    _c_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.n % self.p:
            raise HypothesisViolated("kernel characteristic must divide n")
        self.W = elementary_abelian(self.p, self.r)
        if len(self.act) != self.Gp.order:
            raise ValueError("need one kernel automorphism per base element")
        if self.alpha_vec is not None:
            cx = _complex_for(self.w_module)
            self.alpha_vec = np.asarray(self.alpha_vec, dtype=np.int64) % self.p
            if cx.apply_d(2, self.alpha_vec).any():
                raise ValueError("alpha is not a 2-cocycle")

    @cached_property
    def w_module(self) -> GModule:
        """W as a free F_p module over G' (action matrices from permutations)."""
        mats = []
        for g in self.Gp.elements():
            cols = [digits(self.act[g][self.p ** j], self.p, self.r)
                    for j in range(self.r)]
            mats.append(np.array(cols, dtype=np.int64).T % self.p)
        return GModule(self.Gp, self.p, self.r, mats, name="W", validate=False)

    @cached_property
    def dual_module(self) -> GModule:
        return self.w_module.dual()

    @cached_property
    def cxW(self) -> CochainComplex:
        """Cochains on the kernel group W with trivial Z/n coefficients."""
        return _complex_for(_trivial_cached(self.W, self.n))

    @cached_property
    def h2_w_invariants(self) -> Subquotient:
        """H^2(W, Z/n)^{G'} inside the cocycle coordinates of C^2(W, Z/n)."""
        ops = []
        for g in self._action_image_reps():
            ops.append(self._perm_op(2, g))
        return invariant_class_subquotient(self.cxW, 2, ops)

    def _action_image_reps(self) -> list[int]:
        """One base element per distinct kernel automorphism (generators)."""
        gens = self.Gp.small_generating_set()
        return gens if gens else [0]

    def _perm_op(self, i: int, g: int) -> np.ndarray:
        """(g . f)(a_1..a_i) = f(g^{-1} a_1, ..., g^{-1} a_i) on C^i(W, Z/n)."""
        cx = self.cxW
        size = cx.dim(i)
        A = np.zeros((size, size), dtype=np.int64)
        ginv = self.Gp.inv(g)
        perm = self.act[ginv]
        for t_out, tup in enumerate(cx.tuples(i)):
            pre = tuple(perm[a] for a in tup)
            A[t_out, cx.tuple_index(pre)] = 1
        return A

    # -- correction cochains ------------------------------------------------

    def correction_cochain(self, f_vec: np.ndarray, g: int) -> np.ndarray:
        """c_g with f(g^{-1} a, g^{-1} b) - f(a, b) = delta(c_g), c_1 = 0.

        Cached per kernel automorphism (c depends only on the image of g in
        Aut(W)); raises NoSolution when [f] is not invariant under g.
        """
        key = (self.act[g], f_vec.tobytes())
        if key in self._c_cache:
            return self._c_cache[key]
        cx = self.cxW
        if self.act[g] == tuple(self.W.elements()):
            c = np.zeros(cx.dim(1), dtype=np.int64)
        else:
            rhs = ((self._perm_op(2, g) @ f_vec) - f_vec) % self.n
            D1 = cx.d_matrix(1)
            c = zn_solve(D1, rhs, self.n)
            if c is None:
                raise NoSolution("class is not invariant under the action")
        self._c_cache[key] = c
        return c

    # -- the differentials ----------------------------------------------------

    def _hom_value(self, vals: Sequence[int]) -> np.ndarray:
        """Values of a homomorphism W -> Z/n at basis elements, rescaled to F_p."""
        scale = self.n // self.p
        out = np.zeros(self.r, dtype=np.int64)
        for j in range(self.r):
            v = int(vals[j]) % self.n
            assert v % scale == 0, "value is not p-torsion"
            out[j] = (v // scale) % self.p
        return out

    def d22(self, f_vec: np.ndarray) -> np.ndarray:
        """d_{2,2}^{0,2}[f] as a cochain in C^2(G', W^dual) over F_p.

        The cocycle is (g, h) -> c_g + c_h o g^{-1} - c_{gh}, a homomorphism
        W -> Z/n on each pair, recorded by its values on the basis of W and
        rescaled from (n/p)Z/n to F_p.
        """
        cxW = self.cxW
        cxD = _complex_for(self.dual_module)
        out = cxD.zero(2)
        Gp = self.Gp
        for t_out, (g, h) in enumerate(cxD.tuples(2)):
            c_g = self.correction_cochain(f_vec, g)
            c_h = self.correction_cochain(f_vec, h)
            c_gh = self.correction_cochain(f_vec, Gp.mul(g, h))
            ginv_perm = self.act[Gp.inv(g)]
            vals = []
            for j in range(self.r):
                w = self.p ** j  # index of basis vector e_j in W
                v = (int(cxW.value(c_g, 1, (w,))[0])
                     + int(cxW.value(c_h, 1, (ginv_perm[w],))[0])
                     - int(cxW.value(c_gh, 1, (w,))[0])) % self.n
                vals.append(v)
            out[t_out * self.r:(t_out + 1) * self.r] = self._hom_value(vals)
        return out

    def d21(self, f_vec: np.ndarray) -> np.ndarray:
        """d_{2,1}^{0,2}(f)(g,h)(a) = f(a, alpha(g,h)) - f(alpha(g,h), a)."""
        cxD = _complex_for(self.dual_module)
        out = cxD.zero(2)
        if self.alpha_vec is None:
            return out
        cxA = _complex_for(self.w_module)
        cxW = self.cxW
        for t_out, (g, h) in enumerate(cxD.tuples(2)):
            a_vec = cxA.value(self.alpha_vec, 2, (g, h))
            a_elt = undigits(a_vec, self.p)
            if a_elt == 0:
                continue
            vals = []
            for j in range(self.r):
                w = self.p ** j
                v = (int(cxW.value(f_vec, 2, (w, a_elt))[0])
                     - int(cxW.value(f_vec, 2, (a_elt, w))[0])) % self.n
                vals.append(v)
            out[t_out * self.r:(t_out + 1) * self.r] = self._hom_value(vals)
        return out

    def d2(self, f_vec: np.ndarray) -> np.ndarray:
        """Total d_2^{0,2} = d_{2,1} + d_{2,2} as a C^2(G', W^dual) cochain."""
        return (self.d21(f_vec) + self.d22(f_vec)) % self.p

    @cached_property
    def _dual_coboundary_span(self):
        from .znlinalg import SpanTester
        cxD = _complex_for(self.dual_module)
        return SpanTester(cxD.d_matrix(1).T, self.p)

    def class_is_zero_in_h2_dual(self, vec: np.ndarray) -> bool:
        """Does the C^2(G', W^dual) cocycle bound?"""
        return self._dual_coboundary_span.contains(vec)

    def d2_kernel_count(self) -> int:
        """|ker d_2^{0,2}| on H^2(W, Z/n)^{G'} by direct enumeration."""
        inv = self.h2_w_invariants
        count = 0
        for coords in inv.all_coords():
            f_vec = inv.element_from_coords(coords)
            if self.class_is_zero_in_h2_dual(self.d2(f_vec)):
                count += 1
        return count

    def d3_on_bockstein(self, phi_vals: Sequence[int]) -> np.ndarray:
        """d_3^{0,2}[B(phi)] = Bockstein(phi_*(alpha)) in C^3(G', Z/n).

        phi is a G'-equivariant homomorphism W -> Z/n given by its values on
        the basis of W; returns a normalized 3-cocycle on G'.
        """
        Mn = _trivial_cached(self.Gp, self.n)
        cxN = _complex_for(Mn)
        if self.alpha_vec is None:
            return cxN.zero(3)
        cxA = _complex_for(self.w_module)
        phi_alpha = cxN.zero(2)
        for t, tup in enumerate(cxA.tuples(2)):
            a_vec = cxA.value(self.alpha_vec, 2, tup)
            phi_alpha[t] = sum(int(a_vec[j]) * int(phi_vals[j])
                               for j in range(self.r)) % self.n
        return bockstein_cocycle(self.Gp, 2, phi_alpha, self.n, self.n)


def invariant_homs(datum: ExtensionDatum) -> list[np.ndarray]:
    """Basis values (in Z/n, on the W-basis) of Hom(W, Z/n)^{G'}."""
    inv = datum.dual_module.invariants()
    scale = datum.n // datum.p
    return [(row * scale) % datum.n for row in inv]


# ---------------------------------------------------------------------------
# closed-form kernel counts
# ---------------------------------------------------------------------------

def _pow_half(q: int, twice_exponent: int) -> int:
    """q^(twice_exponent / 2) as an exact integer."""
    if twice_exponent % 2 == 0:
        return q ** (twice_exponent // 2)
    import math
    root = math.isqrt(q)
    if root * root != q:
        raise ValueError("half-integer exponent needs a square q")
    return root ** twice_exponent


def kernel_size_closed_form(q: int, e: int, r: int, eps: Optional[int],
                            fixed_count: int, anomalous: bool = False,
                            branch_in: Optional[bool] = None) -> int:
    """|ker d_2^{0,2}| for a self-dual kernel V^e with extension rank r.

    Non-anomalous: fixed_count^e * q^((e-r)(e-r-eps)/2).
    Anomalous: 2 q^((e-r)(e-r+1)/2) or q^((e-r)(e-r-1)/2) by branch.
    """
    if not anomalous:
        if eps is None:
            raise ValueError("eps required for non-anomalous modules")
        return fixed_count ** e * _pow_half(q, (e - r) * (e - r - eps))
    if branch_in is None:
        raise ValueError("anomalous count needs the span-membership branch")
    if branch_in:
        return 2 * q ** ((e - r) * (e - r + 1) // 2)
    return q ** ((e - r) * (e - r - 1) // 2)


def kernel_size_dual_pair(q: int, e1: int, r1: int, e2: int, r2: int) -> int:
    """|ker d_2^{0,2}| for a kernel V^{e1} x (V^dual)^{e2}, V not self-dual."""
    return q ** ((e1 - r1) * (e2 - r2))


# ---------------------------------------------------------------------------
# kappa-rank of extension tuples
# ---------------------------------------------------------------------------

def kappa_rank(coord_rows: Sequence[np.ndarray], p: int,
               kappa_class_ops: Sequence[np.ndarray]) -> int:
    """dim_kappa of the span of classes given by F_p coordinate rows.

    kappa_class_ops are the matrices of a kappa-basis acting on class
    coordinates; the kappa-span is the F_p-span of all translates.
    """
    if not coord_rows:
        return 0
    d = len(kappa_class_ops)
    rows = []
    for v in coord_rows:
        for K in kappa_class_ops:
            rows.append((K @ v) % p)
    rank = fp_rank(np.array(rows, dtype=np.int64), p)
    assert rank % d == 0, "span is not kappa-stable"
    return rank // d


# ---------------------------------------------------------------------------
# the orientation-cut subspace of extension classes
# ---------------------------------------------------------------------------

@dataclass
class LevelCut:
    """H^2(H x| Gamma, V)^{L, s_H}: basis coordinate rows + kappa dimension."""

    h2: CohomologyGroup          # invariant model of H^2(H x| Gamma, V)
    level_rows: np.ndarray       # F_p coordinate rows spanning H^2^L
    cut_rows: np.ndarray         # rows spanning H^2^{L, s_H}
    z: int                       # dim_kappa of the cut
    kappa_degree: int

    @property
    def size(self) -> int:
        p = self.h2.module.n
        return int(p) ** (0 if self.cut_rows.size == 0 else
                          fp_rank(self.cut_rows, p))


def h2_level_sh(hg: GammaGroup, V_sd: GModule, s: Orientation, n: int,
                level_rows: Optional[np.ndarray],
                kappa_gen_mat: Optional[np.ndarray] = None,
                bockstein_condition: bool = False) -> LevelCut:
    """The subspace of level extension classes killed by the orientation.

    `V_sd` is the coefficient module over the semidirect product with prime
    characteristic p | n (or p prime to n, in which case the cut equals the
    level subspace).  `level_rows` are F_p coordinate rows of H^2^L in the
    pinned basis of the invariant model (None = the full H^2).
    `kappa_gen_mat` is a coefficient matrix generating kappa (for the
    kappa-dimension bookkeeping); identity means kappa = F_p.
    `bockstein_condition` adds s_H(B(alpha)) = 0 (trivial modules only).
    """
    p = V_sd.n
    H2 = cohomology_semidirect(hg, V_sd, 2)
    if any(d != p for d in H2.torsion):
        raise ValueError("H^2 is not an F_p space")
    rank = H2.rank
    if level_rows is None:
        level_rows = np.eye(rank, dtype=np.int64)
    level_rows = np.asarray(level_rows, dtype=np.int64) % p
    if level_rows.size == 0:
        level_rows = np.zeros((0, rank), dtype=np.int64)

    kappa_ops = _kappa_class_ops(hg, V_sd, H2, kappa_gen_mat)
    kappa_deg = len(kappa_ops)

    if n % p != 0:
        # characteristic prime to n: the orientation imposes nothing
        z = kappa_rank([row for row in level_rows], p, kappa_ops) if level_rows.size else 0
        return LevelCut(H2, level_rows, level_rows, z, kappa_deg)

    # cup condition rows: s_H(alpha u beta) = 0 for beta in H^1(., V^dual)
    Vd = V_sd.dual()
    H1d = cohomology_semidirect(hg, Vd, 1)
    MH_t = _trivial_cached(hg.H, n)
    scale = n // p

    def pair_with(alpha_cls: CohomClass) -> list[int]:
        vals = []
        for beta in H1d.basis_classes():
            vec = cup_cochain(alpha_cls.parent.complex, 2, alpha_cls.rep,
                              beta.parent.complex, 1, beta.rep,
                              MH_t, _scaled_eval(p, n))
            v = s.value_of_cocycle(vec)
            assert v % scale == 0
            vals.append((v // scale) % p)
        if bockstein_condition:
            bvec = bockstein_cocycle(hg.H, 2, alpha_cls.rep, p, n)
            v = s.value_of_cocycle(bvec)
            assert v % scale == 0
            vals.append((v // scale) % p)
        return vals

    if level_rows.shape[0] == 0:
        return LevelCut(H2, level_rows, level_rows, 0, kappa_deg)
    cond = np.array([pair_with(H2.class_from_coords(row)) for row in level_rows],
                    dtype=np.int64) % p
    # solutions x (combinations of level rows) with cond^T x = 0
    ker = zn_kernel(cond.T, p)
    cut = (ker @ level_rows) % p if ker.size else np.zeros((0, rank), dtype=np.int64)
    z = kappa_rank([row for row in cut], p, kappa_ops) if cut.size else 0
    return LevelCut(H2, level_rows, cut, z, kappa_deg)


def _scaled_eval(p: int, n: int) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """V x V^dual -> F_p -> Z/n (multiplied by n/p)."""
    scale = n // p

    def f(v, u):
        return np.array([(int(np.dot(v, u)) % p) * scale % n], dtype=np.int64)
    return f


def _kappa_class_ops(hg: GammaGroup, V_sd: GModule, H2: CohomologyGroup,
                     kappa_gen_mat: Optional[np.ndarray]) -> list[np.ndarray]:
    """Matrices of a kappa-basis acting on H^2 class coordinates."""
    p = V_sd.n
    rank = H2.rank
    if kappa_gen_mat is None:
        return [np.eye(rank, dtype=np.int64)]
    K = np.asarray(kappa_gen_mat, dtype=np.int64) % p
    # powers of the generator span kappa over F_p
    d = V_sd.dim
    ops = []
    power = np.eye(d, dtype=np.int64)
    seen: set[bytes] = set()
    mats = []
    while power.tobytes() not in seen:
        seen.add(power.tobytes())
        mats.append(power)
        power = (power @ K) % p
    # reduce to an F_p-basis of the span
    flat = np.array([m.reshape(-1) for m in mats], dtype=np.int64)
    basis_idx = _independent_rows(flat, p)
    for bi in basis_idx:
        Kb = mats[bi]
        op_rows = []
        for j in range(rank):
            cls = H2.basis_classes()[j]
            vec = _apply_coeff_matrix(cls, Kb)
            op_rows.append(H2.sub.coords(vec))
        ops.append(np.array(op_rows, dtype=np.int64).T % p)
    return ops


def _apply_coeff_matrix(cls: CohomClass, K: np.ndarray) -> np.ndarray:
    d = cls.parent.module.dim
    p = cls.parent.module.n
    vec = cls.rep.reshape(-1, d)
    return ((vec @ K.T) % p).reshape(-1)


def _independent_rows(rows: np.ndarray, p: int) -> list[int]:
    out: list[int] = []
    cur = np.zeros((0, rows.shape[1]), dtype=np.int64)
    for i, row in enumerate(rows):
        test = np.vstack([cur, row])
        if fp_rank(test, p) > fp_rank(cur, p):
            out.append(i)
            cur = test
    return out
