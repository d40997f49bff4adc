"""Classification of irreducible F_p-modules: endomorphism fields, duality
types, characteristic-2 refinements, and the modified indicator epsilon.

Splitting uses exhaustive cyclic-submodule search at small dimensions and a
seeded meataxe-style split/certify loop above; both produce explicit
submodule/complement bases, so every decomposition is certified by its own
change of basis.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .gmodule import GModule, skew_subspace_basis, sym2_invariant_dim
from .groups import CapExceeded, FiniteGroup, GammaGroup
from .znlinalg import GaloisField, SpanTester, fp_rank, zn_kernel, zn_solve


class NotSemisimple(Exception):
    pass


class NotIrreducible(Exception):
    pass


class NotSelfDual(Exception):
    pass


class WrongCharacteristic(Exception):
    pass


DIM_CAP_EXHAUSTIVE = 12
DIM_CAP = 24
EXHAUSTIVE_VECTOR_CAP = 1 << 14


# ---------------------------------------------------------------------------
# spinning and splitting
# ---------------------------------------------------------------------------

def spin(V: GModule, vec: np.ndarray) -> np.ndarray:
    """Row basis of the smallest submodule containing vec."""
    p = V.n
    gens = V.group.small_generating_set() or [0]
    tester = SpanTester([vec], p)
    basis = [np.asarray(vec, dtype=np.int64) % p]
    frontier = [basis[0]]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                img = V.act(g, w)
                if not tester.contains(img):
                    tester._insert(tester._reduce(img.copy()))
                    basis.append(img)
                    nxt.append(img)
        frontier = nxt
    return np.array(basis, dtype=np.int64)


def _normalized_vectors(p: int, d: int):
    """One vector per projective point of F_p^d (first nonzero coord = 1)."""
    for lead in range(d):
        for tail in itertools.product(range(p), repeat=d - lead - 1):
            v = np.zeros(d, dtype=np.int64)
            v[lead] = 1
            v[lead + 1:] = tail
            yield v


def find_proper_submodule(V: GModule, seed: int = 12345) -> Optional[np.ndarray]:
    """A proper nonzero submodule basis, or None if V is irreducible.

    Exhaustive over projective points up to EXHAUSTIVE_VECTOR_CAP; beyond
    that a seeded meataxe-style search with a Norton-type certificate.
    """
    p, d = V.n, V.dim
    if d == 0:
        return None
    n_points = (p ** d - 1) // (p - 1)
    if n_points <= EXHAUSTIVE_VECTOR_CAP:
        for v in _normalized_vectors(p, d):
            W = spin(V, v)
            if 0 < W.shape[0] < d:
                return W
        return None
    return _meataxe_search(V, seed)


def _charpoly_factors(mat: np.ndarray, p: int) -> list[tuple]:
    """Irreducible factors (as coefficient tuples, ascending) of det(xI - mat) mod p."""
    import sympy
    x = sympy.Symbol("x")
    M = sympy.Matrix(mat.tolist())
    poly = M.charpoly(x)
    factors = sympy.factor_list(sympy.Poly(poly.as_expr(), x, modulus=p))[1]
    out = []
    for f, mult in factors:
        coeffs = sympy.Poly(f, x, modulus=p).all_coeffs()[::-1]
        out.append((tuple(int(c) % p for c in coeffs), int(mult)))
    return out


def _poly_eval_matrix(coeffs: Sequence[int], mat: np.ndarray, p: int) -> np.ndarray:
    d = mat.shape[0]
    out = np.zeros((d, d), dtype=np.int64)
    power = np.eye(d, dtype=np.int64)
    for c in coeffs:
        out = (out + int(c) * power) % p
        power = (power @ mat) % p
    return out


def _meataxe_search(V: GModule, seed: int) -> Optional[np.ndarray]:
    """Holt-Rees style: split or certify irreducible; None means irreducible."""
    p, d = V.n, V.dim
    rng = random.Random(seed)
    elems = list(V.group.elements())
    Vt = GModule(V.group, p, d,
                 [V.mat(V.group.inv(g)).T % p for g in elems],
                 name=f"{V.name}^t", validate=False)
    for attempt in range(60):
        theta = np.zeros((d, d), dtype=np.int64)
        for _ in range(3):
            theta = (theta + rng.randrange(1, p + 1) * V.mat(rng.choice(elems))) % p
        for coeffs, mult in _charpoly_factors(theta, p):
            if len(coeffs) - 1 == d:
                continue  # irreducible charpoly certifies nothing to split
            N = _poly_eval_matrix(coeffs, theta, p)
            ker = zn_kernel(N, p)
            if ker.shape[0] == 0:
                continue
            W = spin(V, ker[0])
            if W.shape[0] < d:
                return W
            kert = zn_kernel(N.T, p)
            if kert.shape[0]:
                Wt = spin(Vt, kert[0])
                if Wt.shape[0] < d:
                    # orthogonal complement of a transpose-submodule
                    return zn_kernel(np.array(Wt, dtype=np.int64), p)
            if ker.shape[0] == len(coeffs) - 1 and mult == 1:
                return None  # Norton certificate: irreducible
    raise CapExceeded("meataxe search failed to certify within 60 attempts")


def is_irreducible(V: GModule, seed: int = 12345) -> bool:
    if V.dim == 0:
        return False
    return find_proper_submodule(V, seed=seed) is None


def maschke_complement(V: GModule, W_basis: np.ndarray) -> np.ndarray:
    """Basis of a G-invariant complement of the submodule spanned by W_basis."""
    p, d = V.n, V.dim
    G = V.group
    if G.order % p == 0:
        raise NotSemisimple("module characteristic divides the group order")
    k = W_basis.shape[0]
    # a linear projector P0 onto W (rows of W_basis span W)
    tester = SpanTester(W_basis, p)
    W = np.asarray(W_basis, dtype=np.int64) % p
    # complete W to a basis of V
    full = [row for row in W]
    for v in np.eye(d, dtype=np.int64):
        if not tester.contains(v):
            tester._insert(tester._reduce(v.copy()))
            full.append(v)
    C = np.array(full, dtype=np.int64)  # rows: basis, first k span W
    Cinv_cols = []
    for e in np.eye(d, dtype=np.int64):
        x = zn_solve(C.T, e, p)
        Cinv_cols.append(x)
    Cinv = np.array(Cinv_cols, dtype=np.int64).T  # C.T @ Cinv = I
    proj_coords = np.zeros((d, d), dtype=np.int64)
    proj_coords[:k, :k] = np.eye(k, dtype=np.int64)
    P0 = (C.T @ proj_coords @ Cinv) % p  # projector onto W along the rest
    inv_order = pow(G.order % p, -1, p)
    P = np.zeros((d, d), dtype=np.int64)
    for g in G.elements():
        P = (P + V.mat(g) @ P0 @ V.mat(G.inv(g))) % p
    P = (inv_order * P) % p
    comp = zn_kernel(P, p)
    assert comp.shape[0] == d - k
    return comp


def module_isomorphic(V: GModule, W: GModule) -> bool:
    """V ~ W as G-modules (both irreducible: nonzero Hom implies iso)."""
    if V.dim != W.dim or V.group is not W.group or V.n != W.n:
        return False
    return hom_space_dim(V, W) > 0


def hom_space_dim(V: GModule, W: GModule) -> int:
    """dim_F_p Hom_G(V, W) (maps T with T V(g) = W(g) T)."""
    p = V.n
    gens = V.group.small_generating_set() or [0]
    dv, dw = V.dim, W.dim
    blocks = []
    for g in gens:
        # row-major vec: vec(A X B) = (A (x) B^T) vec(X)
        A = np.kron(np.eye(dw, dtype=np.int64), V.mat(g).T) - \
            np.kron(W.mat(g), np.eye(dv, dtype=np.int64))
        blocks.append(A % p)
    ker = zn_kernel(np.vstack(blocks) % p, p)
    return ker.shape[0]


@dataclass
class Decomposition:
    factors: list[tuple[GModule, int]]  # (irreducible, multiplicity)
    seed: int

    @property
    def total_dim(self) -> int:
        return sum(V.dim * e for V, e in self.factors)


def decompose(M: GModule, seed: int = 12345) -> Decomposition:
    """Split M into irreducibles with multiplicities (semisimple case only)."""
    p = M.n
    if M.group.order % p == 0:
        raise NotSemisimple(f"p = {p} divides |G| = {M.group.order}")
    if M.dim > DIM_CAP:
        raise CapExceeded(f"dim {M.dim} exceeds the decomposition cap {DIM_CAP}")
    pieces: list[GModule] = []
    stack = [M]
    while stack:
        V = stack.pop()
        if V.dim == 0:
            continue
        W = find_proper_submodule(V, seed=seed)
        if W is None:
            pieces.append(V)
            continue
        comp = maschke_complement(V, W)
        stack.append(V.submodule(W))
        stack.append(V.submodule(comp))
    groups: list[tuple[GModule, int]] = []
    for V in pieces:
        for i, (U, e) in enumerate(groups):
            if module_isomorphic(U, V):
                groups[i] = (U, e + 1)
                break
        else:
            groups.append((V, 1))
    groups.sort(key=lambda t: (t[0].dim, t[0].name))
    return Decomposition(groups, seed)


# ---------------------------------------------------------------------------
# endomorphism fields
# ---------------------------------------------------------------------------

def endomorphism_basis(V: GModule) -> list[np.ndarray]:
    """F_p-basis of End_G(V) as matrices."""
    p, d = V.n, V.dim
    gens = V.group.small_generating_set() or [0]
    blocks = []
    for g in gens:
        A = np.kron(np.eye(d, dtype=np.int64), V.mat(g).T) - \
            np.kron(V.mat(g), np.eye(d, dtype=np.int64))
        blocks.append(A % p)
    ker = zn_kernel(np.vstack(blocks) % p, p)
    return [k.reshape(d, d) % p for k in ker]


@dataclass
class EndField:
    """kappa = End_G(V): an explicit generator matrix and its field model."""

    p: int
    degree: int
    generator: np.ndarray      # matrix generating kappa over F_p
    basis: list[np.ndarray]    # F_p-basis (powers of the generator)

    @property
    def q(self) -> int:
        return self.p ** self.degree

    def field(self) -> GaloisField:
        return GaloisField(self.p, self.degree)


def endomorphism_field(V: GModule, seed: int = 12345) -> EndField:
    """kappa with an explicit generator; raises NotIrreducible on failure."""
    p, d = V.n, V.dim
    basis = endomorphism_basis(V)
    e = len(basis)
    if not is_irreducible(V, seed=seed):
        raise NotIrreducible("endomorphism field needs an irreducible module")
    # find a multiplicative generator (order q - 1) among deterministic combos
    q = p ** e
    span = SpanTester([b.reshape(-1) for b in basis], p)
    for coeffs in itertools.product(range(p), repeat=e):
        if not any(coeffs):
            continue
        K = np.zeros((d, d), dtype=np.int64)
        for c, b in zip(coeffs, basis):
            K = (K + c * b) % p
        order = _matrix_mult_order(K, p, cap=q)
        if order == q - 1:
            powers = []
            P = np.eye(d, dtype=np.int64)
            for _ in range(e):
                powers.append(P)
                P = (P @ K) % p
            if fp_rank(np.array([m.reshape(-1) for m in powers]), p) == e:
                return EndField(p, e, K, powers)
    raise NotIrreducible("no field generator found (module not irreducible?)")


def _matrix_mult_order(K: np.ndarray, p: int, cap: int) -> int:
    d = K.shape[0]
    ident = np.eye(d, dtype=np.int64)
    P = K % p
    for k in range(1, cap + 1):
        if np.array_equal(P, ident):
            return k
        P = (P @ K) % p
    return 0


# ---------------------------------------------------------------------------
# duality types
# ---------------------------------------------------------------------------

@dataclass
class DualityData:
    tag: str                      # unitary | symmetric | symplectic
    omega: np.ndarray             # pinned invariant element of (V* (x) V*)^G
    sigma_on_generator: np.ndarray  # sigma(kappa generator) as a matrix
    sigma_trivial: bool
    lam: np.ndarray               # omega^t = (lam (x) 1) omega
    wedge_inv_dim: int            # dim_F_p (wedge_2 V^dual)^G


def _dual_tensor_invariants(V: GModule) -> np.ndarray:
    Vd = V.dual()
    return Vd.tensor(Vd).invariants()


def duality_type(V: GModule, kappa: Optional[EndField] = None) -> DualityData:
    """The sigma/lambda classification of a self-dual irreducible module."""
    p, d = V.n, V.dim
    if kappa is None:
        kappa = endomorphism_field(V)
    T = _dual_tensor_invariants(V)
    if T.shape[0] == 0:
        raise NotSelfDual("no invariant element in V* (x) V*")
    # prefer omega inside span{u (x) v - v (x) u}
    skew = skew_subspace_basis(d)
    omega = None
    if skew:
        K = np.array(skew, dtype=np.int64) % p
        joint = np.hstack([T.T, (-K.T) % p]) % p
        ker = zn_kernel(joint, p)
        for row in ker:
            cand = (row[:T.shape[0]] @ T) % p
            if cand.any():
                omega = cand
                break
    wedge_dim = 0
    if skew:
        K = np.array(skew, dtype=np.int64) % p
        both = np.vstack([T, K])
        wedge_dim = T.shape[0] + fp_rank(K, p) - fp_rank(both, p)
    if omega is None:
        omega = T[0]

    def act_first(mat, w):
        # k on the first dual factor: coordinates transform by k^T @ W
        W = w.reshape(d, d)
        return ((mat.T @ W) % p).reshape(-1)

    def act_second(mat, w):
        W = w.reshape(d, d)
        return ((W @ mat) % p).reshape(-1)

    K = kappa.generator
    lhs = act_first(K, omega)
    # solve sigma(K) in the kappa-span: (1 (x) sigma(K)) omega = (K (x) 1) omega
    cols = [act_second(b, omega) for b in kappa.basis]
    sol = zn_solve(np.array(cols, dtype=np.int64).T, lhs, p)
    if sol is None:
        raise NotSelfDual("kappa does not act compatibly on the pairing")
    sigma_K = np.zeros((d, d), dtype=np.int64)
    for c, b in zip(sol, kappa.basis):
        sigma_K = (sigma_K + int(c) * b) % p
    sigma_trivial = np.array_equal(sigma_K % p, K % p)
    # sigma^2 = 1: applying sigma twice returns the generator
    lhs2 = act_first(sigma_K, omega)
    sol2 = zn_solve(np.array(cols, dtype=np.int64).T, lhs2, p)
    sigma2 = np.zeros((d, d), dtype=np.int64)
    for c, b in zip(sol2, kappa.basis):
        sigma2 = (sigma2 + int(c) * b) % p
    assert np.array_equal(sigma2 % p, K % p), "sigma is not an involution"
    omega_t = omega.reshape(d, d).T.reshape(-1)
    colsL = [act_first(b, omega) for b in kappa.basis]
    solL = zn_solve(np.array(colsL, dtype=np.int64).T, omega_t, p)
    assert solL is not None
    lam = np.zeros((d, d), dtype=np.int64)
    for c, b in zip(solL, kappa.basis):
        lam = (lam + int(c) * b) % p
    ident = np.eye(d, dtype=np.int64)
    if not sigma_trivial:
        tag = "unitary"
    elif p == 2:
        tag = "symmetric" if V.is_trivial_action else "symplectic"
    else:
        if np.array_equal(lam, ident):
            tag = "symmetric"
        elif np.array_equal(lam, (-ident) % p):
            tag = "symplectic"
        else:
            raise NotSelfDual("lambda is not +-1 with trivial sigma")
    return DualityData(tag, omega, sigma_K, sigma_trivial, lam, wedge_dim)


def is_self_dual(V: GModule) -> bool:
    return _dual_tensor_invariants(V).shape[0] > 0


def f2_orthogonal(V: GModule) -> bool:
    """Is there a nonzero invariant in Sym^2 V (characteristic 2 only)?"""
    if V.n != 2:
        raise WrongCharacteristic("F_2-orthogonality is a characteristic-2 notion")
    return sym2_invariant_dim(V) > 0


# ---------------------------------------------------------------------------
# the affine-symplectic lifting test
# ---------------------------------------------------------------------------

def asp_factoring(V: GModule, n: int, duality: Optional[DualityData] = None) -> bool:
    """Does the symplectic action lift to the affine symplectic extension?

    Decided by the vanishing of the action part of the first differential on
    a bilinear preimage of the invariant alternating form; odd-order images
    always lift.  For n = 2 the module must be F_2-orthogonal.
    """
    from .differentials import ExtensionDatum, HypothesisViolated
    p, d = V.n, V.dim
    if p != 2:
        raise WrongCharacteristic("the lifting question lives in characteristic 2")
    if n % 2:
        raise HypothesisViolated("n must be even")
    if duality is None:
        duality = duality_type(V)
    if duality.tag != "symplectic":
        raise HypothesisViolated("module must be symplectic")
    four_divides = n % 4 == 0
    if not four_divides and not f2_orthogonal(V):
        raise HypothesisViolated("n = 2 needs an F_2-orthogonal module")
    # odd-order image: every map from an odd-order group lifts
    image = {V.mat(g).tobytes() for g in V.group.elements()}
    if len(image) % 2 == 1:
        return True
    f_vec = _bilinear_preimage_cocycle(V, n, duality)
    act = tuple(tuple(_perm_of_matrix(V.mat(g), p, d)) for g in V.group.elements())
    datum = ExtensionDatum(V.group, p, d, act, n)
    tau = datum.d22(f_vec)
    return datum.class_is_zero_in_h2_dual(tau)


def _perm_of_matrix(mat: np.ndarray, p: int, r: int) -> list[int]:
    from .differentials import digits, undigits
    out = []
    for x in range(p ** r):
        out.append(undigits((mat @ digits(x, p, r)) % p, p))
    return out


def _bilinear_preimage_cocycle(V: GModule, n: int, duality: DualityData) -> np.ndarray:
    """A normalized 2-cocycle on the kernel group W = V representing a class
    with Delta-image the pinned form omega, valued in Z/n.

    For 4 | n any bilinear lift works (the class is automatically invariant);
    for n = 2 the lift is chosen through an invariant quadratic refinement.
    """
    from .differentials import digits
    from .gmodule import skew_subspace_basis
    p, d = V.n, V.dim
    omega_mat = duality.omega.reshape(d, d)
    if n % 4 == 0:
        g0 = np.triu(omega_mat, k=1) % 2  # strict upper triangle
    else:
        # invariant quadratic lift: solve for x in V (x) V with
        # (g - 1) x in skew for all generators and x + x^T = omega
        from .differentials import HypothesisViolated
        W = V.tensor(V)
        skew = skew_subspace_basis(d)
        S = np.array(skew, dtype=np.int64).T % 2 if skew else np.zeros((d * d, 0), dtype=np.int64)
        gens = V.group.small_generating_set() or [0]
        nskew = S.shape[1]
        nvars = d * d + nskew * len(gens)
        rows, rhs = [], []
        for gi, g in enumerate(gens):
            blk = np.zeros((d * d, nvars), dtype=np.int64)
            blk[:, :d * d] = (W.mat(g) - np.eye(d * d, dtype=np.int64)) % 2
            blk[:, d * d + gi * nskew: d * d + (gi + 1) * nskew] = S % 2
            rows.append(blk)
            rhs.extend([0] * (d * d))
        sym = np.zeros((d * d, nvars), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                sym[i * d + j, i * d + j] += 1
                sym[i * d + j, j * d + i] += 1
        rows.append(sym % 2)
        rhs.extend(int(omega_mat[i, j]) % 2 for i in range(d) for j in range(d))
        sol = zn_solve(np.vstack(rows) % 2, np.array(rhs, dtype=np.int64), 2)
        if sol is None:
            raise HypothesisViolated("no invariant quadratic refinement found")
        g0 = sol[:d * d].reshape(d, d) % 2
    scale = n // 2
    from .cohomology import _complex_for, _trivial_cached
    from .groups import elementary_abelian
    Wgrp = elementary_abelian(p, d)
    cx = _complex_for(_trivial_cached(Wgrp, n))
    vec = cx.zero(2)
    for t, (a, b) in enumerate(cx.tuples(2)):
        va, vb = digits(a, p, d), digits(b, p, d)
        vec[t] = (int(va @ g0 @ vb) % 2) * scale % n
    return vec


# ---------------------------------------------------------------------------
# the classified package and epsilon
# ---------------------------------------------------------------------------

class Anomalous(Exception):
    """epsilon is undefined for this module and modulus."""


@dataclass
class IrreducibleModule:
    """An irreducible module with its classification data."""

    V: GModule
    kappa: EndField
    self_dual: bool
    duality: Optional[DualityData]
    f2_orth: Optional[bool]        # characteristic 2 only
    key: str = ""

    @property
    def p(self) -> int:
        return self.V.n

    @property
    def dim(self) -> int:
        return self.V.dim

    @property
    def q(self) -> int:
        return self.kappa.q

    @property
    def is_trivial(self) -> bool:
        return self.V.is_trivial_action

    def a_symplectic(self, n: int) -> Optional[bool]:
        """None when the lifting question does not apply."""
        if self.p != 2 or not self.self_dual or self.duality.tag != "symplectic":
            return None
        if n % 4 and not self.f2_orth:
            return None
        return asp_factoring(self.V, n, self.duality)

    def anomalous(self, n: int) -> bool:
        if self.p != 2 or not self.self_dual:
            return False
        if self.duality.tag != "symplectic":
            return False
        if n % 2:
            return False
        asp = self.a_symplectic(n)
        intermediate = asp is False
        if n % 4 == 0:
            return intermediate
        return intermediate and bool(self.f2_orth)

    def epsilon(self, n: int) -> int:
        """The modified indicator; raises Anomalous/NotSelfDual as appropriate."""
        if not self.self_dual:
            raise NotSelfDual("epsilon is defined for self-dual modules")
        tag = self.duality.tag
        if self.p != 2:
            return {"unitary": 0, "symmetric": 1, "symplectic": -1}[tag]
        if self.anomalous(n):
            raise Anomalous(f"epsilon undefined (anomalous at n = {n})")
        if n % 4 == 0:
            if tag == "unitary":
                return 0
            if tag == "symmetric":
                return 1
            return -1  # A-symplectic (intermediate is anomalous here)
        # 2 || n
        if tag == "symmetric":
            return 1
        if not self.f2_orth:
            return 1
        if tag == "unitary":
            return 0
        return -1  # A-symplectic and F_2-orthogonal


def classify(V: GModule, seed: int = 12345) -> IrreducibleModule:
    kappa = endomorphism_field(V, seed=seed)
    sd = is_self_dual(V)
    dual = duality_type(V, kappa) if sd else None
    f2o = f2_orthogonal(V) if V.n == 2 else None
    return IrreducibleModule(V, kappa, sd, dual, f2o)


def irreducible_gamma_modules(Gamma: FiniteGroup, p: int, seed: int = 12345
                              ) -> list[GModule]:
    """Representatives of irreducible F_p[Gamma]-modules via the regular module."""
    if Gamma.order % p == 0:
        raise NotSemisimple("p divides |Gamma|")
    # regular module: basis indexed by Gamma, g acts by left translation
    mats = []
    for g in Gamma.elements():
        m = np.zeros((Gamma.order, Gamma.order), dtype=np.int64)
        for h in Gamma.elements():
            m[Gamma.mul(g, h), h] = 1
        mats.append(m)
    reg = GModule(Gamma, p, Gamma.order, mats, name=f"F{p}[{Gamma.name}]",
                  validate=False)
    return [V for V, _ in decompose(reg, seed=seed).factors]
