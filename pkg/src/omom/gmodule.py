"""Modules over finite groups: (Z/n)^d with a matrix action.

The constructions the cohomology and representation layers need live here:
duals, tensor products, restrictions along homomorphisms, fixed subspaces,
and the symmetric/alternating quotients used by the classification of
self-dual modules in characteristic 2.
"""

from __future__ import annotations

from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .groups import FiniteGroup, GroupHom
from .znlinalg import zn_kernel, span_size


class GModule:
    """(Z/n)^dim with a G-action by invertible matrices.

    `mats` maps each group element to a dim x dim matrix mod n acting on
    column vectors; None means the trivial action.
    """

    def __init__(self, group: FiniteGroup, n: int, dim: int,
                 mats: Optional[Sequence] = None, name: str = "M",
                 validate: bool = True):
        self.group = group
        self.n = n
        self.dim = dim
        self.name = name
        if mats is None:
            self._mats = None
        else:
            arr = [np.asarray(m, dtype=np.int64) % n for m in mats]
            if len(arr) != group.order:
                raise ValueError("need one matrix per group element")
            self._mats = arr
            if validate:
                self._validate()

    def _validate(self):
        n = self.n
        ident = np.eye(self.dim, dtype=np.int64)
        if not np.array_equal(self._mats[0] % n, ident % n):
            raise ValueError("identity must act as the identity matrix")
        for a in self.group.elements():
            for b in self.group.elements():
                ab = self.group.mul(a, b)
                if not np.array_equal((self._mats[a] @ self._mats[b]) % n,
                                      self._mats[ab] % n):
                    raise ValueError("action is not a homomorphism")

    @classmethod
    def trivial(cls, group: FiniteGroup, n: int, dim: int = 1, name: str = "triv") -> "GModule":
        return cls(group, n, dim, None, name=name)

    @classmethod
    def from_generator_matrices(cls, group: FiniteGroup, n: int,
                                gen_mats: dict[int, Sequence], dim: int,
                                name: str = "M") -> "GModule":
        gens = list(gen_mats)
        words = group.factorizations(gens)
        mats = []
        for g in group.elements():
            m = np.eye(dim, dtype=np.int64)
            for i in words[g]:  # words multiply generators left to right
                m = (m @ np.asarray(gen_mats[gens[i]], dtype=np.int64)) % n
            mats.append(m)
        return cls(group, n, dim, mats, name=name)

    @property
    def is_trivial_action(self) -> bool:
        if self._mats is None:
            return True
        ident = np.eye(self.dim, dtype=np.int64) % self.n
        return all(np.array_equal(m % self.n, ident) for m in self._mats)

    def mat(self, g: int) -> np.ndarray:
        if self._mats is None:
            return np.eye(self.dim, dtype=np.int64) % self.n
        return self._mats[g]

    def act(self, g: int, vec) -> np.ndarray:
        if self._mats is None:
            return np.asarray(vec, dtype=np.int64) % self.n
        return (self._mats[g] @ np.asarray(vec, dtype=np.int64)) % self.n

    @property
    def size(self) -> int:
        return self.n ** self.dim

    # -- constructions -------------------------------------------------------

    def dual(self) -> "GModule":
        """Hom(M, Z/n) with (g.u)(v) = u(g^{-1} v): matrices (M_g^{-1})^T."""
        if self._mats is None:
            return GModule(self.group, self.n, self.dim, None, name=f"{self.name}^")
        mats = [self.mat(self.group.inv(g)).T % self.n for g in self.group.elements()]
        return GModule(self.group, self.n, self.dim, mats, name=f"{self.name}^", validate=False)

    def tensor(self, other: "GModule") -> "GModule":
        assert self.group is other.group and self.n == other.n
        if self._mats is None and other._mats is None:
            return GModule(self.group, self.n, self.dim * other.dim, None)
        mats = [np.kron(self.mat(g), other.mat(g)) % self.n for g in self.group.elements()]
        return GModule(self.group, self.n, self.dim * other.dim, mats,
                       name=f"{self.name}(x){other.name}", validate=False)

    def direct_sum(self, other: "GModule") -> "GModule":
        assert self.group is other.group and self.n == other.n
        d1, d2 = self.dim, other.dim
        mats = []
        for g in self.group.elements():
            m = np.zeros((d1 + d2, d1 + d2), dtype=np.int64)
            m[:d1, :d1] = self.mat(g)
            m[d1:, d1:] = other.mat(g)
            mats.append(m)
        return GModule(self.group, self.n, d1 + d2, mats,
                       name=f"{self.name}+{other.name}", validate=False)

    def power(self, e: int) -> "GModule":
        out = self
        for _ in range(e - 1):
            out = out.direct_sum(self)
        if e == 0:
            return GModule(self.group, self.n, 0, None, name="0")
        return out

    def restrict(self, hom: GroupHom) -> "GModule":
        """Pull the action back along hom: source -> self.group."""
        assert hom.target is self.group
        if self._mats is None:
            return GModule(hom.source, self.n, self.dim, None, name=self.name)
        mats = [self.mat(hom(g)) for g in hom.source.elements()]
        return GModule(hom.source, self.n, self.dim, mats, name=self.name, validate=False)

    def submodule(self, basis: Sequence) -> "GModule":
        """Action on an invariant subspace in the given basis (F_p only)."""
        from .znlinalg import zn_solve
        B = np.array([np.asarray(b, dtype=np.int64) % self.n for b in basis]).T  # dim x k
        mats = []
        for g in self.group.elements():
            img = (self.mat(g) @ B) % self.n
            cols = []
            for j in range(B.shape[1]):
                x = zn_solve(B, img[:, j], self.n)
                if x is None:
                    raise ValueError("basis does not span an invariant subspace")
                cols.append(x)
            mats.append(np.array(cols, dtype=np.int64).T % self.n)
        return GModule(self.group, self.n, B.shape[1], mats,
                       name=f"{self.name}|sub", validate=False)

    # -- invariants ------------------------------------------------------------

    def fixed_subspace(self, elements: Sequence[int]) -> np.ndarray:
        """Basis (rows) of the simultaneous fixed space of the given elements."""
        if self._mats is None or not elements:
            return np.eye(self.dim, dtype=np.int64)
        blocks = [self.mat(g) - np.eye(self.dim, dtype=np.int64) for g in elements]
        A = np.vstack(blocks) % self.n
        return zn_kernel(A, self.n)

    def invariants(self) -> np.ndarray:
        gens = self.group.small_generating_set()
        return self.fixed_subspace(gens if gens else [0])

    def fixed_count(self, g: int) -> int:
        return span_size(self.fixed_subspace([g]), self.n)

    def invariant_count(self) -> int:
        return span_size(self.invariants(), self.n)

    def __repr__(self) -> str:
        return f"GModule({self.name}, n={self.n}, dim={self.dim}, G={self.group.name})"


def skew_subspace_basis(dim: int) -> list[np.ndarray]:
    """Basis of span{e_i (x) e_j - e_j (x) e_i} inside the d^2 tensor square."""
    out = []
    for i in range(dim):
        for j in range(i + 1, dim):
            v = np.zeros(dim * dim, dtype=np.int64)
            v[i * dim + j] = 1
            v[j * dim + i] -= 1
            out.append(v)
    return out


def tensor_square_invariants(V: GModule) -> np.ndarray:
    """Basis (rows) of (V (x) V)^G."""
    return V.tensor(V).invariants()


def sym2_invariant_dim(V: GModule) -> int:
    """dim of (Sym^2 V)^G, Sym^2 V = (V(x)V) / span{v(x)w - w(x)v}, F_p only.

    Classes [x] with (g-1)x in the skew subspace for all g, modulo skew.
    """
    p = V.n
    d = V.dim
    skew = skew_subspace_basis(d)
    W = V.tensor(V)
    gens = V.group.small_generating_set() or [0]
    # solve (g-1)x = S y_g jointly: kernel of [[g-1, -S, 0...], ...]
    nskew = len(skew)
    S = np.array(skew).T % p if nskew else np.zeros((d * d, 0), dtype=np.int64)
    blocks = []
    for g in gens:
        row = np.zeros((d * d, d * d + nskew * len(gens)), dtype=np.int64)
        row[:, :d * d] = (W.mat(g) - np.eye(d * d, dtype=np.int64)) % p
        # subtract S y_g
        gi = gens.index(g)
        row[:, d * d + gi * nskew: d * d + (gi + 1) * nskew] = (-S) % p
        blocks.append(row)
    A = np.vstack(blocks) % p
    ker = zn_kernel(A, p)
    xs = ker[:, :d * d] if ker.size else np.zeros((0, d * d), dtype=np.int64)
    # dimension of the image of xs in the quotient by skew
    ambient = [row for row in xs] + skew
    from .znlinalg import fp_rank
    total = fp_rank(np.array(ambient), p) if ambient else 0
    skew_rank = fp_rank(np.array(skew), p) if skew else 0
    return total - skew_rank
