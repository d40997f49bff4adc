"""Finite groups by multiplication table, with coprime-order actions.

Groups are dense index-based multiplication tables with identity pinned to
index 0.  A GammaGroup packages a group H with an action of a second group
by automorphisms; the semidirect product, coinvariants, equivariant
automorphism groups, and the U-weight live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Callable, Iterable, Optional, Sequence


class CapExceeded(Exception):
    """Search cap exceeded; supply the data explicitly or raise the cap."""


DEFAULT_AUT_CAP = 512
DEFAULT_NONABELIAN_CAP = 60


class FiniteGroup:
    """A finite group as an order x order multiplication table on 0..order-1.

    Identity is always index 0.  Instances are immutable after construction
    and safe to share between workers.
    """

    def __init__(self, table: Sequence[Sequence[int]], name: str = "G",
                 validate: bool = True):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.name = name
        if validate:
            self._validate()
        self.inverse = tuple(self._find_inverse(g) for g in range(self.order))

    def _validate(self) -> None:
        n = self.order
        for row in self.table:
            if len(row) != n or sorted(row) != list(range(n)):
                raise ValueError("multiplication rows must be permutations")
        for j in range(n):
            col = sorted(self.table[i][j] for i in range(n))
            if col != list(range(n)):
                raise ValueError("multiplication columns must be permutations")
        if any(self.table[0][g] != g or self.table[g][0] != g for g in range(n)):
            raise ValueError("identity must be index 0")
        if n <= 64:
            for a in range(n):
                for b in range(n):
                    ab = self.table[a][b]
                    for c in range(n):
                        if self.table[ab][c] != self.table[a][self.table[b][c]]:
                            raise ValueError("multiplication not associative")

    def _find_inverse(self, g: int) -> int:
        return self.table[g].index(0)

    # -- basic operations ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul(x, g)
            k += 1
        return k

    def power(self, g: int, e: int) -> int:
        if e < 0:
            return self.power(self.inv(g), -e)
        x = 0
        for _ in range(e):
            x = self.mul(x, g)
        return x

    @cached_property
    def is_abelian(self) -> bool:
        return all(self.mul(a, b) == self.mul(b, a)
                   for a in range(self.order) for b in range(a))

    @cached_property
    def order_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.element_order(g) for g in self.elements()))

    @cached_property
    def conjugacy_class_sizes(self) -> tuple[int, ...]:
        seen = [False] * self.order
        sizes = []
        for g in self.elements():
            if seen[g]:
                continue
            cls = {self.conj(x, g) for x in self.elements()}
            for y in cls:
                seen[y] = True
            sizes.append(len(cls))
        return tuple(sorted(sizes))

    def iso_invariant(self) -> tuple:
        """(order, element-order multiset, conjugacy class sizes): a cheap
        isomorphism-invariant prefilter before brute-force search."""
        return (self.order, self.order_multiset, self.conjugacy_class_sizes)

    # -- subgroup machinery ---------------------------------------------------

    def generated_subgroup(self, gens: Iterable[int]) -> frozenset[int]:
        closure = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                for y in (self.mul(x, g), self.mul(x, self.inv(g))):
                    if y not in closure:
                        closure.add(y)
                        frontier.append(y)
        return frozenset(closure)

    def normal_closure(self, gens: Iterable[int]) -> frozenset[int]:
        seed = set(gens)
        while True:
            conj = {self.conj(g, x) for g in self.elements() for x in seed}
            new = self.generated_subgroup(seed | conj)
            if new == seed:
                return frozenset(new)
            seed = set(new)

    def small_generating_set(self) -> list[int]:
        gens: list[int] = []
        span = {0}
        # deterministic greedy sweep; elements of large order first
        by_order = sorted(self.elements(), key=lambda g: (-self.element_order(g), g))
        for g in by_order:
            if g not in span:
                gens.append(g)
                span = set(self.generated_subgroup(gens))
                if len(span) == self.order:
                    break
        return gens

    def quotient(self, normal: frozenset[int]) -> tuple["FiniteGroup", list[int]]:
        """Quotient by a normal subgroup; returns (Q, projection table)."""
        coset_of = [-1] * self.order
        reps: list[int] = [0]
        for x in normal:
            coset_of[x] = 0
        for g in self.elements():
            if coset_of[g] >= 0:
                continue
            idx = len(reps)
            reps.append(g)
            for x in normal:
                coset_of[self.mul(g, x)] = idx
        m = len(reps)
        table = [[coset_of[self.mul(reps[i], reps[j])] for j in range(m)]
                 for i in range(m)]
        return FiniteGroup(table, name=f"{self.name}/N"), coset_of

    def center(self) -> frozenset[int]:
        return frozenset(g for g in self.elements()
                         if all(self.mul(g, x) == self.mul(x, g) for x in self.elements()))

    def commutator_subgroup(self) -> frozenset[int]:
        comms = {self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
                 for a in self.elements() for b in self.elements()}
        return self.normal_closure(comms)

    def abelianization(self) -> "FiniteGroup":
        return self.quotient(self.commutator_subgroup())[0]

    # -- words ---------------------------------------------------------------

    def factorizations(self, gens: Sequence[int]) -> list[tuple[int, ...]]:
        """A word in `gens` (indices into gens) for every element, by BFS."""
        words: list[Optional[tuple[int, ...]]] = [None] * self.order
        words[0] = ()
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for i, g in enumerate(gens):
                    y = self.mul(x, g)
                    if words[y] is None:
                        words[y] = words[x] + (i,)
                        nxt.append(y)
            frontier = nxt
        if any(w is None for w in words):
            raise ValueError("generators do not generate the group")
        return words  # type: ignore[return-value]

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], name="1")


def cyclic_group(m: int) -> FiniteGroup:
    table = [[(i + j) % m for j in range(m)] for i in range(m)]
    return FiniteGroup(table, name=f"Z{m}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n = H.order

    def idx(g, h):
        return g * n + h

    order = G.order * H.order
    table = [[0] * order for _ in range(order)]
    for g1 in G.elements():
        for h1 in H.elements():
            for g2 in G.elements():
                for h2 in H.elements():
                    table[idx(g1, h1)][idx(g2, h2)] = idx(G.mul(g1, g2), H.mul(h1, h2))
    return FiniteGroup(table, name=f"{G.name}x{H.name}")


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    """(Z/p)^k; element index = base-p digits."""
    order = p ** k

    def add(a, b):
        out, mul = 0, 1
        for _ in range(k):
            out += ((a % p + b % p) % p) * mul
            a //= p
            b //= p
            mul *= p
        return out

    table = [[add(a, b) for b in range(order)] for a in range(order)]
    return FiniteGroup(table, name=f"E{p}^{k}")


def quaternion_group() -> FiniteGroup:
    """Q8 with elements 1, -1, i, -i, j, -j, k, -k (identity first)."""
    # encode as pairs (sign, axis) with axis in {1, i, j, k}
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    mul_axis = {
        ("1", x): (1, x) for x in "1ijk"
    }
    mul_axis.update({(x, "1"): (1, x) for x in "1ijk"})
    mul_axis.update({
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    })

    def decode(idx):
        sign = -1 if idx % 2 else 1
        axis = "1ijk"[idx // 2]
        return sign, axis

    def encode(sign, axis):
        return "1ijk".index(axis) * 2 + (0 if sign == 1 else 1)

    table = [[0] * 8 for _ in range(8)]
    for a in range(8):
        for b in range(8):
            s1, x1 = decode(a)
            s2, x2 = decode(b)
            s3, x3 = mul_axis[(x1, x2)]
            table[a][b] = encode(s1 * s2 * s3, x3)
    return FiniteGroup(table, name="Q8")


def symmetric_group(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    # put identity first
    perms.sort(key=lambda p: p != tuple(range(n)))
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):  # (p*q)(x) = p(q(x))
        return tuple(p[q[x]] for x in range(n))

    table = [[index[compose(p, q)] for q in perms] for p in perms]
    return FiniteGroup(table, name=f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    def parity(p):
        seen = [False] * n
        sign = 1
        for i in range(n):
            if seen[i]:
                continue
            j, clen = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                clen += 1
            if clen % 2 == 0:
                sign = -sign
        return sign

    perms = [p for p in itertools.permutations(range(n)) if parity(p) == 1]
    perms.sort(key=lambda p: (p != tuple(range(n)), p))
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):
        return tuple(p[q[x]] for x in range(n))

    table = [[index[compose(p, q)] for q in perms] for p in perms]
    return FiniteGroup(table, name=f"A{n}")


def from_permutations(perm_gens: Sequence[Sequence[int]], degree: int,
                      name: str = "P") -> FiniteGroup:
    """Group generated by permutations of 0..degree-1, as a table."""
    ident = tuple(range(degree))
    gens = [tuple(p) for p in perm_gens]
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(x[g[i]] for i in range(degree))
                if y not in seen:
                    seen.add(y)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[tuple(a[b[i]] for i in range(degree))] for b in elems] for a in elems]
    return FiniteGroup(table, name=name)


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given by its full image table."""

    source: FiniteGroup
    target: FiniteGroup
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.source.order or self.image[0] != 0:
            raise ValueError("image table must map identity to identity")
        S, T, f = self.source, self.target, self.image
        for a in S.elements():
            for b in S.elements():
                if f[S.mul(a, b)] != T.mul(f[a], f[b]):
                    raise ValueError("not a homomorphism")

    def __call__(self, g: int) -> int:
        return self.image[g]

    @property
    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.target.order

    @property
    def is_injective(self) -> bool:
        return len(set(self.image)) == self.source.order

    def kernel(self) -> frozenset[int]:
        return frozenset(g for g in self.source.elements() if self.image[g] == 0)


def hom_from_gen_images(source: FiniteGroup, target: FiniteGroup,
                        gens: Sequence[int], images: Sequence[int]) -> Optional[GroupHom]:
    """Extend generator images to a hom, or None if inconsistent."""
    words = source.factorizations(gens)
    img = [0] * source.order
    for g in source.elements():
        x = 0
        for i in words[g]:
            x = target.mul(x, images[i])
        img[g] = x
    f = img
    for a in source.elements():
        for b in source.elements():
            if f[source.mul(a, b)] != target.mul(f[a], f[b]):
                return None
    return GroupHom(source, target, tuple(img))


def automorphisms(G: FiniteGroup, cap: int = DEFAULT_AUT_CAP) -> list[tuple[int, ...]]:
    """All automorphisms of G as index permutations, by generator-image search."""
    if G.order > cap:
        raise CapExceeded(f"|G| = {G.order} exceeds automorphism search cap {cap}")
    gens = G.small_generating_set()
    if not gens:
        return [(0,)]
    words = G.factorizations(gens)
    orders = [G.element_order(g) for g in gens]
    by_order: dict[int, list[int]] = {}
    for g in G.elements():
        by_order.setdefault(G.element_order(g), []).append(g)
    out = []
    for images in itertools.product(*(by_order[o] for o in orders)):
        img = [0] * G.order
        ok = True
        for g in G.elements():
            x = 0
            for i in words[g]:
                x = G.mul(x, images[i])
            img[g] = x
        if len(set(img)) != G.order:
            continue
        for a in G.elements():
            for b in G.elements():
                if img[G.mul(a, b)] != G.mul(img[a], img[b]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(img))
    return out


def compose_perm(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    """(f o g)(x) = f(g(x))."""
    return tuple(f[g[x]] for x in range(len(f)))


def invert_perm(f: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(f)
    for i, x in enumerate(f):
        out[x] = i
    return tuple(out)


# ---------------------------------------------------------------------------
# Gamma-groups
# ---------------------------------------------------------------------------

@dataclass
class GammaGroup:
    """A group H with an action of Gamma by automorphisms, gcd(|H|,|Gamma|)=1."""

    H: FiniteGroup
    Gamma: FiniteGroup
    action: tuple[tuple[int, ...], ...]  # per Gamma-element automorphism of H

    def __post_init__(self):
        if gcd(self.H.order, self.Gamma.order) != 1:
            raise ValueError("|H| and |Gamma| must be coprime")
        self.action = tuple(tuple(a) for a in self.action)
        if len(self.action) != self.Gamma.order:
            raise ValueError("need one automorphism per Gamma element")
        H, G = self.H, self.Gamma
        for g, a in enumerate(self.action):
            if a[0] != 0 or sorted(a) != list(range(H.order)):
                raise ValueError("action values must be bijections fixing identity")
            for x in H.elements():
                for y in H.elements():
                    if a[H.mul(x, y)] != H.mul(a[x], a[y]):
                        raise ValueError("action values must be automorphisms")
        for g1 in G.elements():
            for g2 in G.elements():
                if compose_perm(self.action[g1], self.action[g2]) != self.action[G.mul(g1, g2)]:
                    raise ValueError("action must be a homomorphism Gamma -> Aut(H)")

    @classmethod
    def from_generator_images(cls, H: FiniteGroup, Gamma: FiniteGroup,
                              gen_images: dict[int, Sequence[int]]) -> "GammaGroup":
        """Build the full action from automorphisms attached to generators."""
        gens = list(gen_images)
        words = Gamma.factorizations(gens)
        ident = tuple(range(H.order))
        action = []
        for g in Gamma.elements():
            a = ident
            for i in words[g]:  # words multiply generators left to right
                a = compose_perm(a, tuple(gen_images[gens[i]]))
            action.append(a)
        return cls(H, Gamma, tuple(action))

    @classmethod
    def trivial_action(cls, H: FiniteGroup, Gamma: FiniteGroup) -> "GammaGroup":
        ident = tuple(range(H.order))
        return cls(H, Gamma, tuple(ident for _ in Gamma.elements()))

    def act(self, gamma: int, h: int) -> int:
        return self.action[gamma][h]

    def fixed_points(self, gamma: int) -> list[int]:
        return [h for h in self.H.elements() if self.action[gamma][h] == h]

    def invariants(self) -> list[int]:
        return [h for h in self.H.elements()
                if all(a[h] == h for a in self.action)]

    def coinvariants(self) -> tuple[FiniteGroup, list[int]]:
        """H_Gamma = H / <normal closure of g^{-1} gamma(g)>, with projection."""
        H = self.H
        gens = {H.mul(H.inv(g), a[g]) for g in H.elements() for a in self.action}
        N = H.normal_closure(gens)
        return H.quotient(N)

    def coinvariants_trivial(self) -> bool:
        return self.coinvariants()[0].order == 1


def semidirect_product(hg: GammaGroup) -> tuple[FiniteGroup, GroupHom, GroupHom, GroupHom]:
    """H x| Gamma with (h,a)(h',a') = (h * a(h'), a a').

    Returns (G, embed_H, embed_Gamma, project_Gamma); element index of (h, a)
    is h * |Gamma| + a, so the identity (0, 0) is index 0.
    """
    H, Gm = hg.H, hg.Gamma
    ng = Gm.order

    def idx(h, a):
        return h * ng + a

    order = H.order * ng
    table = [[0] * order for _ in range(order)]
    for h1 in H.elements():
        for a1 in Gm.elements():
            for h2 in H.elements():
                for a2 in Gm.elements():
                    h = H.mul(h1, hg.act(a1, h2))
                    a = Gm.mul(a1, a2)
                    table[idx(h1, a1)][idx(h2, a2)] = idx(h, a)
    G = FiniteGroup(table, name=f"{H.name}:{Gm.name}")
    embed_H = GroupHom(H, G, tuple(idx(h, 0) for h in H.elements()))
    embed_G = GroupHom(Gm, G, tuple(idx(0, a) for a in Gm.elements()))
    project = GroupHom(G, Gm, tuple(g % ng for g in range(order)))
    return G, embed_H, embed_G, project


def gamma_automorphisms(hg: GammaGroup, cap: int = DEFAULT_AUT_CAP) -> list[tuple[int, ...]]:
    """Automorphisms of H commuting with the whole Gamma-action."""
    auts = automorphisms(hg.H, cap=cap)
    out = []
    for f in auts:
        if all(compose_perm(f, a) == compose_perm(a, f) for a in hg.action):
            out.append(f)
    return out


def u_weight(hg: GammaGroup, U: Sequence[int]) -> Fraction:
    """G^{.U} = prod_{gamma in U} |G^gamma| / |G^Gamma|; exact."""
    num = 1
    for gamma in U:
        num *= len(hg.fixed_points(gamma))
    return Fraction(num, len(hg.invariants()))


# ---------------------------------------------------------------------------
# isomorphism testing (brute force with invariant prefilter)
# ---------------------------------------------------------------------------

def are_isomorphic(G: FiniteGroup, H: FiniteGroup, cap: int = 1024) -> bool:
    if G.order != H.order:
        return False
    if G.iso_invariant() != H.iso_invariant():
        return False
    if G.order > cap:
        raise CapExceeded("isomorphism search too large")
    gens = G.small_generating_set()
    if not gens:
        return True
    words = G.factorizations(gens)
    orders = [G.element_order(g) for g in gens]
    cands = [[h for h in H.elements() if H.element_order(h) == o] for o in orders]
    for images in itertools.product(*cands):
        img = [0] * G.order
        for g in G.elements():
            x = 0
            for i in words[g]:
                x = H.mul(x, images[i])
            img[g] = x
        if len(set(img)) != G.order:
            continue
        good = all(img[G.mul(a, b)] == H.mul(img[a], img[b])
                   for a in G.elements() for b in G.elements())
        if good:
            return True
    return False


# ---------------------------------------------------------------------------
# nonabelian data
# ---------------------------------------------------------------------------

@dataclass
class NonabelianDatum:
    """An admissible simple nonabelian kernel candidate with derived data.

    `outmap` sends each element of the acting group (usually H x| Gamma) to a
    coset representative in Aut(N) of its image in Out(N).  Fields that the
    brute-force machinery cannot afford to validate (beyond the caps) must be
    supplied and are echoed as unvalidated in reports.
    """

    N: FiniteGroup
    source: FiniteGroup
    outmap: tuple[int, ...]           # source element -> index into aut_perms
    aut_perms: list[tuple[int, ...]]  # Aut(N) as permutations of N
    delta_pairing_trivial: Optional[bool] = None
    L_N: Optional[int] = None
    unvalidated: list[str] = field(default_factory=list)

    @cached_property
    def _aut_index(self) -> dict[tuple[int, ...], int]:
        return {a: i for i, a in enumerate(self.aut_perms)}

    @cached_property
    def inner(self) -> frozenset[int]:
        """Indices into aut_perms of the inner automorphisms."""
        inner = set()
        for g in self.N.elements():
            perm = tuple(self.N.conj(g, x) for x in self.N.elements())
            inner.add(self._aut_index[perm])
        return frozenset(inner)

    @cached_property
    def out_cosets(self) -> list[list[int]]:
        """Out(N) as a partition of aut indices into Inn-cosets."""
        m = len(self.aut_perms)
        coset_of = [-1] * m
        cosets: list[list[int]] = []
        ident = self._aut_index[tuple(range(self.N.order))]
        order_of_first_touch = sorted(range(m), key=lambda i: (i != ident, i))
        for i in order_of_first_touch:
            if coset_of[i] >= 0:
                continue
            fi = self.aut_perms[i]
            members = sorted(self._aut_index[compose_perm(fi, self.aut_perms[k])]
                             for k in self.inner)
            ci = len(cosets)
            cosets.append(members)
            for j in members:
                coset_of[j] = ci
        self._coset_of = coset_of
        return cosets

    def coset_index(self, aut_idx: int) -> int:
        self.out_cosets
        return self._coset_of[aut_idx]

    @cached_property
    def out_group(self) -> FiniteGroup:
        cosets = self.out_cosets
        reps = [c[0] for c in cosets]
        m = len(cosets)
        table = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(m):
                prod = compose_perm(self.aut_perms[reps[i]], self.aut_perms[reps[j]])
                table[i][j] = self.coset_index(self._aut_index[prod])
        return FiniteGroup(table, name=f"Out({self.N.name})")

    def outmap_is_trivial(self) -> bool:
        return all(self.coset_index(a) == 0 for a in self.outmap)

    def centralizer_order(self) -> int:
        """|Z_{Out(N)}(image of source)| in Out(N)."""
        out = self.out_group
        img = {self.coset_index(self.outmap[s]) for s in self.source.elements()}
        return sum(1 for z in out.elements()
                   if all(out.mul(z, x) == out.mul(x, z) for x in img))


def klein_four_gamma() -> GammaGroup:
    """Klein four group with the canonical order-3 action (x -> y -> x+y)."""
    H = elementary_abelian(2, 2)
    Gamma = cyclic_group(3)
    # e1 -> e2 -> e1+e2 -> e1 on indices 1, 2, 3
    a = (0, 2, 3, 1)
    return GammaGroup.from_generator_images(H, Gamma, {1: a})


def q8_gamma() -> GammaGroup:
    """Q8 with the canonical order-3 action cycling i -> j -> k."""
    H = quaternion_group()
    Gamma = cyclic_group(3)
    a = (0, 1, 4, 5, 6, 7, 2, 3)
    return GammaGroup.from_generator_images(H, Gamma, {1: a})


def count_hom_lifts(source: FiniteGroup, nd: NonabelianDatum,
                    cap: int = DEFAULT_NONABELIAN_CAP) -> int:
    """Number of homomorphisms source -> Aut(N) lifting the given outmap."""
    if nd.N.order > cap:
        if nd.L_N is None:
            raise CapExceeded(
                f"|N| = {nd.N.order} exceeds cap {cap}; supply L_N in the input")
        return nd.L_N
    aut = nd.aut_perms
    m = len(aut)
    index = {a: i for i, a in enumerate(aut)}
    autG_table = [[index[compose_perm(aut[i], aut[j])] for j in range(m)] for i in range(m)]
    AutN = FiniteGroup(autG_table, name=f"Aut({nd.N.name})", validate=False)
    gens = source.small_generating_set()
    if not gens:
        return 1 if nd.coset_index(nd.outmap[0]) == 0 else 0
    words = source.factorizations(gens)
    gen_orders = [source.element_order(g) for g in gens]
    count = 0
    cands = []
    for g, o in zip(gens, gen_orders):
        target_coset = nd.coset_index(nd.outmap[g])
        cands.append([i for i in range(m)
                      if nd.coset_index(i) == target_coset
                      and o % AutN.element_order(i) == 0])
    for images in itertools.product(*cands):
        img = [0] * source.order
        for s in source.elements():
            x = 0
            for i in words[s]:
                x = AutN.mul(x, images[i])
            img[s] = x
        good = all(img[source.mul(a, b)] == AutN.mul(img[a], img[b])
                   for a in source.elements() for b in source.elements())
        if good and all(nd.coset_index(img[s]) == nd.coset_index(nd.outmap[s])
                        for s in source.elements()):
            count += 1
    return count


def count_outer_lifts(nd: NonabelianDatum, cap: int = DEFAULT_NONABELIAN_CAP) -> int:
    """L_N: the number of lifts of source -> Out(N) to source -> Aut(N)."""
    if nd.L_N is not None:
        return nd.L_N
    n = count_hom_lifts(nd.source, nd, cap=cap)
    nd.L_N = n
    return n


def nonabelian_datum(N: FiniteGroup, source: FiniteGroup,
                     outmap_cosets: Sequence[int] | None = None,
                     cap: int = DEFAULT_NONABELIAN_CAP) -> NonabelianDatum:
    """Build a NonabelianDatum, computing Aut(N) when within the cap.

    outmap_cosets gives, per source element, an index into Aut(N)
    representing the target coset; None means the trivial outer action.
    """
    if N.order > cap:
        raise CapExceeded(f"|N| = {N.order} exceeds cap {cap}")
    aut = automorphisms(N, cap=max(cap, N.order))
    if outmap_cosets is None:
        outmap = tuple(0 for _ in source.elements())
    else:
        outmap = tuple(int(x) for x in outmap_cosets)
    nd = NonabelianDatum(N=N, source=source, outmap=outmap, aut_perms=aut)
    # validate the outer map is a homomorphism into Out(N)
    out = nd.out_group
    img = [nd.coset_index(outmap[s]) for s in source.elements()]
    for a in source.elements():
        for b in source.elements():
            if img[source.mul(a, b)] != out.mul(img[a], img[b]):
                raise ValueError("outmap is not a homomorphism to Out(N)")
    return nd
