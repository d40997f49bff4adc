import itertools

import numpy as np
import pytest

from omom.gmodule import GModule
from omom.groups import (
    GammaGroup, GroupHom, cyclic_group, elementary_abelian, gamma_automorphisms,
    klein_four_gamma, q8_gamma, quaternion_group, trivial_group,
)
from omom.cohomology import (
    BadPrime, CoprimalityViolated, ExponentViolation, Orientation, SemidirectData,
    bockstein, cohomology, cohomology_semidirect, cohomology_size_direct, cup,
    eval_pairing, h2_structure, h3_of, lifting_invariant, module_over_semidirect,
    mult_pairing, omega_psi, orientation_from_coeffs, orientations,
    pullback, pushforward_orientation, _trivial_cached,
)


# -- brute-force oracles -----------------------------------------------------

def brute_force_h2_size(G, n):
    """Enumerate every normalized 2-cochain of G with Z/n values (tiny G)."""
    m = G.order - 1
    tuples = list(itertools.product(range(1, G.order), repeat=2))
    cochains = itertools.product(range(n), repeat=len(tuples))

    def value(f, a, b):
        if a == 0 or b == 0:
            return 0
        return f[tuples.index((a, b))]

    def is_cocycle(f):
        for a in range(G.order):
            for b in range(G.order):
                for c in range(G.order):
                    # (df)(a,b,c) = f(b,c) - f(ab,c) + f(a,bc) - f(a,b)
                    if (value(f, b, c) - value(f, G.mul(a, b), c)
                            + value(f, a, G.mul(b, c)) - value(f, a, b)) % n:
                        return False
        return True

    def is_coboundary(f):
        for g in itertools.product(range(n), repeat=m):
            gg = (0,) + g
            ok = True
            for a in range(G.order):
                for b in range(G.order):
                    if (gg[a] + gg[b] - gg[G.mul(a, b)] - value(f, a, b)) % n:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return True
        return False

    cocycles = [f for f in cochains if is_cocycle(f)]
    coboundaries = [f for f in cocycles if is_coboundary(f)]
    return len(cocycles) // len(coboundaries)


def test_h2_z2_f2_against_enumeration():
    G = cyclic_group(2)
    assert brute_force_h2_size(G, 2) == 2
    M = GModule.trivial(G, 2, 1)
    assert cohomology(G, M, 2).size == 2


def test_h_star_cyclic_groups_periodic():
    # H^i(Z/m, Z/n): gcd for i > 0, n for i = 0 (periodic resolution values)
    for m, n in [(2, 2), (3, 3), (4, 2), (2, 4), (5, 3)]:
        G = cyclic_group(m)
        M = GModule.trivial(G, n, 1)
        import math
        g = math.gcd(m, n)
        assert cohomology(G, M, 0).size == n
        for i in (1, 2, 3):
            assert cohomology(G, M, i).size == g, (m, n, i)


def test_d2_rank_on_klein_four_matches_enumeration():
    # dim C^2 - dim Z^2 from full enumeration of the 9-dim normalized C^2
    G = elementary_abelian(2, 2)
    M = GModule.trivial(G, 2, 1)
    from omom.cohomology import _complex_for
    cx = _complex_for(M)
    count_cocycles = 0
    for bits in itertools.product(range(2), repeat=9):
        vec = np.array(bits, dtype=np.int64)
        if not cx.apply_d(2, vec).any():
            count_cocycles += 1
    dim_z2 = count_cocycles.bit_length() - 1
    assert cx.d_rank_fp(2) == 9 - dim_z2


# -- golden values for the Boston-Bush groups --------------------------------

def _sd_trivial(hg, n):
    sd = SemidirectData.of(hg)
    return _trivial_cached(sd.G, n)


def v2_module(hg):
    """The 2-dimensional F_2 module with the order-3 action, H acting trivially."""
    mat = [[0, 1], [1, 1]]
    return module_over_semidirect(hg, None, {1: mat}, 2, 2, name="V2")


def test_klein_four_cohomology_trivial_coeffs():
    hg = klein_four_gamma()
    M = _sd_trivial(hg, 2)
    sizes = [cohomology_semidirect(hg, M, i).size for i in range(4)]
    assert sizes == [2, 1, 2, 4]


def test_klein_four_cohomology_v2_coeffs():
    hg = klein_four_gamma()
    M = v2_module(hg)
    sizes = [cohomology_semidirect(hg, M, i).size for i in range(3)]
    assert sizes == [1, 4, 4]


def test_quaternion_cohomology_trivial_coeffs():
    hg = q8_gamma()
    M = _sd_trivial(hg, 2)
    sizes = [cohomology_semidirect(hg, M, i).size for i in range(4)]
    assert sizes == [2, 1, 1, 2]


def test_quaternion_cohomology_v2_coeffs():
    hg = q8_gamma()
    M = v2_module(hg)
    sizes = [cohomology_semidirect(hg, M, i).size for i in range(4)]
    assert sizes == [1, 4, 4, 1]


def test_semidirect_reduction_matches_direct_computation():
    # |H^i(H x| Gamma, M)| via invariants == direct cochains, |H x| Gamma| <= 12
    hg = klein_four_gamma()
    sd = SemidirectData.of(hg)
    M = _sd_trivial(hg, 2)
    for i in range(4):
        reduced = cohomology_semidirect(hg, M, i).size
        direct = cohomology_size_direct(sd.G, M, i)
        assert reduced == direct, i
    MV = v2_module(hg)
    for i in range(3):
        assert cohomology_semidirect(hg, MV, i).size == cohomology_size_direct(sd.G, MV, i)


def test_semidirect_trivial_gamma_agrees():
    H = cyclic_group(5)
    hg = GammaGroup.trivial_action(H, trivial_group())
    M = _sd_trivial(hg, 5)
    for i in range(4):
        direct = cohomology(H, GModule.trivial(H, 5, 1), i).size
        assert cohomology_semidirect(hg, M, i).size == direct


def test_coprimality_violated():
    hg = klein_four_gamma()
    M = _sd_trivial(hg, 3)
    with pytest.raises(CoprimalityViolated):
        cohomology_semidirect(hg, M, 1)


# -- Bockstein ----------------------------------------------------------------

def poly_class(H2orH3, G, n, table):
    """Build a class from explicit cochain values {(g1,..): value}."""
    from omom.cohomology import _complex_for
    cx = H2orH3.complex
    vec = cx.zero(H2orH3.degree)
    for tup, val in table.items():
        vec[cx.tuple_index(tup)] = val % n
    return H2orH3.class_from_cocycle(vec)


def test_bockstein_nontrivial_on_klein_invariant_class():
    # B: H^2(V2 x| Gamma, F_2) -> H^3 is nonzero on the nonzero class
    hg = klein_four_gamma()
    M = _sd_trivial(hg, 2)
    H2 = cohomology_semidirect(hg, M, 2)
    assert H2.size == 2
    cls = H2.basis_classes()[0]
    b = bockstein(cls, 2)
    assert not b.is_zero()


def test_bockstein_of_zero_class_is_zero():
    hg = klein_four_gamma()
    M = _sd_trivial(hg, 2)
    H2 = cohomology_semidirect(hg, M, 2)
    assert bockstein(H2.zero_class(), 2).is_zero()


def test_bockstein_polynomial_identity_on_klein():
    # B(x^2 + xy + y^2) = xy(x+y) = x^2 y + x y^2 as classes on V2
    V2 = elementary_abelian(2, 2)
    M = GModule.trivial(V2, 2, 1)
    H2 = cohomology(V2, M, 2)
    H3 = cohomology(V2, M, 3)
    # x, y are the coordinate functionals: x(g) = g_1, y(g) = g_2
    x = lambda g: g % 2
    y = lambda g: g // 2
    from omom.cohomology import _complex_for
    cx = _complex_for(M)
    vec2 = cx.zero(2)
    for t, (a, b) in enumerate(cx.tuples(2)):
        vec2[t] = (x(a) * x(b) + x(a) * y(b) + y(a) * y(b)) % 2
    cls = H2.class_from_cocycle(vec2)
    img = bockstein(cls, 2)
    vec3 = cx.zero(3)
    for t, (a, b, c) in enumerate(cx.tuples(3)):
        vec3[t] = (x(a) * x(b) * y(c) + x(a) * y(b) * y(c)) % 2
    target = H3.class_from_cocycle(vec3)
    assert img.coords == target.coords
    assert not img.is_zero()


def test_bockstein_squared_zero_and_naturality():
    # B o B = 0 on H^1(V2, F_2) -> H^2 -> H^3; naturality along Z/2 -> V2
    V2 = elementary_abelian(2, 2)
    M = GModule.trivial(V2, 2, 1)
    H1 = cohomology(V2, M, 1)
    for cls in H1.basis_classes():
        b1 = bockstein(cls, 2)
        b2 = bockstein(b1, 2)
        assert b2.is_zero()
    # naturality: f^* B = B f^* along the inclusion Z/2 -> V2, first factor
    Z2 = cyclic_group(2)
    incl = GroupHom(Z2, V2, (0, 1))
    MZ = GModule.trivial(Z2, 2, 1)
    for cls in H1.basis_classes():
        lhs = pullback(incl, bockstein(cls, 2), MZ)
        rhs = bockstein(pullback(incl, cls, MZ), 2)
        assert lhs.coords == rhs.coords


def test_pullback_z4_to_z2_against_enumeration():
    # generator of H^2(Z/4, Z/4) pulled back along multiplication-by-2
    Z2, Z4 = cyclic_group(2), cyclic_group(4)
    f = GroupHom(Z2, Z4, (0, 2))
    M4 = GModule.trivial(Z4, 4, 1)
    H2 = cohomology(Z4, M4, 2)
    assert H2.size == 4
    gen = H2.basis_classes()[0]
    M4_on_Z2 = GModule.trivial(Z2, 4, 1)
    pulled = pullback(f, gen, M4_on_Z2)
    # oracle: H^2(Z/2, Z/4) = Z/2; the pullback of a generator along the
    # injection of the subgroup of index 2 is 2 * generator = 0 ... verify by
    # direct classification of the pulled cocycle against all coboundaries
    H2_small = cohomology(Z2, M4_on_Z2, 2)
    assert H2_small.size == 2
    # brute-force: is the pulled cochain a coboundary on Z/2?
    is_zero_class = H2_small.sub.is_zero(pulled.rep)
    # cross-check with full enumeration
    found_cob = False
    for g1 in range(4):
        gg = (0, g1)
        ok = all((gg[a] + gg[b] - gg[Z2.mul(a, b)] - int(
            pulled.rep[0] if (a, b) == (1, 1) else 0)) % 4 == 0
                 for a in range(2) for b in range(2))
        if ok:
            found_cob = True
    assert is_zero_class == found_cob


# -- cup products -------------------------------------------------------------

def test_cup_with_zero_class_is_zero():
    hg = q8_gamma()
    MV = v2_module(hg)
    H2 = cohomology_semidirect(hg, MV, 2)
    MVd = MV.dual()
    H1d = cohomology_semidirect(hg, MVd, 1)
    Mt = _sd_trivial(hg, 2)
    H3t = cohomology_semidirect(hg, Mt, 3)
    z = H2.zero_class()
    for b in H1d.basis_classes():
        c = cup(z, b, _trivial_cached(hg.H, 2), eval_pairing(2), result=H3t)
        assert c.is_zero()


def test_cup_pairing_q8_nondegenerate():
    # H^2(Q8 x| Gamma, V2) x H^1(Q8 x| Gamma, V2^dual) -> H^3( . , F_2)
    hg = q8_gamma()
    MV = v2_module(hg)
    MVd = MV.dual()
    H2 = cohomology_semidirect(hg, MV, 2)
    H1d = cohomology_semidirect(hg, MVd, 1)
    Mt = _sd_trivial(hg, 2)
    H3t = cohomology_semidirect(hg, Mt, 3)
    MH_t = _trivial_cached(hg.H, 2)
    assert H2.size == 4 and H1d.size == 4 and H3t.size == 2
    # pairing matrix into H^3 ~ F_2
    alphas = list(H2.all_classes())
    betas = list(H1d.all_classes())
    def pair(a, b):
        c = cup(a, b, MH_t, eval_pairing(2), result=H3t)
        return c.coords[0] if c.coords else 0
    # nondegenerate: every nonzero alpha pairs nontrivially with some beta
    for a in alphas:
        if a.is_zero():
            continue
        assert any(pair(a, b) for b in betas)
    for b in betas:
        if b.is_zero():
            continue
        assert any(pair(a, b) for a in alphas)


def test_cup_klein_no_alpha_collapses_h3():
    # for V2 x| Gamma: no nonzero alpha in H^2(.,V2) maps all of H^1(.,V2^dual)
    # into a 1-dimensional subspace of the 2-dimensional H^3(., F_2)
    hg = klein_four_gamma()
    MV = v2_module(hg)
    MVd = MV.dual()
    H2 = cohomology_semidirect(hg, MV, 2)
    H1d = cohomology_semidirect(hg, MVd, 1)
    Mt = _sd_trivial(hg, 2)
    H3t = cohomology_semidirect(hg, Mt, 3)
    MH_t = _trivial_cached(hg.H, 2)
    assert H3t.size == 4
    for a in H2.all_classes():
        if a.is_zero():
            continue
        images = set()
        for b in H1d.all_classes():
            c = cup(a, b, MH_t, eval_pairing(2), result=H3t)
            images.add(c.coords)
        # the image set must span a space of size 4 (not contained in a line)
        assert len(images) == 4


def test_cup_graded_commutativity_and_bilinearity():
    # over F_2: [a u b] = [b u a]; over F_3 in odd degrees: [a u b] = -[b u a]
    V2 = elementary_abelian(2, 2)
    M = GModule.trivial(V2, 2, 1)
    H1 = cohomology(V2, M, 1)
    a, b = H1.basis_classes()
    ab = cup(a, b, M, mult_pairing(2))
    ba = cup(b, a, M, mult_pairing(2))
    assert ab.coords == ba.coords
    a_plus = a + b
    lhs = cup(a_plus, b, M, mult_pairing(2))
    rhs = cup(a, b, M, mult_pairing(2)) + cup(b, b, M, mult_pairing(2))
    assert lhs.coords == rhs.coords
    E9 = elementary_abelian(3, 2)
    M3 = GModule.trivial(E9, 3, 1)
    H1_3 = cohomology(E9, M3, 1)
    x, y = H1_3.basis_classes()
    xy = cup(x, y, M3, mult_pairing(3))
    yx = cup(y, x, M3, mult_pairing(3))
    assert (xy + yx).is_zero()
    assert not xy.is_zero()


# -- orientations -------------------------------------------------------------

def test_orientation_counts():
    assert len(orientations(klein_four_gamma(), 2)) == 4
    assert len(orientations(q8_gamma(), 2)) == 2
    hg = GammaGroup.trivial_action(trivial_group(), cyclic_group(3))
    assert len(orientations(hg, 2)) == 1


def test_duality_functional_count_small_groups():
    # number of all (not just invariant) functionals = |H^3(H, Z/n)|
    for H, n in [(cyclic_group(2), 2), (cyclic_group(4), 2), (cyclic_group(4), 4),
                 (elementary_abelian(2, 2), 2), (quaternion_group(), 2),
                 (cyclic_group(3), 3), (elementary_abelian(3, 2), 3),
                 (cyclic_group(2), 6), (cyclic_group(6), 6), (cyclic_group(4), 6)]:
        H3 = h3_of(GammaGroup.trivial_action(H, trivial_group()), n)
        total = 1
        for d in H3.torsion:
            total *= d
        assert total == H3.size


def test_pushforward_orientation_trivial_cases():
    hg = klein_four_gamma()
    for ohg in orientations(hg, 2):
        ident = GroupHom(hg.H, hg.H, tuple(hg.H.elements()))
        s2 = pushforward_orientation(ident, ohg.s, hg, 2)
        assert s2 == ohg.s


def test_pushforward_orientation_q8_to_klein():
    # Q8 -> Q8/center = V2 is Gamma-equivariant for the canonical actions
    hgQ = q8_gamma()
    hgV = klein_four_gamma()
    Q8 = hgQ.H
    center = Q8.generated_subgroup([1])  # -1 generates the center
    Qbar, proj = Q8.quotient(frozenset(center))
    assert Qbar.order == 4
    # identify Qbar with the canonical Klein group via an isomorphism that
    # intertwines the Gamma-actions
    from omom.groups import are_isomorphic, automorphisms
    import itertools as it
    target = hgV.H
    iso = None
    for images in it.permutations(range(1, 4)):
        img = (0,) + images
        ok = all(img[Qbar.mul(a, b)] == target.mul(img[a], img[b])
                 for a in Qbar.elements() for b in Qbar.elements())
        if not ok:
            continue
        # equivariance: img(action_Qbar(gamma)(x)) == action_V(gamma)(img(x))
        act_qbar = [proj[hgQ.act(1, next(g for g in Q8.elements() if proj[g] == x))]
                    for x in Qbar.elements()]
        if all(img[act_qbar[x]] == hgV.act(1, img[x]) for x in Qbar.elements()):
            iso = img
            break
    assert iso is not None
    f = GroupHom(Q8, target, tuple(iso[proj[g]] for g in Q8.elements()))
    for ohg in orientations(hgQ, 2):
        s_H = pushforward_orientation(f, ohg.s, hgV, 2)
        # cross-check by direct evaluation on every basis class
        H3V = h3_of(hgV, 2)
        from omom.cohomology import pullback_cochain, _trivial_cached as tc
        MQ = tc(Q8, 2)
        for j in range(H3V.rank):
            pulled = pullback_cochain(f, H3V.complex, 3, H3V.basis_cocycles[j], MQ)
            assert s_H.coeffs[j] == ohg.s.value_of_cocycle(pulled)


def test_h2_structure_cardinality():
    # |H^2(A, Z/n)| = |Hom(A, Z/n)| * |wedge Hom(A (x) A, Z/n)|
    for A, n in [(elementary_abelian(2, 2), 4), (cyclic_group(2), 2),
                 (elementary_abelian(3, 2), 3), (elementary_abelian(2, 3), 2),
                 (elementary_abelian(3, 2), 9), (elementary_abelian(2, 2), 2)]:
        H2, imB, delta, hom_count, wedge_count = h2_structure(A, n)
        assert H2.size == hom_count * wedge_count, (A.name, n)


def test_h2_structure_f2_n2_sym_square():
    A = cyclic_group(2)
    H2, imB, delta, hom_count, wedge_count = h2_structure(A, 2)
    assert H2.size == 2


def test_h2_structure_exponent_violation():
    with pytest.raises(ExponentViolation):
        h2_structure(cyclic_group(4), 4)


def test_h2_structure_delta_image_klein_n4():
    # A = (F_2)^2, n = 4: Delta surjects onto alternating forms; kernel has
    # size |im B| * |symmetric part|
    A = elementary_abelian(2, 2)
    H2, imB, delta, hom_count, wedge_count = h2_structure(A, 4)
    forms = set()
    kernel = 0
    for cls in H2.all_classes():
        tbl = delta(cls)
        forms.add(tbl.tobytes())
        if not tbl.any():
            kernel += 1
    assert len(forms) == wedge_count
    assert kernel * wedge_count == H2.size


# -- omega / psi --------------------------------------------------------------

def test_omega_psi_zero_orientation():
    H = elementary_abelian(3, 2)
    hg = GammaGroup.trivial_action(H, trivial_group())
    zero = next(o for o in orientations(hg, 3) if o.s.is_zero())
    om, psi, meta = omega_psi(zero, 3, 1)
    assert all(all(v == 0 for v in row) for row in om)
    assert all(all(v == 0 for v in row) for row in psi)


def test_psiomega_identity_abelian():
    # <a bar, b> - <b bar, a> = 2 omega_m(a, b) for odd ell, m = v
    H = elementary_abelian(3, 2)
    hg = GammaGroup.trivial_action(H, trivial_group())
    for ohg in orientations(hg, 3)[:9]:
        om, psi, meta = omega_psi(ohg, 3, 1)
        r = len(om)
        # m = v = 1: a bar = a, so tables are directly comparable
        for i in range(r):
            for j in range(r):
                assert (psi[i][j] - psi[j][i]) % 3 == (2 * om[i][j]) % 3


def test_omega_alternating():
    H = elementary_abelian(3, 2)
    hg = GammaGroup.trivial_action(H, trivial_group())
    for ohg in orientations(hg, 3)[:9]:
        om, _, _ = omega_psi(ohg, 3, 1)
        for i in range(len(om)):
            assert om[i][i] == 0
            for j in range(len(om)):
                assert (om[i][j] + om[j][i]) % 3 == 0


def test_omega_chain_condition_z9():
    # omega_m(a, ell b) = omega_{m+1}(a~, b) for H = Z/9, n = 3
    H = cyclic_group(9)
    hg = GammaGroup.trivial_action(H, trivial_group())
    M1 = GModule.trivial(H, 3, 1)
    M2 = GModule.trivial(H, 9, 1)
    H1_1 = cohomology(H, M1, 1)
    H1_2 = cohomology(H, M2, 1)
    for ohg in orientations(hg, 3):
        om1, _, _ = omega_psi(ohg, 3, 1)
        om2, _, _ = omega_psi(ohg, 3, 2)
        # H^1(Z/9, Z/3) = Z/3 (rank 1); H^1(Z/9, Z/9) = Z/9 (rank 1)
        # a in H^1(Z/3-coeff) includes into m=2 via multiplication by 3;
        # b reduces mod 3.  Tables are scalars against the pinned bases.
        b2 = H1_2.basis_classes()[0]
        b1 = H1_1.basis_classes()[0]
        # express: omega_1(b1, b2 mod 3) vs omega_2(3 * lift(b1), b2)
        red = H1_1.class_from_cocycle(b2.rep % 3)
        lift = H1_2.class_from_cocycle((3 * b1.rep) % 9)
        from omom.cohomology import bockstein_pair, cup, mult_pairing, _s_ell
        lm1, lm2 = 3, 9
        ab1 = cup(b1, red, M1, mult_pairing(3))
        B1 = bockstein_pair(ab1, 3, 3)
        v1 = _s_ell(ohg, 3, 1, B1)
        ab2 = cup(lift, b2, M2, mult_pairing(9))
        B2 = bockstein_pair(ab2, 3, 9)
        v2 = _s_ell(ohg, 3, 1, B2)
        half = pow(2, -1, 3)
        assert (-half * v1) % 3 == (-half * v2) % 3


def test_omega_ell2_variant_alternating():
    hg = klein_four_gamma()
    for ohg in orientations(hg, 2):
        om, _, meta = omega_psi(ohg, 2, 1)
        assert meta["variant"] == "no-half-factor"
        for i in range(len(om)):
            assert om[i][i] == 0


def test_bad_prime():
    hg = klein_four_gamma()
    ohg = orientations(hg, 2)[0]
    with pytest.raises(BadPrime):
        omega_psi(ohg, 3, 1)


# -- lifting invariant ---------------------------------------------------------

def test_lifting_invariant_zero_orientation():
    hg = klein_four_gamma()
    zero = next(o for o in orientations(hg, 2) if o.s.is_zero())
    L = lifting_invariant(zero, 2)
    H2 = cohomology(hg.H, GModule.trivial(hg.H, 2, 1), 2)
    assert all(L(c) == 0 for c in H2.basis_classes())


def test_lifting_invariant_cyclic_is_zero():
    # H cyclic: the Bockstein chain kills H^2, so the functional vanishes
    H = cyclic_group(4)
    hg = GammaGroup.trivial_action(H, trivial_group())
    for ohg in orientations(hg, 2):
        L = lifting_invariant(ohg, 2)
        H2 = cohomology(H, GModule.trivial(H, 2, 1), 2)
        for c in H2.basis_classes():
            assert L(c) == 0
    # oracle: periodic resolution gives B = 0 on H^2 of a cyclic group
    M2 = GModule.trivial(H, 2, 1)
    H2 = cohomology(H, M2, 2)
    for c in H2.basis_classes():
        assert bockstein(c, 2).is_zero()


def test_lifting_invariant_klein_nonzero():
    # V2 with s_H nonzero on the Bockstein-image class xy(x+y): the class xy
    # has B(xy) = x^2 y + x y^2, so the functional is nonzero on [xy]
    hg = klein_four_gamma()
    H = hg.H
    M = GModule.trivial(H, 2, 1)
    H2 = cohomology(H, M, 2)
    H3 = h3_of(hg, 2)
    from omom.cohomology import _complex_for
    cx = _complex_for(M)
    x = lambda g: g % 2
    y = lambda g: g // 2
    vec3 = cx.zero(3)
    for t, (a, b, c) in enumerate(cx.tuples(3)):
        vec3[t] = (x(a) * x(b) * y(c) + x(a) * y(b) * y(c)) % 2
    bock_class_coords = H3.sub.coords(vec3)
    hit = False
    for ohg in orientations(hg, 2):
        if ohg.s.value_on_coords(bock_class_coords) == 0:
            continue
        L = lifting_invariant(ohg, 2)
        vec2 = cx.zero(2)
        for t, (a, b) in enumerate(cx.tuples(2)):
            vec2[t] = (x(a) * y(b)) % 2
        cls_xy = H2.class_from_cocycle(vec2)
        assert L(cls_xy) == 1
        hit = True
    assert hit
