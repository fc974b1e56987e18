import random
from fractions import Fraction

import pytest

from lie2alg.automorphisms import (
    Tau,
    TwoGroupCell,
    act,
    ad_conjugate,
    aut_compose,
    aut_distance,
    aut_identity,
    aut_inverse,
    cell_distance,
    cell_identity,
    cell_target,
    certify_aut0,
    check_crossed_module,
    classify_automorphism,
    hmultiply,
    is_aut0,
    partial,
    semidirect_distance,
    semidirect_identity,
    semidirect_inverse,
    semidirect_multiply,
    star,
    tau_distance,
    tau_inverse,
    tau_is_invertible,
    tau_zero,
    twist_hom,
    random_tau,
    vcompose,
)
from lie2alg.core import (
    Lie2Hom,
    ce_coboundary,
    compose_hom,
    hom_distance,
    hom_identity,
    validate_hom,
)
from lie2alg.derivations import (
    DerM1,
    compute_der0_basis,
    is_derivation0,
    random_der0,
    random_derM1,
)
from lie2alg.fixtures import (
    fix_ab,
    fix_end,
    fix_str,
    skeletal_demo,
    sl2_structure,
    string_aut_hom,
    trivial_rep,
)
from lie2alg.linalg import AltTensor, Mat, mat_inverse


def string_aut0(L, rng):
    return certify_aut0(L, string_aut_hom(L, rng))


# ---------------------------------------------------------------------------
# degree 0
# ---------------------------------------------------------------------------

def test_identity_is_aut0():
    for L in (fix_ab(), fix_str(), fix_end()):
        ok, _ = is_aut0(L, hom_identity(L))
        assert ok


def test_string_weak_automorphisms_certify():
    rng = random.Random(30)
    L = fix_str()
    for _ in range(5):
        A = string_aut0(L, rng)
        assert mat_inverse(A.hom.A0) == A.a0_inv


def test_string_scaling_degree_m1_fails():
    L = fix_str()
    A = Lie2Hom(L, L, Mat.identity(3), Mat.from_rows([[2]]), AltTensor.zero(2, 3, 1))
    ok, rep = is_aut0(L, A)
    assert not ok
    assert "iii" in rep.violated()


def test_aut_inverse_uses_cache():
    rng = random.Random(31)
    L = fix_str()
    A = string_aut0(L, rng)
    Ai = aut_inverse(A)
    assert hom_distance(compose_hom(Ai.hom, A.hom), hom_identity(L)) == 0
    assert hom_distance(compose_hom(A.hom, Ai.hom), hom_identity(L)) == 0


# ---------------------------------------------------------------------------
# the star monoid
# ---------------------------------------------------------------------------

def test_star_unit():
    rng = random.Random(32)
    for L in (fix_str(), fix_end()):
        t = random_tau(L, rng)
        z = tau_zero(L)
        assert star(L, t, z) == t
        assert star(L, z, t) == t


def test_star_abelian_is_addition():
    rng = random.Random(33)
    L = fix_ab()
    t1, t2 = random_tau(L, rng), random_tau(L, rng)
    assert star(L, t1, t2).mat == t1.mat + t2.mat


def test_star_endo_scalar_formula():
    L = fix_end()
    t1 = Tau(Mat.from_rows([[Fraction(1, 2)]]))
    t2 = Tau(Mat.from_rows([[Fraction(3)]]))
    got = star(L, t1, t2)
    assert got.mat.at(0, 0) == Fraction(1, 2) + 3 + Fraction(1, 2) * 3


def test_star_associative():
    rng = random.Random(34)
    for L in (fix_str(), fix_end()):
        ts = [random_tau(L, rng) for _ in range(3)]
        lhs = star(L, star(L, ts[0], ts[1]), ts[2])
        rhs = star(L, ts[0], star(L, ts[1], ts[2]))
        assert lhs == rhs


def test_tau_inverse_cases():
    L = fix_end()
    assert tau_inverse(L, tau_zero(L)) == tau_zero(L)
    t = Tau(Mat.from_rows([[Fraction(1, 2)]]))
    ti = tau_inverse(L, t)
    assert ti.mat.at(0, 0) == Fraction(-1, 2) / (1 + Fraction(1, 2))
    assert tau_inverse(L, Tau(Mat.from_rows([[-1]]))) is None
    Lab = fix_ab()
    t = Tau(Mat.from_rows([[Fraction(7, 3)]]))
    assert tau_inverse(Lab, t).mat == -t.mat


def test_tau_inverse_is_two_sided():
    rng = random.Random(35)
    for L in (fix_str(), fix_end()):
        for _ in range(10):
            t = random_tau(L, rng, invertible=True)
            ti = tau_inverse(L, t)
            assert star(L, t, ti) == tau_zero(L)
            assert star(L, ti, t) == tau_zero(L)


def test_invertibility_lemma_three_ways():
    # the three invertibility conditions agree, on mixed singular/regular draws
    rng = random.Random(36)
    L = fix_end()
    n_singular = 0
    for _ in range(120):
        t = Tau(Mat(1, 1, [Fraction(rng.randint(-4, 4), rng.choice([1, 2]))]))
        left = mat_inverse(Mat.identity(L.n0) + L.d @ t.mat) is not None
        right = mat_inverse(Mat.identity(L.n1) + t.mat @ L.d) is not None
        unit = tau_is_invertible(L, t)
        assert left == right == unit
        if not unit:
            n_singular += 1
        if unit:
            ti = tau_inverse(L, t)
            lhs = mat_inverse(Mat.identity(L.n0) + L.d @ t.mat)
            rhs = Mat.identity(L.n0) + L.d @ ti.mat
            assert lhs == rhs
    assert n_singular > 0  # the draws genuinely mix both branches


def test_invertibility_lemma_bigger_complex():
    rng = random.Random(37)
    from lie2alg.core import make_endo
    from lie2alg.fixtures import rand_mat
    L = make_endo(rand_mat(rng, 2, 1))
    for _ in range(40):
        t = random_tau(L, rng)
        left = mat_inverse(Mat.identity(L.n0) + L.d @ t.mat) is not None
        right = mat_inverse(Mat.identity(L.n1) + t.mat @ L.d) is not None
        assert left == right == tau_is_invertible(L, t)


# ---------------------------------------------------------------------------
# twisting and the connecting map
# ---------------------------------------------------------------------------

def test_twist_by_zero_is_identity_op():
    rng = random.Random(38)
    L = fix_str()
    A = string_aut_hom(L, rng)
    assert hom_distance(twist_hom(L, A, tau_zero(L)), A) == 0


def test_twist_always_homomorphism():
    rng = random.Random(39)
    for L in (fix_str(), fix_end(), skeletal_demo()):
        for _ in range(4):
            A = hom_identity(L)
            t = random_tau(L, rng)
            assert validate_hom(twist_hom(L, A, t)).ok
    L = fix_str()
    for _ in range(4):
        A = string_aut_hom(L, rng)
        t = random_tau(L, rng)
        assert validate_hom(twist_hom(L, A, t)).ok


def test_partial_zero_is_identity():
    L = fix_str()
    assert aut_distance(partial(L, tau_zero(L)), aut_identity(L)) == 0


def test_partial_string_formula():
    # on the string fixture partial(tau) = (I, I, -D tau)
    rng = random.Random(40)
    L = fix_str()
    t = random_tau(L, rng)
    P = partial(L, t)
    assert P.hom.A0 == Mat.identity(3)
    assert P.hom.A1 == Mat.identity(1)
    xi = AltTensor(1, 3, 1, {(i,): (t.mat.at(0, i),) for i in range(3)})
    dxi = ce_coboundary(sl2_structure(), trivial_rep(3, 1), xi)
    assert P.hom.A2 == -dxi


def test_partial_is_group_homomorphism():
    rng = random.Random(41)
    for L in (fix_str(), fix_end()):
        for _ in range(6):
            t1 = random_tau(L, rng, invertible=True)
            t2 = random_tau(L, rng, invertible=True)
            lhs = partial(L, star(L, t1, t2)).hom
            rhs = compose_hom(partial(L, t1).hom, partial(L, t2).hom)
            assert hom_distance(lhs, rhs) == 0


def test_partial_lands_in_aut0():
    rng = random.Random(42)
    for L in (fix_str(), fix_end(), skeletal_demo()):
        t = random_tau(L, rng, invertible=True)
        ok, _ = is_aut0(L, partial(L, t).hom)
        assert ok


# ---------------------------------------------------------------------------
# the action
# ---------------------------------------------------------------------------

def test_act_identity():
    rng = random.Random(43)
    L = fix_str()
    t = random_tau(L, rng)
    assert act(L, aut_identity(L), t) == t


def test_act_string_drops_to_composition():
    rng = random.Random(44)
    L = fix_str()
    A = string_aut0(L, rng)
    t = random_tau(L, rng)
    assert act(L, A, t).mat == t.mat @ A.a0_inv  # A1 = 1


def test_act_is_group_action():
    rng = random.Random(45)
    L = fix_str()
    A, B = string_aut0(L, rng), string_aut0(L, rng)
    t = random_tau(L, rng)
    lhs = act(L, aut_compose(A, B), t)
    rhs = act(L, A, act(L, B, t))
    assert lhs == rhs


def test_act_preserves_invertibility():
    rng = random.Random(46)
    L = fix_end()
    A = certify_aut0(L, Lie2Hom(L, L, Mat.from_rows([[3]]), Mat.from_rows([[3]]),
                                AltTensor.zero(2, 1, 1)))
    for _ in range(10):
        t = random_tau(L, rng, invertible=True)
        assert tau_is_invertible(L, act(L, A, t))


# ---------------------------------------------------------------------------
# crossed-module laws
# ---------------------------------------------------------------------------

def test_crossed_module_abelian():
    rng = random.Random(47)
    L = fix_ab()
    auts = [aut_identity(L)]
    taus = [random_tau(L, rng) for _ in range(3)]
    for _, resid in check_crossed_module(L, auts, taus):
        assert resid == 0


def test_crossed_module_string_and_endo():
    rng = random.Random(48)
    L = fix_str()
    auts = [string_aut0(L, rng) for _ in range(3)] + [partial(L, random_tau(L, rng))]
    taus = [random_tau(L, rng, invertible=True) for _ in range(3)]
    for _, resid in check_crossed_module(L, auts, taus):
        assert resid == 0
    L = fix_end()
    auts = [certify_aut0(L, Lie2Hom(L, L, Mat.from_rows([[c]]), Mat.from_rows([[c]]),
                                    AltTensor.zero(2, 1, 1))) for c in (1, 2, Fraction(-1, 2))]
    taus = [random_tau(L, rng, invertible=True) for _ in range(3)]
    for _, resid in check_crossed_module(L, auts, taus):
        assert resid == 0


def test_corrupted_action_breaks_peiffer():
    rng = random.Random(49)
    L = fix_end()
    t1 = Tau(Mat.from_rows([[1]]))
    t2 = Tau(Mat.from_rows([[2]]))
    P = partial(L, t1)
    corrupted = Tau(P.hom.A1 @ t2.mat)  # action with the A0-inverse dropped
    proper = star(L, star(L, t1, t2), tau_inverse(L, t1))
    assert tau_distance(corrupted, proper) != 0


# ---------------------------------------------------------------------------
# 2-group cells
# ---------------------------------------------------------------------------

def make_cell(L, rng, g=None):
    g = g or string_aut0(L, rng)
    return TwoGroupCell(g, random_tau(L, rng, invertible=True))


def test_vcompose_identity_cell():
    rng = random.Random(50)
    L = fix_str()
    c2 = make_cell(L, rng)
    c1 = cell_identity(L, cell_target(L, c2))
    got = vcompose(L, c1, c2)
    assert cell_distance(L, got, c2) == 0


def test_hmultiply_identity_cells():
    L = fix_str()
    e = cell_identity(L, aut_identity(L))
    got = hmultiply(L, e, e)
    assert cell_distance(L, got, e) == 0


def test_vcompose_rejects_mismatched():
    rng = random.Random(51)
    L = fix_str()
    c2 = make_cell(L, rng)
    # a cell whose source differs from target(c2) cannot stack on it
    mismatched = TwoGroupCell(aut_compose(c2.g, c2.g), c2.h)
    with pytest.raises(ValueError):
        vcompose(L, mismatched, c2)


def test_interchange_law():
    rng = random.Random(52)
    L = fix_str()
    for _ in range(3):
        c = make_cell(L, rng)
        a = TwoGroupCell(cell_target(L, c), random_tau(L, rng, invertible=True))
        d = make_cell(L, rng)
        b = TwoGroupCell(cell_target(L, d), random_tau(L, rng, invertible=True))
        lhs = vcompose(L, hmultiply(L, a, b), hmultiply(L, c, d))
        rhs = hmultiply(L, vcompose(L, a, c), vcompose(L, b, d))
        assert cell_distance(L, lhs, rhs) == 0


# ---------------------------------------------------------------------------
# semidirect product group
# ---------------------------------------------------------------------------

def test_semidirect_unit():
    rng = random.Random(53)
    L = fix_str()
    p = (string_aut0(L, rng), random_tau(L, rng, invertible=True))
    e = semidirect_identity(L)
    assert semidirect_distance(L, semidirect_multiply(L, e, p), p) == 0
    assert semidirect_distance(L, semidirect_multiply(L, p, e), p) == 0


def test_semidirect_associative_and_inverse():
    rng = random.Random(54)
    L = fix_str()
    ps = [(string_aut0(L, rng), random_tau(L, rng, invertible=True)) for _ in range(3)]
    lhs = semidirect_multiply(L, semidirect_multiply(L, ps[0], ps[1]), ps[2])
    rhs = semidirect_multiply(L, ps[0], semidirect_multiply(L, ps[1], ps[2]))
    assert semidirect_distance(L, lhs, rhs) == 0
    e = semidirect_identity(L)
    for p in ps:
        pi = semidirect_inverse(L, p)
        assert semidirect_distance(L, semidirect_multiply(L, p, pi), e) == 0
        assert semidirect_distance(L, semidirect_multiply(L, pi, p), e) == 0


def test_semidirect_abelian_splits():
    rng = random.Random(55)
    L = fix_ab()
    A = certify_aut0(L, Lie2Hom(L, L, Mat.from_rows([[2]]), Mat.from_rows([[3]]),
                                AltTensor.zero(2, 1, 1)))
    t1, t2 = random_tau(L, rng), random_tau(L, rng)
    got = semidirect_multiply(L, (A, t1), (A, t2))
    # d = 0: star is addition and the action is A1 tau A0^{-1}
    assert got[1].mat == t1.mat + (A.hom.A1 @ t2.mat @ A.a0_inv)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def test_classify_identity_and_zero_strict():
    L = fix_str()
    assert classify_automorphism(L, aut_identity(L)) == {"weak": True, "strict": True}
    assert classify_automorphism(L, tau_zero(L))["strict"]


def test_classify_weak_not_strict():
    rng = random.Random(56)
    L = fix_str()
    while True:
        A = string_aut0(L, rng)
        if not A.hom.A2.is_zero():
            break
    flags = classify_automorphism(L, A)
    assert flags["weak"] and not flags["strict"]


def test_classify_abelian_taus_strict():
    rng = random.Random(57)
    L = fix_ab()
    for _ in range(5):
        t = random_tau(L, rng)
        assert classify_automorphism(L, t) == {"weak": True, "strict": True}


def test_strictness_stable_under_composition():
    rng = random.Random(58)
    L = fix_str()
    # strict automorphisms: A2 = 0 with A0 orthogonal; compose two of them
    s1 = certify_aut0(L, Lie2Hom(L, L, string_aut_hom(L, rng).A0, Mat.identity(1),
                                 AltTensor.zero(2, 3, 1)))
    s2 = certify_aut0(L, Lie2Hom(L, L, string_aut_hom(L, rng).A0, Mat.identity(1),
                                 AltTensor.zero(2, 3, 1)))
    assert classify_automorphism(L, s1)["strict"]
    assert classify_automorphism(L, aut_compose(s1, s2))["strict"]
    # strict taus on the endo fixture stay strict under star
    L = fix_end()
    taus = [random_tau(L, rng, invertible=True) for _ in range(4)]
    stricts = [t for t in taus if classify_automorphism(L, t)["strict"]]
    for t1 in stricts:
        for t2 in stricts:
            assert classify_automorphism(L, star(L, t1, t2))["strict"]


# ---------------------------------------------------------------------------
# adjoint conjugation
# ---------------------------------------------------------------------------

def test_ad_identity_fixes_derivations():
    rng = random.Random(59)
    L = fix_str()
    D = random_der0(L, rng)
    got = ad_conjugate(L, aut_identity(L), D)
    assert got.X0 == D.X0 and got.X1 == D.X1 and got.lX == D.lX


def test_ad_tau_on_theta_abelian_trivial():
    rng = random.Random(60)
    L = fix_ab()
    t = random_tau(L, rng)
    T = random_derM1(L, rng)
    assert ad_conjugate(L, t, T) == T


def test_ad_aut_preserves_membership():
    rng = random.Random(61)
    L = fix_str()
    basis = compute_der0_basis(L)
    for _ in range(4):
        A = string_aut0(L, rng)
        D = random_der0(L, rng, basis)
        got = ad_conjugate(L, A, D)
        assert is_derivation0(L, got).ok


def test_ad_aut_is_action():
    rng = random.Random(62)
    L = fix_str()
    basis = compute_der0_basis(L)
    A, B = string_aut0(L, rng), string_aut0(L, rng)
    D = random_der0(L, rng, basis)
    from lie2alg.derivations import der0_distance
    lhs = ad_conjugate(L, aut_compose(A, B), D)
    rhs = ad_conjugate(L, A, ad_conjugate(L, B, D))
    assert der0_distance(lhs, rhs) == 0
    T = random_derM1(L, rng)
    assert ad_conjugate(L, aut_compose(A, B), T) == ad_conjugate(L, A, ad_conjugate(L, B, T))


def test_ad_tau_on_theta_is_action():
    rng = random.Random(63)
    L = fix_end()
    t1 = random_tau(L, rng, invertible=True)
    t2 = random_tau(L, rng, invertible=True)
    T = random_derM1(L, rng)
    lhs = ad_conjugate(L, star(L, t1, t2), T)
    rhs = ad_conjugate(L, t1, ad_conjugate(L, t2, T))
    assert lhs == rhs


def test_ad_tau_on_der0_returns_semidirect_pair():
    rng = random.Random(64)
    L = fix_end()
    t = random_tau(L, rng, invertible=True)
    D = random_der0(L, rng)
    got = ad_conjugate(L, t, D)
    assert isinstance(got, tuple) and got[0] == D and isinstance(got[1], DerM1)
