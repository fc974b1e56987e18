"""The automorphism 2-group of a Lie 2-algebra.

Degree 0 holds the invertible weak self-homomorphisms under composition;
degree -1 holds the units of the monoid (Hom(g_0, g_{-1}), star) with
tau * tau' = tau + tau' + tau d tau'.  Together with the connecting map
and the natural action they form a crossed module of groups, realized
here with exact arithmetic so every law is an equality test.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Lie2Algebra,
    Lie2Hom,
    compose_hom,
    hom_distance,
    hom_identity,
    validate_hom,
)
from .derivations import DerM1, Derivation0
from .linalg import AltTensor, Mat, mat_distance, mat_inverse, vadd, vsub


@dataclass(frozen=True)
class Tau:
    """Degree -1 endomorphism g_0 -> g_{-1} (an element of the star monoid)."""

    mat: Mat

    def to_float(self) -> "Tau":
        return Tau(self.mat.to_float())

    def is_zero(self) -> bool:
        return self.mat.is_zero()


@dataclass(frozen=True)
class Aut0:
    """Certified weak automorphism with cached component inverses."""

    hom: Lie2Hom
    a0_inv: Mat
    a1_inv: Mat

    @property
    def algebra(self) -> Lie2Algebra:
        return self.hom.source


def tau_zero(L: Lie2Algebra) -> Tau:
    return Tau(Mat.zero(L.n1, L.n0, L.mode))


def tau_distance(a: Tau, b: Tau):
    return mat_distance(a.mat, b.mat)


# ---------------------------------------------------------------------------
# degree 0
# ---------------------------------------------------------------------------

def is_aut0(L: Lie2Algebra, A: Lie2Hom, tol=0):
    """(flag, residual report): A is an automorphism iff the homomorphism
    residuals vanish (within tol) and both components are invertible."""
    rep = validate_hom(A)
    invertible = mat_inverse(A.A0) is not None and mat_inverse(A.A1) is not None
    ok = invertible and all(abs(r.value) <= tol for _, r in rep)
    return ok, rep


def certify_aut0(L: Lie2Algebra, A: Lie2Hom, tol=0) -> Aut0:
    """Validate and cache the component inverses; raises on failure."""
    rep = validate_hom(A)
    if not all(abs(r.value) <= tol for _, r in rep):
        raise ValueError(f"not a homomorphism: residuals {rep!r}")
    a0i = mat_inverse(A.A0)
    a1i = mat_inverse(A.A1)
    if a0i is None or a1i is None:
        raise ValueError("components are not invertible")
    return Aut0(A, a0i, a1i)


def aut_identity(L: Lie2Algebra) -> Aut0:
    ident = Mat.identity(L.n0, L.mode), Mat.identity(L.n1, L.mode)
    return Aut0(hom_identity(L), ident[0], ident[1])


def aut_compose(A: Aut0, B: Aut0) -> Aut0:
    """A after B, reusing cached inverses: (AB)^{-1} parts are B^-1 A^-1."""
    return Aut0(compose_hom(A.hom, B.hom), B.a0_inv @ A.a0_inv, B.a1_inv @ A.a1_inv)


def aut_inverse(A: Aut0) -> Aut0:
    hom = A.hom
    inv_a2 = -(hom.A2.pullback(A.a0_inv).postcompose(A.a1_inv))
    inv = Lie2Hom(hom.target, hom.source, A.a0_inv, A.a1_inv, inv_a2)
    return Aut0(inv, hom.A0, hom.A1)


def aut_distance(A: Aut0, B: Aut0):
    return hom_distance(A.hom, B.hom)


# ---------------------------------------------------------------------------
# degree -1: the star monoid and its unit group
# ---------------------------------------------------------------------------

def star(L: Lie2Algebra, t1: Tau, t2: Tau) -> Tau:
    """tau * tau' = tau + tau' + tau d tau'; associative with unit 0."""
    return Tau(t1.mat + t2.mat + (t1.mat @ L.d @ t2.mat))


def tau_inverse(L: Lie2Algebra, t: Tau):
    """Star-inverse -tau (I + d tau)^{-1}, present iff I + d tau is invertible."""
    core = mat_inverse(Mat.identity(L.n0, t.mat.mode if not t.mat.is_zero() else L.mode) + L.d @ t.mat)
    if core is None:
        return None
    return Tau(-(t.mat @ core))


def tau_is_invertible(L: Lie2Algebra, t: Tau) -> bool:
    return tau_inverse(L, t) is not None


def twist_lower(L: Lie2Algebra, A: Lie2Hom, t: Tau) -> AltTensor:
    """The 2-component correction l^A_tau(x,y) = tau[x,y] - [A0 x, tau y]
    - [tau x, A0 y] - [tau x, d tau y]."""
    tm = t.mat

    def val(key):
        i, j = key
        x, y = L.e0(i), L.e0(j)
        a0x, a0y = A.A0.col(i), A.A0.col(j)
        tx, ty = tm.col(i), tm.col(j)
        r = tm.apply(L.b00.eval_basis(i, j))
        r = vsub(r, L.bracket01(a0x, ty))
        r = vadd(r, L.bracket01(a0y, tx))          # -[tau x, A0 y] = +[A0 y, tau x]
        r = vadd(r, L.bracket01(L.dv(ty), tx))     # -[tau x, d tau y] = +[d tau y, tau x]
        return r

    return AltTensor.from_function(2, L.n0, L.n1, val, tm.mode if not tm.is_zero() else L.mode)


def twist_hom(L: Lie2Algebra, A: Lie2Hom, t: Tau) -> Lie2Hom:
    """Shift a self-homomorphism by a degree -1 map:
    (A0 + d tau, A1 + tau d, A2 + l^A_tau); always a homomorphism again."""
    return Lie2Hom(L, L, A.A0 + L.d @ t.mat, A.A1 + t.mat @ L.d,
                   A.A2 + twist_lower(L, A, t))


def partial(L: Lie2Algebra, t: Tau) -> Aut0:
    """The connecting map: invertible tau |-> (I + d tau, I + tau d, l^id_tau).

    The cached inverses come from the star-inverse: (I + d tau)^{-1} =
    I + d tau^{-1} and likewise on the other side, so no elimination runs.
    """
    ti = tau_inverse(L, t)
    if ti is None:
        raise ValueError("tau is not star-invertible")
    hom = twist_hom(L, hom_identity(L), t)
    mode = hom.A0.mode
    a0i = Mat.identity(L.n0, mode) + L.d @ ti.mat
    a1i = Mat.identity(L.n1, mode) + ti.mat @ L.d
    return Aut0(hom, a0i, a1i)


def act(L: Lie2Algebra, A: Aut0, t: Tau) -> Tau:
    """Natural action of degree-0 on degree -1: A |> tau = A1 tau A0^{-1}."""
    return Tau(A.hom.A1 @ t.mat @ A.a0_inv)


# ---------------------------------------------------------------------------
# crossed-module laws
# ---------------------------------------------------------------------------

def check_crossed_module(L: Lie2Algebra, auts, taus) -> list:
    """Residuals of equivariance and the Peiffer identity on given samples.

    Equivariance compares partial(A |> tau) with A partial(tau) A^{-1};
    Peiffer compares partial(tau) |> tau' with tau * tau' * tau^{-1}.
    Returns (name, residual) pairs, one per sample.
    """
    out = []
    for s, (A, t) in enumerate(itertools.product(auts, taus)):
        lhs = partial(L, act(L, A, t)).hom
        rhs = compose_hom(compose_hom(A.hom, partial(L, t).hom), aut_inverse(A).hom)
        out.append((f"equivariance[{s}]", hom_distance(lhs, rhs)))
    for s, (t1, t2) in enumerate(itertools.product(taus, taus)):
        lhs = act(L, partial(L, t1), t2)
        t1i = tau_inverse(L, t1)
        rhs = star(L, star(L, t1, t2), t1i)
        out.append((f"peiffer[{s}]", tau_distance(lhs, rhs)))
    return out


# ---------------------------------------------------------------------------
# 2-group cells
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwoGroupCell:
    """Cell of the associated strict 2-group: source g, morphism datum h."""

    g: Aut0
    h: Tau


def cell_source(L: Lie2Algebra, c: TwoGroupCell) -> Aut0:
    return c.g


def cell_target(L: Lie2Algebra, c: TwoGroupCell) -> Aut0:
    return aut_compose(partial(L, c.h), c.g)


def cell_identity(L: Lie2Algebra, g: Aut0) -> TwoGroupCell:
    return TwoGroupCell(g, tau_zero(L))


def vcompose(L: Lie2Algebra, c1: TwoGroupCell, c2: TwoGroupCell) -> TwoGroupCell:
    """Vertical composite c1 after c2; needs target(c2) = source(c1)."""
    if aut_distance(cell_target(L, c2), cell_source(L, c1)) != 0:
        raise ValueError("cells are not vertically composable")
    return TwoGroupCell(c2.g, star(L, c1.h, c2.h))


def hmultiply(L: Lie2Algebra, c1: TwoGroupCell, c2: TwoGroupCell) -> TwoGroupCell:
    """Horizontal product (g, h) (g', h') = (g g', h * (g |> h'))."""
    return TwoGroupCell(aut_compose(c1.g, c2.g),
                        star(L, c1.h, act(L, c1.g, c2.h)))


def cell_distance(L: Lie2Algebra, c1: TwoGroupCell, c2: TwoGroupCell):
    return max(aut_distance(c1.g, c2.g), tau_distance(c1.h, c2.h))


# ---------------------------------------------------------------------------
# the semidirect product group
# ---------------------------------------------------------------------------

def semidirect_identity(L: Lie2Algebra):
    return (aut_identity(L), tau_zero(L))


def semidirect_multiply(L: Lie2Algebra, p1, p2):
    """(A, tau) (A', tau') = (A A', tau * (A |> tau'))."""
    A1, t1 = p1
    A2, t2 = p2
    return (aut_compose(A1, A2), star(L, t1, act(L, A1, t2)))


def semidirect_inverse(L: Lie2Algebra, p):
    A, t = p
    ti = tau_inverse(L, t)
    if ti is None:
        raise ValueError("tau is not star-invertible")
    Ai = aut_inverse(A)
    return (Ai, act(L, Ai, ti))


def semidirect_distance(L: Lie2Algebra, p1, p2):
    return max(aut_distance(p1[0], p2[0]), tau_distance(p1[1], p2[1]))


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def classify_automorphism(L: Lie2Algebra, elem) -> dict:
    """Flags {weak, strict}.

    Degree 0: strict iff dropping A2 still gives an automorphism.
    Degree -1: strict iff tau[x,y] = [x, tau y] + [tau x, y] + [tau x, d tau y].
    """
    if isinstance(elem, Aut0):
        stripped = Lie2Hom(L, L, elem.hom.A0, elem.hom.A1,
                           AltTensor.zero(2, L.n0, L.n1, L.mode))
        ok, _ = is_aut0(L, stripped)
        return {"weak": True, "strict": elem.hom.A2.is_zero() and ok}
    if isinstance(elem, Tau):
        weak = tau_is_invertible(L, elem)
        tm = elem.mat
        worst = Fraction(0)
        for i, j in itertools.combinations(range(L.n0), 2):
            r = tm.apply(L.b00.eval_basis(i, j))
            r = vsub(r, L.bracket01(L.e0(i), tm.col(j)))
            r = vadd(r, L.bracket01(L.e0(j), tm.col(i)))
            r = vadd(r, L.bracket01(L.dv(tm.col(j)), tm.col(i)))  # -[tau x, d tau y]
            worst = max(worst, max((abs(v) for v in r), default=worst))
        return {"weak": weak, "strict": worst == 0}
    raise TypeError("expected Aut0 or Tau")


# ---------------------------------------------------------------------------
# adjoint conjugation on derivations
# ---------------------------------------------------------------------------

def ad_conjugate(L: Lie2Algebra, conj, target):
    """Adjoint action of the automorphism 2-group on derivations.

    Four cases:
      Aut0 on Derivation0 -> Derivation0 (component conjugation plus the
          A2 correction terms on lX);
      Aut0 on DerM1 -> DerM1: A1 theta A0^{-1};
      Tau on Derivation0 -> (Derivation0, DerM1): the degree-0 part is
          untouched and the degree -1 part is X1 tau^{-1} + tau X0
          + tau X0 d tau^{-1} (tau^{-1} the star-inverse);
      Tau on DerM1 -> DerM1: (I + tau d) theta (I + d tau)^{-1}.
    """
    if isinstance(conj, Aut0) and isinstance(target, Derivation0):
        A = conj.hom
        X0 = A.A0 @ target.X0 @ conj.a0_inv
        X1 = A.A1 @ target.X1 @ conj.a1_inv
        mid = A.A1 @ target.X1 @ conj.a1_inv

        def val(key):
            i, j = key
            u, v = conj.a0_inv.col(i), conj.a0_inv.col(j)
            r = A.A1.apply(target.lX.eval(u, v))
            r = vsub(r, mid.apply(A.A2.eval(u, v)))
            r = vadd(r, A.A2.eval(target.X0.apply(u), v))
            r = vadd(r, A.A2.eval(u, target.X0.apply(v)))
            return r

        lX = AltTensor.from_function(2, L.n0, L.n1, val, X0.mode)
        return Derivation0(X0, X1, lX)
    if isinstance(conj, Aut0) and isinstance(target, DerM1):
        return DerM1(conj.hom.A1 @ target.theta @ conj.a0_inv)
    if isinstance(conj, Tau) and isinstance(target, Derivation0):
        ti = tau_inverse(L, conj)
        if ti is None:
            raise ValueError("tau is not star-invertible")
        tm, tim = conj.mat, ti.mat
        theta = target.X1 @ tim + tm @ target.X0 + tm @ target.X0 @ L.d @ tim
        return (target, DerM1(theta))
    if isinstance(conj, Tau) and isinstance(target, DerM1):
        ti = tau_inverse(L, conj)
        if ti is None:
            raise ValueError("tau is not star-invertible")
        mode = conj.mat.mode if not conj.mat.is_zero() else L.mode
        left = Mat.identity(L.n1, mode) + conj.mat @ L.d
        right = Mat.identity(L.n0, mode) + L.d @ ti.mat  # = (I + d tau)^{-1}
        return DerM1(left @ target.theta @ right)
    raise TypeError("unsupported conjugation pair")


# ---------------------------------------------------------------------------
# seeded samplers
# ---------------------------------------------------------------------------

def random_tau(L: Lie2Algebra, rng, dens=(1, 2), invertible=None) -> Tau:
    """Random rational tau; invertible=True rejection-samples to units,
    invertible=False to singular draws (give up after a bounded search)."""
    for _ in range(200):
        t = Tau(Mat(L.n1, L.n0,
                    [Fraction(rng.randint(-3, 3), rng.choice(dens))
                     for _ in range(L.n1 * L.n0)]))
        if invertible is None or tau_is_invertible(L, t) == invertible:
            return t
    if invertible is False:
        raise ValueError("no singular tau found (d may be zero)")
    return tau_zero(L)
