"""Derivations of a Lie 2-algebra and the strict Lie 2-algebra they form.

Degree-0 derivations are triples (X0, X1, lX); degree minus-1 derivations
are maps theta: g_0 -> g_{-1} (the full Hom space).  The degree-0 space is
computed as the kernel of one stacked homogeneous linear system, assembled
by probing the membership residuals on unit triples, so the solver and the
membership test can never drift apart.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import Lie2Algebra, Lie2Hom, ResidualReport, _Acc
from .linalg import (
    AltTensor,
    Mat,
    basis_vec,
    kernel_basis,
    mat_distance,
    rref,
    solve,
    tensor_distance,
    vadd,
    vscale,
    vsub,
)


@dataclass(frozen=True)
class Derivation0:
    """Degree-0 derivation candidate (X0, X1, lX)."""

    X0: Mat
    X1: Mat
    lX: AltTensor

    def __add__(self, other: "Derivation0") -> "Derivation0":
        return Derivation0(self.X0 + other.X0, self.X1 + other.X1, self.lX + other.lX)

    def __sub__(self, other: "Derivation0") -> "Derivation0":
        return Derivation0(self.X0 - other.X0, self.X1 - other.X1, self.lX - other.lX)

    def __neg__(self) -> "Derivation0":
        return Derivation0(-self.X0, -self.X1, -self.lX)

    def scale(self, s) -> "Derivation0":
        return Derivation0(self.X0.scale(s), self.X1.scale(s), self.lX.scale(s))

    def to_float(self) -> "Derivation0":
        return Derivation0(self.X0.to_float(), self.X1.to_float(), self.lX.to_float())

    def is_zero(self) -> bool:
        return self.X0.is_zero() and self.X1.is_zero() and self.lX.is_zero()


@dataclass(frozen=True)
class DerM1:
    """Degree minus-1 derivation: a linear map g_0 -> g_{-1}."""

    theta: Mat

    def __add__(self, other: "DerM1") -> "DerM1":
        return DerM1(self.theta + other.theta)

    def __sub__(self, other: "DerM1") -> "DerM1":
        return DerM1(self.theta - other.theta)

    def __neg__(self) -> "DerM1":
        return DerM1(-self.theta)

    def scale(self, s) -> "DerM1":
        return DerM1(self.theta.scale(s))

    def to_float(self) -> "DerM1":
        return DerM1(self.theta.to_float())

    def is_zero(self) -> bool:
        return self.theta.is_zero()


def der0_zero(L: Lie2Algebra) -> Derivation0:
    return Derivation0(Mat.zero(L.n0, L.n0, L.mode), Mat.zero(L.n1, L.n1, L.mode),
                       AltTensor.zero(2, L.n0, L.n1, L.mode))


def derM1_zero(L: Lie2Algebra) -> DerM1:
    return DerM1(Mat.zero(L.n1, L.n0, L.mode))


def der0_distance(a: Derivation0, b: Derivation0):
    return max(mat_distance(a.X0, b.X0), mat_distance(a.X1, b.X1),
               tensor_distance(a.lX, b.lX))


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

def _der0_condition_vectors(L: Lie2Algebra, D: Derivation0):
    """Residual vectors of (chain, a, b, c), in a fixed enumeration order."""
    n0, n1 = L.n0, L.n1
    e0 = [L.e0(i) for i in range(n0)]
    e1 = [L.e1(a) for a in range(n1)]
    x0col = [D.X0.col(i) for i in range(n0)]

    chain = [((D.X0 @ L.d) - (L.d @ D.X1)).data]

    cond_a = []
    for i, j in itertools.combinations(range(n0), 2):
        r = L.dv(D.lX.eval_basis(i, j))
        r = vsub(r, D.X0.apply(L.b00.eval_basis(i, j)))
        r = vadd(r, L.bracket00(x0col[i], e0[j]))
        r = vadd(r, L.bracket00(e0[i], x0col[j]))
        cond_a.append((r, (i, j)))

    cond_b = []
    for i in range(n0):
        for a in range(n1):
            r = D.lX.eval(e0[i], L.dcol(a))
            r = vsub(r, D.X1.apply(L.bracket01(e0[i], e1[a])))
            r = vadd(r, L.bracket01(x0col[i], e1[a]))
            r = vadd(r, L.bracket01(e0[i], D.X1.col(a)))
            cond_b.append((r, (i, a)))

    cond_c = []
    for i, j, k in itertools.combinations(range(n0), 3):
        r = D.X1.apply(L.l3.eval_basis(i, j, k))
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            r = vsub(r, D.lX.eval(e0[x], L.b00.eval_basis(y, z)))
            r = vsub(r, L.bracket01(e0[x], D.lX.eval_basis(y, z)))
            r = vsub(r, L.l3.eval(x0col[x], e0[y], e0[z]))
        cond_c.append((r, (i, j, k)))

    return chain, cond_a, cond_b, cond_c


def is_derivation0(L: Lie2Algebra, D: Derivation0) -> ResidualReport:
    """Residuals of the degree-0 derivation conditions (chain, a, b, c)."""
    chain, ca, cb, cc = _der0_condition_vectors(L, D)
    acc = {k: _Acc() for k in ("chain", "a", "b", "c")}
    acc["chain"].add(chain[0], None)
    for r, w in ca:
        acc["a"].add(r, w)
    for r, w in cb:
        acc["b"].add(r, w)
    for r, w in cc:
        acc["c"].add(r, w)
    return ResidualReport({k: v.residual() for k, v in acc.items()})


def _der0_flat_len(L: Lie2Algebra) -> int:
    return L.n0 * L.n0 + L.n1 * L.n1 + len(list(itertools.combinations(range(L.n0), 2))) * L.n1


def flatten_der0(L: Lie2Algebra, D: Derivation0) -> tuple:
    parts = list(D.X0.data) + list(D.X1.data)
    for key in itertools.combinations(range(L.n0), 2):
        parts.extend(D.lX.eval_basis(*key))
    return tuple(parts)


def unflatten_der0(L: Lie2Algebra, vec) -> Derivation0:
    n0, n1 = L.n0, L.n1
    vec = list(vec)
    X0 = Mat(n0, n0, vec[:n0 * n0])
    X1 = Mat(n1, n1, vec[n0 * n0:n0 * n0 + n1 * n1])
    rest = vec[n0 * n0 + n1 * n1:]
    entries = {}
    for t, key in enumerate(itertools.combinations(range(n0), 2)):
        entries[key] = tuple(rest[t * n1:(t + 1) * n1])
    return Derivation0(X0, X1, AltTensor(2, n0, n1, entries))


def _residual_flat(L: Lie2Algebra, D: Derivation0) -> tuple:
    chain, ca, cb, cc = _der0_condition_vectors(L, D)
    out = list(chain[0])
    for group in (ca, cb, cc):
        for r, _ in group:
            out.extend(r)
    return tuple(out)


def compute_der0_basis(L: Lie2Algebra) -> list:
    """Basis of the degree-0 derivation space.

    The four families of conditions are linear in (X0, X1, lX); the
    constraint matrix is built by probing each unit triple and the basis
    is the kernel, in kernel_basis order (deterministic).
    """
    nfree = _der0_flat_len(L)
    cols = []
    for u in range(nfree):
        unit = [Fraction(0)] * nfree
        unit[u] = Fraction(1)
        cols.append(_residual_flat(L, unflatten_der0(L, unit)))
    nrows = len(cols[0]) if cols else 0
    constraint = Mat.from_cols(cols, nrows) if cols else Mat.zero(0, 0)
    return [unflatten_der0(L, v) for v in kernel_basis(constraint)]


# ---------------------------------------------------------------------------
# the differential and brackets
# ---------------------------------------------------------------------------

def dbar(L: Lie2Algebra, T: DerM1) -> Derivation0:
    """Differential into degree 0: (d theta, theta d, l_{delta(theta)})."""
    X0 = L.d @ T.theta
    X1 = T.theta @ L.d

    def lval(key):
        i, j = key
        r = T.theta.apply(L.b00.eval_basis(i, j))
        r = vsub(r, L.bracket01(L.e0(i), T.theta.col(j)))
        r = vadd(r, L.bracket01(L.e0(j), T.theta.col(i)))
        return r

    return Derivation0(X0, X1, AltTensor.from_function(2, L.n0, L.n1, lval, L.mode))


def lie_cochain_action(X0: Mat, X1: Mat, omega: AltTensor) -> AltTensor:
    """Action of a degree-0 pair on alternating cochains with degree -1 values.

    (L_X omega)(x_1..x_k) = X1 omega(x_1..x_k) - sum_i omega(.., X0 x_i, ..).
    """
    n = omega.dim

    def val(key):
        r = X1.apply(omega.eval_basis(*key))
        for t in range(len(key)):
            args = [basis_vec(n, key[s], omega.mode) if s != t else X0.col(key[t])
                    for s in range(len(key))]
            r = vsub(r, omega.eval(*args))
        return r

    return AltTensor.from_function(omega.arity, n, omega.codim, val, omega.mode)


def graded_bracket(L: Lie2Algebra, a, b):
    """Graded bracket on derivations.

    degree 0 x degree 0 -> degree 0 (commutators plus the action on lX);
    degree 0 x degree -1 -> degree -1 (commutator);
    degree -1 x degree -1 -> degree -1 (the bracket transported along the
    differential: theta d theta' - theta' d theta).
    """
    if isinstance(a, Derivation0) and isinstance(b, Derivation0):
        X0 = a.X0 @ b.X0 - b.X0 @ a.X0
        X1 = a.X1 @ b.X1 - b.X1 @ a.X1
        lX = lie_cochain_action(a.X0, a.X1, b.lX) - lie_cochain_action(b.X0, b.X1, a.lX)
        return Derivation0(X0, X1, lX)
    if isinstance(a, Derivation0) and isinstance(b, DerM1):
        return DerM1(a.X1 @ b.theta - b.theta @ a.X0)
    if isinstance(a, DerM1) and isinstance(b, Derivation0):
        return -graded_bracket(L, b, a)
    if isinstance(a, DerM1) and isinstance(b, DerM1):
        return DerM1(a.theta @ L.d @ b.theta - b.theta @ L.d @ a.theta)
    raise TypeError("graded_bracket expects derivation types")


# ---------------------------------------------------------------------------
# the derivation Lie 2-algebra
# ---------------------------------------------------------------------------

def derM1_basis(L: Lie2Algebra) -> list:
    """Standard basis of Hom(g_0, g_{-1}), row-major."""
    out = []
    for a in range(L.n1):
        for b in range(L.n0):
            data = [Fraction(0)] * (L.n1 * L.n0)
            data[a * L.n0 + b] = Fraction(1)
            out.append(DerM1(Mat(L.n1, L.n0, data)))
    return out


@dataclass(frozen=True)
class DerLie2:
    """The derivation Lie 2-algebra in computed bases.

    `algebra` is the strict Lie 2-algebra realization (l3 = 0) whose
    degree-0 coordinates refer to `basis0` and degree -1 coordinates to
    the standard Hom basis `basisM1`.
    """

    algebra: Lie2Algebra
    basis0: tuple
    basisM1: tuple
    _span: Mat
    _base: Lie2Algebra

    def der0_coords(self, D: Derivation0) -> tuple:
        c = solve(self._span, flatten_der0(self._base, D))
        if c is None:
            raise ValueError("not in the degree-0 derivation span")
        return c

    def derM1_coords(self, T: DerM1) -> tuple:
        return T.theta.data

    def der0_from_coords(self, c) -> Derivation0:
        out = der0_zero(self._base)
        for s, basis_el in zip(c, self.basis0):
            if s != 0:
                out = out + basis_el.scale(s)
        return out


def build_der_lie2(L: Lie2Algebra) -> DerLie2:
    """Assemble the strict derivation Lie 2-algebra of L in explicit bases."""
    basis0 = compute_der0_basis(L)
    basisM1 = derM1_basis(L)
    r = len(basis0)
    m = len(basisM1)
    span = Mat.from_cols([flatten_der0(L, D) for D in basis0], _der0_flat_len(L)) \
        if r else Mat.zero(_der0_flat_len(L), 0)

    def coords(D: Derivation0) -> tuple:
        c = solve(span, flatten_der0(L, D))
        if c is None:
            raise ValueError("derivation escaped its own span")
        return c

    dmat = Mat.from_cols([coords(dbar(L, T)) for T in basisM1], r) if m else Mat.zero(r, 0)

    b00 = AltTensor.from_function(
        2, r, r, lambda key: coords(graded_bracket(L, basis0[key[0]], basis0[key[1]])))

    b01 = []
    for D in basis0:
        cols = [graded_bracket(L, D, T).theta.data for T in basisM1]
        b01.append(Mat.from_cols(cols, m) if m else Mat.zero(0, 0))

    algebra = Lie2Algebra(r, m, dmat, b00, b01, AltTensor.zero(3, r, m))
    return DerLie2(algebra, tuple(basis0), tuple(basisM1), span, L)


# ---------------------------------------------------------------------------
# adjoint and inner derivations
# ---------------------------------------------------------------------------

def adbar0_single(L: Lie2Algebra, x: tuple) -> Derivation0:
    """The degree-0 derivation ([x, .], l3(x, ., .)) attached to x in g_0."""
    X0 = Mat.from_cols([L.bracket00(x, L.e0(j)) for j in range(L.n0)], L.n0)
    X1 = L.act0_mat(x)
    lX = AltTensor.from_function(
        2, L.n0, L.n1, lambda key: L.l3.eval(x, L.e0(key[0]), L.e0(key[1])), L.mode)
    return Derivation0(X0, X1, lX)


def ad1_single(L: Lie2Algebra, a: tuple) -> DerM1:
    """The degree -1 derivation [a, .] attached to a in g_{-1}."""
    cols = [L.bracket10(a, L.e0(j)) for j in range(L.n0)]
    return DerM1(Mat.from_cols(cols, L.n1) if L.n0 else Mat.zero(L.n1, 0))


def adbar(L: Lie2Algebra, der: DerLie2 | None = None) -> Lie2Hom:
    """The adjoint homomorphism from L into its derivation Lie 2-algebra.

    Degree 0 sends x to ([x,.], l3(x,.,.)), degree -1 sends a to [a,.],
    and the 2-component is (y,z) |-> -l3(y,z,.).
    """
    if der is None:
        der = build_der_lie2(L)
    target = der.algebra
    A0 = Mat.from_cols([der.der0_coords(adbar0_single(L, L.e0(i))) for i in range(L.n0)],
                       target.n0) if L.n0 else Mat.zero(target.n0, 0)
    A1 = Mat.from_cols([der.derM1_coords(ad1_single(L, L.e1(a))) for a in range(L.n1)],
                       target.n1) if L.n1 else Mat.zero(target.n1, 0)

    def a2val(key):
        j, k = key
        cols = [vscale(-1, L.l3.eval_basis(j, k, t)) for t in range(L.n0)]
        theta = Mat.from_cols(cols, L.n1) if L.n0 else Mat.zero(L.n1, 0)
        return der.derM1_coords(DerM1(theta))

    A2 = AltTensor.from_function(2, L.n0, target.n1, a2val, L.mode)
    return Lie2Hom(L, target, A0, A1, A2)


def inn0_basis(L: Lie2Algebra) -> list:
    """Basis of inner degree-0 derivations: the span of the adjoint image
    and the image of the differential, by row reduction (generator order:
    adjoint generators first, then differential images of the Hom basis)."""
    gens = [adbar0_single(L, L.e0(i)) for i in range(L.n0)]
    gens += [dbar(L, T) for T in derM1_basis(L)]
    if not gens:
        return []
    rows = Mat.from_rows([flatten_der0(L, D) for D in gens])
    red, pivots = rref(rows)
    return [unflatten_der0(L, red.row(t)) for t in range(len(pivots))]


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def _strict_derM1_residual(L: Lie2Algebra, T: DerM1) -> Fraction:
    worst = Fraction(0) if L.mode == "exact" else 0.0
    for i, j in itertools.combinations(range(L.n0), 2):
        r = T.theta.apply(L.b00.eval_basis(i, j))
        r = vsub(r, L.bracket01(L.e0(i), T.theta.col(j)))
        r = vadd(r, L.bracket01(L.e0(j), T.theta.col(i)))
        m = max((abs(x) for x in r), default=worst)
        worst = max(worst, m)
    return worst


def classify_derivation(L: Lie2Algebra, elem) -> dict:
    """Flags {weak, strict, homotopy} for a derivation of either degree.

    Degree 0: weak means the three conditions hold; strict additionally
    requires lX = 0; any weak degree-0 derivation is a homotopy one.
    Degree -1: every map is weak; strict means theta[x,y] = [theta x, y]
    + [x, theta y]; homotopy additionally requires d theta = 0 = theta d.
    """
    if isinstance(elem, Derivation0):
        weak = is_derivation0(L, elem).ok
        strict = elem.lX.is_zero() and weak
        return {"weak": weak, "strict": strict, "homotopy": weak}
    if isinstance(elem, DerM1):
        bracket_ok = _strict_derM1_residual(L, elem) == 0
        closed = (L.d @ elem.theta).is_zero() and (elem.theta @ L.d).is_zero()
        return {"weak": True, "strict": bracket_ok, "homotopy": bracket_ok and closed}
    raise TypeError("expected Derivation0 or DerM1")


# ---------------------------------------------------------------------------
# seeded samplers
# ---------------------------------------------------------------------------

def random_der0(L: Lie2Algebra, rng, basis=None, dens=(1, 2)) -> Derivation0:
    """Random rational combination of a degree-0 derivation basis."""
    if basis is None:
        basis = compute_der0_basis(L)
    out = der0_zero(L)
    for D in basis:
        c = Fraction(rng.randint(-3, 3), rng.choice(dens))
        if c != 0:
            out = out + D.scale(c)
    return out


def random_derM1(L: Lie2Algebra, rng, dens=(1, 2)) -> DerM1:
    data = [Fraction(rng.randint(-3, 3), rng.choice(dens)) for _ in range(L.n1 * L.n0)]
    return DerM1(Mat(L.n1, L.n0, data))
