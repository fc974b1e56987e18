"""Lie 2-algebras, weak homomorphisms and crossed modules of Lie algebras.

A Lie 2-algebra is a two-term complex g_{-1} --d--> g_0 with a graded
skew bracket and an alternating trilinear map l3 measuring the failure
of Jacobi, subject to coherence laws.  Everything here is represented
by structure constants; validators return per-axiom residual tables so
tests can assert exactly which law broke and where.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    AltTensor,
    Mat,
    basis_vec,
    kernel_basis,
    mat_distance,
    mat_inverse,
    solve,
    tensor_distance,
    vadd,
    vmax_abs,
    vscale,
    vsub,
    vzero,
)


# ---------------------------------------------------------------------------
# residual reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Residual:
    value: object  # Fraction (exact mode) or float
    witness: tuple | None = None


class ResidualReport:
    """Named max-abs residuals, one entry per condition."""

    def __init__(self, entries: dict):
        self.entries = dict(entries)

    def __getitem__(self, name: str) -> Residual:
        return self.entries[name]

    def __iter__(self):
        return iter(self.entries.items())

    @property
    def ok(self) -> bool:
        return all(r.value == 0 for r in self.entries.values())

    def max_value(self):
        return max((r.value for r in self.entries.values()), default=Fraction(0))

    def within(self, tol) -> bool:
        return all(abs(r.value) <= tol for r in self.entries.values())

    def violated(self) -> list:
        return [name for name, r in self.entries.items() if r.value != 0]

    def __repr__(self):
        body = ", ".join(f"{k}={r.value}" for k, r in self.entries.items())
        return f"ResidualReport({body})"


class _Acc:
    """Tracks the worst residual vector seen and its witness."""

    def __init__(self):
        self.value = Fraction(0)
        self.witness = None

    def add(self, vec, witness):
        m = vmax_abs(vec)
        if m > self.value:
            self.value = m
            self.witness = witness

    def residual(self) -> Residual:
        return Residual(self.value, self.witness)


# ---------------------------------------------------------------------------
# Lie 2-algebras
# ---------------------------------------------------------------------------

class Lie2Algebra:
    """Structure constants of a semistrict Lie 2-algebra.

    Attributes:
        n0, n1: dimensions of the degree-0 and degree minus-1 spaces.
        d: n0 x n1 matrix of the differential g_{-1} -> g_0.
        b00: alternating bracket on g_0 (values in g_0).
        b01: per-basis-vector action matrices; b01[i] is the map
            a |-> [e_i, a] on g_{-1}.  The other order is its negative.
        l3: alternating trilinear map on g_0 with values in g_{-1}.
    """

    __slots__ = ("n0", "n1", "d", "b00", "b01", "l3", "mode")

    def __init__(self, n0: int, n1: int, d: Mat, b00: AltTensor, b01, l3: AltTensor):
        b01 = tuple(b01)
        if (d.rows, d.cols) != (n0, n1):
            raise ValueError(f"d must be {n0}x{n1}")
        if (b00.arity, b00.dim, b00.codim) != (2, n0, n0):
            raise ValueError("b00 must be an alternating 2-tensor on g0")
        if len(b01) != n0 or any((m.rows, m.cols) != (n1, n1) for m in b01):
            raise ValueError("b01 must hold n0 matrices of shape n1 x n1")
        if (l3.arity, l3.dim, l3.codim) != (3, n0, n1):
            raise ValueError("l3 must be an alternating 3-tensor g0 -> g-1")
        modes = {v.mode for v in (d, b00, l3) if not v.is_zero()}
        modes |= {m.mode for m in b01 if not m.is_zero()}
        if len(modes) > 1:
            raise ValueError("mixed scalar modes across tensors")
        object.__setattr__(self, "n0", n0)
        object.__setattr__(self, "n1", n1)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "b00", b00)
        object.__setattr__(self, "b01", b01)
        object.__setattr__(self, "l3", l3)
        object.__setattr__(self, "mode", modes.pop() if modes else "exact")

    def __setattr__(self, *a):
        raise AttributeError("Lie2Algebra is immutable")

    # basis helpers -------------------------------------------------------
    def e0(self, i: int) -> tuple:
        return basis_vec(self.n0, i, self.mode)

    def e1(self, a: int) -> tuple:
        return basis_vec(self.n1, a, self.mode)

    def dcol(self, a: int) -> tuple:
        return self.d.col(a)

    def dv(self, a: tuple) -> tuple:
        return self.d.apply(a)

    # brackets ------------------------------------------------------------
    def bracket00(self, x: tuple, y: tuple) -> tuple:
        return self.b00.eval(x, y)

    def bracket01(self, x: tuple, a: tuple) -> tuple:
        """[x, a] for x in g_0, a in g_{-1}."""
        out = vzero(self.n1, self.mode)
        for i, xi in enumerate(x):
            if xi != 0:
                out = vadd(out, vscale(xi, self.b01[i].apply(a)))
        return out

    def bracket10(self, a: tuple, x: tuple) -> tuple:
        """[a, x] = -[x, a]."""
        return vscale(-1, self.bracket01(x, a))

    def act0_mat(self, x: tuple) -> Mat:
        """Matrix of [x, .] acting on g_{-1}."""
        out = Mat.zero(self.n1, self.n1, self.mode)
        for i, xi in enumerate(x):
            if xi != 0:
                out = out + self.b01[i].scale(xi)
        return out

    def l3v(self, x: tuple, y: tuple, z: tuple) -> tuple:
        return self.l3.eval(x, y, z)

    def to_float(self) -> "Lie2Algebra":
        if self.mode == "float":
            return self
        return Lie2Algebra(self.n0, self.n1, self.d.to_float(), self.b00.to_float(),
                           tuple(m.to_float() for m in self.b01), self.l3.to_float())

    def __eq__(self, other) -> bool:
        return (isinstance(other, Lie2Algebra) and self.n0 == other.n0 and self.n1 == other.n1
                and self.d == other.d and self.b00 == other.b00
                and self.b01 == other.b01 and self.l3 == other.l3)

    def __hash__(self):
        return hash((self.n0, self.n1, self.d, self.b00, self.b01, self.l3))

    def __repr__(self):
        return f"Lie2Algebra(n0={self.n0}, n1={self.n1})"


def as_float(L: Lie2Algebra) -> Lie2Algebra:
    return L.to_float()


def validate_lie2(L: Lie2Algebra) -> ResidualReport:
    """Residuals of the five coherence identities, exactly zero iff valid.

    Keys: "a1" (d[x,a] = [x,da]), "a2" ([da,b] = [a,db]),
    "b1" ([[x,y],z] + cyc = -d l3(x,y,z)),
    "b2" ([[x,y],a] + cyc = -l3(x,y,da)),
    "c"  (the signed arity-4 coherence law for l3).
    Witnesses are the basis tuples achieving the max residual.
    """
    n0, n1 = L.n0, L.n1
    acc = {k: _Acc() for k in ("a1", "a2", "b1", "b2", "c")}
    e0 = [L.e0(i) for i in range(n0)]
    e1 = [L.e1(a) for a in range(n1)]

    for i in range(n0):
        for a in range(n1):
            lhs = L.dv(L.bracket01(e0[i], e1[a]))
            rhs = L.bracket00(e0[i], L.dcol(a))
            acc["a1"].add(vsub(lhs, rhs), (i, a))

    for a in range(n1):
        for b in range(a, n1):
            r = vadd(L.bracket01(L.dcol(a), e1[b]), L.bracket01(L.dcol(b), e1[a]))
            acc["a2"].add(r, (a, b))

    for i, j, k in itertools.combinations(range(n0), 3):
        x, y, z = e0[i], e0[j], e0[k]
        r = L.bracket00(L.bracket00(x, y), z)
        r = vadd(r, L.bracket00(L.bracket00(y, z), x))
        r = vadd(r, L.bracket00(L.bracket00(z, x), y))
        r = vadd(r, L.dv(L.l3.eval_basis(i, j, k)))
        acc["b1"].add(r, (i, j, k))

    for i, j in itertools.combinations(range(n0), 2):
        for a in range(n1):
            r = L.bracket01(L.b00.eval_basis(i, j), e1[a])
            r = vsub(r, L.bracket01(e0[i], L.bracket01(e0[j], e1[a])))
            r = vadd(r, L.bracket01(e0[j], L.bracket01(e0[i], e1[a])))
            r = vadd(r, L.l3.eval(e0[i], e0[j], L.dcol(a)))
            acc["b2"].add(r, (i, j, a))

    if L.l3.is_zero():
        # every term of the arity-4 law contains l3, so it holds identically
        acc["c"].add(vzero(n1, L.mode), None)
    else:
        for quad in itertools.combinations(range(n0), 4):
            xs = [e0[t] for t in quad]
            r = vzero(n1, L.mode)
            for a in range(4):
                rest = [xs[t] for t in range(4) if t != a]
                term = L.bracket01(xs[a], L.l3.eval(*rest))
                r = vadd(r, term if a % 2 == 0 else vscale(-1, term))
            for a, b in itertools.combinations(range(4), 2):
                rest = [xs[t] for t in range(4) if t not in (a, b)]
                term = L.l3.eval(L.bracket00(xs[a], xs[b]), *rest)
                r = vadd(r, term if (a + b) % 2 == 0 else vscale(-1, term))
            acc["c"].add(r, quad)

    return ResidualReport({k: a.residual() for k, a in acc.items()})


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

class Lie2Hom:
    """Weak homomorphism (A0, A1, A2) between Lie 2-algebras."""

    __slots__ = ("source", "target", "A0", "A1", "A2")

    def __init__(self, source: Lie2Algebra, target: Lie2Algebra, A0: Mat, A1: Mat, A2: AltTensor):
        if (A0.rows, A0.cols) != (target.n0, source.n0):
            raise ValueError("A0 shape mismatch")
        if (A1.rows, A1.cols) != (target.n1, source.n1):
            raise ValueError("A1 shape mismatch")
        if (A2.arity, A2.dim, A2.codim) != (2, source.n0, target.n1):
            raise ValueError("A2 shape mismatch")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "A0", A0)
        object.__setattr__(self, "A1", A1)
        object.__setattr__(self, "A2", A2)

    def __setattr__(self, *a):
        raise AttributeError("Lie2Hom is immutable")

    def is_endo(self) -> bool:
        return self.source == self.target

    def to_float(self) -> "Lie2Hom":
        return Lie2Hom(self.source.to_float(), self.target.to_float(),
                       self.A0.to_float(), self.A1.to_float(), self.A2.to_float())

    def __eq__(self, other) -> bool:
        return (isinstance(other, Lie2Hom) and self.A0 == other.A0
                and self.A1 == other.A1 and self.A2 == other.A2
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash((self.A0, self.A1, self.A2))

    def __repr__(self):
        return f"Lie2Hom({self.source!r} -> {self.target!r})"


def hom_identity(L: Lie2Algebra) -> Lie2Hom:
    return Lie2Hom(L, L, Mat.identity(L.n0, L.mode), Mat.identity(L.n1, L.mode),
                   AltTensor.zero(2, L.n0, L.n1, L.mode))


def validate_hom(A: Lie2Hom) -> ResidualReport:
    """Residuals of the chain condition and the three homomorphism laws."""
    src, tgt = A.source, A.target
    acc = {k: _Acc() for k in ("chain", "i", "ii", "iii")}

    chain = (tgt.d @ A.A1) - (A.A0 @ src.d)
    acc["chain"].add(chain.data, None)

    e0 = [src.e0(i) for i in range(src.n0)]
    e1 = [src.e1(a) for a in range(src.n1)]
    img0 = [A.A0.col(i) for i in range(src.n0)]
    img1 = [A.A1.col(a) for a in range(src.n1)]

    for i, j in itertools.combinations(range(src.n0), 2):
        r = A.A0.apply(src.b00.eval_basis(i, j))
        r = vsub(r, tgt.bracket00(img0[i], img0[j]))
        r = vsub(r, tgt.dv(A.A2.eval_basis(i, j)))
        acc["i"].add(r, (i, j))

    for i in range(src.n0):
        for a in range(src.n1):
            r = A.A1.apply(src.bracket01(e0[i], e1[a]))
            r = vsub(r, tgt.bracket01(img0[i], img1[a]))
            r = vsub(r, A.A2.eval(e0[i], src.dcol(a)))
            acc["ii"].add(r, (i, a))

    for i, j, k in itertools.combinations(range(src.n0), 3):
        r = vzero(tgt.n1, tgt.mode)
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            r = vadd(r, tgt.bracket01(img0[x], A.A2.eval_basis(y, z)))
            r = vsub(r, A.A2.eval(src.b00.eval_basis(x, y), e0[z]))
        r = vadd(r, tgt.l3.eval(img0[i], img0[j], img0[k]))
        r = vsub(r, A.A1.apply(src.l3.eval_basis(i, j, k)))
        acc["iii"].add(r, (i, j, k))

    return ResidualReport({k: a.residual() for k, a in acc.items()})


def compose_hom(B: Lie2Hom, A: Lie2Hom) -> Lie2Hom:
    """Composite homomorphism B after A; (B.A)_2 = B2(A0 x A0) + B1 A2."""
    if A.target != B.source:
        raise ValueError("homomorphisms are not composable")
    A2 = B.A2.pullback(A.A0) + A.A2.postcompose(B.A1)
    return Lie2Hom(A.source, B.target, B.A0 @ A.A0, B.A1 @ A.A1, A2)


def invert_hom(A: Lie2Hom):
    """Inverse homomorphism when A0, A1 are invertible, else None.

    The 2-component of the inverse is -A1^{-1} A2 (A0^{-1} x A0^{-1}).
    """
    a0i = mat_inverse(A.A0)
    a1i = mat_inverse(A.A1)
    if a0i is None or a1i is None:
        return None
    A2 = -(A.A2.pullback(a0i).postcompose(a1i))
    return Lie2Hom(A.target, A.source, a0i, a1i, A2)


def hom_distance(A: Lie2Hom, B: Lie2Hom):
    """Max abs componentwise difference over (A0, A1, A2)."""
    return max(mat_distance(A.A0, B.A0), mat_distance(A.A1, B.A1),
               tensor_distance(A.A2, B.A2))


# ---------------------------------------------------------------------------
# crossed modules of Lie algebras
# ---------------------------------------------------------------------------

class CrossedModLieAlg:
    """Crossed module (h1, h0, varphi, action) of Lie algebras."""

    __slots__ = ("n1", "n0", "b1", "b0", "varphi", "action")

    def __init__(self, b1: AltTensor, b0: AltTensor, varphi: Mat, action):
        action = tuple(action)
        n1, n0 = b1.dim, b0.dim
        if (b1.arity, b1.codim) != (2, n1) or (b0.arity, b0.codim) != (2, n0):
            raise ValueError("brackets must be alternating 2-tensors")
        if (varphi.rows, varphi.cols) != (n0, n1):
            raise ValueError("varphi shape mismatch")
        if len(action) != n0 or any((m.rows, m.cols) != (n1, n1) for m in action):
            raise ValueError("action must hold n0 matrices of shape n1 x n1")
        object.__setattr__(self, "n1", n1)
        object.__setattr__(self, "n0", n0)
        object.__setattr__(self, "b1", b1)
        object.__setattr__(self, "b0", b0)
        object.__setattr__(self, "varphi", varphi)
        object.__setattr__(self, "action", action)

    def __setattr__(self, *a):
        raise AttributeError("CrossedModLieAlg is immutable")

    def act_mat(self, x: tuple) -> Mat:
        out = Mat.zero(self.n1, self.n1)
        for i, xi in enumerate(x):
            if xi != 0:
                out = out + self.action[i].scale(xi)
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, CrossedModLieAlg) and self.b1 == other.b1
                and self.b0 == other.b0 and self.varphi == other.varphi
                and self.action == other.action)

    def __hash__(self):
        return hash((self.b1, self.b0, self.varphi, self.action))


def validate_crossed_module(C: CrossedModLieAlg) -> ResidualReport:
    """Jacobi for both brackets, hom/action laws, equivariance, Peiffer."""
    acc = {k: _Acc() for k in ("jacobi1", "jacobi0", "varphi_hom", "action_hom",
                               "action_der", "equivariance", "peiffer")}

    def jacobi(b: AltTensor, key: str):
        for i, j, k in itertools.combinations(range(b.dim), 3):
            x, y, z = (basis_vec(b.dim, t) for t in (i, j, k))
            r = b.eval(b.eval(x, y), z)
            r = vadd(r, b.eval(b.eval(y, z), x))
            r = vadd(r, b.eval(b.eval(z, x), y))
            acc[key].add(r, (i, j, k))

    jacobi(C.b1, "jacobi1")
    jacobi(C.b0, "jacobi0")

    for a, b in itertools.combinations(range(C.n1), 2):
        r = vsub(C.varphi.apply(C.b1.eval_basis(a, b)),
                 C.b0.eval(C.varphi.col(a), C.varphi.col(b)))
        acc["varphi_hom"].add(r, (a, b))

    for i, j in itertools.combinations(range(C.n0), 2):
        m = C.act_mat(C.b0.eval_basis(i, j))
        comm = (C.action[i] @ C.action[j]) - (C.action[j] @ C.action[i])
        acc["action_hom"].add((m - comm).data, (i, j))

    for i in range(C.n0):
        for a, b in itertools.combinations(range(C.n1), 2):
            fa, fb = basis_vec(C.n1, a), basis_vec(C.n1, b)
            r = C.action[i].apply(C.b1.eval_basis(a, b))
            r = vsub(r, C.b1.eval(C.action[i].apply(fa), fb))
            r = vsub(r, C.b1.eval(fa, C.action[i].apply(fb)))
            acc["action_der"].add(r, (i, a, b))

    for i in range(C.n0):
        for a in range(C.n1):
            r = vsub(C.varphi.apply(C.action[i].col(a)),
                     C.b0.eval(basis_vec(C.n0, i), C.varphi.col(a)))
            acc["equivariance"].add(r, (i, a))

    for a in range(C.n1):
        for b in range(C.n1):
            r = vsub(C.act_mat(C.varphi.col(a)).apply(basis_vec(C.n1, b)),
                     C.b1.eval_basis(a, b))
            acc["peiffer"].add(r, (a, b))

    return ResidualReport({k: v.residual() for k, v in acc.items()})


def strict_to_crossed(L: Lie2Algebra) -> CrossedModLieAlg:
    """Strict Lie 2-algebra -> crossed module: [a,b] = [da, b], phi_x = [x, .]."""
    if not L.l3.is_zero():
        raise ValueError("strict_to_crossed requires l3 = 0")
    b1 = AltTensor.from_function(2, L.n1, L.n1,
                                 lambda key: L.bracket01(L.dcol(key[0]), L.e1(key[1])))
    return CrossedModLieAlg(b1, L.b00, L.d, L.b01)


def crossed_to_strict(C: CrossedModLieAlg) -> Lie2Algebra:
    """Crossed module -> strict Lie 2-algebra with d = varphi, [x,a] = phi_x(a)."""
    return Lie2Algebra(C.n0, C.n1, C.varphi, C.b0, C.action,
                       AltTensor.zero(3, C.n0, C.n1))


# ---------------------------------------------------------------------------
# named constructors
# ---------------------------------------------------------------------------

def lie_ad_matrices(sc: AltTensor) -> list:
    """Adjoint matrices of a Lie algebra given by structure constants."""
    n = sc.dim
    return [Mat.from_cols([sc.eval_basis(i, j) for j in range(n)], n) for i in range(n)]


def killing_form(sc: AltTensor) -> Mat:
    """K(x, y) = trace(ad_x ad_y); symmetric."""
    ads = lie_ad_matrices(sc)
    n = sc.dim
    return Mat.from_rows([[(ads[i] @ ads[j]).trace() for j in range(n)] for i in range(n)]) \
        if n else Mat.zero(0, 0)


def make_string(sc: AltTensor) -> Lie2Algebra:
    """String Lie 2-algebra of a Lie algebra: R --0--> k, l3 = K([x,y], z).

    Intended for semisimple input; the Killing form is computed either way
    and a Jacobi failure of the input surfaces in the validator.
    """
    n = sc.dim
    K = killing_form(sc)

    def l3_val(key):
        i, j, k = key
        u = sc.eval_basis(i, j)
        return (sum((u[s] * K.at(s, k) for s in range(n)), Fraction(0)),)

    l3 = AltTensor.from_function(3, n, 1, l3_val)
    return Lie2Algebra(n, 1, Mat.zero(n, 1), sc, [Mat.zero(1, 1)] * n, l3)


def make_skeletal(sc: AltTensor, rep, l3: AltTensor) -> Lie2Algebra:
    """Skeletal Lie 2-algebra: d = 0, [x,u] = rep_x(u), given l3.

    Passes the validator iff sc is a Lie algebra, rep a representation
    and l3 a 3-cocycle for the associated coboundary operator.
    """
    rep = tuple(rep)
    n = sc.dim
    m = rep[0].rows if rep else l3.codim
    return Lie2Algebra(n, m, Mat.zero(n, m), sc, rep, l3)


def _flatten_pair(F0: Mat, F1: Mat) -> tuple:
    return F0.data + F1.data


def _endo_data(dmat: Mat):
    """Basis of degree-0 endomorphism pairs commuting with dmat."""
    v0, v1 = dmat.rows, dmat.cols
    cols = []
    for u in range(v0 * v0 + v1 * v1):
        f0 = [Fraction(0)] * (v0 * v0)
        f1 = [Fraction(0)] * (v1 * v1)
        if u < v0 * v0:
            f0[u] = Fraction(1)
        else:
            f1[u - v0 * v0] = Fraction(1)
        F0 = Mat(v0, v0, f0)
        F1 = Mat(v1, v1, f1)
        cols.append(((F0 @ dmat) - (dmat @ F1)).data)
    constraint = Mat.from_cols(cols, v0 * v1) if cols else Mat.zero(v0 * v1, 0)
    pairs = []
    for vec in kernel_basis(constraint):
        F0 = Mat(v0, v0, vec[:v0 * v0])
        F1 = Mat(v1, v1, vec[v0 * v0:])
        pairs.append((F0, F1))
    return pairs


def make_endo(dmat: Mat) -> Lie2Algebra:
    """Strict Lie 2-algebra of endomorphisms of a two-term complex.

    Degree 0 is the space of pairs (F0, F1) with F0 dmat = dmat F1 under
    the commutator bracket, degree -1 is Hom(V_0, V_{-1}), and the
    differential sends theta to (dmat theta, theta dmat).  The degree-0
    basis follows kernel_basis output order, so results are deterministic.
    """
    v0, v1 = dmat.rows, dmat.cols
    pairs = _endo_data(dmat)
    n0 = len(pairs)
    n1 = v1 * v0
    span = Mat.from_cols([_flatten_pair(*p) for p in pairs], v0 * v0 + v1 * v1) \
        if n0 else Mat.zero(v0 * v0 + v1 * v1, 0)

    def coords(F0: Mat, F1: Mat) -> tuple:
        c = solve(span, _flatten_pair(F0, F1))
        if c is None:
            raise ValueError("value escaped the degree-0 span")
        return c

    def theta_mat(t: int) -> Mat:
        data = [Fraction(0)] * (v1 * v0)
        data[t] = Fraction(1)
        return Mat(v1, v0, data)

    d = Mat.from_cols([coords(dmat @ theta_mat(t), theta_mat(t) @ dmat)
                       for t in range(n1)], n0) if n1 else Mat.zero(n0, 0)

    def b00_val(key):
        (F0, F1), (G0, G1) = pairs[key[0]], pairs[key[1]]
        return coords(F0 @ G0 - G0 @ F0, F1 @ G1 - G1 @ F1)

    b00 = AltTensor.from_function(2, n0, n0, b00_val)

    b01 = []
    for F0, F1 in pairs:
        cols = [((F1 @ theta_mat(t)) - (theta_mat(t) @ F0)).data for t in range(n1)]
        b01.append(Mat.from_cols(cols, n1) if n1 else Mat.zero(0, 0))

    return Lie2Algebra(n0, n1, d, b00, b01, AltTensor.zero(3, n0, n1))


def ce_coboundary(sc: AltTensor, rep, f: AltTensor) -> AltTensor:
    """Lie algebra coboundary operator on cochains with values in a module.

    rep is one matrix per basis vector of the algebra; f is an alternating
    k-cochain.  Squares to zero whenever rep is a representation.
    """
    rep = tuple(rep)
    n = sc.dim
    if f.dim != n:
        raise ValueError("cochain domain mismatch")
    if f.arity > n:
        raise ValueError("cochain arity exceeds the algebra dimension")
    m = f.codim

    def val(key):
        out = vzero(m, f.mode)
        k = len(key)
        for a in range(k):
            rest = tuple(key[t] for t in range(k) if t != a)
            term = rep[key[a]].apply(f.eval_basis(*rest))
            out = vadd(out, term if a % 2 == 0 else vscale(-1, term))
        for a, b in itertools.combinations(range(k), 2):
            rest = [basis_vec(n, key[t], f.mode) for t in range(k) if t not in (a, b)]
            term = f.eval(sc.eval_basis(key[a], key[b]), *rest)
            out = vadd(out, term if (a + b) % 2 == 0 else vscale(-1, term))
        return out

    return AltTensor.from_function(f.arity + 1, n, m, val, f.mode)
