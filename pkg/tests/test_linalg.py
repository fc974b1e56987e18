import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lie2alg.linalg import (
    AltTensor,
    Mat,
    ModeError,
    kernel_basis,
    mat_distance,
    mat_inverse,
    nilpotency_index,
    rank,
    rat,
    rat_str,
    rref,
    solve,
    truncated_exp,
    vec_is_zero,
)


def test_rat_grammar():
    assert rat("7") == Fraction(7)
    assert rat("-3/2") == Fraction(-3, 2)
    assert rat(" 0 ") == 0
    assert rat("4/6") == Fraction(2, 3)
    for bad in ["", "1/0", "1/-2", "--3", "3.5", "a", "1/"]:
        with pytest.raises(ValueError):
            rat(bad)


def test_rat_str_round_trip():
    for q in [Fraction(0), Fraction(7), Fraction(-3, 2), Fraction(2, 3)]:
        assert rat(rat_str(q)) == q


def test_rref_identity():
    ident = Mat.identity(2)
    red, pivots = rref(ident)
    assert red == ident
    assert pivots == [0, 1]


def test_rref_zero():
    z = Mat.zero(2, 3)
    red, pivots = rref(z)
    assert red == z
    assert pivots == []


def test_rref_rank_deficient():
    # hand row-reduction: R2 <- R2 - 2 R1 leaves [[1,2],[0,0]]
    m = Mat.from_rows([[1, 2], [2, 4]])
    red, pivots = rref(m)
    assert red == Mat.from_rows([[1, 2], [0, 0]])
    assert pivots == [0]


def test_rref_rejects_float():
    with pytest.raises(ModeError):
        rref(Mat.from_rows([[1.0, 2.0]]))


def test_kernel_identity_empty():
    assert kernel_basis(Mat.identity(3)) == []


def test_kernel_zero_full():
    basis = kernel_basis(Mat.zero(1, 2))
    assert len(basis) == 2
    assert basis[0] == (1, 0)
    assert basis[1] == (0, 1)


def test_kernel_line():
    # direct substitution: m v = 0 for v = (1, -1)
    m = Mat.from_rows([[1, 1]])
    basis = kernel_basis(m)
    assert len(basis) == 1
    v = basis[0]
    assert v[0] * 1 + v[1] * 1 == 0
    assert v[1] != 0 and v[0] / v[1] == -1


def test_mat_inverse_cases():
    assert mat_inverse(Mat.identity(3)) == Mat.identity(3)
    assert mat_inverse(Mat.from_rows([[2]])) == Mat.from_rows([[Fraction(1, 2)]])
    m = Mat.from_rows([[1, 1], [0, 1]])
    inv = mat_inverse(m)
    # multiply-back oracle
    assert m @ inv == Mat.identity(2)
    assert inv @ m == Mat.identity(2)
    assert inv == Mat.from_rows([[1, -1], [0, 1]])
    assert mat_inverse(Mat.from_rows([[1, 2], [2, 4]])) is None


def test_mat_inverse_float():
    m = Mat.from_rows([[2.0, 1.0], [1.0, 1.0]])
    inv = mat_inverse(m)
    assert mat_distance(m @ inv, Mat.identity(2, "float")) < 1e-12


def test_solve_consistent_and_not():
    m = Mat.from_rows([[1, 2], [0, 0]])
    assert solve(m, (3, 0)) == (3, 0)
    assert solve(m, (0, 1)) is None


def test_truncated_exp_zero():
    assert truncated_exp(Mat.zero(2, 2), 1) == Mat.identity(2)


def test_truncated_exp_nilpotent_exact():
    m = Mat.from_rows([[0, 1], [0, 0]])
    assert truncated_exp(m, 1) == Mat.from_rows([[1, 1], [0, 1]])
    assert truncated_exp(m, Fraction(1, 2)) == Mat.from_rows([[1, Fraction(1, 2)], [0, 1]])


def test_truncated_exp_float_scalar():
    got = truncated_exp(Mat.from_rows([[1]]), 1, order=20, mode="float")
    assert abs(got.at(0, 0) - math.e) < 1e-12


def test_rank_nullity():
    rng = random.Random(11)
    for _ in range(30):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        m = Mat(r, c, [Fraction(rng.randint(-3, 3), rng.choice([1, 2])) for _ in range(r * c)])
        assert rank(m) + len(kernel_basis(m)) == c
        for v in kernel_basis(m):
            assert vec_is_zero(m.apply(v))


def test_inverse_iff_trivial_kernel():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 4)
        m = Mat(n, n, [Fraction(rng.randint(-2, 2)) for _ in range(n * n)])
        assert (mat_inverse(m) is not None) == (kernel_basis(m) == [])


def test_exp_additivity_nilpotent():
    m = Mat.from_rows([[0, 2, 1], [0, 0, -1], [0, 0, 0]])
    assert nilpotency_index(m) == 3
    t, s = Fraction(2, 3), Fraction(-1, 2)
    assert truncated_exp(m, t + s) == truncated_exp(m, t) @ truncated_exp(m, s)


def test_nilpotency_detection():
    assert nilpotency_index(Mat.zero(2, 2)) == 1
    assert nilpotency_index(Mat.identity(2)) is None
    assert nilpotency_index(Mat.from_rows([[0, 1], [0, 0]])) == 2


def test_mode_mixing_rejected():
    a = Mat.from_rows([[1, 0], [0, 1]])
    b = Mat.from_rows([[1.0, 0.0], [0.0, 1.0]])
    with pytest.raises(ModeError):
        a @ b
    with pytest.raises(ModeError):
        a + b
    with pytest.raises(ModeError):
        Mat.from_rows([[Fraction(1, 2), 2.0]])
    # plain ints are mode-agnostic literals
    assert Mat.from_rows([[1, 2.0]]).mode == "float"


small_rats = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@given(st.lists(small_rats, min_size=9, max_size=9))
def test_alt_tensor_antisymmetry(vals):
    # arity-2 tensor on a 3-dim space with 1-dim values
    entries = {(0, 1): (vals[0],), (0, 2): (vals[1],), (1, 2): (vals[2],)}
    t = AltTensor(2, 3, 1, entries)
    u = tuple(vals[3:6])
    v = tuple(vals[6:9])
    assert t.eval(u, v)[0] == -t.eval(v, u)[0]
    assert t.eval(u, u)[0] == 0
    for i in range(3):
        for j in range(3):
            assert t.eval_basis(i, j)[0] == -t.eval_basis(j, i)[0]


def test_alt_tensor_basis_eval_signs():
    t = AltTensor(3, 3, 1, {(0, 1, 2): (Fraction(5),)})
    assert t.eval_basis(0, 1, 2) == (5,)
    assert t.eval_basis(1, 0, 2) == (-5,)
    assert t.eval_basis(2, 0, 1) == (5,)
    assert t.eval_basis(0, 0, 2) == (0,)


def test_alt_tensor_eval_matches_minors():
    t = AltTensor(2, 2, 1, {(0, 1): (Fraction(1),)})
    u, v = (Fraction(2), Fraction(3)), (Fraction(5), Fraction(7))
    # det [[2,3],[5,7]] = -1
    assert t.eval(u, v) == (-1,)


def test_alt_tensor_pullback_postcompose():
    t = AltTensor(2, 2, 1, {(0, 1): (Fraction(1),)})
    b = Mat.from_rows([[2, 0], [0, 3]])
    pb = t.pullback(b)
    assert pb.eval_basis(0, 1) == (6,)
    m = Mat.from_rows([[4], [1]])
    pc = t.postcompose(m)
    assert pc.eval_basis(0, 1) == (4, 1)


def test_alt_tensor_arity_zero():
    t = AltTensor(0, 3, 2, {(): (Fraction(1), Fraction(2))})
    assert t.eval() == (1, 2)
    assert AltTensor.zero(0, 3, 2).eval() == (0, 0)
