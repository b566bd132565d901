import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stackypoly.linalg import (
    FgAbGroup,
    IntMatrix,
    cokernel,
    hermite_normal_form,
    kernel_basis,
    rank_q,
    smith_normal_form,
    solve_diophantine,
)

from helpers import determinantal_divisors


@st.composite
def int_matrices(draw, max_dim=6, lo=-20, hi=20):
    m = draw(st.integers(0, max_dim))
    n = draw(st.integers(0, max_dim))
    rows = draw(st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m))
    return IntMatrix(rows, ncols=n)


def test_snf_identity():
    I = IntMatrix.identity(2)
    snf = smith_normal_form(I)
    assert snf.U == I and snf.D == I and snf.V == I


def test_snf_dual_cone_matrix_cp22():
    A = IntMatrix([[1, -1], [0, 1], [2, 0]])
    snf = smith_normal_form(A)
    assert snf.diagonal == (1, 1)
    assert cokernel(A).normal_form == FgAbGroup(1)


def test_snf_diag_2_3():
    A = IntMatrix([[2, 0], [0, 3]])
    snf = smith_normal_form(A)
    # gcd of entries is 1 and |det| is 6
    assert determinantal_divisors(A) == [1, 6]
    assert snf.diagonal == (1, 6)
    assert snf.U @ A @ snf.V == snf.D


def test_snf_empty_shapes():
    for shape in [(0, 0), (0, 3), (3, 0)]:
        A = IntMatrix.zeros(*shape)
        snf = smith_normal_form(A)
        assert snf.U.shape == (shape[0], shape[0])
        assert snf.V.shape == (shape[1], shape[1])
        assert snf.U @ A @ snf.V == snf.D


@given(int_matrices())
@settings(max_examples=200, deadline=None)
def test_snf_contract(A):
    snf = smith_normal_form(A)
    assert snf.U @ A @ snf.V == snf.D
    assert abs(snf.U.det()) == 1 and abs(snf.V.det()) == 1
    D = snf.D
    assert all(D[i, j] == 0 for i in range(D.rows) for j in range(D.cols) if i != j)
    diag = snf.diagonal
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b % a == 0) if a else b == 0


@given(int_matrices(max_dim=4, lo=-6, hi=6))
@settings(max_examples=100, deadline=None)
def test_snf_matches_determinantal_divisors(A):
    nonzero = [d for d in smith_normal_form(A).diagonal if d]
    assert nonzero == determinantal_divisors(A)


def test_cokernel_zero_column():
    Q = cokernel(IntMatrix.zeros(3, 1))
    assert Q.normal_form == FgAbGroup(3)
    assert sorted(map(abs, (Q.projection.det(),))) == [1]


def test_cokernel_cp12_cone_matrix():
    Q = cokernel(IntMatrix([[1, -2], [0, 1], [1, 0]]))
    assert Q.normal_form == FgAbGroup(1)
    assert Q.projection.shape == (1, 3)
    assert Q.projection.apply((1, 0, 1)) == (0,)  # first relation column
    assert Q.projection.apply((-2, 1, 0)) == (0,)


def test_cokernel_z2():
    assert cokernel(IntMatrix([[2]])).normal_form == FgAbGroup(0, (2,))


@given(int_matrices(max_dim=5, lo=-9, hi=9), st.data())
@settings(max_examples=100, deadline=None)
def test_cokernel_properties(A, data):
    Q = cokernel(A)
    assert Q.normal_form.free_rank == A.rows - rank_q(A.tolist())
    x = data.draw(st.lists(st.integers(-9, 9), min_size=A.rows, max_size=A.rows))
    y = data.draw(st.lists(st.integers(-3, 3), min_size=A.cols, max_size=A.cols))
    shifted = [a + b for a, b in zip(x, A.apply(y))]
    assert Q.project(shifted) == Q.project(x)
    # relations die in the quotient
    for col in A.columns():
        assert not any(Q.project(col))


def test_cokernel_projection_surjective():
    A = IntMatrix([[2, 0], [0, 4], [0, 0]])
    Q = cokernel(A)
    assert Q.normal_form == FgAbGroup(1, (2, 4))
    hit = {Q.project([a, b, 0])[:2] for a in range(4) for b in range(8)}
    assert hit == set(itertools.product(range(2), range(4)))


def test_kernel_basis_examples():
    assert kernel_basis(IntMatrix([[1, 1]])).columns() in ([(1, -1)], [(-1, 1)])
    assert kernel_basis(IntMatrix.identity(3)).cols == 0


def test_kernel_basis_cp13():
    K = kernel_basis(IntMatrix([[1, 3]]))
    brute = [v for v in itertools.product(range(-5, 6), repeat=2) if v[0] + 3 * v[1] == 0 and any(v)]
    assert (3, -1) in brute
    assert K.columns() in ([(3, -1)], [(-3, 1)])


@given(int_matrices(max_dim=3, lo=-4, hi=4))
@settings(max_examples=60, deadline=None)
def test_kernel_basis_saturated(A):
    K = kernel_basis(A)
    for col in K.columns():
        assert not any(A.apply(col))
    # every small kernel vector is an integer combination of the basis
    for v in itertools.product(range(-5, 6), repeat=A.cols):
        if any(A.apply(v)):
            continue
        sol = solve_diophantine(K, v) if K.cols else (None if any(v) else ((), None))
        assert sol is not None


def test_solve_diophantine_examples():
    x, K = solve_diophantine(IntMatrix([[1, 2]]), [4])
    assert x[0] + 2 * x[1] == 4
    brute = [v for v in itertools.product(range(-10, 11), repeat=2) if v[0] + 2 * v[1] == 4]
    assert tuple(x) in brute
    assert K.columns() in ([(2, -1)], [(-2, 1)])
    assert solve_diophantine(IntMatrix([[2, 2]]), [1]) is None
    x, _ = solve_diophantine(IntMatrix([[1]]), [0])
    assert x == (0,)


def test_solve_diophantine_rejects_bad_rhs():
    with pytest.raises(ValueError):
        solve_diophantine(IntMatrix([[1, 2]]), [1, 2])


@given(int_matrices(max_dim=4, lo=-5, hi=5), st.data())
@settings(max_examples=100, deadline=None)
def test_solve_diophantine_roundtrip(A, data):
    x = data.draw(st.lists(st.integers(-5, 5), min_size=A.cols, max_size=A.cols))
    b = A.apply(x)
    sol = solve_diophantine(A, b)
    assert sol is not None
    assert A.apply(sol[0]) == b


def test_hnf_properties():
    rng = random.Random(3)
    for _ in range(200):
        A = IntMatrix([[rng.randint(-9, 9) for _ in range(4)] for _ in range(3)])
        H, W = hermite_normal_form(A)
        assert W @ A == H
        assert abs(W.det()) == 1
        lead = -1
        for i in range(H.rows):
            row = H.row(i)
            if not any(row):
                continue
            j = next(k for k, x in enumerate(row) if x)
            assert j > lead and row[j] > 0
            assert all(0 <= H[p, j] < row[j] for p in range(i))
            lead = j


def test_fgabgroup_invariants():
    with pytest.raises(ValueError):
        FgAbGroup(0, (1,))
    with pytest.raises(ValueError):
        FgAbGroup(0, (4, 2))
    assert FgAbGroup.from_invariants(1, [1, 2, 6]) == FgAbGroup(1, (2, 6))
    assert str(FgAbGroup(2, (2,))) == "Z^2 + Z/2"
