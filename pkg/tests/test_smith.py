import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from kanfuk import smith

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_form_against_sympy(A):
    m, n = len(A), len(A[0])
    F = smith.smith_normal_form(A, m, n)
    UA = smith.matmul(smith.matmul(F.U, A), F.V)
    for i in range(m):
        for j in range(n):
            want = F.diagonal[i] if i == j and i < len(F.diagonal) else 0
            assert UA[i][j] == want
    VVi = smith.matmul(F.V, F.V_inv)
    assert VVi == smith.identity(n)
    d = [x for x in F.diagonal if x]
    assert all(x > 0 for x in d)
    assert all(d[k + 1] % d[k] == 0 for k in range(len(d) - 1))
    S = sympy_snf(Matrix(A), domain=ZZ)
    ref = sorted(abs(int(S[i, i])) for i in range(min(m, n)) if S[i, i] != 0)
    assert sorted(d) == ref


@pytest.mark.parametrize("A,diag", [([[2, 4], [6, 8]], (2, 4)), ([[0, 0], [0, 0]], ()),
                                    ([[1, 1, 1]], (1,)), ([[2, 0], [0, 3]], (1, 6))])
def test_small_examples(A, diag):
    assert smith.smith_normal_form(A, len(A), len(A[0])).diagonal == diag
