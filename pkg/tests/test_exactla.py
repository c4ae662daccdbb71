import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dertensor.errors import DimensionMismatch, NotInDomain, SingularElement
from dertensor.exactla import (
    Matrix,
    Subspace,
    invert_matrix,
    is_direct_sum,
    kernel_basis,
    kernel_of_rows,
    rank,
    rref,
    solve_unique,
)
from dertensor.scalars import make_field

from naive_la import naive_nullspace, naive_rank, naive_rref

QQ = make_field("rational")
Z4 = make_field("cyclotomic", m=4)
F5 = make_field("prime", m=4, p=5)


def qmat(rows):
    return Matrix(QQ, [[Fraction(x) for x in r] for r in rows])


def test_rref_hand_example():
    m = qmat([[2, 4, 6], [1, 2, 4]])
    r, pivots = rref(m)
    assert pivots == (0, 2)
    assert r.rows == [[Fraction(1), Fraction(2), Fraction(0)], [Fraction(0), Fraction(0), Fraction(1)]]


def test_rref_matches_naive_oracle_on_random_rational_matrices():
    rng = random.Random(20260822)
    for _ in range(150):
        nr = rng.randint(0, 6)
        nc = rng.randint(1, 6)
        rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(nc)] for _ in range(nr)]
        r, pivots = rref(Matrix(QQ, rows, nc))
        orows, opivots = naive_rref(rows)
        assert list(pivots) == opivots
        assert [list(x) for x in r.rows] == orows


def test_rref_idempotent_random():
    rng = random.Random(7)
    for _ in range(80):
        rows = [[Fraction(rng.randint(-5, 5)) for _ in range(5)] for _ in range(4)]
        r1, p1 = rref(Matrix(QQ, rows, 5))
        r2, p2 = rref(r1)
        assert r1.rows == r2.rows and p1 == p2


def test_rank_nullity_random_all_fields():
    rng = random.Random(99)
    for fld in (QQ, F5, Z4):
        for _ in range(40):
            nr, nc = rng.randint(1, 5), rng.randint(1, 5)
            rows = [[fld.from_int(rng.randint(-6, 6)) for _ in range(nc)] for _ in range(nr)]
            m = Matrix(fld, rows, nc)
            assert rank(m) + kernel_basis(m).dim == nc


def test_kernel_vectors_annihilate():
    rng = random.Random(3)
    for fld in (QQ, F5, Z4):
        for _ in range(30):
            rows = [[fld.from_int(rng.randint(-4, 4)) for _ in range(6)] for _ in range(4)]
            m = Matrix(fld, rows, 6)
            ker = kernel_basis(m)
            for v in ker.rows:
                out = m.matvec(list(v))
                assert all(fld.is_zero(x) for x in out)


def test_kernel_dimension_matches_naive_oracle():
    rng = random.Random(11)
    for _ in range(60):
        nr, nc = rng.randint(1, 5), rng.randint(2, 6)
        rows = [[Fraction(rng.randint(-6, 6)) for _ in range(nc)] for _ in range(nr)]
        ker = kernel_of_rows(QQ, rows, nc)
        assert ker.dim == len(naive_nullspace(rows, nc))
        assert rank(Matrix(QQ, rows, nc)) == naive_rank(rows)


def test_grassmann_identity_random():
    rng = random.Random(42)
    for fld in (QQ, F5):
        for _ in range(60):
            amb = rng.randint(2, 6)
            mk = lambda k: Subspace.from_vectors(
                fld, amb, [[fld.from_int(rng.randint(-3, 3)) for _ in range(amb)] for _ in range(k)]
            )
            u, v = mk(rng.randint(0, 3)), mk(rng.randint(0, 3))
            s = u.sum(v)
            i = u.intersect(v)
            assert u.dim + v.dim == s.dim + i.dim
            for row in i.rows:
                assert u.contains(list(row)) and v.contains(list(row))


def test_subspace_equality_is_canonical():
    u1 = Subspace.from_vectors(QQ, 3, [[Fraction(1), Fraction(1), Fraction(0)], [Fraction(0), Fraction(2), Fraction(2)]])
    u2 = Subspace.from_vectors(QQ, 3, [[Fraction(3), Fraction(0), Fraction(-3)], [Fraction(1), Fraction(3), Fraction(2)]])
    assert u1 == u2
    assert hash(u1) == hash(u2)


def test_subspace_coords_and_membership():
    u = Subspace.from_vectors(QQ, 3, [[Fraction(1), Fraction(0), Fraction(1)], [Fraction(0), Fraction(1), Fraction(2)]])
    v = [Fraction(2), Fraction(3), Fraction(8)]
    assert u.contains(v)
    assert u.coords(v) == [Fraction(2), Fraction(3)]
    assert u.linear_combination(u.coords(v)) == v
    with pytest.raises(NotInDomain):
        u.coords([Fraction(0), Fraction(0), Fraction(1)])


def test_direct_sum_check():
    e1 = Subspace.from_vectors(QQ, 3, [[Fraction(1), Fraction(0), Fraction(0)]])
    e2 = Subspace.from_vectors(QQ, 3, [[Fraction(0), Fraction(1), Fraction(0)]])
    e3 = Subspace.from_vectors(QQ, 3, [[Fraction(0), Fraction(0), Fraction(1)]])
    diag = Subspace.from_vectors(QQ, 3, [[Fraction(1), Fraction(1), Fraction(0)]])
    assert is_direct_sum([e1, e2, e3], 3)
    assert not is_direct_sum([e1, e2, e3, diag])
    assert not is_direct_sum([e1, e2], 3)
    assert is_direct_sum([e1, e2])


def test_solve_unique_and_inverse():
    m = qmat([[2, 1], [1, 1]])
    x = solve_unique(m, [Fraction(3), Fraction(2)])
    assert x == [Fraction(1), Fraction(1)]
    inv = invert_matrix(m)
    assert m.mul(inv) == Matrix.identity(QQ, 2)
    assert inv.mul(m) == Matrix.identity(QQ, 2)
    with pytest.raises(SingularElement):
        solve_unique(qmat([[1, 1], [2, 2]]), [Fraction(1), Fraction(0)])
    with pytest.raises(SingularElement):
        invert_matrix(qmat([[1, 1], [2, 2]]))


def test_matrix_ops_shape_checks():
    with pytest.raises(DimensionMismatch):
        qmat([[1, 2], [3]])
    with pytest.raises(DimensionMismatch):
        qmat([[1, 2]]).mul(qmat([[1, 2]]))
    with pytest.raises(DimensionMismatch):
        qmat([[1, 2]]).matvec([Fraction(1)])


def test_kron_convention():
    a = qmat([[1, 2], [3, 4]])
    b = qmat([[0, 1], [1, 0]])
    k = a.kron(b)
    # entry at row (i1,i2)=(0,1), col (j1,j2)=(1,0): a[0][1]*b[1][0] = 2
    assert k.rows[1][2] == Fraction(2)
    assert k.nrows == 4 and k.ncols == 4


def test_flatten_round_trip():
    a = qmat([[1, 2, 3], [4, 5, 6]])
    assert Matrix.unflatten(QQ, a.flatten(), 2, 3) == a


def test_rref_cyclotomic_small():
    z = Z4.omega()
    one = Z4.one()
    m = Matrix(Z4, [[one, z], [z, Z4.neg(one)]], 2)
    # second row is z times the first, so rank 1
    r, pivots = rref(m)
    assert pivots == (0,)
    assert r.rows[0] == [one, z]


def test_rref_prime_field_matches_structure():
    m = Matrix(F5, [[2, 4], [1, 2]], 2)
    r, pivots = rref(m)
    assert pivots == (0,)
    assert r.rows == [[1, 2]]


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(-8, 8), min_size=4, max_size=4),
        min_size=1,
        max_size=5,
    )
)
def test_rref_row_space_invariant(int_rows):
    """The RREF rows span the same space as the input rows."""
    rows = [[Fraction(x) for x in r] for r in int_rows]
    sub = Subspace.from_vectors(QQ, 4, rows)
    for r in rows:
        assert sub.contains(r)
    back = Subspace.from_vectors(QQ, 4, [list(x) for x in sub.rows])
    assert back == sub
