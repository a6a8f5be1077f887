"""Exact field arithmetic and the matrix/subspace/flag layer."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fultoncheck import rowred
from fultoncheck._rowred_py import rref_frac as pure_rref_frac
from fultoncheck._rowred_py import rref_mod as pure_rref_mod
from fultoncheck.field import (
    DEFAULT_PRIME,
    PrimeField,
    RationalField,
    field_from_name,
)
from fultoncheck.linalg import (
    Flag,
    LinAlgError,
    Matrix,
    Subspace,
    contained_in,
    intersect_dim,
    random_flag,
    random_matrix,
    random_nonzero_combination,
    random_subspace,
)

PF = PrimeField(DEFAULT_PRIME)
QF = RationalField()


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


def test_prime_field_basics():
    f = PrimeField(7)
    assert f.from_int(-1) == 6
    assert f.add(3, 5) == 1
    assert f.mul(3, 5) == 1
    assert f.neg(2) == 5
    assert f.mul(f.inv(3), 3) == f.one
    assert f.name == "prime:7"


def test_prime_field_inverse_of_zero_fails():
    f = PrimeField(7)
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_rational_field_basics():
    f = RationalField()
    assert f.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert f.inv(Fraction(2, 3)) == Fraction(3, 2)
    assert f.from_int(-4) == Fraction(-4)


def test_field_from_name():
    assert field_from_name("prime").p == DEFAULT_PRIME
    assert field_from_name("prime:97").p == 97
    assert field_from_name("rational").name == "rational"
    with pytest.raises(ValueError):
        field_from_name("galois:4")


def test_field_sample_streams_match():
    """Both fields consume the RNG identically, so seeded runs correspond."""
    a = [PF.sample(random.Random(5)) for _ in range(1)]
    b = [QF.sample(random.Random(5)) for _ in range(1)]
    assert int(b[0]) % DEFAULT_PRIME == a[0] % DEFAULT_PRIME


# ---------------------------------------------------------------------------
# Matrices: frozen fixtures
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("field", [PF, QF], ids=["prime", "rational"])
def test_rank_of_dependent_rows(field):
    m = Matrix.from_rows(field, [[1, 2], [2, 4]])
    assert m.rank() == 1


@pytest.mark.parametrize("field", [PF, QF], ids=["prime", "rational"])
def test_kernel_of_sum_functional(field):
    m = Matrix.from_rows(field, [[1, 1]])
    kb = m.kernel_basis()
    assert kb.ncols == 1
    assert (m @ kb).is_zero()
    col = kb.column(0)
    assert col[0] == field.neg(col[1])


def test_inverse_fixture_rational():
    m = Matrix.from_rows(QF, [[2, 1], [1, 1]])
    inv = m.inverse()
    assert inv.rows == Matrix.from_rows(QF, [[1, -1], [-1, 2]]).rows
    assert (m @ inv).rows == Matrix.identity(QF, 2).rows


def test_solve_and_inconsistency():
    m = Matrix.from_rows(QF, [[1, 0], [0, 1], [1, 1]])
    rhs = Matrix.from_columns(QF, [[2, 3, 5]])
    x = m.solve(rhs)
    assert (m @ x).rows == rhs.rows
    bad = Matrix.from_columns(QF, [[2, 3, 6]])
    with pytest.raises(LinAlgError):
        m.solve(bad)


def test_shape_validation():
    a = Matrix.from_rows(QF, [[1, 2]])
    b = Matrix.from_rows(QF, [[1], [2], [3]])
    with pytest.raises(LinAlgError):
        a @ b
    with pytest.raises(LinAlgError):
        a.hstack(Matrix.from_rows(QF, [[1], [2]]))
    with pytest.raises(LinAlgError):
        Matrix.from_rows(QF, [[1, 2], [3]])


def test_column_helpers():
    m = Matrix.from_rows(QF, [[1, 2, 3], [4, 5, 6]])
    assert m.column(2) == (Fraction(3), Fraction(6))
    assert m.prefix_columns(2).rows == ((Fraction(1), Fraction(2)), (Fraction(4), Fraction(5)))
    assert m.take_columns([2, 0]).rows == ((Fraction(3), Fraction(1)), (Fraction(6), Fraction(4)))
    assert m.transpose().rows == ((Fraction(1), Fraction(4)), (Fraction(2), Fraction(5)), (Fraction(3), Fraction(6)))
    assert m.reverse_rows().rows == ((Fraction(4), Fraction(5), Fraction(6)), (Fraction(1), Fraction(2), Fraction(3)))


def test_singular_matrix_has_no_inverse():
    m = Matrix.from_rows(PF, [[1, 2], [2, 4]])
    assert not m.is_invertible()
    with pytest.raises(LinAlgError):
        m.inverse()


# ---------------------------------------------------------------------------
# Matrices: properties
# ---------------------------------------------------------------------------


@st.composite
def small_int_matrix(draw):
    nrows = draw(st.integers(1, 6))
    ncols = draw(st.integers(1, 6))
    rows = draw(
        st.lists(
            st.lists(st.integers(-9, 9), min_size=ncols, max_size=ncols),
            min_size=nrows,
            max_size=nrows,
        )
    )
    return rows


@given(small_int_matrix())
@settings(deadline=None)
def test_rank_plus_nullity_is_width(rows):
    m = Matrix.from_rows(PF, rows)
    kb = m.kernel_basis()
    assert m.rank() + kb.ncols == m.ncols
    assert (m @ kb).is_zero()


@given(small_int_matrix())
@settings(deadline=None)
def test_rank_equals_transpose_rank(rows):
    m = Matrix.from_rows(PF, rows)
    assert m.rank() == m.transpose().rank()


def test_rank_agrees_across_fields_on_500_matrices():
    """Small integer matrices: rank mod the default prime == rank over Q."""
    rng = random.Random(2024)
    for _ in range(500):
        nrows = rng.randint(1, 6)
        ncols = rng.randint(1, 6)
        rows = [[rng.randint(-9, 9) for _ in range(ncols)] for _ in range(nrows)]
        assert Matrix.from_rows(PF, rows).rank() == Matrix.from_rows(QF, rows).rank()


# ---------------------------------------------------------------------------
# Row-reduction backends
# ---------------------------------------------------------------------------


def test_backend_reports_identity():
    assert rowred.BACKEND in ("compiled", "pure")
    assert rowred.HAVE_COMPILED == (rowred.BACKEND == "compiled")


def test_backends_agree_on_200_matrices():
    if not rowred.HAVE_COMPILED:
        pytest.skip("compiled backend not built in this environment")
    rng = random.Random(99)
    p = DEFAULT_PRIME
    for _ in range(200):
        nrows = rng.randint(1, 8)
        ncols = rng.randint(1, 8)
        rows = [[rng.randrange(p) for _ in range(ncols)] for _ in range(nrows)]
        got_rows, got_piv = rowred.rref_mod([r[:] for r in rows], p)
        want_rows, want_piv = pure_rref_mod([r[:] for r in rows], p)
        assert list(got_piv) == list(want_piv)
        assert [list(r) for r in got_rows] == [list(r) for r in want_rows]


def test_rational_reduction_matches_modular_pivots():
    rng = random.Random(7)
    for _ in range(100):
        nrows = rng.randint(1, 5)
        ncols = rng.randint(1, 5)
        rows = [[rng.randint(-5, 5) for _ in range(ncols)] for _ in range(nrows)]
        _, piv_q = pure_rref_frac([[Fraction(x) for x in row] for row in rows])
        _, piv_p = pure_rref_mod([[x % DEFAULT_PRIME for x in row] for row in rows], DEFAULT_PRIME)
        assert list(piv_q) == list(piv_p)


# ---------------------------------------------------------------------------
# Subspaces and flags
# ---------------------------------------------------------------------------


def test_subspace_requires_independent_basis():
    with pytest.raises(LinAlgError):
        Subspace(Matrix.from_columns(PF, [[1, 2], [2, 4]]))


def test_subspace_contains_and_coords():
    v = Subspace(Matrix.from_columns(QF, [[1, 1, 0], [0, 0, 1]]))
    w = Subspace(Matrix.from_columns(QF, [[2, 2, 3]]))
    assert v.contains(w)
    coords = v.coords_of(w.basis)
    assert coords.rows == ((Fraction(2),), (Fraction(3),))
    outside = Subspace(Matrix.from_columns(QF, [[1, 0, 0]]))
    assert not v.contains(outside)
    with pytest.raises(LinAlgError):
        v.coords_of(outside.basis)


def test_intersect_dim_of_coordinate_planes():
    e12 = Subspace(Matrix.from_columns(QF, [[1, 0, 0], [0, 1, 0]]))
    e23 = Subspace(Matrix.from_columns(QF, [[0, 1, 0], [0, 0, 1]]))
    assert intersect_dim(e12, e23) == 1
    assert intersect_dim(e12, e12) == 2
    assert intersect_dim(e12, Subspace.zero(QF, 3)) == 0


def test_contained_in_edge_cases():
    a = Matrix.from_columns(QF, [[1, 0]])
    zero_cols = Matrix.zeros(QF, 2, 0)
    assert contained_in(zero_cols, a)
    assert not contained_in(a, zero_cols)
    assert contained_in(Matrix.zeros(QF, 2, 1), zero_cols)


def test_standard_flag_steps():
    fl = Flag.standard(QF, 4)
    assert fl.step(2).ncols == 2
    assert fl.step(2).column(1) == (Fraction(0), Fraction(1), Fraction(0), Fraction(0))
    sub = fl.step_subspace(3)
    assert sub.dim == 3
    for i in range(1, 4):
        assert fl.step_subspace(i + 1 if i < 4 else 4).contains(fl.step_subspace(i))


def test_random_objects_are_well_formed():
    rng = random.Random(0)
    m = random_matrix(PF, 3, 5, rng)
    assert (m.nrows, m.ncols) == (3, 5)
    fl = random_flag(PF, 5, rng)
    assert fl.matrix.is_invertible()
    v = random_subspace(PF, 6, 2, rng)
    assert (v.ambient_dim, v.dim) == (6, 2)
    combo = random_nonzero_combination(Matrix.identity(PF, 3), rng)
    assert combo.ncols == 1 and not combo.is_zero()


def test_random_nonzero_combination_needs_columns():
    rng = random.Random(0)
    with pytest.raises(LinAlgError):
        random_nonzero_combination(Matrix.zeros(PF, 3, 0), rng)
