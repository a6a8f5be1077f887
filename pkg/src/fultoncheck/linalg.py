"""Exact linear algebra over a prime field or the rationals.

Matrices are immutable; columns are the vectors. Rank and kernel come from
exact reduced row echelon form with first-nonzero pivoting (no tolerances
anywhere). Random flags are ordered bases with uniform field entries,
resampled until invertible, and are deterministic functions of the supplied
RNG state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from random import Random
from typing import Iterable, Sequence

from .field import Field, PrimeField, RationalField
from .rowred import rref_frac, rref_mod

MAX_SAMPLE_ATTEMPTS = 100


class LinAlgError(ValueError):
    """Ill-posed exact linear algebra input (shape mismatch, singularity)."""


class SamplingError(RuntimeError):
    """Random sampling failed to produce a full-rank object within the cap."""


@dataclass(frozen=True)
class Matrix:
    """Immutable matrix; `rows` is a tuple of row tuples of field elements."""

    field: Field
    nrows: int
    ncols: int
    rows: tuple[tuple[object, ...], ...]

    def __post_init__(self) -> None:
        if self.nrows < 0 or self.ncols < 0:
            raise LinAlgError("negative matrix dimension")
        if len(self.rows) != self.nrows:
            raise LinAlgError("row count mismatch")
        for row in self.rows:
            if len(row) != self.ncols:
                raise LinAlgError("ragged matrix rows")

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[int | Fraction]], ncols: int | None = None) -> "Matrix":
        canon = tuple(tuple(field.from_int(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(canon[0]) if canon else 0
        return cls(field, len(canon), ncols, canon)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence[int | Fraction]], nrows: int | None = None) -> "Matrix":
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        rows = [[field.from_int(col[i]) for col in cols] for i in range(nrows)]
        return cls(field, nrows, len(cols), tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return cls(field, n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        zero = field.zero
        return cls(field, nrows, ncols, tuple((zero,) * ncols for _ in range(nrows)))

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def take_columns(self, idx: Iterable[int]) -> "Matrix":
        idx = list(idx)
        return Matrix(self.field, self.nrows, len(idx), tuple(tuple(row[j] for j in idx) for row in self.rows))

    def prefix_columns(self, k: int) -> "Matrix":
        return self.take_columns(range(k))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows, tuple(zip(*self.rows)) if self.rows else tuple(() for _ in range(self.ncols)))

    def reverse_rows(self) -> "Matrix":
        return Matrix(self.field, self.nrows, self.ncols, tuple(reversed(self.rows)))

    def hstack(self, other: "Matrix") -> "Matrix":
        if other.nrows != self.nrows or other.field != self.field:
            raise LinAlgError("hstack shape or field mismatch")
        return Matrix(self.field, self.nrows, self.ncols + other.ncols, tuple(a + b for a, b in zip(self.rows, other.rows)))

    def mul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows or self.field != other.field:
            raise LinAlgError("matmul shape or field mismatch")
        f = self.field
        if isinstance(f, PrimeField):
            p = f.p
            bt = list(zip(*other.rows)) if other.rows else [()] * other.ncols
            out = tuple(
                tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt)
                for row in self.rows
            )
            if not self.rows:
                out = ()
            return Matrix(f, self.nrows, other.ncols, out)
        bt = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        out = tuple(
            tuple(sum((x * y for x, y in zip(row, col)), f.zero) for col in bt)
            for row in self.rows
        )
        return Matrix(f, self.nrows, other.ncols, out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return self.mul(other)

    def neg(self) -> "Matrix":
        f = self.field
        return Matrix(f, self.nrows, self.ncols, tuple(tuple(f.neg(x) for x in row) for row in self.rows))

    def is_zero(self) -> bool:
        zero = self.field.zero
        return all(x == zero for row in self.rows for x in row)

    @cached_property
    def _rref(self) -> tuple["Matrix", tuple[int, ...]]:
        f = self.field
        work = [list(row) for row in self.rows]
        if isinstance(f, PrimeField):
            red, piv = rref_mod(work, f.p)
        else:
            red, piv = rref_frac(work)
        return (
            Matrix(f, self.nrows, self.ncols, tuple(tuple(r) for r in red)),
            tuple(piv),
        )

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        return self._rref

    def rank(self) -> int:
        return len(self._rref[1])

    def kernel_basis(self) -> "Matrix":
        """Columns span the null space {x : self @ x = 0}; rank-nullity holds."""
        red, piv = self._rref
        f = self.field
        pivset = set(piv)
        free = [j for j in range(self.ncols) if j not in pivset]
        cols = []
        for j in free:
            vec = [f.zero] * self.ncols
            vec[j] = f.one
            for k, pc in enumerate(piv):
                vec[pc] = f.neg(red.rows[k][j])
            cols.append(vec)
        return Matrix.from_columns(f, cols, nrows=self.ncols)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise LinAlgError("inverse of non-square matrix")
        aug = self.hstack(Matrix.identity(self.field, self.nrows))
        red, piv = aug.rref()
        if len(piv) < self.nrows or any(pc >= self.nrows for pc in piv):
            raise LinAlgError("matrix is singular")
        return red.take_columns(range(self.nrows, 2 * self.nrows))

    def solve(self, rhs: "Matrix") -> "Matrix":
        """One exact solution X of self @ X = rhs (free variables set to 0)."""
        if rhs.nrows != self.nrows:
            raise LinAlgError("solve shape mismatch")
        aug = self.hstack(rhs)
        red, piv = aug.rref()
        if any(pc >= self.ncols for pc in piv):
            raise LinAlgError("inconsistent linear system")
        f = self.field
        out = [[f.zero] * rhs.ncols for _ in range(self.ncols)]
        for k, pc in enumerate(piv):
            for j in range(rhs.ncols):
                out[pc][j] = red.rows[k][self.ncols + j]
        return Matrix(f, self.ncols, rhs.ncols, tuple(tuple(r) for r in out))


def rank(m: Matrix) -> int:
    return m.rank()


def kernel_basis(m: Matrix) -> Matrix:
    return m.kernel_basis()


@dataclass(frozen=True)
class Subspace:
    """A subspace of field^n presented by a basis matrix (columns)."""

    basis: Matrix

    def __post_init__(self) -> None:
        if self.basis.rank() != self.basis.ncols:
            raise LinAlgError("subspace basis columns are dependent")

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def ambient_dim(self) -> int:
        return self.basis.nrows

    @property
    def dim(self) -> int:
        return self.basis.ncols

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(Matrix.zeros(field, n, 0))

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(Matrix.identity(field, n))

    def contains(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise LinAlgError("ambient dimension mismatch")
        return self.basis.hstack(other.basis).rank() == self.dim

    def coords_of(self, vectors: Matrix) -> Matrix:
        """Coordinates of `vectors` (columns, ambient coords) in this basis."""
        return self.basis.solve(vectors)


def intersect_dim(a: Subspace, b: Subspace) -> int:
    if a.ambient_dim != b.ambient_dim:
        raise LinAlgError("ambient dimension mismatch")
    return a.dim + b.dim - a.basis.hstack(b.basis).rank()


def contained_in(small: Matrix, big: Matrix) -> bool:
    """True when every column of `small` lies in the column span of `big`."""
    if small.ncols == 0:
        return True
    if big.ncols == 0:
        return small.is_zero()
    return big.hstack(small).rank() == big.rank()


@dataclass(frozen=True)
class Flag:
    """A complete flag given by an ordered basis (invertible matrix).

    Step i is the span of the first i columns.
    """

    matrix: Matrix

    def __post_init__(self) -> None:
        if not self.matrix.is_invertible():
            raise LinAlgError("flag basis must be invertible")

    @property
    def field(self) -> Field:
        return self.matrix.field

    @property
    def n(self) -> int:
        return self.matrix.nrows

    @cached_property
    def inverse(self) -> Matrix:
        return self.matrix.inverse()

    def step(self, i: int) -> Matrix:
        if not 0 <= i <= self.n:
            raise LinAlgError(f"flag step {i} outside [0, {self.n}]")
        return self.matrix.prefix_columns(i)

    def step_subspace(self, i: int) -> Subspace:
        return Subspace(self.step(i))

    @classmethod
    def standard(cls, field: Field, n: int) -> "Flag":
        return cls(Matrix.identity(field, n))


def random_matrix(field: Field, nrows: int, ncols: int, rng: Random) -> Matrix:
    return Matrix(
        field,
        nrows,
        ncols,
        tuple(tuple(field.sample(rng) for _ in range(ncols)) for _ in range(nrows)),
    )


def random_flag(field: Field, n: int, rng: Random, max_attempts: int = MAX_SAMPLE_ATTEMPTS) -> Flag:
    """Uniform invertible ordered basis; deterministic given the RNG state."""
    for _ in range(max_attempts):
        m = random_matrix(field, n, n, rng)
        if m.rank() == n:
            return Flag(m)
    raise SamplingError(f"no invertible {n}x{n} sample in {max_attempts} attempts")


def random_subspace(field: Field, n: int, d: int, rng: Random, max_attempts: int = MAX_SAMPLE_ATTEMPTS) -> Subspace:
    if not 0 <= d <= n:
        raise LinAlgError("subspace dimension outside [0, ambient]")
    for _ in range(max_attempts):
        m = random_matrix(field, n, d, rng)
        if m.rank() == d:
            return Subspace(m)
    raise SamplingError(f"no rank-{d} {n}x{d} sample in {max_attempts} attempts")


def random_nonzero_combination(columns: Matrix, rng: Random, max_attempts: int = MAX_SAMPLE_ATTEMPTS) -> Matrix:
    """A random field combination of the columns, resampled while zero."""
    field = columns.field
    if columns.ncols == 0:
        raise LinAlgError("no columns to combine")
    for _ in range(max_attempts):
        coeffs = Matrix.from_columns(field, [[field.sample(rng) for _ in range(columns.ncols)]])
        combo = columns @ coeffs
        if not combo.is_zero():
            return combo
    raise SamplingError("random combination stayed zero")
