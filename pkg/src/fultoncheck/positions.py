"""Schubert positions of subspaces and induced flags on sub and quotient.

The position of a d-dimensional V with respect to a complete flag E is the
set of levels u where dim(V ∩ E_u) jumps. Induced flags come with explicit
coordinates: on V, an ordered basis adapted to the jump levels, expressed in
V's own basis; on W/V, the images of the non-jump flag vectors, expressed in
a fixed complement basis chosen once per call.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Flag, LinAlgError, Matrix, Subspace
from .partitions import IndexSet


def _bottom_pivot_profile(c: Matrix) -> list[tuple[int, tuple]]:
    """Column-reduce `c` so the lowest nonzero rows are distinct.

    Returns pairs (lowest_row_1based, coefficient_vector) sorted by level;
    the coefficient vectors express the reduced columns in the original
    columns and form an invertible transformation.
    """
    n, r = c.nrows, c.ncols
    if r == 0:
        return []
    flipped = c.reverse_rows().transpose()  # r x n
    aug = flipped.hstack(Matrix.identity(c.field, r))
    red, piv = aug.rref()
    if len(piv) != r or any(q >= n for q in piv):
        raise LinAlgError("subspace coordinates are rank deficient")
    items = []
    for k, q in enumerate(piv):
        coeff = red.rows[k][n:]
        items.append((n - q, coeff))
    items.sort(key=lambda t: t[0])
    return items


def schubert_position(v: Subspace, e: Flag) -> IndexSet:
    """Jump levels of dim(V ∩ E_u), as a size-dim(V) subset of [1, n]."""
    if v.ambient_dim != e.n:
        raise LinAlgError("subspace and flag ambient dimensions differ")
    coords = e.inverse @ v.basis
    items = _bottom_pivot_profile(coords)
    return IndexSet(e.n, tuple(level for level, _ in items))


def induced_flag_sub(e: Flag, v: Subspace) -> Flag:
    """The flag E_a(V) = E_{i_a} ∩ V on V, in the coordinates of V's basis.

    Column a of the result is the a-th adapted jump vector.
    """
    if v.ambient_dim != e.n:
        raise LinAlgError("subspace and flag ambient dimensions differ")
    coords = e.inverse @ v.basis
    items = _bottom_pivot_profile(coords)
    cols = [coeff for _, coeff in items]
    return Flag(Matrix.from_columns(v.field, cols, nrows=v.dim))


def _complement_columns(basis: Matrix) -> list[int]:
    """Standard basis vectors completing the columns of `basis`, greedily."""
    n = basis.nrows
    aug = basis.hstack(Matrix.identity(basis.field, n))
    _, piv = aug.rref()
    d = basis.ncols
    chosen = [q - d for q in piv if q >= d]
    if len(chosen) != n - d:
        raise LinAlgError("complement completion failed")
    return chosen


def quotient_map(v: Subspace) -> tuple[Matrix, Matrix]:
    """A projection P: ambient -> W/V in complement coordinates.

    Returns (P, C) where C's columns are the chosen complement basis and
    P @ v.basis = 0, P @ C = identity.
    """
    n, d = v.ambient_dim, v.dim
    field = v.field
    chosen = _complement_columns(v.basis)
    comp_cols = []
    for c in chosen:
        col = [field.zero] * n
        col[c] = field.one
        comp_cols.append(col)
    comp = Matrix.from_columns(field, comp_cols, nrows=n)
    full = v.basis.hstack(comp)
    inv = full.inverse()
    proj = Matrix(field, n - d, n, inv.rows[d:])
    return proj, comp


def induced_flag_quot(e: Flag, v: Subspace) -> Flag:
    """The flag E_b(W/V) = image of E_{alpha(b)} on W/V, alpha = [n] \\ I."""
    flag, _, _ = induced_flag_quot_with_map(e, v)
    return flag


def induced_flag_quot_with_map(e: Flag, v: Subspace) -> tuple[Flag, Matrix, Matrix]:
    if v.ambient_dim != e.n:
        raise LinAlgError("subspace and flag ambient dimensions differ")
    proj, comp = quotient_map(v)
    alpha = schubert_position(v, e).complement().elements
    cols = e.matrix.take_columns([a - 1 for a in alpha])
    return Flag(proj @ cols), proj, comp


def falcon_compose(i_set: IndexSet, k_set: IndexSet) -> IndexSet:
    """Position of S in W from the position I of V in W and the position K of
    S in V relative to the induced flag: L = {i_a : a in K}."""
    if k_set.n != i_set.r:
        raise ValueError("inner position must index the outer subspace dimensions")
    return IndexSet(i_set.n, tuple(i_set.elements[a - 1] for a in k_set.elements))


def dim_triple(positions: tuple[IndexSet, ...] | list[IndexSet]) -> int:
    """Expected dimension dim Gr(d, r) - sum of codims for a position tuple."""
    positions = tuple(positions)
    if not positions:
        raise ValueError("need at least one position")
    r = positions[0].n
    d = positions[0].r
    for k in positions:
        if k.n != r or k.r != d:
            raise ValueError("position tuple is not uniform")
    return d * (r - d) - sum(k.codim() for k in positions)


def rappel_delta(i_sets: tuple[IndexSet, ...], k_sets: tuple[IndexSet, ...]) -> int:
    """Exact difference dim(S,V,E(V)) - dim(S,W,E) for the position data:
    sum over j and a in K^j of (n - r + a - i^j_a), minus d(n - r)."""
    if len(i_sets) != len(k_sets):
        raise ValueError("position tuples differ in length")
    if not i_sets:
        raise ValueError("need at least one condition")
    n = i_sets[0].n
    r = i_sets[0].r
    d = k_sets[0].r
    total = 0
    for i_set, k_set in zip(i_sets, k_sets):
        if i_set.n != n or i_set.r != r or k_set.n != r or k_set.r != d:
            raise ValueError("position tuple shapes are inconsistent")
        for a in k_set.elements:
            total += n - r + a - i_set.elements[a - 1]
    return total - d * (n - r)


@dataclass(frozen=True)
class FlaggedSpace:
    """A vector space of dimension `dim` carrying s complete flags, all in the
    space's own coordinates."""

    dim: int
    flags: tuple[Flag, ...]

    def __post_init__(self) -> None:
        for f in self.flags:
            if f.n != self.dim:
                raise LinAlgError("flag dimension does not match the space")

    @property
    def s(self) -> int:
        return len(self.flags)


def positions_in(space: FlaggedSpace, basis: Matrix) -> tuple[IndexSet, ...]:
    v = Subspace(basis)
    return tuple(schubert_position(v, f) for f in space.flags)


def restrict_flagged(space: FlaggedSpace, basis: Matrix) -> FlaggedSpace:
    """Induced flags on the subspace spanned by `basis` (its columns become
    the coordinate system of the restricted space)."""
    v = Subspace(basis)
    return FlaggedSpace(basis.ncols, tuple(induced_flag_sub(f, v) for f in space.flags))


def quotient_flagged(space: FlaggedSpace, basis: Matrix) -> tuple[FlaggedSpace, Matrix, Matrix]:
    """Induced flags on the quotient by span(basis); returns (quotient space, projection,
    complement basis), with the projection written in complement coordinates."""
    v = Subspace(basis)
    proj, comp = quotient_map(v)
    flags = []
    for f in space.flags:
        alpha = schubert_position(v, f).complement().elements
        cols = f.matrix.take_columns([a - 1 for a in alpha])
        flags.append(Flag(proj @ cols))
    return FlaggedSpace(space.dim - basis.ncols, tuple(flags)), proj, comp
