"""The linear system cutting out constrained map spaces between flagged spaces.

For a problem with positions I^1..I^s (r-subsets of [1, n]), flags F^j on an
r-dimensional space V and G^j on an (n-r)-dimensional space Q, the space of
interest is

    {phi: V -> Q  such that  phi(F^j_a) subseteq G^j_{i^j_a - a}  for all j, a}.

Maps are stored as quot_dim x sub_dim matrices acting on column vectors in the
sub space's coordinates. Because i^j_a - a is weakly increasing in a, the
nested step conditions reduce to one condition per flag generator, giving
exactly sum_j codim(I^j) constraint rows; the dimension of the solution space
is therefore always at least the expected dimension of the problem.

Generic dimensions are estimated by sampling random flag tuples and taking the
minimum (kernel dimension is upper-semicontinuous, so every sample is an upper
bound attained generically).
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Callable

from .field import Field
from .linalg import Flag, Matrix, contained_in, random_flag, random_nonzero_combination
from .partitions import SchubertProblem

DEFAULT_TRIALS = 3
MAX_TOTAL_TRIALS = 10


class HomAuditError(RuntimeError):
    """A solved map failed direct re-verification of a step containment."""


class GenericityError(RuntimeError):
    """Sampled dimensions never stabilized; the generic value is undecided."""


@dataclass(frozen=True)
class HomSystem:
    """The assembled constraint system and its exact solution space."""

    problem: SchubertProblem
    field: Field
    sub_flags: tuple[Flag, ...]
    quot_flags: tuple[Flag, ...]
    matrix: Matrix  # constraint rows over vec(phi), index u * sub_dim + v
    rank: int
    dim: int
    kernel: Matrix  # columns are vec'd basis solutions

    @property
    def sub_dim(self) -> int:
        return self.problem.r

    @property
    def quot_dim(self) -> int:
        return self.problem.n - self.problem.r

    def solution(self, k: int) -> Matrix:
        """The k-th kernel basis vector reshaped to a quot_dim x sub_dim map."""
        return unvec(self.kernel.column(k), self.quot_dim, self.sub_dim, self.field)

    def solutions(self) -> list[Matrix]:
        return [self.solution(k) for k in range(self.dim)]


def unvec(entries, quot_dim: int, sub_dim: int, field: Field) -> Matrix:
    entries = list(entries)
    if len(entries) != quot_dim * sub_dim:
        raise ValueError("vectorized map has the wrong length")
    rows = tuple(
        tuple(entries[u * sub_dim + v] for v in range(sub_dim)) for u in range(quot_dim)
    )
    return Matrix(field, quot_dim, sub_dim, rows)


def build_system(
    problem: SchubertProblem,
    sub_flags: tuple[Flag, ...],
    quot_flags: tuple[Flag, ...],
    audit: bool = True,
) -> HomSystem:
    """Assemble and solve the constraint system at the given flags.

    One row per (condition j, flag generator a, missing quotient coordinate t):
    the a-th flag vector f^j_a must map into the span of the first i^j_a - a
    quotient flag vectors, i.e. its coordinates t >= i^j_a - a in the G^j basis
    vanish. Rows are emitted in (j, a, t) order for determinism.
    """
    r = problem.r
    m = problem.n - problem.r
    s = problem.s
    if len(sub_flags) != s or len(quot_flags) != s:
        raise ValueError("flag tuple length does not match the number of conditions")
    if s == 0:
        raise ValueError("need at least one condition")
    field = sub_flags[0].matrix.field
    for f in sub_flags:
        if f.n != r or f.matrix.field != field:
            raise ValueError("sub flag has wrong dimension or field")
    for g in quot_flags:
        if g.n != m or g.matrix.field != field:
            raise ValueError("quotient flag has wrong dimension or field")

    ncols = m * r
    rows: list[tuple] = []
    for j in range(s):
        i_set = problem.index_sets[j].elements
        d_inv = quot_flags[j].inverse  # coordinates in the G^j basis
        f_mat = sub_flags[j].matrix
        for a in range(1, r + 1):
            level = i_set[a - 1] - a  # allowed quotient step for this generator
            f_col = [f_mat.rows[v][a - 1] for v in range(r)]
            for t in range(level, m):
                row = [field.zero] * ncols
                for u in range(m):
                    du = d_inv.rows[t][u]
                    if du == field.zero:
                        continue
                    for v in range(r):
                        row[u * r + v] = field.add(row[u * r + v], field.mul(du, f_col[v]))
                rows.append(tuple(row))

    matrix = Matrix(field, len(rows), ncols, tuple(rows))
    rank = matrix.rank()
    kernel = matrix.kernel_basis()
    system = HomSystem(
        problem=problem,
        field=field,
        sub_flags=sub_flags,
        quot_flags=quot_flags,
        matrix=matrix,
        rank=rank,
        dim=ncols - rank,
        kernel=kernel,
    )
    if audit:
        audit_system(system)
    return system


def audit_system(system: HomSystem) -> None:
    """Re-verify every solved map against every step containment directly.

    This route never looks at the constraint rows: it compares column spans,
    so it independently checks the row construction and the solver.
    """
    r, m = system.sub_dim, system.quot_dim
    for phi in system.solutions():
        for j in range(system.problem.s):
            i_set = system.problem.index_sets[j].elements
            f_mat = system.sub_flags[j].matrix
            g_mat = system.quot_flags[j].matrix
            for a in range(1, r + 1):
                level = min(i_set[a - 1] - a, m)
                image = phi @ f_mat.prefix_columns(a)
                if not contained_in(image, g_mat.prefix_columns(level)):
                    raise HomAuditError(
                        f"solved map violates condition j={j + 1}, a={a} "
                        f"for problem {system.problem.text()}"
                    )


def sample_generic(system: HomSystem, rng: Random) -> Matrix:
    """A random nonzero element of the solution space, as a map matrix."""
    if system.dim == 0:
        raise ValueError("the solution space is zero; nothing to sample")
    combo = random_nonzero_combination(system.kernel, rng)
    return unvec(
        (combo.rows[i][0] for i in range(combo.nrows)),
        system.quot_dim,
        system.sub_dim,
        system.field,
    )


@dataclass(frozen=True)
class GenericDimResult:
    dim: int
    agreed: bool  # True when the first `trials` samples already coincided
    samples: tuple[int, ...]


def stabilized_min(
    draw: Callable[[], int],
    trials: int,
    context: str,
    max_total: int = MAX_TOTAL_TRIALS,
) -> GenericDimResult:
    """Sample integer dimensions until the generic (minimal) value stabilizes.

    Accepts when the most recent `trials` samples all equal the running
    minimum. The first `trials` samples agreeing is the normal case; any
    disagreement triggers fresh samples up to `max_total`, after which a hard
    error names the instance rather than letting an unstable value through.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    samples: list[int] = []
    for k in range(max_total):
        samples.append(draw())
        if len(samples) >= trials:
            tail = samples[-trials:]
            if all(x == tail[0] for x in tail) and tail[0] == min(samples):
                return GenericDimResult(
                    dim=tail[0],
                    agreed=len(samples) == trials,
                    samples=tuple(samples),
                )
    raise GenericityError(f"dimension samples never stabilized for {context}: {samples}")


def random_flag_tuples(
    problem: SchubertProblem, rng: Random, field: Field
) -> tuple[tuple[Flag, ...], tuple[Flag, ...]]:
    """Independent uniform flag tuples on the sub and quotient model spaces."""
    r = problem.r
    m = problem.n - problem.r
    subs = tuple(random_flag(field, r, rng) for _ in range(problem.s))
    quots = tuple(random_flag(field, m, rng) for _ in range(problem.s))
    return subs, quots


def generic_hom_dim(
    problem: SchubertProblem,
    rng: Random,
    field: Field,
    trials: int = DEFAULT_TRIALS,
) -> GenericDimResult:
    """Dimension of the constrained map space at generic flags.

    Each sample draws fresh random flag tuples and solves the system exactly;
    the generic value is the stabilized minimum across samples.
    """

    def draw() -> int:
        subs, quots = random_flag_tuples(problem, rng, field)
        return build_system(problem, subs, quots, audit=False).dim

    return stabilized_min(draw, trials, context=f"problem {problem.text()}")
