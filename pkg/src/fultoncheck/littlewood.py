"""Littlewood-Richardson coefficients by two independent routes.

`lr_coefficient` enumerates LR skew tableaux of shape lambda/mu with content
nu (semistandard filling whose reverse reading word is a lattice word). A
filling is encoded by the count of each value in each row, which determines
it uniquely because rows are weakly increasing; column strictness and the
lattice condition become linear inequalities on those counts, checked
incrementally during the enumeration.

`lr_coefficient_pieri` is the audit oracle: it expands the second factor
through one-row (complete homogeneous) classes with the alternating-sum
correction over the h-expansion of a Schur class, so it shares no code with
the tableau path beyond the Partition type.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .partitions import Partition


def _tableau_count(lam: tuple[int, ...], mu: tuple[int, ...], nu: tuple[int, ...]) -> int:
    nrows = len(lam)
    mu = mu + (0,) * (nrows - len(mu))
    nvals = len(nu)
    if nvals == 0:
        return 1 if sum(lam) == sum(mu) else 0

    count = 0
    # tot[t]: copies of value t+1 placed in earlier rows; prev_cum[t]: entries
    # <= t+1 in the previous row.
    def fill_row(i: int, tot: tuple[int, ...], prev_cum: tuple[int, ...]) -> None:
        nonlocal count
        if i == nrows:
            count += 1
            return
        row_len = lam[i] - mu[i]
        indent = mu[i - 1] - mu[i] if i > 0 else None

        def choose(t: int, cum: int, placed: list[int]) -> None:
            nonlocal count
            if t == nvals:
                if cum == row_len:
                    new_tot = tuple(a + b for a, b in zip(tot, placed))
                    new_cum = []
                    acc = 0
                    for b in placed:
                        acc += b
                        new_cum.append(acc)
                    fill_row(i + 1, new_tot, tuple(new_cum))
                return
            ub = min(nu[t] - tot[t], row_len - cum)
            if i > 0:
                above = prev_cum[t - 1] if t > 0 else 0
                ub = min(ub, indent + above - cum)
            if t > 0:
                # Lattice word: within a row the larger value is read first,
                # so copies of t+1 here are bounded by copies of t in strictly
                # earlier rows.
                ub = min(ub, tot[t - 1] - tot[t])
            if ub < 0:
                return
            for m in range(ub, -1, -1):
                placed.append(m)
                choose(t + 1, cum + m, placed)
                placed.pop()

        choose(0, 0, [])

    fill_row(0, (0,) * nvals, ())
    return count


@lru_cache(maxsize=None)
def _lr(lam: tuple[int, ...], mu: tuple[int, ...], nu: tuple[int, ...]) -> int:
    return _tableau_count(lam, mu, nu)


def lr_coefficient(mu: Partition, nu: Partition, lam: Partition) -> int:
    """Multiplicity of the lambda class in the product of the mu and nu classes."""
    lam_t = lam.trimmed()
    mu_t = mu.trimmed()
    nu_t = nu.trimmed()
    if lam_t.size != mu_t.size + nu_t.size:
        return 0
    if not (lam_t.contains(mu_t) and lam_t.contains(nu_t)):
        return 0
    return _lr(lam_t.parts, mu_t.parts, nu_t.parts)


def _horizontal_strip_additions(kappa: tuple[int, ...], size: int, within: tuple[int, ...]):
    """Partitions tau ⊆ within with tau/kappa a horizontal strip of `size` boxes."""
    nrows = len(within)
    if len(kappa) > nrows:
        return

    def rec(i: int, remaining: int, prev_tau: int, prev_kappa: int, acc: tuple[int, ...]):
        if i == nrows:
            if remaining == 0:
                yield acc
            return
        k_i = kappa[i] if i < len(kappa) else 0
        lo = k_i
        hi = min(within[i], prev_tau, k_i + remaining, prev_kappa if i > 0 else within[i])
        # horizontal strip: tau_i <= kappa_{i-1}; partition: tau_i <= tau_{i-1}
        for tau_i in range(lo, hi + 1):
            yield from rec(i + 1, remaining - (tau_i - k_i), tau_i, k_i, acc + (tau_i,))

    yield from rec(0, size, within[0] if within else 0, 0, ())


def _perm_sign(perm: tuple[int, ...]) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def lr_coefficient_pieri(mu: Partition, nu: Partition, lam: Partition) -> int:
    """Audit oracle for `lr_coefficient` via iterated one-row expansions."""
    lam_t = lam.trimmed().parts
    mu_t = mu.trimmed().parts
    nu_t = nu.trimmed().parts
    if sum(lam_t) != sum(mu_t) + sum(nu_t):
        return 0
    k = len(nu_t)
    total = 0
    for perm in permutations(range(k)):
        sizes = [nu_t[i] + perm[i] - i for i in range(k)]
        if any(sz < 0 for sz in sizes):
            continue
        cur: dict[tuple[int, ...], int] = {mu_t: 1}
        for sz in sizes:
            nxt: dict[tuple[int, ...], int] = {}
            for kappa, c in cur.items():
                for tau in _horizontal_strip_additions(kappa, sz, lam_t):
                    tau_trim = tau
                    while tau_trim and tau_trim[-1] == 0:
                        tau_trim = tau_trim[:-1]
                    nxt[tau_trim] = nxt.get(tau_trim, 0) + c
            cur = nxt
            if not cur:
                break
        total += _perm_sign(perm) * cur.get(lam_t, 0)
    return total
