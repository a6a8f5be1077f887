"""Verification sweeps over families of coefficient and intersection problems.

Each sweep enumerates a deterministic list of instances, checks one property
per instance, and assembles a report.  Randomness is derived per instance from
the master seed via a keyed hash, so sweeps can be checkpointed and resumed
with byte-identical results: restarting at instance k draws exactly the same
random streams as an uninterrupted run.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import time
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Callable, Iterator

from .cohomology import intersection_number, nonvanishing_positions
from .field import Field, field_from_name
from .filtration import run_filtration_random, trace_to_dict, verify_trace
from .homspace import DEFAULT_TRIALS, generic_hom_dim
from .littlewood import lr_coefficient as _lr_tableau
from .partitions import (
    IndexSet,
    Partition,
    SchubertProblem,
    all_index_sets,
    partitions_with,
)
from .reports import make_report
from .semistability import ParabolicWeights, clincher, find_violations

# Module-level reference so tests can substitute a deliberately corrupted
# coefficient routine and watch the sweep catch it.
lr_coefficient = _lr_tableau

DEFAULT_SEED = 1
CHECKPOINT_EVERY = 10_000


class ConfigError(ValueError):
    """A sweep configuration failed validation."""


@dataclass(frozen=True)
class SweepConfig:
    """Shared knobs for every sweep command."""

    r_max: int = 2
    size_max: int = 6
    n_list: tuple[int, ...] = (2,)
    n_max: int = 5
    s_max: int = 3
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    field_name: str = "prime"
    checkpoint: str | None = None

    def validate(self) -> None:
        if self.r_max < 1:
            raise ConfigError("r_max must be at least 1")
        if self.size_max < 0:
            raise ConfigError("size_max must be nonnegative")
        if not self.n_list:
            raise ConfigError("n_list must not be empty")
        if any(n < 1 for n in self.n_list):
            raise ConfigError("every scaling factor in n_list must be at least 1")
        if self.n_max < 2:
            raise ConfigError("n_max must be at least 2")
        if self.s_max < 1:
            raise ConfigError("s_max must be at least 1")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        try:
            field_from_name(self.field_name)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def as_dict(self) -> dict:
        return {
            "r_max": self.r_max,
            "size_max": self.size_max,
            "n_list": list(self.n_list),
            "n_max": self.n_max,
            "s_max": self.s_max,
            "seed": self.seed,
            "trials": self.trials,
            "field": self.field_name,
        }

    def field(self) -> Field:
        return field_from_name(self.field_name)


def derive_seed(master: int, part: str) -> int:
    """Derive an independent 64-bit seed for one named part of a sweep."""
    digest = hashlib.blake2b(f"{master}:{part}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def rng_for(master: int, part: str) -> random.Random:
    """A fresh generator seeded deterministically from (master, part)."""
    return random.Random(derive_seed(master, part))


# ---------------------------------------------------------------------------
# Instance enumeration
# ---------------------------------------------------------------------------


def enumerate_triples(
    r_max: int, size_max: int
) -> Iterator[tuple[Partition, Partition, Partition]]:
    """All (mu, nu, lam) with at most r_max rows, |mu|+|nu| = |lam| <= size_max.

    Ordered by total size, then |mu|, then the descending-lex order of the
    individual partitions, so the sequence is stable across runs.
    """
    for total in range(size_max + 1):
        for mu_size in range(total + 1):
            nu_size = total - mu_size
            for mu in partitions_with(mu_size, r_max):
                for nu in partitions_with(nu_size, r_max):
                    for lam in partitions_with(total, r_max):
                        yield (mu, nu, lam)


def enumerate_problems(
    r_max: int, n_max: int, s_max: int
) -> Iterator[SchubertProblem]:
    """All expected-dimension-zero problems in the given ranges.

    Requires 1 <= r < n (both the subspace and the quotient are nonzero) and
    total codimension exactly r*(n-r).  Condition lists are enumerated as
    multisets: the quantities checked downstream are invariant under
    permuting the conditions.
    """
    for n in range(2, n_max + 1):
        for r in range(1, min(r_max, n - 1) + 1):
            sets = all_index_sets(n, r)
            target = r * (n - r)
            for s in range(1, s_max + 1):
                for combo in combinations_with_replacement(sets, s):
                    if sum(ix.codim() for ix in combo) == target:
                        yield SchubertProblem(n, r, tuple(combo))


# ---------------------------------------------------------------------------
# Checkpointed sweep driver
# ---------------------------------------------------------------------------


def _config_fingerprint(command: str, cfg: SweepConfig) -> str:
    payload = {"command": command, **cfg.as_dict()}
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.blake2b(blob, digest_size=16).hexdigest()


def _write_checkpoint(path: str, data: dict) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(data, fh, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)


def _run_sweep(
    command: str,
    cfg: SweepConfig,
    items: list,
    check: Callable[[int, object, dict], list[dict]],
    state: dict,
) -> tuple[int, int, list[dict], dict]:
    """Run `check` over `items` with optional checkpoint/resume.

    `check(index, item, state)` returns the counterexample records for that
    instance (empty when it passes) and may update `state` (JSON-plain
    counters that the report's `extra` section is built from).  Returns
    (instances, failures, counterexamples, state).
    """
    fingerprint = _config_fingerprint(command, cfg)
    start_index = 0
    failures = 0
    counterexamples: list[dict] = []

    if cfg.checkpoint and os.path.exists(cfg.checkpoint):
        with open(cfg.checkpoint, "r", encoding="utf-8") as fh:
            saved = json.load(fh)
        if saved.get("fingerprint") == fingerprint:
            start_index = saved["next_index"]
            failures = saved["failures"]
            counterexamples = saved["counterexamples"]
            state = saved["state"]

    for index in range(start_index, len(items)):
        records = check(index, items[index], state)
        if records:
            failures += 1
            counterexamples.extend(records)
        done = index + 1
        if cfg.checkpoint and done % CHECKPOINT_EVERY == 0:
            _write_checkpoint(
                cfg.checkpoint,
                {
                    "fingerprint": fingerprint,
                    "command": command,
                    "next_index": done,
                    "failures": failures,
                    "counterexamples": counterexamples,
                    "state": state,
                },
            )

    if cfg.checkpoint:
        _write_checkpoint(
            cfg.checkpoint,
            {
                "fingerprint": fingerprint,
                "command": command,
                "next_index": len(items),
                "failures": failures,
                "counterexamples": counterexamples,
                "state": state,
            },
        )

    return len(items), failures, counterexamples, state


def _finish(
    command: str,
    cfg: SweepConfig,
    seed_source: str,
    instances: int,
    failures: int,
    counterexamples: list[dict],
    extra: dict,
    started: float,
) -> dict:
    return make_report(
        command=command,
        config=cfg.as_dict(),
        field_name=cfg.field_name,
        seed=cfg.seed,
        seed_source=seed_source,
        instances=instances,
        failures=failures,
        counterexamples=counterexamples,
        extra=extra,
        wall_time_s=time.perf_counter() - started,
    )


# ---------------------------------------------------------------------------
# Sweep commands
# ---------------------------------------------------------------------------


def cmd_fulton(cfg: SweepConfig, seed_source: str = "flag") -> dict:
    """Check that a coefficient equals one iff all its scalings equal one."""
    cfg.validate()
    started = time.perf_counter()
    items = list(enumerate_triples(cfg.r_max, cfg.size_max))

    def check(index: int, item, state: dict) -> list[dict]:
        mu, nu, lam = item
        c = lr_coefficient(mu, nu, lam)
        records = []
        for factor in cfg.n_list:
            scaled = lr_coefficient(
                mu.scale(factor), nu.scale(factor), lam.scale(factor)
            )
            if (c == 1) != (scaled == 1):
                records.append(
                    {
                        "kind": "multiplicity_one_not_preserved",
                        "index": index,
                        "mu": mu.text(),
                        "nu": nu.text(),
                        "lam": lam.text(),
                        "scaling": factor,
                        "coefficient": c,
                        "coefficient_scaled": scaled,
                    }
                )
        return records

    instances, failures, cxs, state = _run_sweep(command := "fulton", cfg, items, check, {})
    extra = {"triples": instances, "scalings": list(cfg.n_list)}
    return _finish(command, cfg, seed_source, instances, failures, cxs, extra, started)


def cmd_saturation(cfg: SweepConfig, seed_source: str = "flag") -> dict:
    """Check that a coefficient vanishes iff all its scalings vanish."""
    cfg.validate()
    started = time.perf_counter()
    items = list(enumerate_triples(cfg.r_max, cfg.size_max))

    def check(index: int, item, state: dict) -> list[dict]:
        mu, nu, lam = item
        c = lr_coefficient(mu, nu, lam)
        records = []
        for factor in cfg.n_list:
            scaled = lr_coefficient(
                mu.scale(factor), nu.scale(factor), lam.scale(factor)
            )
            if (c == 0) != (scaled == 0):
                records.append(
                    {
                        "kind": "vanishing_not_preserved",
                        "index": index,
                        "mu": mu.text(),
                        "nu": nu.text(),
                        "lam": lam.text(),
                        "scaling": factor,
                        "coefficient": c,
                        "coefficient_scaled": scaled,
                    }
                )
        return records

    instances, failures, cxs, state = _run_sweep(command := "saturation", cfg, items, check, {})
    extra = {"triples": instances, "scalings": list(cfg.n_list)}
    return _finish(command, cfg, seed_source, instances, failures, cxs, extra, started)


def cmd_crosscheck(cfg: SweepConfig, seed_source: str = "flag") -> dict:
    """Cross-validate combinatorial counts against generic linear algebra.

    For every expected-dimension-zero problem in range: the intersection
    number is positive iff the generic map-space dimension is zero.  Whenever
    the map space is nonzero, additionally run the kernel filtration and audit
    the resulting trace.
    """
    cfg.validate()
    started = time.perf_counter()
    fld = cfg.field()
    items = list(enumerate_problems(cfg.r_max, cfg.n_max, cfg.s_max))
    state = {"with_maps": 0, "traces_audited": 0, "intersection_positive": 0}

    def check(index: int, problem: SchubertProblem, state: dict) -> list[dict]:
        records = []
        number = intersection_number(problem)
        if number > 0:
            state["intersection_positive"] += 1
        result = generic_hom_dim(
            problem,
            rng_for(cfg.seed, f"hom:{problem.text()}"),
            fld,
            trials=cfg.trials,
        )
        if (number > 0) != (result.dim == 0):
            records.append(
                {
                    "kind": "count_rank_mismatch",
                    "index": index,
                    "problem": problem.text(),
                    "intersection_number": number,
                    "generic_hom_dim": result.dim,
                    "samples": result.samples,
                }
            )
        if result.dim > 0:
            state["with_maps"] += 1
            trace = run_filtration_random(
                problem,
                rng_for(cfg.seed, f"trace:{problem.text()}"),
                fld,
                trials=cfg.trials,
                seed=cfg.seed,
            )
            audit = verify_trace(trace)
            state["traces_audited"] += 1
            if not audit.ok:
                records.append(
                    {
                        "kind": "trace_audit_failed",
                        "index": index,
                        "problem": problem.text(),
                        "failed_checks": [k for k, v in audit.checks.items() if not v],
                        "trace": trace_to_dict(trace, audit),
                    }
                )
        return records

    instances, failures, cxs, state = _run_sweep(command := "crosscheck", cfg, items, check, state)
    extra = {"problems": instances, **state}
    return _finish(command, cfg, seed_source, instances, failures, cxs, extra, started)


def cmd_semistable(cfg: SweepConfig, seed_source: str = "flag") -> dict:
    """Check semistability of the natural weights on solvable problems.

    For every expected-dimension-zero problem in range with positive
    intersection number: the parabolic weights read off from the conditions
    are generically semistable, every candidate subspace position has
    nonpositive clincher value, and the two statements agree with each other.
    """
    cfg.validate()
    started = time.perf_counter()
    items = [
        problem
        for problem in enumerate_problems(cfg.r_max, cfg.n_max, cfg.s_max)
        if intersection_number(problem) > 0
    ]
    state = {"max_clincher": None}

    def check(index: int, problem: SchubertProblem, state: dict) -> list[dict]:
        records = []
        weights = ParabolicWeights.from_problem(problem)
        violations = find_violations(weights)
        values: list[tuple[int, tuple[str, ...], int]] = []
        for d in range(1, problem.r - 1 + 1):
            for positions in nonvanishing_positions(d, problem.r, problem.s):
                value = clincher(problem, positions)
                values.append((d, tuple(k.text() for k in positions), value))
        if values:
            worst = max(v for _, _, v in values)
            if state["max_clincher"] is None or worst > state["max_clincher"]:
                state["max_clincher"] = worst
        if violations:
            v = violations[0]
            records.append(
                {
                    "kind": "not_semistable",
                    "index": index,
                    "problem": problem.text(),
                    "d": v.d,
                    "positions": [k.text() for k in v.positions],
                    "slope_sub": str(v.slope_sub),
                    "slope_total": str(v.slope_total),
                }
            )
        for d, positions, value in values:
            if value > 0:
                records.append(
                    {
                        "kind": "positive_clincher",
                        "index": index,
                        "problem": problem.text(),
                        "d": d,
                        "positions": list(positions),
                        "value": value,
                    }
                )
        clinchers_ok = all(v <= 0 for _, _, v in values)
        if clinchers_ok != (not violations):
            records.append(
                {
                    "kind": "slope_clincher_disagreement",
                    "index": index,
                    "problem": problem.text(),
                    "semistable": not violations,
                    "all_clinchers_nonpositive": clinchers_ok,
                }
            )
        return records

    instances, failures, cxs, state = _run_sweep(command := "semistable", cfg, items, check, state)
    extra = {"problems": instances, **state}
    return _finish(command, cfg, seed_source, instances, failures, cxs, extra, started)
