"""Grid sweeps over sum-side conditions, sifting for periodic products.

A SearchGrid is the cartesian product of smallest-part options, difference
rule combinations, and congruence rule combinations.  Each resulting
ConditionSet is counted to the grid's order, factored into an Euler product,
and kept as a hit when the exponent sequence is purely periodic.  Output
order follows grid order, never worker completion order, so reports are
deterministic for any worker count.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .partitions import (
    ConditionSet,
    CongruenceRule,
    DiffDistRule,
    SmallestPartRule,
    count_sum_side,
)
from .products import ProductShape, detect_period, describe, symmetry_classify
from .series import euler_factorize

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class SearchGrid:
    """Cartesian product of condition options plus periodicity thresholds.

    Each diff/congruence option is itself a combination (possibly empty) of
    rules applied together; smallest options may include None for "no
    smallest-part restriction".
    """

    smallest_options: tuple[SmallestPartRule | None, ...]
    diff_options: tuple[tuple[DiffDistRule, ...], ...]
    congruence_options: tuple[tuple[CongruenceRule, ...], ...]
    order: int = 30
    p_max: int = 64
    min_repeats: int = 2

    def __post_init__(self):
        if not (self.smallest_options and self.diff_options and self.congruence_options):
            raise ValueError("every grid axis needs at least one option")
        if self.order < 1:
            raise ValueError("order must be >= 1")

    @property
    def size(self) -> int:
        return (
            len(self.smallest_options)
            * len(self.diff_options)
            * len(self.congruence_options)
        )

    def cells(self) -> list[ConditionSet]:
        """Grid-order condition sets, deduplicated by canonical serialization
        (axes can collide, e.g. an explicit Smallest(1, unbounded) equals the
        no-rule option combinatorially but not structurally; dedup is purely
        structural)."""
        seen: set[str] = set()
        out: list[ConditionSet] = []
        for sm in self.smallest_options:
            for diffs in self.diff_options:
                for congs in self.congruence_options:
                    cs = ConditionSet(smallest=sm, diffs=diffs, congruences=congs)
                    key = cs.dumps()
                    if key not in seen:
                        seen.add(key)
                        out.append(cs)
        return out

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "order": self.order,
            "p_max": self.p_max,
            "min_repeats": self.min_repeats,
            "smallest": [
                None if sm is None else sm.to_json() for sm in self.smallest_options
            ],
            "diffs": [[r.to_json() for r in combo] for combo in self.diff_options],
            "congruences": [
                [r.to_json() for r in combo] for combo in self.congruence_options
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SearchGrid":
        version = obj.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(
                f"unsupported grid schema_version {version!r} (expected {SCHEMA_VERSION})"
            )
        known = {
            "schema_version", "order", "p_max", "min_repeats",
            "smallest", "diffs", "congruences",
        }
        extra = set(obj) - known
        if extra:
            raise ValueError(f"unknown grid keys: {sorted(extra)}")
        return cls(
            smallest_options=tuple(
                None if sm is None else SmallestPartRule.from_json(sm)
                for sm in obj.get("smallest", [None])
            ),
            diff_options=tuple(
                tuple(DiffDistRule.from_json(r) for r in combo)
                for combo in obj.get("diffs", [[]])
            ),
            congruence_options=tuple(
                tuple(CongruenceRule.from_json(r) for r in combo)
                for combo in obj.get("congruences", [[]])
            ),
            order=int(obj.get("order", 30)),
            p_max=int(obj.get("p_max", 64)),
            min_repeats=int(obj.get("min_repeats", 2)),
        )


@dataclass(frozen=True)
class CandidateHit:
    """A condition set whose factored sum side has a certified period."""

    conditions: ConditionSet
    shape: ProductShape
    order_checked: int
    refined: dict | None = None

    def to_json(self) -> dict:
        binary = self.shape.binary
        obj = {
            "conditions": self.conditions.to_json(),
            "period": self.shape.period,
            "profile": list(self.shape.exponent_profile),
            "residues": sorted(self.shape.residues) if binary else None,
            "symmetric": symmetry_classify(self.shape) == "symmetric" if binary else None,
            "description": describe(self.shape),
            "order_checked": self.order_checked,
        }
        if self.refined is not None:
            obj["refined"] = self.refined
        return obj


@dataclass(frozen=True)
class CandidateReport:
    """Full sweep outcome: hits in grid order plus run metadata."""

    grid_size: int
    cells_run: int
    order: int
    p_max: int
    min_repeats: int
    hits: tuple[CandidateHit, ...]
    failures: tuple[tuple[str, str], ...]
    elapsed_ms: float

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "grid_size": self.grid_size,
            "cells_run": self.cells_run,
            "order": self.order,
            "p_max": self.p_max,
            "min_repeats": self.min_repeats,
            "hits": [h.to_json() for h in self.hits],
            "failures": [
                {"conditions": json.loads(c), "error": msg} for c, msg in self.failures
            ],
            "elapsed_ms": self.elapsed_ms,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def _sift_cell(args: tuple[str, int, int, int]):
    """Worker: count, factor, and test one cell for periodicity.

    Takes and returns plain serializable values so it can cross a process
    boundary.  Returns (shape fields | None, error | None).
    """
    conditions_json, order, p_max, min_repeats = args
    try:
        conds = ConditionSet.loads(conditions_json)
        series = count_sum_side(conds, order)
        exps = euler_factorize(series)
        shape = detect_period(exps, p_max=p_max, min_repeats=min_repeats)
        if shape is None:
            return None, None
        return (shape.period, tuple(shape.exponent_profile)), None
    except Exception as exc:  # per-cell failures must not abort the sweep
        return None, f"{type(exc).__name__}: {exc}"


def run_search(
    grid: SearchGrid, jobs: int = 1, refine_order: int | None = None
) -> CandidateReport:
    """Sweep the grid; optionally re-check every hit at a higher order.

    Cells are independent; with jobs > 1 they are distributed over a process
    pool but results are consumed in submission order, so the report is
    identical for any jobs value.  The refine pass re-runs only the hit cells
    at refine_order and records whether the period survives.
    """
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    if refine_order is not None and refine_order <= grid.order:
        raise ValueError("refine order must exceed the grid order")
    t0 = time.perf_counter()
    cells = grid.cells()
    tasks = [
        (c.dumps(), grid.order, grid.p_max, grid.min_repeats) for c in cells
    ]
    if jobs == 1:
        results = [_sift_cell(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sift_cell, tasks))

    hits: list[CandidateHit] = []
    failures: list[tuple[str, str]] = []
    for conds, (found, error) in zip(cells, results):
        if error is not None:
            failures.append((conds.dumps(), error))
        elif found is not None:
            period, profile = found
            hits.append(
                CandidateHit(conds, ProductShape(period, profile), grid.order)
            )

    if refine_order is not None and hits:
        refine_tasks = [
            (h.conditions.dumps(), refine_order, grid.p_max, grid.min_repeats)
            for h in hits
        ]
        if jobs == 1:
            refined = [_sift_cell(t) for t in refine_tasks]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                refined = list(pool.map(_sift_cell, refine_tasks))
        updated: list[CandidateHit] = []
        for hit, (found, error) in zip(hits, refined):
            if error is not None:
                info = {"order": refine_order, "persisted": False, "error": error}
            elif found is None:
                info = {"order": refine_order, "persisted": False}
            else:
                period, profile = found
                info = {
                    "order": refine_order,
                    "persisted": ProductShape(period, profile) == hit.shape,
                    "period": period,
                    "profile": list(profile),
                }
            updated.append(
                CandidateHit(hit.conditions, hit.shape, hit.order_checked, info)
            )
        hits = updated

    elapsed = (time.perf_counter() - t0) * 1000.0
    return CandidateReport(
        grid_size=grid.size,
        cells_run=len(cells),
        order=grid.order,
        p_max=grid.p_max,
        min_repeats=grid.min_repeats,
        hits=tuple(hits),
        failures=tuple(failures),
        elapsed_ms=elapsed,
    )
