"""Contraction-style condition checkers over explicit pair samples.

All comparisons are strict and use exact float comparison: a tie is a
violation. Each report records the sample provenance and the smallest
rhs - lhs margin so near-ties are visible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError
from .fclass import AlteringDistance
from .fspace import AnalyticSpace, FiniteSpace
from .reports import ConditionReport
from .solver import apply_map, orbit


@dataclass(frozen=True)
class PairSample:
    """Point pairs to check, with a provenance string for reproduction."""

    pairs: tuple
    source: str

    def __len__(self) -> int:
        return len(self.pairs)


def random_pairs(space, count: int, seed: int) -> PairSample:
    """Seeded uniform sample of distinct-point pairs."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    pairs = []
    if isinstance(space, FiniteSpace) or getattr(space, "enumerator", None) is not None:
        pts = space.points()
        if len(pts) < 2:
            raise DomainError("need at least two carrier points to form pairs")
        while len(pairs) < count:
            i, j = rng.integers(0, len(pts), size=2)
            if i != j:
                pairs.append((pts[int(i)], pts[int(j)]))
    elif isinstance(space, AnalyticSpace) and space.bounds is not None:
        lo, hi = space.bounds
        while len(pairs) < count:
            x, y = rng.uniform(lo, hi, size=2)
            if x != y:
                pairs.append((float(x), float(y)))
    else:
        raise DomainError("cannot sample this space: no enumeration and no bounds")
    return PairSample(tuple(pairs), f"random(seed={seed}, count={count})")


def grid_pairs(space, count: int) -> PairSample:
    """Deterministic unseeded sample: the first `count` pairs in order.

    Finite carriers pair up in label-index order, so early labels are
    always exercised; real intervals use an evenly spaced grid just
    large enough to supply `count` pairs.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if isinstance(space, FiniteSpace) or getattr(space, "enumerator", None) is not None:
        pts = space.points()
        if len(pts) < 2:
            raise DomainError("need at least two carrier points to form pairs")
        src = f"grid(first {count} index pairs)"
    else:
        if not (isinstance(space, AnalyticSpace) and space.bounds is not None):
            raise DomainError("cannot sample this space: no enumeration and no bounds")
        lo, hi = space.bounds
        m = max(2, math.ceil((1 + math.sqrt(1 + 8 * count)) / 2))
        pts = [float(v) for v in np.linspace(lo, hi, m)]
        src = f"grid({m} points on [{lo:g}, {hi:g}])"
    pairs = []
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            pairs.append((pts[i], pts[j]))
            if len(pairs) == count:
                return PairSample(tuple(pairs), src)
    return PairSample(tuple(pairs), src)


def all_pairs(space) -> PairSample:
    """Every unordered pair of the enumerated carrier."""
    pts = space.points()
    pairs = tuple(
        (pts[i], pts[j]) for i in range(len(pts)) for j in range(i + 1, len(pts))
    )
    return PairSample(pairs, f"all_pairs({len(pts)} points)")


def _run_pairwise(name, space, T, phi, sample, lhs_rhs) -> ConditionReport:
    violations = []
    margin = math.inf
    checked = 0
    for x, y in sample.pairs:
        lhs, rhs = lhs_rhs(space, T, phi, x, y)
        checked += 1
        margin = min(margin, rhs - lhs)
        if not (lhs < rhs):
            violations.append({"pair": (x, y), "lhs": lhs, "rhs": rhs})
    return ConditionReport(
        condition=name,
        passed=not violations,
        checked=checked,
        violations=violations,
        margin_min=margin,
        source=sample.source,
    )


def _edelstein_sides(space, T, phi, x, y):
    tx, ty = apply_map(space, T, x), apply_map(space, T, y)
    return float(phi.eval(space.d(tx, ty))), float(phi.eval(space.d(x, y)))


def _kannan_sides(space, T, phi, x, y):
    tx, ty = apply_map(space, T, x), apply_map(space, T, y)
    lhs = float(phi.eval(space.d(tx, ty)))
    rhs = 0.5 * (float(phi.eval(space.d(x, tx))) + float(phi.eval(space.d(y, ty))))
    return lhs, rhs


def edelstein_check(space, T: Callable, phi: AlteringDistance, sample: PairSample) -> ConditionReport:
    """Strict shrinking of phi(d) under the map, pair by pair:
    phi(d(Tx, Ty)) < phi(d(x, y)).
    """
    return _run_pairwise(f"edelstein({phi.name})", space, T, phi, sample, _edelstein_sides)


def kannan_check(space, T: Callable, phi: AlteringDistance, sample: PairSample) -> ConditionReport:
    """Displacement-averaged contraction, pair by pair:
    phi(d(Tx, Ty)) < (phi(d(x, Tx)) + phi(d(y, Ty))) / 2.
    """
    return _run_pairwise(f"kannan({phi.name})", space, T, phi, sample, _kannan_sides)


def orbital_kannan_check(space, T: Callable, phi: AlteringDistance, x0, count: int) -> ConditionReport:
    """Kannan inequality restricted to consecutive orbit pairs.

    Evaluates pairs (x_k, x_{k+1}) for k < count along the orbit of x0,
    skipping pairs at distance zero (the orbit has stalled on a fixed
    point; nothing left to contract).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    tr = orbit(space, T, x0, count + 1)
    violations = []
    margin = math.inf
    checked = 0
    for k in range(count):
        x, y = tr.points[k], tr.points[k + 1]
        if tr.step_dist[k] == 0.0:
            continue
        lhs, rhs = _kannan_sides(space, T, phi, x, y)
        checked += 1
        margin = min(margin, rhs - lhs)
        if not (lhs < rhs):
            violations.append({"pair": (x, y), "index": k, "lhs": lhs, "rhs": rhs})
    return ConditionReport(
        condition=f"orbital_kannan({phi.name})",
        passed=not violations,
        checked=checked,
        violations=violations,
        margin_min=margin,
        source=f"orbit(x0={x0!r}, pairs={count})",
    )


def shift_condition_check(
    space,
    T: Callable,
    phi: AlteringDistance,
    x0,
    delta_rule: Callable[[float], float],
    eps_grid: Sequence[float],
    horizon: int,
) -> ConditionReport:
    """One-step persistence of orbit proximity under phi.

    For each eps in the grid with delta = delta_rule(eps), and every
    orbit index pair 0 <= i < j <= horizon: whenever
    phi(d(x_i, x_j)) < eps + delta, require phi(d(x_{i+1}, x_{j+1})) <= eps.
    Violations record the (i, j, eps) triple. checked counts triggered
    pairs; an eps whose trigger never fires certifies nothing, which the
    caller can see from the per-eps trigger counts in the report note.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if not eps_grid:
        raise ValueError("eps_grid must be non-empty")
    tr = orbit(space, T, x0, horizon + 1)
    phivals = [[None] * (horizon + 2) for _ in range(horizon + 2)]

    def pd(i, j):
        if phivals[i][j] is None:
            phivals[i][j] = float(phi.eval(tr.space.d(tr.points[i], tr.points[j])))
        return phivals[i][j]

    violations = []
    margin = math.inf
    checked = 0
    trigger_counts = []
    for eps in eps_grid:
        delta = float(delta_rule(eps))
        if not (delta > 0):
            raise ValueError(f"delta_rule({eps}) = {delta}, must be positive")
        fired = 0
        for i in range(horizon):
            for j in range(i + 1, horizon + 1):
                if pd(i, j) < eps + delta:
                    fired += 1
                    checked += 1
                    succ = pd(i + 1, j + 1)
                    margin = min(margin, eps - succ)
                    if succ > eps:
                        violations.append({"i": i, "j": j, "eps": eps, "lhs": succ, "rhs": eps})
        trigger_counts.append((eps, fired))
    return ConditionReport(
        condition=f"shift({phi.name})",
        passed=not violations,
        checked=checked,
        violations=violations,
        margin_min=margin,
        source=f"orbit(x0={x0!r}, horizon={horizon}); triggers per eps: "
        + ", ".join(f"{e:g}:{c}" for e, c in trigger_counts),
    )
