"""Finite and analytic point spaces, distance-axiom checks, topology probes.

The distance axioms checked here, for a symmetric d with d(x,y) = 0 iff
x = y, witnessed by a generator f and a constant alpha >= 0:

    f(d(x, y)) <= f(sum of link distances along any finite chain) + alpha

Because admissible generators are non-decreasing, it is enough to test
the minimal chain sum for each pair, which min_chain_sums computes by
one-edge relaxation. The slack f(d) - f(minimal sum) therefore decides
the axiom, and its maximum over pairs is the smallest admissible alpha.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

import numpy as np

from ._kernels import minplus_closure
from .errors import DomainError, SpaceAxiomError
from .fclass import FGenerator
from .reports import VerificationReport

_HAUSDORFF_CAP = 10 ** 6


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    """Finite carrier with an explicit distance matrix.

    labels name the points in matrix order; they can be numbers or
    strings (anything hashable). The matrix is stored read-only.
    """

    labels: tuple
    dist: np.ndarray = field(repr=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        m = np.asarray(self.dist, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise SpaceAxiomError(f"distance matrix must be square, got shape {m.shape}")
        if m.shape[0] != len(labels):
            raise SpaceAxiomError(
                f"{len(labels)} labels but matrix is {m.shape[0]}x{m.shape[1]}"
            )
        if len(set(labels)) != len(labels):
            raise SpaceAxiomError("duplicate point labels")
        if not np.all(np.isfinite(m)):
            raise SpaceAxiomError("distance matrix has non-finite entries")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "dist", m)
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise DomainError(f"point {label!r} is not in the carrier") from None

    def d(self, x, y) -> float:
        return float(self.dist[self.index(x), self.index(y)])

    def points(self) -> tuple:
        return self.labels

    def contains(self, x) -> bool:
        return x in self._index


@dataclass(frozen=True, eq=False)
class AnalyticSpace:
    """Carrier given by a membership rule and a closed-form distance.

    point_kind is 'real' (points are floats, bounds give the sampling
    interval) or 'basis_index' (points are positive integers).
    enumerate_points, when present, yields a finite truncation used by
    carrier scans and all-pairs sampling.
    """

    point_kind: str
    dist_rule: Callable[[Any, Any], float] = field(repr=False)
    membership: Optional[Callable[[Any], bool]] = field(default=None, repr=False)
    enumerator: Optional[Callable[[], Sequence]] = field(default=None, repr=False)
    bounds: Optional[tuple] = None

    def d(self, x, y) -> float:
        return float(self.dist_rule(x, y))

    def points(self) -> tuple:
        if self.enumerator is None:
            raise DomainError("this space has no finite enumeration")
        return tuple(self.enumerator())

    def contains(self, x) -> bool:
        if self.membership is None:
            return True
        return bool(self.membership(x))


@dataclass(frozen=True)
class Witness:
    """Generator plus constant certifying the chain axiom for a space."""

    f: FGenerator
    alpha: float

    def __post_init__(self):
        if not (self.alpha >= 0.0):
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")


def check_identity_symmetry(space: FiniteSpace, margin: float = 0.0):
    """Identity and symmetry axioms on the matrix.

    Returns two reports: one for the identity axiom (zero diagonal and
    strictly positive off-diagonal), one for symmetry. margin loosens
    every comparison for noisy inputs.
    """
    m = space.dist
    n = space.n
    id_viol = []
    for i in range(n):
        if abs(m[i, i]) > margin:
            id_viol.append(((space.labels[i], space.labels[i]), float(m[i, i]), 0.0))
    for i in range(n):
        for j in range(n):
            if i != j and m[i, j] <= margin:
                id_viol.append(((space.labels[i], space.labels[j]), float(m[i, j]), 0.0))
    sym_viol = []
    for i in range(n):
        for j in range(i + 1, n):
            if abs(m[i, j] - m[j, i]) > margin:
                sym_viol.append(((space.labels[i], space.labels[j]), float(m[i, j]), float(m[j, i])))
    return [
        VerificationReport(axiom="D1", passed=not id_viol, violations=id_viol),
        VerificationReport(axiom="D2", passed=not sym_viol, violations=sym_viol),
    ]


def _require_identity_symmetry(space: FiniteSpace):
    reports = check_identity_symmetry(space)
    bad = [r for r in reports if not r.passed]
    if bad:
        first = bad[0]
        raise SpaceAxiomError(
            f"axiom {first.axiom} fails, first violation {first.violations[0]}"
        )


def min_chain_sums(space: FiniteSpace) -> np.ndarray:
    """Minimal chain-link sums between all pairs.

    sp[i][j] <= dist[i][j] always, sp[i][i] = 0, and no chain with
    repeated points can beat the best simple chain, so relaxation over
    at most n-2 sweeps is exact (see _kernels.minplus_closure).
    """
    _require_identity_symmetry(space)
    return minplus_closure(space.dist)


def _d3_slack(space: FiniteSpace, f: FGenerator):
    """Off-diagonal slack matrix f(dist) - f(min chain sum)."""
    sp = min_chain_sums(space)
    n = space.n
    off = ~np.eye(n, dtype=bool)
    fd = np.zeros_like(space.dist)
    fs = np.zeros_like(space.dist)
    fd[off] = f.eval(space.dist[off])
    fs[off] = f.eval(sp[off])
    return fd - fs, sp, off


def verify_D3(space: FiniteSpace, w: Witness, margin: float = 0.0) -> VerificationReport:
    """Chain axiom for witness (f, alpha), decided in slack form.

    The pair (x, y) passes iff f(d(x,y)) - f(minimal chain sum) <= alpha
    (+ margin). Evaluating the slack with the same float subtraction
    used by min_alpha makes the two operations exactly consistent.
    """
    slack, sp, off = _d3_slack(space, w.f)
    violations = []
    n = space.n
    for i in range(n):
        for j in range(i + 1, n):  # d and sp are symmetric, so one direction suffices
            if slack[i, j] > w.alpha + margin:
                lhs = float(w.f.eval(space.dist[i, j]))
                rhs = float(w.f.eval(sp[i, j]) + w.alpha)
                violations.append(((space.labels[i], space.labels[j]), lhs, rhs))
    return VerificationReport(axiom="D3", passed=not violations, violations=violations)


def min_alpha(space: FiniteSpace, f: FGenerator) -> float:
    """Smallest alpha >= 0 for which verify_D3 passes with generator f."""
    slack, _, off = _d3_slack(space, f)
    worst = float(slack[off].max()) if space.n > 1 else 0.0
    return max(0.0, worst)


def alpha_divergence_profile(
    family: Callable[[int], FiniteSpace], f: FGenerator, n_range: tuple
) -> list:
    """Series of (n, min_alpha(family(n), f)) over an inclusive range."""
    lo, hi = n_range
    if lo > hi:
        raise ValueError(f"empty range ({lo}, {hi})")
    return [(n, min_alpha(family(n), f)) for n in range(lo, hi + 1)]


def open_ball(space, x, r: float) -> set:
    """Strict ball {y in carrier : d(x, y) < r}; x itself included for r > 0."""
    pts = space.points()
    if not space.contains(x):
        raise DomainError(f"center {x!r} is not in the carrier")
    return {y for y in pts if space.d(x, y) < r}


def hausdorff_witness(space, x, y) -> tuple:
    """Smallest n >= 1 such that balls of radius d(x,y)/(2n) around x and
    y are disjoint. Returns (n, radius); the balls are recomputed and
    re-verified disjoint before returning.
    """
    if x == y:
        raise DomainError("need two distinct points")
    dxy = space.d(x, y)
    if dxy <= 0:
        raise SpaceAxiomError(f"d({x!r}, {y!r}) = {dxy}, identity axiom broken")
    for n in range(1, _HAUSDORFF_CAP + 1):
        r = dxy / (2.0 * n)
        bx = open_ball(space, x, r)
        by = open_ball(space, y, r)
        if not (bx & by):
            assert x in bx and y in by
            return n, r
    raise RuntimeError(f"no separating radius found within n <= {_HAUSDORFF_CAP}")


def ball_base(space, x) -> list:
    """Distinct balls B(x, 1/n), n = 1, 2, ..., down to the singleton {x}.

    Consecutive duplicates are dropped; the list always ends with {x},
    reached once 1/n drops to the smallest positive distance from x.
    """
    pts = space.points()
    if not space.contains(x):
        raise DomainError(f"center {x!r} is not in the carrier")
    others = [space.d(x, y) for y in pts if y != x]
    if others and min(others) <= 0.0:
        raise SpaceAxiomError(f"a point at distance {min(others)} from {x!r} breaks the identity axiom")
    base = []
    n = 1
    while True:
        ball = open_ball(space, x, 1.0 / n)
        if not base or ball != base[-1]:
            base.append(ball)
        if ball == {x}:
            return base
        n += 1
