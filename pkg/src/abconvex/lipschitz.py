"""Finite (pseudo)metric spaces and constrained 1-Lipschitz extension.

Instantiating the coupling as c = -d turns 1-Lipschitz functions into the
c-convex functions, distance-preserving pairs into subdifferential pairs,
and the constrained extension problem into an antiderivative-envelope
problem.  The closed-form chain formulas are the -d reading of the general
machinery and are cross-checked against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .core import (
    DEFAULT_EPS,
    AbstractConvexError,
    Coupling,
    ExtFunction,
    GroundSet,
    IndexSubset,
    MultiMapping,
    restrict_sum,
    sup_distance,
)
from .envelopes import ConstraintProblem, alpha, gamma
from .transforms import c_transform, is_antiderivative, is_c_convex


class MetricError(AbstractConvexError):
    """A distance matrix fails a metric axiom; carries the offending triple."""


@dataclass(frozen=True)
class MetricInstance:
    """A finite pseudometric as a symmetric nonnegative matrix."""

    points: GroundSet
    dist: tuple[tuple[float, ...], ...]
    pseudometric: bool = False
    eps: float = field(default=DEFAULT_EPS)

    def __post_init__(self):
        n = self.points.size
        d = self.dist
        if len(d) != n or any(len(row) != n for row in d):
            raise MetricError("distance matrix shape != (|X|, |X|)")
        for i in range(n):
            if abs(d[i][i]) > self.eps:
                raise MetricError(f"d({i},{i}) != 0")
            for j in range(n):
                if not math.isfinite(d[i][j]) or d[i][j] < -self.eps:
                    raise MetricError(f"d({i},{j}) must be finite and nonnegative")
                if abs(d[i][j] - d[j][i]) > self.eps:
                    raise MetricError(f"asymmetry at ({i},{j})")
                if i != j and not self.pseudometric and d[i][j] <= self.eps:
                    raise MetricError(f"zero distance between distinct points ({i},{j})")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if d[i][k] > d[i][j] + d[j][k] + self.eps:
                        raise MetricError(f"triangle inequality fails at ({i},{j},{k})")

    def __call__(self, i: int, j: int) -> float:
        return self.dist[i][j]

    def rescaled(self, k: float, exponent: float = 1.0) -> "MetricInstance":
        """K * d^a for K > 0 and 0 < a <= 1; still a metric."""
        if k <= 0 or not 0 < exponent <= 1:
            raise AbstractConvexError("need K > 0 and 0 < a <= 1")
        return MetricInstance(
            self.points,
            tuple(tuple(k * v ** exponent for v in row) for row in self.dist),
            self.pseudometric, self.eps)


def metric_from_rows(points: GroundSet, rows: Iterable[Iterable[float]],
                     pseudometric: bool = False,
                     eps: float = DEFAULT_EPS) -> MetricInstance:
    return MetricInstance(points,
                          tuple(tuple(float(v) for v in r) for r in rows),
                          pseudometric, eps)


def as_coupling(metric: MetricInstance) -> Coupling:
    """The coupling c = -d on points x points (entry-exact negation)."""
    return Coupling(metric.points, metric.points,
                    tuple(tuple(-v for v in row) for row in metric.dist))


def identity_mapping(metric: MetricInstance) -> MultiMapping:
    n = metric.points.size
    return MultiMapping(metric.points, metric.points,
                        tuple((i, i) for i in range(n)))


def identity_on(subset: IndexSubset) -> MultiMapping:
    return MultiMapping(subset.parent, subset.parent,
                        tuple((i, i) for i in subset))


@dataclass(frozen=True)
class LipschitzReport:
    is_lipschitz_1: bool
    is_md_convex: bool
    transform_is_neg: bool
    is_identity_antiderivative: bool

    @property
    def unanimous(self) -> bool:
        votes = (self.is_lipschitz_1, self.is_md_convex,
                 self.transform_is_neg, self.is_identity_antiderivative)
        return all(votes) or not any(votes)


def lipschitz_characterize(f: ExtFunction, metric: MetricInstance,
                           eps: float = DEFAULT_EPS) -> LipschitzReport:
    """The four equivalent readings of 1-Lipschitzness, each computed
    independently: the report's ``unanimous`` flag is the executable theorem."""
    if f.index.labels != metric.points.labels:
        raise AbstractConvexError("function not indexed by the metric points")
    if not all(math.isfinite(v) for v in f.values):
        raise AbstractConvexError("characterization requires an everywhere finite f")
    n = metric.points.size
    lip = all(abs(f(i) - f(j)) <= metric(i, j) + eps
              for i in range(n) for j in range(n))
    c = as_coupling(metric)
    convex = is_c_convex(f, c, eps)
    neg = ExtFunction(f.index, tuple(-v for v in f.values))
    transform_neg = sup_distance(c_transform(f, c), neg) <= eps
    ident = is_antiderivative(f, identity_mapping(metric), c, eps)
    return LipschitzReport(lip, convex, transform_neg, ident)


@dataclass(frozen=True)
class ExtensionProblem:
    """Constrained Lipschitz extension data.

    ``values`` gives f on dom(mapping) (entries elsewhere are ignored); the
    constructor checks the distance-compatibility hypothesis
    f(x) - f(x') <= d(x', y) - d(x, y) over G(M) x dom(M), which is the same
    as f (extended by +inf) being a -d-antiderivative of the mapping.
    """

    metric: MetricInstance
    mapping: MultiMapping
    values: ExtFunction
    sites: IndexSubset
    eps: float = field(default=DEFAULT_EPS)

    def __post_init__(self):
        self.mapping.require_proper()
        if self.values.index.labels != self.metric.points.labels:
            raise AbstractConvexError("values not indexed by the metric points")
        dom = self.mapping.dom
        if any(not math.isfinite(self.values(x)) for x in dom):
            raise AbstractConvexError("values must be finite on dom(M)")
        stray = [s for s in self.sites if s not in set(dom)]
        if stray:
            raise AbstractConvexError(f"sites {stray} are outside dom(M)")
        d, f = self.metric, self.values
        for x, y in self.mapping.graph:
            for xp in dom:
                if f(x) - f(xp) > d(xp, y) - d(x, y) + self.eps:
                    raise AbstractConvexError(
                        f"extension hypothesis fails at pair ({x},{y}), point {xp}")

    def anchor(self) -> ExtFunction:
        """f extended by +inf off dom(M); a -d-antiderivative of the mapping."""
        return restrict_sum(self.values,
                            IndexSubset(self.metric.points, self.mapping.dom))

    def constraint_problem(self) -> ConstraintProblem:
        return ConstraintProblem(as_coupling(self.metric), self.mapping,
                                 self.anchor(), self.sites, self.eps)

    @property
    def full_domain(self) -> bool:
        return tuple(self.sites.members) == self.mapping.dom


def extend_min(problem: ExtensionProblem) -> ExtFunction:
    """Minimal 1-Lipschitz extension of f|_S preserving the constrained
    distances; the general-machinery lower envelope under c = -d."""
    return alpha(problem.constraint_problem())


def extend_max(problem: ExtensionProblem) -> ExtFunction:
    """Maximal constrained 1-Lipschitz extension; the upper envelope."""
    return gamma(problem.constraint_problem())


def extend_min_closed_form(problem: ExtensionProblem) -> ExtFunction:
    """Full-domain formula max_{(s,t) in G(M)} [f(s) + d(s,t) - d(x,t)]."""
    if not problem.full_domain:
        raise AbstractConvexError("closed form requires sites = dom(M)")
    d, f = problem.metric, problem.values
    values = tuple(
        max(f(s) + d(s, t) - d(x, t) for s, t in problem.mapping.graph)
        for x in range(d.points.size)
    )
    return ExtFunction(d.points, values)


def extend_max_closed_form(problem: ExtensionProblem) -> ExtFunction:
    """Full-domain formula min_{s in dom(M)} [f(s) + d(x, s)]."""
    if not problem.full_domain:
        raise AbstractConvexError("closed form requires sites = dom(M)")
    d, f = problem.metric, problem.values
    values = tuple(
        min(f(s) + d(x, s) for s in problem.mapping.dom)
        for x in range(d.points.size)
    )
    return ExtFunction(d.points, values)


def mcshane_whitney_min(metric: MetricInstance, sites: IndexSubset,
                        f: ExtFunction) -> ExtFunction:
    """max_{s in S} [f(s) - d(x, s)]: the classical minimal extension."""
    values = tuple(max(f(s) - metric(x, s) for s in sites)
                   for x in range(metric.points.size))
    return ExtFunction(metric.points, values)


def mcshane_whitney_max(metric: MetricInstance, sites: IndexSubset,
                        f: ExtFunction) -> ExtFunction:
    """min_{s in S} [f(s) + d(x, s)]: the classical maximal extension."""
    values = tuple(min(f(s) + metric(x, s) for s in sites)
                   for x in range(metric.points.size))
    return ExtFunction(metric.points, values)


def is_1_lipschitz(f: ExtFunction, metric: MetricInstance,
                   eps: float = DEFAULT_EPS) -> bool:
    n = metric.points.size
    return all(abs(f(i) - f(j)) <= metric(i, j) + eps
               for i in range(n) for j in range(n))
