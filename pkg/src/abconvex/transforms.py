"""c-transforms, c-convexification, c-subdifferentials and related predicates.

The forward transform maps functions on the coupling's domain to functions
on its codomain; the reverse transform goes the other way.  The two are kept
as distinct operations with explicit index typing, so a conjugation-direction
mistake fails loudly instead of silently transposing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    INF,
    DEFAULT_EPS,
    Coupling,
    ExtFunction,
    GroundSet,
    IndexMismatchError,
    MultiMapping,
    sup_distance,
)


def _transform(values: tuple[float, ...], column) -> float:
    """max over i of column(i) - values[i], with the [-inf, inf] conventions."""
    best = -INF
    for i, v in enumerate(values):
        if v == INF:
            continue  # outside dom(f): contributes -inf
        if v == -INF:
            return INF  # c finite minus -inf
        best = max(best, column(i) - v)
    return best


def c_transform(f: ExtFunction, c: Coupling) -> ExtFunction:
    """The transform of f on X: f^c(y) = max_x [c(x, y) - f(x)] on Y."""
    if f.index.labels != c.domain.labels:
        raise IndexMismatchError("function is not indexed by the coupling domain")
    return ExtFunction(
        c.codomain,
        tuple(_transform(f.values, lambda x: c(x, y)) for y in range(c.codomain.size)),
    )


def c_transform_rev(g: ExtFunction, c: Coupling) -> ExtFunction:
    """The transform of g on Y: g^c(x) = max_y [c(x, y) - g(y)] on X."""
    if g.index.labels != c.codomain.labels:
        raise IndexMismatchError("function is not indexed by the coupling codomain")
    return ExtFunction(
        c.domain,
        tuple(_transform(g.values, lambda y: c(x, y)) for x in range(c.domain.size)),
    )


def c_convexify(f: ExtFunction, c: Coupling) -> ExtFunction:
    """f^{cc}: the largest c-convex function majorized by f (f proper)."""
    f.require_proper("convexification input")
    return c_transform_rev(c_transform(f, c), c)


def is_c_convex(f: ExtFunction, c: Coupling, eps: float = DEFAULT_EPS) -> bool:
    """Whether f = f^{cc} within eps (+inf entries must match exactly)."""
    f.require_proper("c-convexity test input")
    return sup_distance(f, c_convexify(f, c)) <= eps


@dataclass(frozen=True)
class SubdiffGraph:
    """The graph of a c-subdifferential, wrapped as a multimapping."""

    mapping: MultiMapping

    @property
    def graph(self) -> tuple[tuple[int, int], ...]:
        return self.mapping.graph

    def __contains__(self, pair) -> bool:
        return pair in self.mapping

    def inverse(self) -> "SubdiffGraph":
        return SubdiffGraph(self.mapping.inverse())


def c_subdifferential(f: ExtFunction, c: Coupling,
                      eps: float = DEFAULT_EPS) -> SubdiffGraph:
    """All (x, y) with f(x) + f^c(y) = c(x, y) within eps.

    This is the sup-form of the definition, O(|X||Y|) after one transform.
    ``c_subdifferential_quantified`` is the independent universally-quantified
    form used as a test oracle.
    """
    f.require_proper("subdifferential input")
    if f.index.labels != c.domain.labels:
        raise IndexMismatchError("function is not indexed by the coupling domain")
    fc = c_transform(f, c)
    pairs = []
    for x in range(c.domain.size):
        if not math.isfinite(f(x)):
            continue  # f is finite where it is c-subdifferentiable
        for y in range(c.codomain.size):
            if math.isfinite(fc(y)) and abs(f(x) + fc(y) - c(x, y)) <= eps:
                pairs.append((x, y))
    return SubdiffGraph(MultiMapping(c.domain, c.codomain, tuple(pairs)))


def c_subdifferential_quantified(f: ExtFunction, c: Coupling,
                                 eps: float = DEFAULT_EPS) -> SubdiffGraph:
    """First form of the definition: y is in the subdifferential at x iff
    f(x) + c(x', y) <= f(x') + c(x, y) for every x'.  O(|X|^2 |Y|) oracle."""
    f.require_proper("subdifferential input")
    if f.index.labels != c.domain.labels:
        raise IndexMismatchError("function is not indexed by the coupling domain")
    pairs = []
    for x in range(c.domain.size):
        if not math.isfinite(f(x)):
            continue
        for y in range(c.codomain.size):
            ok = all(
                f(xp) == INF or f(x) + c(xp, y) <= f(xp) + c(x, y) + eps
                for xp in range(c.domain.size)
            )
            if ok:
                pairs.append((x, y))
    return SubdiffGraph(MultiMapping(c.domain, c.codomain, tuple(pairs)))


def is_antiderivative(f: ExtFunction, m: MultiMapping, c: Coupling,
                      eps: float = DEFAULT_EPS) -> bool:
    """Whether G(M) is contained in G(subdifferential of f)."""
    f.require_proper("antiderivative candidate")
    m.require_proper()
    sub = c_subdifferential(f, c, eps)
    present = set(sub.graph)
    return all(pair in present for pair in m.graph)
