"""Families of c-convex antiderivatives pinned on a site set, and their
minimal/maximal envelopes.

A ConstraintProblem packages a coupling, a cyclically monotone mapping M, an
anchor antiderivative f and a nonempty site set S inside dom(M).  The family
consists of every c-convex antiderivative of M that agrees with f on S; it
always contains its lower envelope (``alpha``) and upper envelope
(``gamma``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import (
    DEFAULT_EPS,
    AbstractConvexError,
    Coupling,
    ExtFunction,
    IndexSubset,
    MultiMapping,
    pointwise_le,
    pointwise_max,
    restrict_sum,
)
from .rockafellar import rockafellar
from .transforms import (
    c_convexify,
    c_transform,
    c_transform_rev,
    is_antiderivative,
    is_c_convex,
)


@dataclass(frozen=True)
class ConstraintProblem:
    """Data of a constrained antiderivative family.

    Construction validates that the anchor really is an antiderivative of the
    mapping (which in particular forces cyclic monotonicity, so site values
    can never be chain-inconsistent) and that it is finite on the sites.
    """

    coupling: Coupling
    mapping: MultiMapping
    anchor: ExtFunction
    sites: IndexSubset
    eps: float = field(default=DEFAULT_EPS)

    def __post_init__(self):
        self.mapping.require_proper()
        self.anchor.require_proper("anchor")
        if self.anchor.index.labels != self.coupling.domain.labels:
            raise AbstractConvexError("anchor must be indexed by the coupling domain")
        if self.sites.parent.labels != self.coupling.domain.labels:
            raise AbstractConvexError("sites must live in the coupling domain")
        dom = set(self.mapping.dom)
        stray = [s for s in self.sites if s not in dom]
        if stray:
            raise AbstractConvexError(f"sites {stray} are outside dom(M)")
        if not is_antiderivative(self.anchor, self.mapping, self.coupling, self.eps):
            raise AbstractConvexError("anchor is not an antiderivative of the mapping")
        bad = [s for s in self.sites if not math.isfinite(self.anchor(s))]
        if bad:
            raise AbstractConvexError(f"anchor is not finite on sites {bad}")

    @property
    def full_domain(self) -> bool:
        return tuple(self.sites.members) == self.mapping.dom

    def dual(self) -> "ConstraintProblem":
        """The reversed problem: transposed coupling, inverted mapping,
        transformed anchor, image sites."""
        return ConstraintProblem(
            coupling=self.coupling.transpose(),
            mapping=self.mapping.inverse(),
            anchor=c_transform(self.anchor, self.coupling),
            sites=IndexSubset(self.coupling.codomain,
                              self.mapping.of_set(self.sites)),
            eps=self.eps,
        )


def alpha(problem: ConstraintProblem) -> ExtFunction:
    """The minimal member: max over sites s of f(s) + R_s, where R_s is the
    chain-supremum antiderivative anchored at s."""
    parts = []
    for s in problem.sites:
        r = rockafellar(problem.mapping, problem.coupling, s, problem.eps)
        parts.append(r.shifted(problem.anchor(s)))
    return pointwise_max(parts)


def alpha_closed_form(problem: ConstraintProblem) -> ExtFunction:
    """Full-domain formula max_{(s,t) in G(M)} [f(s) + c(x,t) - c(s,t)].

    Only valid when the sites exhaust dom(M)."""
    if not problem.full_domain:
        raise AbstractConvexError("closed form requires sites = dom(M)")
    c, f = problem.coupling, problem.anchor
    values = tuple(
        max(f(s) + c(x, t) - c(s, t) for s, t in problem.mapping.graph)
        for x in range(c.domain.size)
    )
    return ExtFunction(c.domain, values)


def gamma(problem: ConstraintProblem) -> ExtFunction:
    """The maximal member.

    Full-domain case: the convexification of f + indicator(dom(M)).  General
    sites: the transform of the dual problem's minimal member (no primal
    chain formula exists for this case, so none is invented).
    """
    if problem.full_domain:
        return c_convexify(restrict_sum(problem.anchor, problem.sites),
                           problem.coupling)
    dual_alpha = alpha(problem.dual())
    return c_transform_rev(dual_alpha, problem.coupling)


def gamma_dual_route(problem: ConstraintProblem) -> ExtFunction:
    """The dual-transform route unconditionally; cross-check for ``gamma``."""
    return c_transform_rev(alpha(problem.dual()), problem.coupling)


def is_member(h: ExtFunction, problem: ConstraintProblem) -> bool:
    """Whether h is a c-convex antiderivative of M agreeing with f on S."""
    h.require_proper("membership candidate")
    c, eps = problem.coupling, problem.eps
    if not is_c_convex(h, c, eps):
        return False
    if not is_antiderivative(h, problem.mapping, c, eps):
        return False
    f = problem.anchor
    return all(math.isfinite(h(s)) and abs(h(s) - f(s)) <= eps
               for s in problem.sites)


def sandwich_check(h: ExtFunction, problem: ConstraintProblem) -> bool:
    """alpha <= h <= gamma; equivalent to membership for c-convex h when the
    sites exhaust dom(M) (the only case the criterion is proved for)."""
    if not problem.full_domain:
        raise AbstractConvexError("sandwich criterion requires sites = dom(M)")
    h.require_proper("sandwich candidate")
    if not is_c_convex(h, problem.coupling, problem.eps):
        raise AbstractConvexError("sandwich candidate must be c-convex")
    eps = problem.eps
    return (pointwise_le(alpha(problem), h, eps)
            and pointwise_le(h, gamma(problem), eps))
