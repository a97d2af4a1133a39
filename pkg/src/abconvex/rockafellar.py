"""The chain-supremum antiderivative of a cyclically monotone mapping.

R(x) is the best total gain of a chain that starts at the anchor s, walks
through pairs of G(M), and takes a final hop to x.  With no positive cycles
an optimal walk repeats no node, so |dom(M)| relaxation rounds plus one
final-hop maximization compute the exact supremum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    DEFAULT_EPS,
    INF,
    AbstractConvexError,
    BudgetExceededError,
    Coupling,
    ExtFunction,
    MultiMapping,
)
from .monotone import ENUMERATION_BUDGET, build_gain_graph, is_cyclically_monotone


class NotCyclicallyMonotoneError(AbstractConvexError):
    """Raised when the antiderivative would be improper.

    Carries the violating cycle as a pair selection.
    """

    def __init__(self, witness):
        super().__init__("improper: not c-cyclically monotone")
        self.witness = witness


def rockafellar(m: MultiMapping, c: Coupling, s: int,
                eps: float = DEFAULT_EPS) -> ExtFunction:
    """Rockafellar's antiderivative anchored at s in dom(M).

    Proper (and returned) iff M is proper and c-cyclically monotone; a
    positive cycle anywhere in the dom(M)-restricted gain graph raises
    ``NotCyclicallyMonotoneError`` with the witness cycle.
    """
    m.require_proper()
    if s not in set(m.dom):
        raise AbstractConvexError(f"anchor {s} is not in dom(M)")
    verdict = is_cyclically_monotone(m, c, eps)
    if not verdict:
        raise NotCyclicallyMonotoneError(verdict.witness)

    gg = build_gain_graph(m, c)
    nodes = gg.nodes
    a = gg.restricted()
    spos = nodes.index(s)
    # best[i]: best walk gain from s to nodes[i] inside dom(M), any length >= 0
    best = [-INF] * len(nodes)
    best[spos] = 0.0
    for _ in range(len(nodes)):
        changed = False
        for i in range(len(nodes)):
            if best[i] == -INF:
                continue
            for j in range(len(nodes)):
                g = best[i] + a[i][j]
                if g > best[j]:
                    best[j] = g
                    changed = True
        if not changed:
            break
    values = []
    for x in range(c.domain.size):
        values.append(max(best[i] + gg.gain[i][x]
                          for i in range(len(nodes)) if best[i] > -INF))
    return ExtFunction(c.domain, tuple(values))


def rockafellar_oracle(m: MultiMapping, c: Coupling, s: int,
                       max_len: int) -> ExtFunction:
    """Exhaustive maximum over all chains of length <= max_len.  Test oracle;
    equals ``rockafellar`` once max_len >= |dom(M)| and M is cyclically
    monotone."""
    m.require_proper()
    if len(m.graph) ** max_len > ENUMERATION_BUDGET:
        raise BudgetExceededError(
            f"{len(m.graph)}^{max_len} chains exceed the enumeration budget")
    values = [-INF] * c.domain.size
    starters = [p for p in m.graph if p[0] == s]
    if not starters:
        raise AbstractConvexError(f"anchor {s} is not in dom(M)")
    for n in range(1, max_len + 1):
        for tail in itertools.product(m.graph, repeat=n - 1):
            for first in starters:
                chain = (first,) + tail
                partial = 0.0
                for i in range(n - 1):
                    x, y = chain[i]
                    partial += c(chain[i + 1][0], y) - c(x, y)
                xn, yn = chain[-1]
                for x in range(c.domain.size):
                    total = partial + c(x, yn) - c(xn, yn)
                    if total > values[x]:
                        values[x] = total
    return ExtFunction(c.domain, tuple(values))
