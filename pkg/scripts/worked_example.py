"""Walk through the five-point line instance end to end.

X = {-2, -1, 0, 1, 2}, Y = {a, b}, c(x, a) = x, c(x, b) = -x.  The mapping
sends {0, 1, 2} to a and the site values are f(x) = x.  The minimal
constrained antiderivative comes out as x and the maximal one as |x|.

Run:  python3 scripts/worked_example.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from abconvex import (
    ConstraintProblem,
    ExtFunction,
    GroundSet,
    IndexSubset,
    MultiMapping,
    alpha,
    c_subdifferential,
    coupling_from_rows,
    gamma,
    gamma_dual_route,
    is_member,
    rockafellar,
)


def show(title, f):
    vals = ", ".join(f"{lab}: {f(i):+.1f}" for i, lab in enumerate(f.index.labels))
    print(f"{title:<28} {vals}")


def main():
    pts = [-2.0, -1.0, 0.0, 1.0, 2.0]
    x = GroundSet(tuple(str(int(v)) for v in pts))
    y = GroundSet(("a", "b"))
    c = coupling_from_rows(x, y, [[v, -v] for v in pts])
    m = MultiMapping(x, y, ((2, 0), (3, 0), (4, 0)))
    f = ExtFunction(x, tuple(pts))
    s = IndexSubset(x, (2, 3, 4))

    print("instance: c(x,a) = x, c(x,b) = -x, M maps {0,1,2} to a\n")

    r = rockafellar(m, c, 2)
    show("chain supremum at 0", r)

    problem = ConstraintProblem(c, m, f, s)
    lo, hi = alpha(problem), gamma(problem)
    show("minimal member (alpha)", lo)
    show("maximal member (gamma)", hi)
    show("gamma via the dual route", gamma_dual_route(problem))

    print()
    for name, h in [("x", f),
                    ("|x|", ExtFunction(x, tuple(abs(v) for v in pts)))]:
        print(f"is_member({name}) = {is_member(h, problem)}")

    sub = c_subdifferential(ExtFunction(x, tuple(abs(v) for v in pts)), c)
    pairs = ", ".join(f"({x.labels[i]},{y.labels[j]})" for i, j in sub.graph)
    print(f"\nsubdifferential of |x|: {pairs}")


if __name__ == "__main__":
    main()
