import random
from pathlib import Path
from types import SimpleNamespace

import pytest

from abconvex import (
    Coupling,
    ExtFunction,
    GroundSet,
    IndexSubset,
    MultiMapping,
    coupling_from_rows,
)

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def grid_labels():
    return GroundSet(("-2", "-1", "0", "1", "2"))


def two_point_instance() -> SimpleNamespace:
    """X = {-2..2}, Y = {a, b}, c(x, a) = x, c(x, b) = -x.

    The instance the worked examples live on: the c-convex
    functions on X are exactly x - p, -x - q and |x - r| - s.
    """
    x = grid_labels()
    y = GroundSet(("a", "b"))
    pts = [-2.0, -1.0, 0.0, 1.0, 2.0]
    c = coupling_from_rows(x, y, [[v, -v] for v in pts])
    f_id = ExtFunction(x, tuple(pts))
    f_abs = ExtFunction(x, tuple(abs(v) for v in pts))
    m = MultiMapping(x, y, ((2, 0), (3, 0), (4, 0)))  # {(0,a),(1,a),(2,a)}
    s = IndexSubset(x, (2, 3, 4))
    return SimpleNamespace(x=x, y=y, points=pts, c=c,
                           f_id=f_id, f_abs=f_abs, m=m, s=s)


def grid_function(kind: str, *params) -> ExtFunction:
    """One of the instance's three c-convex closed forms on the grid."""
    pts = [-2.0, -1.0, 0.0, 1.0, 2.0]
    if kind == "pos":
        (p,) = params
        vals = [v - p for v in pts]
    elif kind == "neg":
        (q,) = params
        vals = [-v - q for v in pts]
    else:
        r, s = params
        vals = [abs(v - r) - s for v in pts]
    return ExtFunction(grid_labels(), tuple(vals))


@pytest.fixture
def two_point():
    return two_point_instance()


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def fixture_dir():
    return FIXTURE_DIR
