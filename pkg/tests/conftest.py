import mpmath
import pytest

from ostrowski import FunctionSpec, Interval

mpmath.mp.dps = 30

# (function id, interval) pairs on which every derivative up to f'' is finite
REGULAR = [
    ("poly:0,0,1", (0.0, 1.0)),
    ("poly:0,0,0,1", (0.0, 1.0)),
    ("poly:0,0,0,0,1", (0.0, 1.0)),
    ("exp", (0.0, 1.0)),
    ("ln", (1.0, 2.0)),
    ("breckner:0,1,0,0.5", (0.25, 1.0)),
    ("cpow:1,0.25", (0.0, 1.0)),
]

# closed forms for the mpmath oracle
MP_FUNCS = {
    "poly:0,0,1": lambda t: t**2,
    "poly:0,0,0,1": lambda t: t**3,
    "poly:0,0,0,0,1": lambda t: t**4,
    "exp": mpmath.exp,
    "ln": mpmath.log,
    "breckner:0,1,0,0.5": lambda t: mpmath.sqrt(t),
    "cpow:1,0.25": lambda t: t ** mpmath.mpf(2.25),
}


def mp_mean(fid, a, b):
    return float(mpmath.quad(MP_FUNCS[fid], [a, b]) / (b - a))


@pytest.fixture(params=REGULAR, ids=[r[0] for r in REGULAR])
def regular(request):
    fid, (a, b) = request.param
    return fid, FunctionSpec.parse(fid), Interval(a, b)
