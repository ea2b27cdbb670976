import math

import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nonortho.qstate import PureState2

settings.register_profile(
    "ci", deadline=None, max_examples=50,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

_component = st.floats(min_value=-1.0, max_value=1.0,
                       allow_nan=False, allow_infinity=False)

phases = st.floats(min_value=0.0, max_value=2.0 * math.pi,
                   allow_nan=False, allow_infinity=False)

p_values = st.floats(min_value=0.5, max_value=1.0,
                     allow_nan=False, allow_infinity=False)

unit_floats = st.floats(min_value=0.0, max_value=1.0,
                        allow_nan=False, allow_infinity=False)


@st.composite
def pure_states(draw):
    parts = [draw(_component) for _ in range(4)]
    norm_sq = sum(x * x for x in parts)
    if norm_sq < 1e-4:
        parts[0] += 1.0
        norm_sq = sum(x * x for x in parts)
    n = math.sqrt(norm_sq)
    return PureState2(complex(parts[0], parts[1]) / n,
                      complex(parts[2], parts[3]) / n)


@st.composite
def pz_pairs(draw):
    """(p, z) with 1/2 <= z <= p <= 1."""
    p = draw(p_values)
    frac = draw(unit_floats)
    return p, 0.5 + frac * (p - 0.5)


def random_state(rng: np.random.Generator) -> PureState2:
    parts = rng.standard_normal(4)
    n = math.sqrt(float(np.sum(parts ** 2)))
    return PureState2(complex(parts[0], parts[1]) / n,
                      complex(parts[2], parts[3]) / n)
