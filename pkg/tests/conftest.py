"""Shared hypothesis strategies building valid models constructively.

The bounds guarantee the structural invariants (probability ordering and
range, positive decreasing cost) without rejection sampling, so algebraic
identity properties can run over them directly.
"""

import hypothesis.strategies as st

from twinvest.families import ParametricFamily as F
from twinvest.model import ModelPrimitives


@st.composite
def affine_models(draw):
    a0 = draw(st.floats(0.05, 0.3))
    gap = draw(st.floats(0.05, 0.15))
    b0 = draw(st.floats(0.0, 0.25))
    extra = draw(st.floats(0.0, 0.2))
    c0 = draw(st.floats(0.05, 0.5))
    drop = draw(st.floats(0.0, 0.9))
    s_low = draw(st.floats(0.0, 0.5))
    stake = draw(st.floats(0.2, 3.0))
    return ModelPrimitives(
        pi0=F.affine(a0, b0),
        pi1=F.affine(a0 + gap + 0.05, b0 + extra),
        cost=F.affine(c0, -drop * c0),
        v_max=1.0,
        s_high=s_low + stake,
        s_low=s_low,
    )


@st.composite
def investments(draw):
    return draw(st.floats(0.0, 1.0))
