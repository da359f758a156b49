import random

from hypothesis import strategies as st

from gconverge import realsets as rs


@st.composite
def rsets(draw, point_prob=0.2):
    seed = draw(st.integers(0, 2**32 - 1))
    return rs.random_rset(random.Random(seed), point_prob=point_prob)
