import itertools
import math

import pytest
from hypothesis import strategies as st

_MOVES = {
    "T": ((1, 1), (0, 1)),
    "T-": ((1, -1), (0, 1)),
    "S": ((0, -1), (1, 0)),
    "R": ((1, 0), (0, -1)),
}


def matmul(A, B):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


@st.composite
def unimodular(draw, max_moves=8):
    """Random det +-1 matrix as a word in generators of GL2(Z)."""
    M = ((1, 0), (0, 1))
    for name in draw(st.lists(st.sampled_from(sorted(_MOVES)), max_size=max_moves)):
        M = matmul(M, _MOVES[name])
    return M


coeff = st.integers(-20, 20)
forms = st.tuples(coeff, coeff, coeff).filter(lambda f: f[1] ** 2 - 4 * f[0] * f[2] != 0)
nonsquare_forms = forms.filter(
    lambda f: not (f[1] ** 2 - 4 * f[0] * f[2] > 0 and math.isqrt(f[1] ** 2 - 4 * f[0] * f[2]) ** 2 == f[1] ** 2 - 4 * f[0] * f[2])
)


def corpus(bound=20):
    for f in itertools.product(range(-bound, bound + 1), repeat=3):
        if f[1] * f[1] - 4 * f[0] * f[2] != 0:
            yield f


@pytest.fixture(scope="session")
def small_corpus():
    return list(corpus(6))
