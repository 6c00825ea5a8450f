import os
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from concordance_lab.matrixalg import Matrix  # noqa: E402
from concordance_lab.ring import LaurentPoly  # noqa: E402
from concordance_lab.seifert import SeifertForm  # noqa: E402

SEED = int(os.environ.get("CONCORDANCE_LAB_SEED", "20240611"))

settings.register_profile(
    "lab", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("lab")

SEED_ROWS = [[-1, 0, 0, 0], [-1, -1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]
GL_ROWS = [[0, 1], [2, 0]]
TREFOIL_ROWS = [[-1, 1], [0, -1]]


@pytest.fixture
def rng():
    return random.Random(SEED)


def stabilize(S: SeifertForm) -> SeifertForm:
    """Elementary enlargement by a hyperbolic 2x2 block with zero coupling."""
    n = S.size
    rows = [list(r) + [0, 0] for r in S.tolist()]
    rows.append([0] * n + [0, 1])
    rows.append([0] * n + [0, 0])
    return SeifertForm.from_rows(rows)


@pytest.fixture
def stabilization():
    return stabilize


# -- hypothesis strategies --------------------------------------------------------

small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def laurent_polys(draw, max_terms=4, low=-3, high=3, nonzero=False):
    n = draw(st.integers(min_value=1 if nonzero else 0, max_value=max_terms))
    d = {}
    for _ in range(n):
        e = draw(st.integers(min_value=low, max_value=high))
        num = draw(st.integers(min_value=-6, max_value=6))
        den = draw(st.integers(min_value=1, max_value=3))
        d[e] = d.get(e, 0) + Fraction(num, den)
    p = LaurentPoly(d)
    if nonzero and p.is_zero():
        p = LaurentPoly.const(1)
    return p


def random_seifert_rows(r: random.Random, genus: int, size: int = 2, congruence: bool = True):
    """Random Seifert matrix: symmetric part plus standard symplectic upper blocks,
    optionally moved by a random unimodular congruence."""
    n = 2 * genus
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = r.randint(-size, size)
            A[i][j] += v
            if i != j:
                A[j][i] += v
    for k in range(genus):
        A[2 * k][2 * k + 1] += 1
    if not congruence:
        return A
    P = Matrix.identity(n).tolist()
    P = [[int(x) for x in row] for row in P]
    for _ in range(2):
        i, j = r.sample(range(n), 2)
        c = r.choice([-1, 1])
        for row in P:
            row[j] += c * row[i]
    M = Matrix(P)
    return [[int(x) for x in row] for row in (M.T @ Matrix(A) @ M).tolist()]


@st.composite
def seifert_forms(draw, max_genus=2):
    g = draw(st.integers(min_value=1, max_value=max_genus))
    seed = draw(st.integers(min_value=0, max_value=10 ** 6))
    return SeifertForm.from_rows(random_seifert_rows(random.Random(seed), g))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
