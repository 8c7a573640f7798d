import itertools

import numpy as np
from hypothesis import strategies as st

from kanfuk.config import load_config
from kanfuk.simplicial import Cell, standard_simplex, subcomplex

# seeded tests replay from the run configuration (KANFUK_SEED or KANFUK_CONFIG)
SEED = load_config().seed


def face_closure(n: int, picks) -> list[Cell]:
    """Cells of Delta^n generated by the chosen vertex subsets."""
    keep = set()
    for s in picks:
        s = tuple(sorted(s))
        for k in range(1, len(s) + 1):
            for t in itertools.combinations(s, k):
                keep.add(Cell(k - 1, "".join(map(str, t))))
    return sorted(keep)


@st.composite
def simplex_subcomplexes(draw, max_n: int = 4):
    """Random nonempty face-closed subcomplexes of Delta^n."""
    n = draw(st.integers(1, max_n))
    subsets = st.sets(st.integers(0, n), min_size=1, max_size=n + 1)
    picks = draw(st.lists(subsets, min_size=1, max_size=5))
    X, _ = subcomplex(standard_simplex(n), face_closure(n, picks))
    return X


def random_pole_path(rng, samples: int = 129, knots: int = 6, step: float = 0.8):
    """Piecewise-geodesic pole path through random knots roughly ``step`` apart."""
    from kanfuk.hofer import PolePath, slerp_path

    p = [rng.normal(size=3)]
    p[0] /= np.linalg.norm(p[0])
    for _ in range(knots - 1):
        v = rng.normal(size=3)
        v -= v @ p[-1] * p[-1]
        v /= np.linalg.norm(v)
        a = rng.uniform(0.1, step)
        p.append(np.cos(a) * p[-1] + np.sin(a) * v)
    return PolePath(slerp_path(np.array(p), np.linspace(0.0, 1.0, samples)))


# acceptance results, one line per criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
