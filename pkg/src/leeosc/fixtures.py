"""Reference diagonalizing matrices for the two worked parameter points.

The eigenvector basis of h is not unique (row signs, and for case 1 the
degenerate E = 1 eigenspace), while the commutator tables depend on it. The
two matrices below fix that choice. They ship as text files: ``#`` comment
lines, then four rows of four decimals (17 significant digits), row-major.
"""

import math
from importlib import resources
from pathlib import Path

import numpy as np

from .model import ModelParams

FIXTURE_PARAMS = {
    "case1": ModelParams(-1.0, 1.0 / 3.0),
    "case2": ModelParams(1.0, 1.0),
}


def case1_S():
    r = math.sqrt
    return np.array(
        [
            [-r(5 / 7), -r(1 / 35), 0.0, 3 / r(35)],
            [0.0, 3 / r(10), 0.0, 1 / r(10)],
            [0.0, 0.0, 1.0, 0.0],
            [r(2 / 7), -1 / r(14), 0.0, 3 / r(14)],
        ]
    )


def case2_S():
    r = math.sqrt
    s17, s2 = r(17), r(2)
    q, w = r(51 + 12 * s17), r(51 - 12 * s17)
    u = r(2 + s2)
    return np.array(
        [
            [-(3 + s17) / (2 * q), -(4 + s17) / q, (5 + s17) / (2 * q), 1 / q],
            [-0.5 * r(2 / 3) * u, 0.5 * (s2 - 1) * u / r(3), 0.5 * (1 - s2) * r(2 / 3) * u, 0.5 * u / r(3)],
            [(s17 - 3) / (2 * w), (s17 - 4) / w, (5 - s17) / (2 * w), 1 / w],
            [1 / (r(3) * u), -(s2 + 1) / (r(6) * u), -(s2 + 1) / (r(3) * u), 1 / (r(6) * u)],
        ]
    )


CLOSED_FORMS = {"case1": case1_S, "case2": case2_S}


def format_matrix(S, header=""):
    lines = [f"# {line}" for line in header.splitlines()]
    lines += [" ".join(f"{x:.17g}" for x in row) for row in np.asarray(S)]
    return "\n".join(lines) + "\n"


def parse_matrix(text):
    rows = [
        [float(tok) for tok in line.split()]
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    S = np.array(rows, dtype=float)
    if S.shape != (4, 4):
        raise ValueError(f"fixture must hold a 4x4 matrix, got shape {S.shape}")
    return S


def fixture_path(name, directory=None):
    if directory is not None:
        return Path(directory) / f"{name}_S.txt"
    return Path(str(resources.files("leeosc") / "data" / f"{name}_S.txt"))


def load_fixture(name, directory=None):
    """Read the S matrix for ``case1``/``case2``; FileNotFoundError names the path."""
    if name not in CLOSED_FORMS:
        raise ValueError(f"unknown fixture {name!r}; expected one of {sorted(CLOSED_FORMS)}")
    path = fixture_path(name, directory)
    if not path.is_file():
        raise FileNotFoundError(f"missing fixture file: {path}")
    return parse_matrix(path.read_text())


def write_fixtures(directory):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, build in CLOSED_FORMS.items():
        p = FIXTURE_PARAMS[name]
        header = f"S for gamma={p.gamma:.17g}, lambda={p.lam:.17g}; rows are eigenvectors of h"
        (directory / f"{name}_S.txt").write_text(format_matrix(build(), header))
