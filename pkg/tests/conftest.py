"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the package's own code paths: they work
from collections.Counter and math.log2 directly off the definitions, so a
bug in the library cannot hide inside its own test oracle.
"""

import json
import math
from collections import Counter
from pathlib import Path

import numpy as np
import pytest

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def load_schema(name):
    return json.loads((SCHEMA_DIR / f"{name}.schema.json").read_text())


def validate_artifact(obj, name):
    import jsonschema

    jsonschema.validate(obj, load_schema(name))


def entropy_oracle(column):
    counts = Counter(int(v) for v in column)
    n = sum(counts.values())
    return -sum((c / n) * math.log2(c / n) for c in counts.values())


def mi_oracle(x, y):
    n = len(x)
    cx = Counter(int(v) for v in x)
    cy = Counter(int(v) for v in y)
    cxy = Counter((int(a), int(b)) for a, b in zip(x, y))
    total = 0.0
    for (a, b), c in cxy.items():
        total += (c / n) * math.log2(c * n / (cx[a] * cy[b]))
    return total


def cmi_oracle(x, y, z):
    n = len(x)
    cz = Counter(int(v) for v in z)
    cxz = Counter((int(a), int(c)) for a, c in zip(x, z))
    cyz = Counter((int(b), int(c)) for b, c in zip(y, z))
    cxyz = Counter((int(a), int(b), int(c)) for a, b, c in zip(x, y, z))
    total = 0.0
    for (a, b, c), cnt in cxyz.items():
        total += (cnt / n) * math.log2(cnt * cz[c] / (cxz[(a, c)] * cyz[(b, c)]))
    return total


def su_oracle(x, y):
    hx = entropy_oracle(x)
    hy = entropy_oracle(y)
    if hx + hy == 0:
        return 0.0
    return 2.0 * mi_oracle(x, y) / (hx + hy)


def random_table(rng, n_features=None, rows=(20, 300), codes=(2, 4)):
    """Random discrete table: class-coded y plus 2..5 feature columns."""
    n = int(rng.integers(rows[0], rows[1] + 1))
    f = int(n_features) if n_features else int(rng.integers(2, 6))
    arities = rng.integers(codes[0], codes[1] + 1, size=f + 1)
    X = np.column_stack([rng.integers(0, a, size=n) for a in arities[:-1]])
    y = rng.integers(0, int(arities[-1]), size=n)
    return X, y


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
