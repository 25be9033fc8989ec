from __future__ import annotations

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mll.linalg import AmbientMetric, Signature
from mll.scalar import MetallicScalar, make_params
from mll.structure import AmbientSpace, build_structure

GOOD_PARAMS = [(1, 1), (2, 1), (3, 1), (1, 3), (2, 2)]


@pytest.fixture
def golden():
    return make_params(1, 1)


@pytest.fixture
def silver():
    return make_params(2, 1)


def sc(params, a, b=0):
    return MetallicScalar(Fraction(a), Fraction(b), params)


def vec(params, *entries):
    return tuple(sc(params, e) for e in entries)


def space_r5_1(params):
    """Flat 5-space of signature (-,+,+,+,+) with the diagonal operator
    used by the first worked instance."""
    metric = AmbientMetric(Signature([-1, 1, 1, 1, 1]))
    J = build_structure(
        params, ["sigma", "sigma", "sigma", "p-sigma", "p-sigma"], metric
    )
    return AmbientSpace(5, metric, J)


def example1_frame(params):
    c, s = Fraction(3, 5), Fraction(4, 5)
    z1 = vec(params, 0, -s, c, 0, 0)
    z2 = vec(params, 0, 0, 0, 1, 0)
    z3 = vec(params, 1, c, s, 0, 0)
    return [z1, z2, z3]


def random_lightlike_setup(rng: random.Random):
    """A random lightlike frame with radical rank r in {1, 2}.

    Construction: r disjoint (timelike, spacelike) index pairs give r
    mutually orthogonal null vectors; unused coordinate axes extend them to
    a frame whose Gram is diag(0_r, +-1); random integer row operations then
    scramble the basis without changing the span.
    """
    p, q = GOOD_PARAMS[rng.randrange(len(GOOD_PARAMS))]
    params = make_params(p, q)
    while True:
        dim = rng.randint(4, 7)
        r = rng.randint(1, 2)
        if dim >= 2 * r + 1:
            break
    m_extra = rng.randint(0, dim - 2 * r)
    idx = rng.sample(range(dim), 2 * r + m_extra)
    eps = [rng.choice([-1, 1]) for _ in range(dim)]
    base = []
    for k in range(r):
        t, s = idx[2 * k], idx[2 * k + 1]
        eps[t], eps[s] = -1, 1
        v = [Fraction(0)] * dim
        v[t] = Fraction(1)
        v[s] = Fraction(1)
        base.append(v)
    for j in idx[2 * r:]:
        v = [Fraction(0)] * dim
        v[j] = Fraction(1)
        base.append(v)
    m = len(base)
    for _ in range(2 * m):
        i, j = rng.randrange(m), rng.randrange(m)
        if i != j:
            c = rng.choice([-2, -1, 1, 2])
            base[i] = [a + c * b for a, b in zip(base[i], base[j])]
    rng.shuffle(base)
    metric = AmbientMetric(Signature(eps))
    tags = [rng.choice(["sigma", "p-sigma"]) for _ in range(dim)]
    J = build_structure(params, tags, metric)
    space = AmbientSpace(dim, metric, J)
    frame = [tuple(sc(params, x) for x in v) for v in base]
    return space, frame, r
