"""Shared helpers for the test suite: seeded draws of scalars, metrics, structures."""

import random

import pytest

from curvlab.catalog import FamilySpec, instantiate
from curvlab.metric import MetricParams, build_metric
from curvlab.scalars import GaussianRational, Rat


@pytest.fixture
def rng():
    return random.Random(20260809)


def rand_rat(rng, lo=-10, hi=10, den=10):
    return Rat(rng.randint(lo, hi), rng.randint(1, den))


def rand_gauss(rng, lo=-10, hi=10, den=10):
    return GaussianRational(rand_rat(rng, lo, hi, den), rand_rat(rng, lo, hi, den))


def rand_metric(rng, shape="any"):
    """Small-height valid metric parameters; rejection keeps positivity exact."""
    while True:
        r2, s2, t2 = (Rat(rng.randint(1, 8), rng.randint(1, 4)) for _ in range(3))
        u = v = z = GaussianRational(0)
        if shape == "any":
            u, v, z = (GaussianRational(Rat(rng.randint(-2, 2), 5), Rat(rng.randint(-2, 2), 5))
                       for _ in range(3))
        p = MetricParams(r2, s2, t2, u, v, z)
        if not p.constraint_failures():
            return p


def hermitian_point(family_id, params, metric_kwargs):
    f = FamilySpec.make(family_id, **params)
    alg = instantiate(f)
    h = build_metric(MetricParams.make(**metric_kwargs))
    return f, alg, h
