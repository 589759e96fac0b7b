import pytest

from optdeg import PrimeField, RingContext, parse_polynomial
from optdeg.critical import VarietySpec


@pytest.fixture
def ring_xy():
    return RingContext(("x", "y"))


@pytest.fixture
def ring_x12():
    return RingContext(("x1", "x2"))


@pytest.fixture
def ellipse(ring_x12):
    return VarietySpec(ring_x12, (parse_polynomial("x1^2+4*x2^2-1", ring_x12),))


@pytest.fixture
def prime_field():
    return PrimeField()


def variety(ring, *texts, **kw):
    return VarietySpec(ring, tuple(parse_polynomial(t, ring) for t in texts), **kw)
