import numpy as np
import pytest
from hypothesis import settings

from isotopy.octonion import parse_algebra

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

ALGEBRAS = ["zorn(Z)", "zorn(Q)", "zorn(F2)", "zorn(F3)", "zorn(Z/8)", "cd(Q,-1,-1,-1)"]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=ALGEBRAS)
def algebra(request):
    return parse_algebra(request.param)
