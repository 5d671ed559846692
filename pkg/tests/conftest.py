import pytest

from curvzeta import parse_curve, resolve

GOLDEN = ["x", "y - x^2", "y^2 - x^3", "y^2 - x^5", "x^2 - y^5", "y^3 - x^4", "x*y", "(y^2 - x^3)*x"]


@pytest.fixture(scope="session")
def resolved():
    cache = {}

    def get(text):
        if text not in cache:
            cache[text] = resolve(parse_curve(text))
        return cache[text]

    return get
