import pytest

from ffk.corpus import load_corpus
from ffk.diagram import parse_pd

PD = {
    "unknot": "unknot",
    "trefoil": "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]",
    "figure-eight": "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]",
    "5_2": "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]",
    "torus(2,5)": "X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]",
}

# Alexander coefficients from standard knot tables.
TABLE = {
    "unknot": (1,),
    "trefoil": (1, -1, 1),
    "figure-eight": (1, -3, 1),
    "5_2": (2, -3, 2),
    "torus(2,5)": (1, -1, 1, -1, 1),
}


@pytest.fixture(scope="session")
def knots():
    return {name: parse_pd(text) for name, text in PD.items()}


@pytest.fixture(scope="session")
def trefoil(knots):
    return knots["trefoil"]


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()
