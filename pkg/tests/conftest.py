"""Shared fixtures: the running car example and its preference relations."""

from __future__ import annotations

from fractions import Fraction

import pytest

from prefq import parse_formula, relation, schema
from prefq.instances import load_csv

CAR_CSV = "make,year\nVW,2002\nVW,1997\nKia,1997\n"

C1_DSL = "x.make = y.make AND x.year > y.year"
C2_DSL = "x.make = 'VW' AND y.make != 'VW' AND x.year = y.year"
C3_DSL = "x.make = 'VW' AND x.year = 1999 AND y.make = 'Kia' AND y.year = 1999"
CSTAR_DSL = (
    "x.make = y.make AND x.year > y.year "
    "OR x.make = 'VW' AND y.make != 'VW' AND x.year >= y.year"
)
C4_DSL = (
    "x.make = y.make AND x.year > y.year "
    "OR x.make = 'VW' AND x.year >= 1999 AND y.make = 'Kia' AND y.year <= 1999"
)
HOLE_DSL = "x.v > y.v AND x.v != 0 AND y.v != 0"


@pytest.fixture(scope="session")
def car():
    return schema(("make", "D"), ("year", "Q"))


@pytest.fixture(scope="session")
def r1(car):
    return load_csv(CAR_CSV, car, "car")


@pytest.fixture(scope="session")
def t1():
    return ("VW", Fraction(2002))


@pytest.fixture(scope="session")
def t2():
    return ("VW", Fraction(1997))


@pytest.fixture(scope="session")
def t3():
    return ("Kia", Fraction(1997))


@pytest.fixture(scope="session")
def c1(car):
    return relation("c1", parse_formula(C1_DSL, car))


@pytest.fixture(scope="session")
def c2(car):
    return relation("c2", parse_formula(C2_DSL, car))


@pytest.fixture(scope="session")
def c3(car):
    return relation("c3", parse_formula(C3_DSL, car))


@pytest.fixture(scope="session")
def cstar_printed(car):
    return relation("cstar", parse_formula(CSTAR_DSL, car))


@pytest.fixture(scope="session")
def c4_printed(car):
    return relation("c4", parse_formula(C4_DSL, car))


@pytest.fixture(scope="session")
def hole():
    v = schema(("v", "Q"))
    return relation("hole", parse_formula(HOLE_DSL, v))
