"""Instance store: CSV ingestion, round trips, set-level updates."""

import random
from fractions import Fraction

import pytest

from prefq import schema
from prefq.errors import (
    DuplicateTuple,
    HeaderMismatch,
    OverlapError,
    ValueParseError,
)
from prefq.instances import Instance, apply_update, load_csv, to_csv

from conftest import CAR_CSV


class TestLoadCsv:
    def test_fig1_instance(self, car):
        r = load_csv(CAR_CSV, car, "car")
        assert r.tuples == (
            ("VW", Fraction(2002)),
            ("VW", Fraction(1997)),
            ("Kia", Fraction(1997)),
        )

    def test_empty_body(self, car):
        r = load_csv("make,year\n", car)
        assert len(r) == 0

    def test_value_parse_error(self, car):
        with pytest.raises(ValueParseError) as err:
            load_csv("make,year\nVW,abc\n", car)
        assert err.value.row == 2
        assert err.value.column == "year"

    def test_header_mismatch(self, car):
        with pytest.raises(HeaderMismatch):
            load_csv("brand,year\nVW,2002\n", car)

    def test_duplicate_rejected(self, car):
        with pytest.raises(DuplicateTuple) as err:
            load_csv("make,year\nVW,2002\nVW,2002\n", car)
        assert err.value.row == 3

    def test_extra_column_rejected(self, car):
        # a comma inside a D value shifts the row arity: structural error
        with pytest.raises(ValueParseError):
            load_csv("make,year\nVW,too,2002\n", car)

    def test_fraction_and_decimal_literals(self):
        q = schema(("v", "Q"))
        r = load_csv("v\n3/2\n1.25\n-7\n", q)
        assert r.tuples == ((Fraction(3, 2),), (Fraction(5, 4),), (Fraction(-7),))

    def test_round_trip_random(self, car):
        rng = random.Random(3)
        makes = ["VW", "Kia", "Ford", "Saab"]
        for _ in range(100):
            rows = set()
            while len(rows) < rng.randint(0, 12):
                rows.add(
                    (rng.choice(makes), Fraction(rng.randint(1980, 2010), rng.choice([1, 2, 4])))
                )
            inst = Instance("r", car, tuple(rows))
            again = load_csv(to_csv(inst), car, "r")
            assert again.tuples == inst.tuples


class TestApplyUpdate:
    def test_insert_appends(self, car, r1):
        kia = ("Kia", Fraction(2000))
        r2 = apply_update(r1, insert=[kia])
        assert len(r2) == 4
        assert r2.tuples[-1] == kia
        assert r2.tuples[:3] == r1.tuples

    def test_noop(self, r1):
        assert apply_update(r1).tuples == r1.tuples

    def test_delete(self, r1, t1, t2, t3):
        r2 = apply_update(r1, delete=[t2])
        assert r2.tuples == (t1, t3)

    def test_overlap_rejected(self, r1, t1):
        with pytest.raises(OverlapError):
            apply_update(r1, insert=[t1], delete=[t1])

    def test_insert_existing_is_idempotent(self, r1, t1):
        assert apply_update(r1, insert=[t1]).tuples == r1.tuples

    def test_disjoint_batches_associative(self, car):
        rng = random.Random(4)
        makes = ["VW", "Kia", "Ford"]
        all_rows = [(m, Fraction(y)) for m in makes for y in range(1990, 2000)]
        for _ in range(50):
            base = tuple(rng.sample(all_rows, 10))
            rest = [t for t in all_rows if t not in base]
            i1 = rng.sample(rest, 3)
            i2 = [t for t in rng.sample(rest, 3) if t not in i1]
            d1 = [base[0]]
            d2 = [base[5]]
            r = Instance("r", car, base)
            stepped = apply_update(apply_update(r, i1, d1), i2, d2)
            merged = apply_update(r, i1 + i2, d1 + d2)
            assert stepped.as_set() == merged.as_set()
