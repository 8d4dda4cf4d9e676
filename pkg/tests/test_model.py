import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pragen.feasibility import Census, WardConfig
from pragen.model import (
    Gender,
    Horizon,
    Instance,
    Patient,
    SchemaError,
    census_of,
    daily_census,
    deserialize,
    load_factor,
    serialize,
    validate,
)

from helpers import random_instance


def make_patient(pid="p1", reg=1, adm=1, dis=3, gender=Gender.FEMALE, emergency=False):
    return Patient(
        id=pid,
        registration_day=reg,
        admission_day=adm,
        discharge_day=dis,
        age=60,
        gender=gender,
        is_private=False,
        is_emergency=emergency,
        has_companion=False,
    )


def make_instance(patients, days=5, caps=(2, 2)):
    return Instance(WardConfig(caps), Horizon(days), patients, {})


class TestCensusOf:
    def test_empty_instance(self):
        assert census_of(make_instance([]), 3) == Census(0, 0)

    def test_half_open_stay(self):
        inst = make_instance([make_patient(reg=2, adm=2, dis=4)])
        assert census_of(inst, 2) == Census(1, 0)
        assert census_of(inst, 3) == Census(1, 0)
        assert census_of(inst, 4) == Census(0, 0)

    def test_two_males(self):
        inst = make_instance(
            [
                make_patient("a", adm=1, dis=3, gender=Gender.MALE),
                make_patient("b", adm=1, dis=3, gender=Gender.MALE),
            ]
        )
        assert census_of(inst, 2) == Census(0, 2)

    def test_out_of_horizon_errors(self):
        with pytest.raises(ValueError):
            census_of(make_instance([]), 6)
        with pytest.raises(ValueError):
            census_of(make_instance([]), 0)

    def test_daily_census_matches_per_day_recount(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            inst = random_instance(rng)
            fast = daily_census(inst)
            slow = [census_of(inst, t) for t in range(1, inst.horizon.days + 1)]
            assert fast == slow


class TestLoadFactor:
    def test_empty(self):
        per_day, overall = load_factor(make_instance([], days=5))
        assert per_day == [0.0] * 5 and overall == 0.0

    def test_quarter_load(self):
        inst = make_instance([make_patient(adm=1, dis=5)], days=4, caps=(2, 2))
        per_day, overall = load_factor(inst)
        assert overall == 0.25

    def test_full_occupancy(self):
        patients = [make_patient(f"p{i}", adm=1, dis=5) for i in range(4)]
        _, overall = load_factor(make_instance(patients, days=4, caps=(2, 2)))
        assert overall == 1.0

    def test_overall_is_mean_of_days(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            inst = random_instance(rng)
            per_day, overall = load_factor(inst)
            assert abs(overall - sum(per_day) / len(per_day)) < 1e-12


class TestValidate:
    def test_clean_instance(self):
        assert validate(make_instance([make_patient()])) == []

    def test_emergency_with_lead_time(self):
        bad = make_patient(reg=-2, adm=1, emergency=True)
        rules = [v.rule for v in validate(make_instance([bad]))]
        assert rules == ["emergency-lor"]

    def test_duplicate_ids(self):
        inst = make_instance([make_patient("x"), make_patient("x")])
        rules = [v.rule for v in validate(inst)]
        assert rules == ["id-unique"]

    def test_negative_lor(self):
        rules = [v.rule for v in validate(make_instance([make_patient(reg=4, adm=2, dis=6)]))]
        assert "lor-nonnegative" in rules

    def test_zero_los(self):
        rules = [v.rule for v in validate(make_instance([make_patient(adm=2, dis=2, reg=2)]))]
        assert "los-positive" in rules

    def test_admission_outside_horizon(self):
        rules = [v.rule for v in validate(make_instance([make_patient(reg=9, adm=9, dis=11)]))]
        assert "admission-range" in rules


class TestSerialization:
    def test_round_trip(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            inst = random_instance(rng)
            assert deserialize(serialize(inst)) == inst

    def test_missing_ward_is_schema_error(self):
        doc = json.loads(serialize(make_instance([make_patient()])))
        del doc["ward"]
        with pytest.raises(SchemaError, match="ward"):
            deserialize(json.dumps(doc))

    def test_schema_version_mismatch(self):
        doc = json.loads(serialize(make_instance([])))
        doc["schema_version"] = 99
        with pytest.raises(SchemaError, match="schema_version"):
            deserialize(json.dumps(doc))

    def test_truncated_json(self):
        with pytest.raises(SchemaError):
            deserialize(serialize(make_instance([]))[:40])

    def test_unknown_fields_preserved_in_meta(self):
        doc = json.loads(serialize(make_instance([make_patient()])))
        doc["surprise"] = {"x": 1}
        doc["patients"][0]["extra_flag"] = True
        with pytest.warns(UserWarning, match="unknown fields"):
            inst = deserialize(json.dumps(doc))
        assert inst.meta["unknown_fields"]["surprise"] == {"x": 1}
        assert inst.meta["unknown_fields"]["patients"]["p1"] == {"extra_flag": True}

    def test_stable_key_order(self):
        text = serialize(make_instance([make_patient()]))
        doc = json.loads(text)
        assert list(doc) == sorted(doc)
        assert text == json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def test_invariant_violations_pass_deserialize(self):
        # rule breaks are surfaced by validate, not by parsing
        bad = make_patient(reg=-2, adm=1, emergency=True)
        inst = deserialize(serialize(make_instance([bad])))
        assert [v.rule for v in validate(inst)] == ["emergency-lor"]


@settings(max_examples=100, deadline=None)
@given(
    caps=st.lists(st.integers(1, 6), min_size=1, max_size=5),
    days=st.integers(1, 20),
    stays=st.lists(st.tuples(st.integers(1, 20), st.integers(1, 8), st.booleans()), max_size=15),
)
def test_property_round_trip(caps, days, stays):
    patients = [
        make_patient(f"p{i}", reg=adm, adm=min(adm, days), dis=min(adm, days) + los,
                     gender=Gender.FEMALE if f else Gender.MALE)
        for i, (adm, los, f) in enumerate(stays)
    ]
    inst = Instance(WardConfig(tuple(caps)), Horizon(days), patients, {"seed": 1})
    assert deserialize(serialize(inst)) == inst
