"""Patient-stay instances: data model, validation, JSON round-trip.

A stay occupies the half-open day interval [admission_day, discharge_day);
a patient discharged on day t is already gone at day t.  Stays may overrun
the horizon; census and load computations clamp at the last day.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from enum import Enum

from pragen.feasibility import Census, WardConfig

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    """Instance JSON is structurally unusable (not a rule violation)."""


class Gender(str, Enum):
    FEMALE = "female"
    MALE = "male"


@dataclass(frozen=True)
class Patient:
    id: str
    registration_day: int
    admission_day: int
    discharge_day: int
    age: int
    gender: Gender
    is_private: bool
    is_emergency: bool
    has_companion: bool

    @property
    def lor(self) -> int:
        return self.admission_day - self.registration_day

    @property
    def los(self) -> int:
        return self.discharge_day - self.admission_day


@dataclass(frozen=True)
class Horizon:
    days: int

    def __post_init__(self) -> None:
        if self.days < 1:
            raise ValueError("horizon needs at least one day")


@dataclass
class Instance:
    ward: WardConfig
    horizon: Horizon
    patients: list[Patient]
    meta: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Violation:
    rule: str
    patient_id: str | None
    detail: str


def census_of(instance: Instance, t: int) -> Census:
    """Female/male counts present on day t (1-based, within the horizon)."""
    if not 1 <= t <= instance.horizon.days:
        raise ValueError(f"day {t} outside horizon 1..{instance.horizon.days}")
    females = males = 0
    for p in instance.patients:
        if p.admission_day <= t < p.discharge_day:
            if p.gender is Gender.FEMALE:
                females += 1
            else:
                males += 1
    return Census(females, males)


def daily_census(instance: Instance) -> list[Census]:
    """Census for every day 1..T via difference arrays (single pass)."""
    T = instance.horizon.days
    delta_f = [0] * (T + 2)
    delta_m = [0] * (T + 2)
    for p in instance.patients:
        start = max(p.admission_day, 1)
        stop = min(p.discharge_day, T + 1)
        if start >= stop:
            continue
        d = delta_f if p.gender is Gender.FEMALE else delta_m
        d[start] += 1
        d[stop] -= 1
    out = []
    f = m = 0
    for t in range(1, T + 1):
        f += delta_f[t]
        m += delta_m[t]
        out.append(Census(f, m))
    return out


def load_factor(instance: Instance) -> tuple[list[float], float]:
    """Per-day occupancy fractions and their average over the horizon."""
    capacity = instance.ward.total_capacity
    per_day = [c.total / capacity for c in daily_census(instance)]
    return per_day, sum(per_day) / len(per_day)


def validate(instance: Instance) -> list[Violation]:
    """Check every patient-level rule; violations are data, not exceptions."""
    violations: list[Violation] = []
    seen: set[str] = set()
    T = instance.horizon.days
    for p in instance.patients:
        if p.id in seen:
            violations.append(Violation("id-unique", p.id, "duplicate patient id"))
        seen.add(p.id)
        if p.registration_day > p.admission_day:
            violations.append(
                Violation("lor-nonnegative", p.id, "registration after admission")
            )
        if p.discharge_day <= p.admission_day:
            violations.append(
                Violation("los-positive", p.id, "discharge not after admission")
            )
        if not 1 <= p.admission_day <= T:
            violations.append(
                Violation("admission-range", p.id, f"admission day {p.admission_day} outside 1..{T}")
            )
        if p.is_emergency and p.lor != 0:
            violations.append(
                Violation("emergency-lor", p.id, f"emergency patient with lor={p.lor}")
            )
    return violations


def _patient_to_dict(p: Patient) -> dict:
    return {
        "id": p.id,
        "registration_day": p.registration_day,
        "admission_day": p.admission_day,
        "discharge_day": p.discharge_day,
        "age": p.age,
        "gender": p.gender.value,
        "is_private": p.is_private,
        "is_emergency": p.is_emergency,
        "has_companion": p.has_companion,
    }


_PATIENT_KEYS = {
    "id": str,
    "registration_day": int,
    "admission_day": int,
    "discharge_day": int,
    "age": int,
    "gender": str,
    "is_private": bool,
    "is_emergency": bool,
    "has_companion": bool,
}

_TOP_KEYS = {"schema_version", "ward", "horizon", "patients", "meta"}


def serialize(instance: Instance) -> str:
    """Stable JSON text: lexicographic keys, two-space indent, trailing newline."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "ward": [
            {"id": i, "capacity": c} for i, c in enumerate(instance.ward.capacities)
        ],
        "horizon": {"days": instance.horizon.days},
        "patients": [_patient_to_dict(p) for p in instance.patients],
        "meta": instance.meta,
    }
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise SchemaError(message)


def _int_field(obj: dict, key: str, where: str) -> int:
    _require(key in obj, f"{where} is missing '{key}'")
    value = obj[key]
    _require(isinstance(value, int) and not isinstance(value, bool), f"{where}.{key} must be an integer")
    return value


def deserialize(text: str) -> Instance:
    """Parse instance JSON; structural problems raise SchemaError, rule
    violations are left for validate().  Unknown fields are kept under
    meta['unknown_fields'] and reported with a warning."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    _require(isinstance(doc, dict), "top level must be an object")
    version = doc.get("schema_version")
    _require(version == SCHEMA_VERSION, f"unsupported schema_version {version!r}")
    _require("ward" in doc, "missing 'ward'")
    _require("horizon" in doc, "missing 'horizon'")
    _require("patients" in doc, "missing 'patients'")

    rooms = doc["ward"]
    _require(isinstance(rooms, list) and rooms, "'ward' must be a non-empty list of rooms")
    parsed_rooms = []
    for room in rooms:
        _require(isinstance(room, dict), "each room must be an object")
        parsed_rooms.append((_int_field(room, "id", "room"), _int_field(room, "capacity", "room")))
    parsed_rooms.sort(key=lambda rc: rc[0])
    try:
        ward = WardConfig(tuple(c for _, c in parsed_rooms))
    except ValueError as exc:
        raise SchemaError(f"bad ward: {exc}") from exc

    _require(isinstance(doc["horizon"], dict), "'horizon' must be an object")
    try:
        horizon = Horizon(_int_field(doc["horizon"], "days", "horizon"))
    except ValueError as exc:
        raise SchemaError(f"bad horizon: {exc}") from exc

    meta = doc.get("meta", {})
    _require(isinstance(meta, dict), "'meta' must be an object")
    meta = dict(meta)
    unknown: dict = {}

    patients = []
    _require(isinstance(doc["patients"], list), "'patients' must be a list")
    for i, entry in enumerate(doc["patients"]):
        where = f"patients[{i}]"
        _require(isinstance(entry, dict), f"{where} must be an object")
        for key, kind in _PATIENT_KEYS.items():
            _require(key in entry, f"{where} is missing '{key}'")
            if kind is int:
                _int_field(entry, key, where)
            else:
                _require(isinstance(entry[key], kind), f"{where}.{key} must be {kind.__name__}")
        _require(
            entry["gender"] in (Gender.FEMALE.value, Gender.MALE.value),
            f"{where}.gender must be 'female' or 'male'",
        )
        extras = {k: v for k, v in entry.items() if k not in _PATIENT_KEYS}
        if extras:
            unknown.setdefault("patients", {})[entry["id"]] = extras
        patients.append(
            Patient(
                id=entry["id"],
                registration_day=entry["registration_day"],
                admission_day=entry["admission_day"],
                discharge_day=entry["discharge_day"],
                age=entry["age"],
                gender=Gender(entry["gender"]),
                is_private=entry["is_private"],
                is_emergency=entry["is_emergency"],
                has_companion=entry["has_companion"],
            )
        )

    for key in doc:
        if key not in _TOP_KEYS:
            unknown[key] = doc[key]
    if unknown:
        warnings.warn(f"unknown fields preserved in meta: {sorted(unknown)}", stacklevel=2)
        meta["unknown_fields"] = unknown
    return Instance(ward=ward, horizon=horizon, patients=patients, meta=meta)
