"""Shared test utilities: independent oracles and instance builders."""

from __future__ import annotations

from itertools import combinations_with_replacement

import numpy as np

from pragen.feasibility import Census, WardConfig
from pragen.model import Gender, Horizon, Instance, Patient


def brute_force_feasible(females: int, males: int, caps: tuple[int, ...]) -> bool:
    """Definition check by enumerating every room subset."""
    total = sum(caps)
    for mask in range(1 << len(caps)):
        s = sum(c for i, c in enumerate(caps) if (mask >> i) & 1)
        if s >= females and total - s >= males:
            return True
    return False


def brute_force_subset_sums(caps: tuple[int, ...]) -> set[int]:
    sums = {0}
    for c in caps:
        sums |= {s + c for s in sums}
    return sums


def all_censuses(ward: WardConfig, slack: int = 2):
    total = ward.total_capacity
    for f in range(total + slack + 1):
        for m in range(total + slack + 1 - f):
            yield Census(f, m)


def all_wards(max_rooms: int, max_capacity: int):
    for n in range(1, max_rooms + 1):
        for caps in combinations_with_replacement(range(1, max_capacity + 1), n):
            yield WardConfig(caps)


def witness_is_sound(verdict, census: Census, ward: WardConfig) -> bool:
    if verdict.witness is None:
        return True
    s = sum(ward.capacities[i] for i in verdict.witness)
    return s >= census.females and ward.total_capacity - s >= census.males


def random_instance(rng: np.random.Generator) -> Instance:
    """A structurally valid instance with randomized fields."""
    ward = WardConfig(tuple(int(c) for c in rng.integers(1, 5, size=rng.integers(1, 6))))
    days = int(rng.integers(1, 30))
    patients = []
    for i in range(int(rng.integers(0, 40))):
        admission = int(rng.integers(1, days + 1))
        emergency = bool(rng.random() < 0.3)
        lor = 0 if emergency else int(rng.integers(0, 15))
        patients.append(
            Patient(
                id=f"p{i:04d}",
                registration_day=admission - lor,
                admission_day=admission,
                discharge_day=admission + int(rng.integers(1, 12)),
                age=int(rng.integers(18, 101)),
                gender=Gender.FEMALE if rng.random() < 0.5 else Gender.MALE,
                is_private=bool(rng.random() < 0.3),
                is_emergency=emergency,
                has_companion=bool(rng.random() < 0.1),
            )
        )
    return Instance(
        ward=ward,
        horizon=Horizon(days),
        patients=patients,
        meta={"seed": int(rng.integers(0, 100)), "config_digest": "t", "generated_at": None},
    )
