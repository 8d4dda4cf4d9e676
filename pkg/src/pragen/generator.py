"""Day-by-day instance generation against a target load.

Generation runs in two stages: an oversized patient pool is drawn with all
personal attributes but no dates, then a selection loop walks the horizon
admitting uniformly drawn pool patients while (a) the cumulated load stays
at or below the target at every horizon prefix the stay touches and, when
the feasibility guarantee is on, (b) every day of the stay keeps the ward
separable by gender.  Rejected candidates stay in the pool for later days.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable

import numpy as np

from pragen.distributions import (
    DEFAULT_AGE_SPEC,
    DEFAULT_LOR_SPEC,
    DEFAULT_LOS_SPEC,
    DEFAULT_RATES,
    DistributionChoice,
    Empirical,
    LogNormalSpec,
    RatePolynomial,
    Uniform,
    age_samples,
    fit_rate_from_classes,
    lor_samples,
    los_samples,
)
from pragen.feasibility import Census, Method, WardConfig, classify, is_feasible
from pragen.model import Gender, Horizon, Instance, Patient
from pragen.tables import resolve_table

log = logging.getLogger(__name__)

TEMPLATE_SCHEMA_VERSION = 1
RATE_KEYS = ("female", "private", "emergency", "companion")
LOAD_EPS = 1e-9


class ConfigError(ValueError):
    """Generator configuration failed validation."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


@dataclass(frozen=True)
class GeneratorConfig:
    """Full wizard state: ward, horizon, load target, distributions, rates."""

    ward: WardConfig
    horizon: Horizon
    target_load: float
    ensure_feasibility: bool = True
    age: DistributionChoice = DEFAULT_AGE_SPEC
    los: DistributionChoice = DEFAULT_LOS_SPEC
    joint_age_los: Empirical | None = None
    lor: DistributionChoice = DEFAULT_LOR_SPEC
    rates: dict[str, RatePolynomial] = field(default_factory=lambda: dict(DEFAULT_RATES))
    age_min: int = 18
    age_max: int = 100
    seed: int = 0
    instance_count: int = 1
    name: str | None = None

    @property
    def los_choice(self) -> DistributionChoice:
        return self.joint_age_los if self.joint_age_los is not None else self.los


@dataclass(frozen=True)
class PoolPatient:
    """A generated patient before any dates are fixed."""

    id: str
    age: int
    los: int
    lor: int
    gender: Gender
    is_private: bool
    is_emergency: bool
    has_companion: bool


def validate_config(config: GeneratorConfig) -> list[str]:
    problems: list[str] = []
    if not 0 < config.target_load <= 1:
        problems.append(f"target_load must be in (0, 1], got {config.target_load}")
    if config.instance_count < 1:
        problems.append("instance_count must be >= 1")
    if not 0 <= config.age_min < config.age_max:
        problems.append("need 0 <= age_min < age_max")
    if isinstance(config.age, Uniform) and not (
        config.age_min <= config.age.low and config.age.high <= config.age_max
    ):
        problems.append("uniform age range must lie within [age_min, age_max]")
    if isinstance(config.los, Uniform) and config.los.low < 1:
        problems.append("uniform stay length must start at 1 or above")
    if isinstance(config.los, LogNormalSpec) and config.los.max is not None and config.los.max < 1:
        problems.append("stay-length distribution must allow values >= 1")
    if isinstance(config.age, LogNormalSpec):
        lo = config.age_min if config.age.min is None else max(config.age_min, math.ceil(config.age.min))
        hi = config.age_max if config.age.max is None else min(config.age_max, math.floor(config.age.max))
        if lo > hi:
            problems.append("age truncation leaves no ages inside [age_min, age_max]")
    if isinstance(config.lor, Uniform) and config.lor.low < 0:
        problems.append("uniform registration lead must start at 0 or above")
    if isinstance(config.lor, Empirical):
        problems.append("registration lead supports uniform or log-normal only")
    if config.joint_age_los is not None and config.joint_age_los.table.kind != "joint_age_los":
        problems.append("joint_age_los requires a joint_age_los table")
    if isinstance(config.age, Empirical) and config.age.table.kind != "age_only":
        problems.append("age choice requires an age_only table")
    if isinstance(config.los, Empirical) and config.los.table.kind != "los_only":
        problems.append("los choice requires a los_only table")
    missing = [k for k in RATE_KEYS if k not in config.rates]
    if missing:
        problems.append(f"missing rate polynomials: {', '.join(missing)}")
    return problems


def mean_los_of(choice: DistributionChoice) -> float:
    """Closed-form mean stay length of the chosen distribution."""
    if isinstance(choice, Uniform):
        return (choice.low + choice.high) / 2.0
    if isinstance(choice, LogNormalSpec):
        return choice.mean
    return choice.table.mean_los()


def pool_size(config: GeneratorConfig) -> int:
    """2 * ceil(load * days * beds / mean LOS): twice the expected demand."""
    demand = (
        config.target_load
        * config.horizon.days
        * config.ward.total_capacity
        / mean_los_of(config.los_choice)
    )
    return 2 * math.ceil(demand)


def build_pool(config: GeneratorConfig, rng: np.random.Generator) -> list[PoolPatient]:
    """Draw all personal attributes for the whole pool.

    Age and stay length come first (jointly when configured), then the four
    Bernoulli attributes at their age-dependent rates; emergencies get a
    zero registration lead, everyone else draws one.
    """
    n = pool_size(config)
    if config.joint_age_los is not None:
        ages = age_samples(config.joint_age_los, n, rng, config.age_min, config.age_max)
        table = config.joint_age_los.table
        loses = np.empty(n, dtype=np.int64)
        starts = np.asarray([table.class_of(int(a)) for a in ages])
        for start in np.unique(starts):
            mask = starts == start
            loses[mask] = los_samples(
                config.joint_age_los, int(mask.sum()), rng, age=int(start)
            )
    else:
        ages = age_samples(config.age, n, rng, config.age_min, config.age_max)
        loses = los_samples(config.los, n, rng)
    female = rng.random(n) < config.rates["female"].rate_at(ages)
    private = rng.random(n) < config.rates["private"].rate_at(ages)
    emergency = rng.random(n) < config.rates["emergency"].rate_at(ages)
    companion = rng.random(n) < config.rates["companion"].rate_at(ages)
    lors = lor_samples(config.lor, n, rng)
    lors[emergency] = 0
    return [
        PoolPatient(
            id=f"p{i:05d}",
            age=int(ages[i]),
            los=int(loses[i]),
            lor=int(lors[i]),
            gender=Gender.FEMALE if female[i] else Gender.MALE,
            is_private=bool(private[i]),
            is_emergency=bool(emergency[i]),
            has_companion=bool(companion[i]),
        )
        for i in range(n)
    ]


def _admit(pool_patient: PoolPatient, day: int) -> Patient:
    return Patient(
        id=pool_patient.id,
        registration_day=day - pool_patient.lor,
        admission_day=day,
        discharge_day=day + pool_patient.los,
        age=pool_patient.age,
        gender=pool_patient.gender,
        is_private=pool_patient.is_private,
        is_emergency=pool_patient.is_emergency,
        has_companion=pool_patient.has_companion,
    )


def select_from_pool(
    pool: list[PoolPatient], config: GeneratorConfig, rng: np.random.Generator
) -> Instance:
    """Admission loop over the horizon.

    The load test charges the candidate's whole (horizon-clamped) stay
    against every prefix bound load*t*capacity it touches, so the cumulated
    load can never drift above the target on the strength of beds that were
    admitted earlier but occupied later.  Each day stops after a rejection
    budget of max(20, pool/10) failed draws; rejected candidates remain
    available on later days.
    """
    T = config.horizon.days
    capacity = config.ward.total_capacity
    target = config.target_load
    ensure = config.ensure_feasibility
    occupancy = np.zeros(T + 1, dtype=np.int64)  # occupancy[t], index 0 unused
    females = np.zeros(T + 1, dtype=np.int64)
    males = np.zeros(T + 1, dtype=np.int64)
    bounds = target * capacity * np.arange(T + 1, dtype=float)
    remaining = list(pool)
    accepted: list[Patient] = []
    classify(config.ward)  # warm the family cache before the hot loop
    for t in range(1, T + 1):
        budget = max(20, len(remaining) // 10)
        rejections = 0
        cumulative = np.cumsum(occupancy)
        while remaining and rejections < budget:
            if cumulative[t] + 1 > bounds[t] + LOAD_EPS:
                break  # even a one-day stay would push the cumulated load over
            pick = int(rng.integers(len(remaining)))
            candidate = remaining[pick]
            stay_end = min(t + candidate.los, T + 1)  # exclusive
            added = np.minimum(np.arange(T + 1 - t) + 1, stay_end - t)
            load_ok = bool(
                np.all(cumulative[t:] + added <= bounds[t:] + LOAD_EPS)
            )
            fits = load_ok
            if fits and ensure:
                extra_f = 1 if candidate.gender is Gender.FEMALE else 0
                for s in range(t, stay_end):
                    day_census = Census(females[s] + extra_f, males[s] + 1 - extra_f)
                    if not is_feasible(day_census, config.ward).feasible:
                        fits = False
                        break
            if fits:
                accepted.append(_admit(candidate, t))
                remaining[pick] = remaining[-1]
                remaining.pop()
                occupancy[t:stay_end] += 1
                if candidate.gender is Gender.FEMALE:
                    females[t:stay_end] += 1
                else:
                    males[t:stay_end] += 1
                cumulative = np.cumsum(occupancy)
            else:
                rejections += 1
    achieved = float(occupancy[1:].sum() / (T * capacity))
    meta: dict = {
        "achieved_load": achieved,
        "target_load": target,
        "pool_size": len(pool),
        "pool_remaining": len(remaining),
    }
    if not remaining:
        meta["pool_exhausted"] = True
        log.warning(
            "patient pool exhausted before the horizon end; achieved load %.3f vs target %.3f",
            achieved,
            target,
        )
    return Instance(
        ward=config.ward,
        horizon=config.horizon,
        patients=accepted,
        meta=meta,
    )


def instance_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for instance ``index``: child ``index`` of the
    spawned SeedSequence of ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(seed).spawn(index + 1)[index])


def generate(config: GeneratorConfig) -> list[Instance]:
    """instance_count reproducible instances, one independent stream each."""
    problems = validate_config(config)
    if problems:
        raise ConfigError(problems)
    if config.ensure_feasibility and classify(config.ward).kind == Method.SUBSET_SUM_ORACLE:
        warnings.warn(
            "ward shape has no closed-form separability criterion; the "
            "feasibility guarantee will use the subset-sum fallback",
            stacklevel=2,
        )
    digest = config_digest(config)
    instances = []
    for k in range(config.instance_count):
        rng = instance_rng(config.seed, k)
        pool = build_pool(config, rng)
        instance = select_from_pool(pool, config, rng)
        instance.meta.update(
            seed=config.seed,
            instance_index=k,
            config_digest=digest,
            generated_at=None,
        )
        instances.append(instance)
    return instances


# --- template (config file) round-trip ------------------------------------

def _choice_to_dict(choice: DistributionChoice) -> dict:
    if isinstance(choice, Uniform):
        return {"kind": "uniform", "low": choice.low, "high": choice.high}
    if isinstance(choice, LogNormalSpec):
        return {
            "kind": "lognormal",
            "mean": choice.mean,
            "std_dev": choice.std_dev,
            "min": choice.min,
            "max": choice.max,
        }
    return {"kind": "empirical", "table": choice.source}


def choice_from_dict(d: dict, where: str, resolver: Callable[[str], Empirical]) -> DistributionChoice:
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigError([f"{where}: expected an object with a 'kind' field"])
    kind = d["kind"]
    try:
        if kind == "uniform":
            return Uniform(int(d["low"]), int(d["high"]))
        if kind == "lognormal":
            return LogNormalSpec(
                mean=float(d["mean"]),
                std_dev=float(d["std_dev"]),
                min=None if d.get("min") is None else float(d["min"]),
                max=None if d.get("max") is None else float(d["max"]),
            )
        if kind == "empirical":
            return resolver(str(d["table"]))
    except ConfigError:
        raise
    except (KeyError, ValueError, TypeError, FileNotFoundError) as exc:
        raise ConfigError([f"{where}: {exc}"]) from exc
    raise ConfigError([f"{where}: unknown distribution kind {kind!r}"])


def _rate_from_dict(d: dict, where: str) -> RatePolynomial:
    if not isinstance(d, dict):
        raise ConfigError([f"{where}: expected an object"])
    if "coefficients" in d:
        coefficients = d["coefficients"]
        if not isinstance(coefficients, list) or len(coefficients) != 4:
            raise ConfigError([f"{where}: 'coefficients' must list [c3, c2, c1, c0]"])
        return RatePolynomial(tuple(float(c) for c in coefficients))
    if "classes" in d:
        try:
            poly, _ = fit_rate_from_classes([(float(a), float(r)) for a, r in d["classes"]])
        except (ValueError, TypeError) as exc:
            raise ConfigError([f"{where}: {exc}"]) from exc
        return poly
    raise ConfigError([f"{where}: needs 'coefficients' or 'classes'"])


def config_to_dict(config: GeneratorConfig) -> dict:
    """Normalized template dict; the digest is taken over this form."""
    doc = {
        "schema_version": TEMPLATE_SCHEMA_VERSION,
        "ward": [
            {"id": i, "capacity": c} for i, c in enumerate(config.ward.capacities)
        ],
        "horizon": {"days": config.horizon.days},
        "target_load": config.target_load,
        "ensure_feasibility": config.ensure_feasibility,
        "age": None if config.joint_age_los is not None else _choice_to_dict(config.age),
        "los": None if config.joint_age_los is not None else _choice_to_dict(config.los),
        "joint_age_los": (
            None if config.joint_age_los is None else _choice_to_dict(config.joint_age_los)
        ),
        "lor": _choice_to_dict(config.lor),
        "rates": {
            key: {"coefficients": list(config.rates[key].coefficients)}
            for key in RATE_KEYS
        },
        "age_min": config.age_min,
        "age_max": config.age_max,
        "seed": config.seed,
        "instance_count": config.instance_count,
    }
    if config.name:
        doc["name"] = config.name
    return doc


def config_digest(config: GeneratorConfig) -> str:
    canonical = json.dumps(config_to_dict(config), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


TEMPLATE_KEYS = {
    "schema_version",
    "name",
    "ward",
    "horizon",
    "target_load",
    "ensure_feasibility",
    "age",
    "los",
    "joint_age_los",
    "lor",
    "rates",
    "age_min",
    "age_max",
    "seed",
    "instance_count",
}


def config_from_dict(
    doc: dict,
    base_dir: str | Path | None = None,
    table_resolver: Callable[[str], Empirical] | None = None,
) -> GeneratorConfig:
    """Build and validate a GeneratorConfig from a template dict.

    ``table_resolver`` maps an empirical table reference to a loaded table;
    the default accepts builtin ids and filesystem paths relative to
    ``base_dir``.
    """
    if not isinstance(doc, dict):
        raise ConfigError(["template must be a JSON object"])
    version = doc.get("schema_version")
    if version != TEMPLATE_SCHEMA_VERSION:
        raise ConfigError([f"unsupported template schema_version {version!r}"])
    unknown = sorted(set(doc) - TEMPLATE_KEYS)
    if unknown:
        raise ConfigError([f"unknown template fields: {', '.join(unknown)}"])

    def default_resolver(ref: str) -> Empirical:
        return Empirical(table=resolve_table(ref, base_dir), source=ref)

    resolver = table_resolver or default_resolver

    rooms = doc.get("ward")
    if not isinstance(rooms, list) or not rooms:
        raise ConfigError(["'ward' must be a non-empty list of rooms"])
    try:
        parsed = sorted((int(r["id"]), int(r["capacity"])) for r in rooms)
        ward = WardConfig(tuple(c for _, c in parsed))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError([f"bad ward: {exc}"]) from exc
    horizon_doc = doc.get("horizon")
    if not isinstance(horizon_doc, dict) or "days" not in horizon_doc:
        raise ConfigError(["'horizon' must be an object with 'days'"])
    try:
        horizon = Horizon(int(horizon_doc["days"]))
    except (TypeError, ValueError) as exc:
        raise ConfigError([f"bad horizon: {exc}"]) from exc
    if "target_load" not in doc:
        raise ConfigError(["missing 'target_load'"])

    joint = doc.get("joint_age_los")
    if joint is not None and (doc.get("age") is not None or doc.get("los") is not None):
        raise ConfigError(["choose either joint_age_los or independent age and los"])
    joint_choice = None
    if joint is not None:
        parsed_joint = choice_from_dict(joint, "joint_age_los", resolver)
        if not isinstance(parsed_joint, Empirical):
            raise ConfigError(["joint_age_los must be an empirical table choice"])
        joint_choice = parsed_joint

    rates = dict(DEFAULT_RATES)
    rates_doc = doc.get("rates", {})
    if not isinstance(rates_doc, dict):
        raise ConfigError(["'rates' must be an object"])
    unknown_rates = sorted(set(rates_doc) - set(RATE_KEYS))
    if unknown_rates:
        raise ConfigError([f"unknown rate keys: {', '.join(unknown_rates)}"])
    for key, value in rates_doc.items():
        rates[key] = _rate_from_dict(value, f"rates.{key}")

    try:
        config = GeneratorConfig(
            ward=ward,
            horizon=horizon,
            target_load=float(doc["target_load"]),
            ensure_feasibility=bool(doc.get("ensure_feasibility", True)),
            age=(
                DEFAULT_AGE_SPEC
                if doc.get("age") is None
                else choice_from_dict(doc["age"], "age", resolver)
            ),
            los=(
                DEFAULT_LOS_SPEC
                if doc.get("los") is None
                else choice_from_dict(doc["los"], "los", resolver)
            ),
            joint_age_los=joint_choice,
            lor=(
                DEFAULT_LOR_SPEC
                if doc.get("lor") is None
                else choice_from_dict(doc["lor"], "lor", resolver)
            ),
            rates=rates,
            age_min=int(doc.get("age_min", 18)),
            age_max=int(doc.get("age_max", 100)),
            seed=int(doc.get("seed", 0)),
            instance_count=int(doc.get("instance_count", 1)),
            name=doc.get("name"),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError([str(exc)]) from exc
    problems = validate_config(config)
    if problems:
        raise ConfigError(problems)
    return config


def default_template() -> dict:
    """A fully explicit template with the extracted defaults."""
    config = GeneratorConfig(
        ward=WardConfig((1, 2, 2, 2, 4)),
        horizon=Horizon(28),
        target_load=0.8,
        seed=0,
        instance_count=1,
    )
    return config_to_dict(config)


def with_overrides(
    config: GeneratorConfig,
    seed: int | None = None,
    instance_count: int | None = None,
    target_load: float | None = None,
) -> GeneratorConfig:
    updates: dict = {}
    if seed is not None:
        updates["seed"] = seed
    if instance_count is not None:
        updates["instance_count"] = instance_count
    if target_load is not None:
        updates["target_load"] = target_load
    return replace(config, **updates) if updates else config
