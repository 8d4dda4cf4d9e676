"""Probability models for patient attributes.

Ages, lengths of stay and registration lead times come from truncated
log-normal, integer-uniform or empirical distributions; the four boolean
attributes (gender, private room entitlement, emergency status, companion)
are Bernoulli with an age-dependent rate given by a clamped cubic.

Log-normal parameters are interpreted at distribution level: ``mean`` and
``std_dev`` are the mean and standard deviation of the sampled quantity
itself, not of the underlying normal.  They are converted internally via
mu = ln(mean^2 / sqrt(mean^2 + sd^2)) and sigma^2 = ln(1 + sd^2/mean^2).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

MAX_REJECTION_ROUNDS = 1000


@dataclass(frozen=True)
class LogNormalSpec:
    """Log-normal by distribution-level mean/std, optionally truncated.

    Draws outside [min, max] are rejected and redrawn; after
    MAX_REJECTION_ROUNDS the draw is clamped instead.
    """

    mean: float
    std_dev: float
    min: float | None = None
    max: float | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mean) and math.isfinite(self.std_dev)):
            raise ValueError("mean and std_dev must be finite")
        if self.mean <= 0 or self.std_dev <= 0:
            raise ValueError("mean and std_dev must be > 0")
        if self.min is not None and self.max is not None and not self.min < self.max:
            raise ValueError("truncation needs min < max")

    def underlying(self) -> tuple[float, float]:
        """(mu, sigma) of the underlying normal."""
        m2 = self.mean * self.mean
        mu = math.log(m2 / math.sqrt(m2 + self.std_dev * self.std_dev))
        sigma = math.sqrt(math.log(1.0 + self.std_dev * self.std_dev / m2))
        return mu, sigma

    def roundtrip(self) -> tuple[float, float]:
        """Distribution mean/std recomputed from the underlying parameters."""
        mu, sigma = self.underlying()
        mean = math.exp(mu + sigma * sigma / 2.0)
        var = (math.exp(sigma * sigma) - 1.0) * math.exp(2.0 * mu + sigma * sigma)
        return mean, math.sqrt(var)


@dataclass(frozen=True)
class Uniform:
    """Integer-uniform on the inclusive range [low, high]."""

    low: int
    high: int

    def __post_init__(self) -> None:
        if self.low > self.high:
            raise ValueError("uniform needs low <= high")


# Default profiles for a general adult ward population.
DEFAULT_AGE_SPEC = LogNormalSpec(mean=61.5594489311164, std_dev=17.495923251794)
DEFAULT_LOS_SPEC = LogNormalSpec(mean=4.02136785471962, std_dev=1.24578691452702)
DEFAULT_LOR_SPEC = LogNormalSpec(mean=6.11783570735678, std_dev=1.5118524126249)


@dataclass(frozen=True)
class RatePolynomial:
    """Cubic age-to-rate map, clamped into [0, 1] on evaluation.

    coefficients = (c3, c2, c1, c0) for c3*x^3 + c2*x^2 + c1*x + c0.
    """

    coefficients: tuple[float, float, float, float]

    def raw_at(self, age):
        """Unclamped polynomial value (scalar or numpy array input)."""
        c3, c2, c1, c0 = self.coefficients
        return ((c3 * age + c2) * age + c1) * age + c0

    def rate_at(self, age):
        return np.clip(self.raw_at(age), 0.0, 1.0)


DEFAULT_FEMALE_RATE = RatePolynomial(
    (2.58204297e-6, -3.16813273e-4, 8.9469195e-3, 0.438171831286241)
)
DEFAULT_PRIVATE_RATE = RatePolynomial(
    (1.61572557e-6, 2.86972783e-4, 1.34752628e-2, 0.271661363)
)
DEFAULT_EMERGENCY_RATE = RatePolynomial(
    (2.21895335e-6, 2.9891084e-4, 1.01995134e-2, 0.279651026)
)
DEFAULT_COMPANION_RATE = RatePolynomial(
    (5.65061344e-8, 2.83196514e-5, 3.01802321e-3, 0.0977778296)
)

DEFAULT_RATES = {
    "female": DEFAULT_FEMALE_RATE,
    "private": DEFAULT_PRIVATE_RATE,
    "emergency": DEFAULT_EMERGENCY_RATE,
    "companion": DEFAULT_COMPANION_RATE,
}


def fit_rate_from_classes(points: list[tuple[float, float]]) -> tuple[RatePolynomial, float]:
    """Least-squares cubic through (age-class midpoint, rate) points.

    Returns the polynomial and the residual sum of squares.  Fewer than four
    distinct midpoints cannot pin a cubic; the degree is reduced with a
    warning (at least two points are required).
    """
    if len(points) < 4:
        raise ValueError("need at least 4 (midpoint, rate) points for a cubic fit")
    x = np.asarray([p[0] for p in points], dtype=float)
    y = np.asarray([p[1] for p in points], dtype=float)
    if np.any((y < 0) | (y > 1)):
        raise ValueError("rates must lie in [0, 1]")
    degree = 3
    distinct = np.unique(x).size
    if distinct < 4:
        degree = max(1, distinct - 1)
        warnings.warn(
            f"only {distinct} distinct midpoints; fitting degree {degree} instead of 3",
            stacklevel=2,
        )
    fitted = np.polynomial.polynomial.Polynomial.fit(x, y, degree).convert()
    ascending = np.zeros(4)
    ascending[: fitted.coef.size] = fitted.coef
    poly = RatePolynomial(tuple(ascending[::-1]))
    residual = float(np.sum((poly.raw_at(x) - y) ** 2))
    return poly, residual


TABLE_KINDS = ("age_only", "los_only", "joint_age_los")


@dataclass(frozen=True)
class EmpiricalTable:
    """Normalized weights over ages, stay lengths, or (age class, LOS) cells.

    ``ages`` holds individual years for age_only tables and age-class start
    years for joint tables; joint classes cover age_class_width consecutive
    years.  Weights are normalized to sum to 1 on construction.
    """

    kind: str
    ages: tuple[int, ...]
    loses: tuple[int, ...]
    weights: tuple[float, ...]
    age_min: int = 18
    age_max: int = 100
    los_min: int = 0
    los_max: int = 24
    age_class_width: int = 5

    def __post_init__(self) -> None:
        if self.kind not in TABLE_KINDS:
            raise ValueError(f"unknown table kind {self.kind!r}")
        if not self.weights:
            raise ValueError("table has no cells")
        if any(w < 0 or not math.isfinite(w) for w in self.weights):
            raise ValueError("weights must be non-negative and finite")
        total = sum(self.weights)
        if total <= 0:
            raise ValueError("table has no positive weight")
        object.__setattr__(self, "weights", tuple(w / total for w in self.weights))
        if self.kind != "los_only":
            lo, hi = self.age_min, self.age_max
            for a in self.ages:
                if not lo <= a <= hi:
                    raise ValueError(f"age {a} outside declared support {lo}..{hi}")
                if self.kind == "joint_age_los" and (a - lo) % self.age_class_width:
                    raise ValueError(f"age class start {a} not aligned to width {self.age_class_width}")
        if self.kind != "age_only":
            for l in self.loses:
                if not self.los_min <= l <= self.los_max:
                    raise ValueError(f"los {l} outside declared support {self.los_min}..{self.los_max}")
        if self.kind != "age_only" and any(l == 0 and w > 0 for l, w in zip(self.loses, self.weights)):
            warnings.warn(
                "table carries weight on los=0; those cells are skipped when sampling stays",
                stacklevel=2,
            )

    def class_of(self, age: int) -> int:
        """Start year of the age class containing ``age``."""
        return self.age_min + ((age - self.age_min) // self.age_class_width) * self.age_class_width

    def class_range(self, class_start: int) -> tuple[int, int]:
        """Inclusive year range of a class, clipped to the declared support."""
        return class_start, min(class_start + self.age_class_width - 1, self.age_max)

    def age_cells(self, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
        """(age values or class starts, weights) restricted to classes/ages
        overlapping [lo, hi], renormalized."""
        if self.kind == "los_only":
            raise ValueError("los_only table has no age dimension")
        ages = np.asarray(self.ages)
        weights = np.asarray(self.weights)
        if self.kind == "age_only":
            keep = (ages >= lo) & (ages <= hi)
        else:
            # stays shorter than one day never enter an instance, so the
            # sampled population is the table restricted to los >= 1
            ends = np.minimum(ages + self.age_class_width - 1, self.age_max)
            keep = (ends >= lo) & (ages <= hi) & (np.asarray(self.loses) >= 1)
            agg: dict[int, float] = {}
            for a, w in zip(ages[keep], weights[keep]):
                agg[int(a)] = agg.get(int(a), 0.0) + float(w)
            ages = np.asarray(sorted(agg))
            weights = np.asarray([agg[a] for a in sorted(agg)])
            keep = np.ones(ages.size, dtype=bool)
        ages, weights = ages[keep], weights[keep]
        if weights.sum() <= 0:
            raise ValueError(f"no age mass inside {lo}..{hi}")
        return ages, weights / weights.sum()

    def los_cells(self, age: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        """(los values, weights) with los >= 1; joint tables condition on the
        class containing ``age`` and fall back to the marginal when empty."""
        if self.kind == "age_only":
            raise ValueError("age_only table has no los dimension")
        loses = np.asarray(self.loses)
        weights = np.asarray(self.weights)
        keep = loses >= 1
        if self.kind == "joint_age_los" and age is not None:
            start = self.class_of(age)
            in_class = keep & (np.asarray(self.ages) == start)
            if weights[in_class].sum() > 0:
                keep = in_class
            else:
                warnings.warn(
                    f"no stay-length mass in age class starting {start}; using the marginal",
                    stacklevel=2,
                )
        loses, weights = loses[keep], weights[keep]
        if weights.sum() <= 0:
            raise ValueError("no positive-stay mass in table")
        return loses, weights / weights.sum()

    def mean_los(self) -> float:
        loses, weights = self.los_cells()
        return float(np.sum(loses * weights))


@dataclass(frozen=True)
class Empirical:
    """Distribution choice backed by a loaded table; ``source`` remembers the
    table id or path it came from for config round-trips."""

    table: EmpiricalTable
    source: str = ""


DistributionChoice = Uniform | LogNormalSpec | Empirical


_HEADER_KEYS = {
    "kind": str,
    "age_min": int,
    "age_max": int,
    "los_min": int,
    "los_max": int,
    "age_class_width": int,
}


def parse_empirical_table(text: str, label: str = "<table>") -> EmpiricalTable:
    """Parse the line-oriented table format (see docs/empirical_table_format.md)."""
    header: dict = {}
    rows: list[tuple[int, ...]] = []
    weights: list[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line and "," not in line:
            key, _, value = line.partition(":")
            key = key.strip()
            if key not in _HEADER_KEYS:
                raise ValueError(f"{label}:{lineno}: unknown header key {key!r}")
            caster = _HEADER_KEYS[key]
            header[key] = value.strip() if caster is str else caster(value.strip())
            continue
        parts = [p.strip() for p in line.split(",")]
        kind = header.get("kind")
        if kind is None:
            raise ValueError(f"{label}:{lineno}: data row before 'kind:' header")
        expected = 3 if kind == "joint_age_los" else 2
        if len(parts) != expected:
            raise ValueError(f"{label}:{lineno}: expected {expected} comma-separated fields")
        try:
            coords = tuple(int(p) for p in parts[:-1])
            weight = float(parts[-1])
        except ValueError as exc:
            raise ValueError(f"{label}:{lineno}: {exc}") from exc
        rows.append(coords)
        weights.append(weight)
    if "kind" not in header:
        raise ValueError(f"{label}: missing 'kind:' header")
    kind = header.pop("kind")
    if kind not in TABLE_KINDS:
        raise ValueError(f"{label}: unknown table kind {kind!r}")
    if len(set(rows)) != len(rows):
        raise ValueError(f"{label}: duplicate cells")
    if kind == "age_only":
        ages = tuple(r[0] for r in rows)
        loses: tuple[int, ...] = ()
    elif kind == "los_only":
        ages = ()
        loses = tuple(r[0] for r in rows)
    else:
        ages = tuple(r[0] for r in rows)
        loses = tuple(r[1] for r in rows)
    return EmpiricalTable(kind=kind, ages=ages, loses=loses, weights=tuple(weights), **header)


def load_empirical_table(source: str | Path) -> EmpiricalTable:
    path = Path(source)
    return parse_empirical_table(path.read_text(encoding="utf-8"), label=str(path))


def sample_lognormal(spec: LogNormalSpec, rng: np.random.Generator) -> float:
    """One real-valued draw, rejection-truncated to [spec.min, spec.max]."""
    mu, sigma = spec.underlying()
    lo = -math.inf if spec.min is None else spec.min
    hi = math.inf if spec.max is None else spec.max
    x = rng.lognormal(mu, sigma)
    for _ in range(MAX_REJECTION_ROUNDS):
        if lo <= x <= hi:
            return x
        x = rng.lognormal(mu, sigma)
    return min(max(x, lo), hi)


def _lognormal_int_samples(
    spec: LogNormalSpec, n: int, rng: np.random.Generator, lo: int, hi: float
) -> np.ndarray:
    """n nearest-integer draws with rejection into [lo, hi], clamped after
    MAX_REJECTION_ROUNDS redraw rounds."""
    mu, sigma = spec.underlying()
    out = np.empty(n, dtype=np.int64)
    pending = np.arange(n)
    values = np.rint(rng.lognormal(mu, sigma, size=n)).astype(np.int64)
    for _ in range(MAX_REJECTION_ROUNDS):
        ok = (values >= lo) & (values <= hi)
        out[pending[ok]] = values[ok]
        pending = pending[~ok]
        if pending.size == 0:
            return out
        values = np.rint(rng.lognormal(mu, sigma, size=pending.size)).astype(np.int64)
    out[pending] = np.clip(values, lo, hi)
    return out


def age_samples(
    choice: DistributionChoice,
    n: int,
    rng: np.random.Generator,
    age_min: int = 18,
    age_max: int = 100,
) -> np.ndarray:
    """n integer ages in [age_min, age_max] from the configured distribution."""
    if isinstance(choice, Uniform):
        return rng.integers(choice.low, choice.high + 1, size=n)
    if isinstance(choice, LogNormalSpec):
        lo = age_min if choice.min is None else max(age_min, math.ceil(choice.min))
        hi = age_max if choice.max is None else min(age_max, math.floor(choice.max))
        return _lognormal_int_samples(choice, n, rng, lo, hi)
    table = choice.table
    cells, weights = table.age_cells(age_min, age_max)
    idx = rng.choice(cells.size, size=n, p=weights)
    if table.kind == "age_only":
        return cells[idx]
    starts = cells[idx]
    low = np.maximum(starts, age_min)
    high = np.minimum(starts + table.age_class_width - 1, min(age_max, table.age_max))
    return rng.integers(low, high + 1)


def los_samples(
    choice: DistributionChoice,
    n: int,
    rng: np.random.Generator,
    age: int | None = None,
) -> np.ndarray:
    """n integer stay lengths >= 1; joint tables condition on the age class."""
    if isinstance(choice, Uniform):
        if choice.low < 1:
            raise ValueError("stay lengths must be >= 1")
        return rng.integers(choice.low, choice.high + 1, size=n)
    if isinstance(choice, LogNormalSpec):
        lo = 1 if choice.min is None else max(1, math.ceil(choice.min))
        hi = math.inf if choice.max is None else math.floor(choice.max)
        return _lognormal_int_samples(choice, n, rng, lo, hi)
    loses, weights = choice.table.los_cells(age)
    return loses[rng.choice(loses.size, size=n, p=weights)]


def lor_samples(
    choice: DistributionChoice, n: int, rng: np.random.Generator
) -> np.ndarray:
    """n integer registration lead times >= 0 (emergencies are handled by the
    caller and never drawn here)."""
    if isinstance(choice, Uniform):
        if choice.low < 0:
            raise ValueError("registration lead times must be >= 0")
        return rng.integers(choice.low, choice.high + 1, size=n)
    if isinstance(choice, LogNormalSpec):
        lo = 0 if choice.min is None else max(0, math.ceil(choice.min))
        hi = math.inf if choice.max is None else math.floor(choice.max)
        return _lognormal_int_samples(choice, n, rng, lo, hi)
    raise ValueError("registration lead times support uniform or log-normal only")


def sample_age(
    choice: DistributionChoice,
    rng: np.random.Generator,
    age_min: int = 18,
    age_max: int = 100,
) -> int:
    return int(age_samples(choice, 1, rng, age_min, age_max)[0])


def sample_los(
    choice: DistributionChoice, rng: np.random.Generator, age: int | None = None
) -> int:
    return int(los_samples(choice, 1, rng, age=age)[0])


def sample_lor(
    choice: DistributionChoice, is_emergency: bool, rng: np.random.Generator
) -> int:
    if is_emergency:
        return 0
    return int(lor_samples(choice, 1, rng)[0])
