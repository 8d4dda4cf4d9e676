#!/usr/bin/env python3
"""Regenerate the bundled placeholder ward-shape tables.

The shapes are synthetic: mixtures of discretized bumps chosen to give each
named ward type a recognizably different profile (step-like or peaked age
curves, increasingly heavy stay-length tails, and joint heat-maps with
distinct structure).  They exist so the generator, previews and wizard can
be exercised without access to clinical records.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parents[1] / "src" / "pragen" / "tables"

AGES = np.arange(18, 101)
LOSES = np.arange(0, 25)
CLASS_STARTS = np.arange(18, 101, 5)

HEADER = (
    "# synthetic placeholder shape, not derived from clinical data\n"
    "# regenerate with scripts/make_placeholder_tables.py\n"
)


def bump(x: np.ndarray, center: float, width: float) -> np.ndarray:
    return np.exp(-0.5 * ((x - center) / width) ** 2)


def plateau(x: np.ndarray, lo: float, hi: float) -> np.ndarray:
    return ((x >= lo) & (x <= hi)).astype(float)


def normalize(w: np.ndarray) -> np.ndarray:
    w = np.clip(w, 0.0, None)
    return w / w.sum()


def write_age(name: str, weights: np.ndarray) -> None:
    lines = [HEADER, "kind: age_only\n", "age_min: 18\nage_max: 100\n"]
    for a, w in zip(AGES, normalize(weights)):
        if w > 1e-9:
            lines.append(f"{a}, {w:.6g}\n")
    (OUT / f"{name}.table").write_text("".join(lines), encoding="utf-8")


def write_los(name: str, weights: np.ndarray) -> None:
    lines = [HEADER, "kind: los_only\n", "los_min: 0\nlos_max: 24\n"]
    for l, w in zip(LOSES, normalize(weights)):
        if w > 1e-9:
            lines.append(f"{l}, {w:.6g}\n")
    (OUT / f"{name}.table").write_text("".join(lines), encoding="utf-8")


def write_joint(name: str, grid: np.ndarray) -> None:
    # grid rows follow CLASS_STARTS, columns follow LOSES (los >= 1 only)
    lines = [
        HEADER,
        "kind: joint_age_los\n",
        "age_min: 18\nage_max: 100\nlos_min: 0\nlos_max: 24\nage_class_width: 5\n",
    ]
    grid = normalize(grid)
    for i, start in enumerate(CLASS_STARTS):
        for j, los in enumerate(LOSES):
            w = grid[i, j]
            if w > 1e-9:
                lines.append(f"{start}, {los}, {w:.6g}\n")
    (OUT / f"{name}.table").write_text("".join(lines), encoding="utf-8")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)

    write_age("age_type_1", 0.6 * plateau(AGES, 35, 55) + plateau(AGES, 60, 80) + 0.05)
    write_age(
        "age_type_2",
        0.4 * plateau(AGES, 25, 40) + 0.7 * plateau(AGES, 45, 60) + plateau(AGES, 65, 85) + 0.05,
    )
    write_age("age_type_3", bump(AGES, 74, 6.0) + 0.02)
    write_age("age_type_4", bump(AGES, 62, 16.0) + 0.03)

    write_los("los_type_1", 0.9 * plateau(LOSES, 1, 12) + 0.2 * plateau(LOSES, 13, 20))
    write_los("los_type_2", bump(LOSES, 4, 2.5) * (LOSES >= 1))
    write_los("los_type_3", bump(LOSES, 6, 3.0) * (LOSES >= 1))
    write_los("los_type_4", bump(LOSES, 9, 4.0) * (LOSES >= 1))
    write_los("los_type_5", (np.exp(-LOSES / 9.0) + 0.35 * bump(LOSES, 20, 3.0)) * (LOSES >= 1))

    classes = CLASS_STARTS[:, None].astype(float)
    lv = LOSES[None, :].astype(float)
    positive = (lv >= 1).astype(float)

    write_joint("joint_type_1", positive * bump(classes, 55, 18) * np.exp(-lv / 2.5))
    write_joint("joint_type_2", positive * bump(classes, 60, 15) * bump(lv, 5, 2.5))
    # stay length grows with age
    write_joint(
        "joint_type_3",
        positive * bump(classes, 65, 20) * bump(lv, 2 + (classes - 18) / 8.0, 2.0),
    )
    write_joint("joint_type_4", positive * bump(classes, 80, 8) * np.exp(-lv / 2.0))
    write_joint(
        "joint_type_5",
        positive
        * (bump(classes, 55, 12) * bump(lv, 4, 2.0) + 0.25 * bump(classes, 25, 3) * bump(lv, 18, 2.0)),
    )

    print(f"wrote tables into {OUT}")


if __name__ == "__main__":
    main()
