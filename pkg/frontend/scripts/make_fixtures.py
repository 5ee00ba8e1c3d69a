"""Regenerate the shared test fixtures from the Python package.

The colour fixture pins the server-side penalty-to-RGB function so the
browser port is checked for exact equality; the CSV pair feeds the
server round-trip test.  Run from anywhere:

    python3 scripts/make_fixtures.py
"""

import json
from pathlib import Path

import numpy as np

from mapdiag import ColourScale, ColourScheme, colour_of

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def penalty_vector(cap: float) -> list[float]:
    values = np.linspace(0.0, 1.25 * cap, 250).tolist()
    values += [0.0, cap / 3, cap / 2, cap - 1e-9, cap, 10 * cap]
    assert len(values) == 256
    return values


def colour_entries() -> list[dict]:
    entries = []
    for scheme in ColourScheme:
        for cap in (16.0, 20.0):
            scale = ColourScale(scheme, cap)
            for penalty in penalty_vector(cap):
                entries.append({
                    "scheme": scheme.value,
                    "cap": cap,
                    "penalty": penalty,
                    "rgb": list(colour_of(scale, penalty)),
                })
    return entries


def write_points(path: Path, coords: np.ndarray) -> None:
    lines = [",".join(repr(v) for v in row) for row in coords.tolist()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / "colours.json").write_text(
        json.dumps(colour_entries(), indent=1) + "\n", encoding="utf-8")
    rng = np.random.default_rng(20260814)
    write_points(FIXTURES / "data.csv", rng.normal(size=(24, 5)))
    write_points(FIXTURES / "emb.csv", rng.normal(size=(24, 2)))
    print(f"fixtures written to {FIXTURES}")


if __name__ == "__main__":
    main()
