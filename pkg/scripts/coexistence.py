"""Strategy fractions over time at b=1.9, l=0.5, delta/delta_max=0.3, delta_max=0.8.

Writes ``timeseries.csv`` plus grid-text and PPM snapshots of the first and
last step, and prints the min/max fraction seen after the transient.

    python scripts/coexistence.py --steps 10000 --out out/coexistence
"""

import argparse
from pathlib import Path

import numpy as np

from coevopd import engine
from coevopd.experiments import PAPER_PARAMS
from coevopd.io import SnapshotWriter, write_timeseries_csv
from coevopd.rng import RngStream
from coevopd.scenarios import init_uniform_thirds


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=10_000)
    ap.add_argument("--side", type=int, default=102)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, default=Path("out/coexistence"))
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    rng = RngStream(args.seed)
    lattice = init_uniform_thirds(args.side, rng)
    snaps = SnapshotWriter(args.out, [0, args.steps])
    series = engine.run(lattice, PAPER_PARAMS, args.steps, rng, observers=[snaps])
    write_timeseries_csv(series, args.out / "timeseries.csv")

    tail = np.asarray(series.fractions)[len(series) // 2:]
    for name, col in zip("CDA", tail.T):
        print(f"{name}: min {col.min():.3f}  max {col.max():.3f}  mean {col.mean():.3f}")


if __name__ == "__main__":
    main()
