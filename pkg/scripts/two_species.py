"""Remove one strategy from an evolved population and see who takes over.

    python scripts/two_species.py --evolve-steps 10000 --max-steps 100000 --replicates 3
"""

import argparse

from coevopd.experiments import evolve, two_species_outcome
from coevopd.game import Strategy as S

PAIRS = [(S.C, S.A), (S.D, S.A), (S.C, S.D)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--evolve-steps", type=int, default=10_000)
    ap.add_argument("--max-steps", type=int, default=100_000)
    ap.add_argument("--replicates", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print("replicate,pair,stop_step,frac_c,frac_d,frac_a,outcome")
    for i in range(args.replicates):
        ev = evolve(args.seed + i, args.evolve_steps)
        for pair in PAIRS:
            s = two_species_outcome(ev.lattice, pair, seed=args.seed + 100 + i, max_steps=args.max_steps)
            fc, fd, fa = s.final()
            outcome = s.absorbed.name if s.absorbed is not None else "mixed"
            label = pair[0].name + pair[1].name
            print(f"{i},{label},{s.stop_step},{fc:.4f},{fd:.4f},{fa:.4f},{outcome}", flush=True)


if __name__ == "__main__":
    main()
