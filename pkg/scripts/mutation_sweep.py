"""Recovery of coexistence after mutating part of one strategy into another.

Sweeps the mutation rate for every ordered strategy pair on one evolved
population, with and without resetting the link weights.

    python scripts/mutation_sweep.py --rates 0.01,0.5,0.99 --reset
"""

import argparse
import itertools

from coevopd.experiments import evolve, mutation_recovery
from coevopd.game import Strategy


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--evolve-steps", type=int, default=10_000)
    ap.add_argument("--rates", default="0.01,0.25,0.5,0.75,0.99")
    ap.add_argument("--horizon", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--reset", action="store_true", help="also run with weights reset to 1")
    args = ap.parse_args()

    ev = evolve(args.seed, args.evolve_steps)
    resets = (False, True) if args.reset else (False,)
    print("from,to,rate,reset,recovered,stop_step,frac_c,frac_d,frac_a")
    for src, dst in itertools.permutations(Strategy, 2):
        for rate in (float(r) for r in args.rates.split(",")):
            for reset in resets:
                r = mutation_recovery(ev.lattice, src, dst, args.seed + 1, rate, args.horizon, reset)
                fc, fd, fa = r.final
                print(f"{src.name},{dst.name},{rate},{int(reset)},{int(r.recovered)},"
                      f"{r.stop_step},{fc:.4f},{fd:.4f},{fa:.4f}", flush=True)


if __name__ == "__main__":
    main()
