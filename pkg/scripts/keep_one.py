"""Keep a single survivor of a mutated strategy and test whether it rebuilds the cycle.

For each survivor the script prints its post-mutation neighbourhood census
and whether coexistence came back within the horizon.

    python scripts/keep_one.py --from D --to A --survivors 10
"""

import argparse

from coevopd.experiments import evolve, keep_one_recovery
from coevopd.game import Strategy
from coevopd.rng import RngStream
from coevopd.scenarios import census_after_mutation


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--from", dest="src", type=Strategy.parse, default=Strategy.D)
    ap.add_argument("--to", dest="dst", type=Strategy.parse, default=Strategy.A)
    ap.add_argument("--survivors", type=int, default=10)
    ap.add_argument("--evolve-steps", type=int, default=10_000)
    ap.add_argument("--horizon", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--reset", action="store_true")
    args = ap.parse_args()

    ev = evolve(args.seed, args.evolve_steps)
    census = census_after_mutation(ev.lattice, args.src, args.dst)
    members = [int(i) for i in (ev.lattice.strategies == int(args.src)).nonzero()[0]]
    picks = RngStream(args.seed + 7).sample(len(members), min(args.survivors, len(members)))
    print("row,col,nC,nD,nA,recovered,stop_step")
    for j, p in enumerate(picks):
        agent = members[p]
        r = keep_one_recovery(ev.lattice, args.src, args.dst, agent, args.seed + 1000 + j,
                              args.horizon, args.reset)
        row, col = ev.lattice.coords(agent)
        nc, nd, na = census[agent]
        print(f"{row},{col},{nc},{nd},{na},{int(r.recovered)},{r.stop_step}", flush=True)


if __name__ == "__main__":
    main()
