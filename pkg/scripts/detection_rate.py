"""Empirical rejection rate of tampered reconstructions versus the census prediction.

One KGH share per dealing is replaced by uniform noise, which moves the
reconstructed secret to a uniform point of the digit space.  The restriction
check should then reject at rate 1 - valid/total.

    python scripts/detection_rate.py --vertices 4 --predicate connected --trials 10000
"""
import argparse

from graphshare.analysis import census
from graphshare.graph import ColoredGraph, Graph, Predicate, evaluate_predicate
from graphshare.protocol import Kgh, randomize_share, reconstruct_and_verify, share_colored_graph
from graphshare.schemes import RandomSource


def first_valid_graph(n, predicate):
    path = Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])
    for g in (path, Graph.complete(n), Graph.empty(n)):
        if evaluate_predicate(predicate, ColoredGraph.uncolored(g)):
            return g
    raise SystemExit(f"no simple witness graph for {predicate}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--vertices", type=int, default=4)
    ap.add_argument("--predicate", default="connected")
    ap.add_argument("--participants", type=int, default=3)
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    predicate = Predicate(args.predicate)
    predicted = census(args.vertices, predicate).rejection_rate
    secret = ColoredGraph.uncolored(first_valid_graph(args.vertices, predicate))
    rng = RandomSource.from_seed(args.seed)
    rejected = 0
    for _ in range(args.trials):
        shares = list(share_colored_graph(secret, Kgh(args.participants), predicate, rng).shares)
        victim = rng.randbelow(len(shares))
        shares[victim] = randomize_share(shares[victim], rng)
        rejected += not reconstruct_and_verify(shares)[1].accepted
    print(f"predicted rejection: {predicted} = {float(predicted):.5f}")
    print(f"observed rejection:  {rejected}/{args.trials} = {rejected / args.trials:.5f}")


if __name__ == "__main__":
    main()
