#!/usr/bin/env python3
"""Random-instance agreement study.

Draws random cone regions, filters out margin-degenerate pairs, and counts
how often the independent routes agree:

  * certificate existence vs. positivity of the hull-body distance,
  * the symmetric verdict vs. the OR of the two one-sided verdicts,
  * pairwise agreement of the five boundary-based conditions on convex
    pairs that meet only at the origin.
"""
import argparse
import time

import numpy as np

from conesep.distance import body_distance
from conesep.errors import Inconclusive
from conesep.oracle import random_pointed_cone, random_region
from conesep.regions import ConeRegion, body
from conesep.separation import (
    boundary_equivalence_report,
    cones_meet_only_at_origin,
    separate_nonsym,
    separate_sym,
    verify_certificate,
)


def existence_study(dims, per_dim, margin, rng):
    total = agree = verified = certs = skipped = 0
    sym_total = sym_agree = 0
    vrng = np.random.default_rng(rng.integers(2**32))
    for dim in dims:
        made = 0
        while made < per_dim:
            C = random_region(rng, dim)
            K = random_region(rng, dim)
            res = body_distance(body(C, False), body(K, True))
            if not res.certified or (res.kind == "positive"
                                     and res.distance <= margin):
                skipped += 1
                continue
            made += 1
            positive = res.kind == "positive"
            cert = separate_nonsym(C, K)
            total += 1
            if (cert is not None) == positive:
                agree += 1
            if cert is not None:
                certs += 1
                if verify_certificate(cert, C, K, count=1000, rng=vrng).ok:
                    verified += 1
            try:
                kc = separate_nonsym(K, C)
                sym = separate_sym(C, K)
            except Inconclusive:
                continue
            sym_total += 1
            if (sym is not None) == ((cert is not None) or (kc is not None)):
                sym_agree += 1
    return {
        "pairs": total,
        "existence_agree": agree,
        "certificates": certs,
        "verified": verified,
        "sym_pairs": sym_total,
        "sym_agree": sym_agree,
        "margin_skipped": skipped,
    }


def boundary_study(count, margin, rng):
    done = consistent = 0
    while done < count:
        dim = int(rng.integers(2, 4))
        C = ConeRegion.piece(random_pointed_cone(rng, dim))
        K = ConeRegion.piece(random_pointed_cone(rng, dim))
        if not cones_meet_only_at_origin(C, K):
            continue
        try:
            report = boundary_equivalence_report(C, K)
        except Inconclusive:
            continue
        gaps = [d for d in report.distances.values() if d > 0.0]
        if gaps and min(gaps) <= margin:
            continue
        done += 1
        if report.consistent:
            consistent += 1
    return {"pairs": done, "consistent": consistent}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dims", default="2,3",
                    help="comma-separated ambient dimensions")
    ap.add_argument("--per-dim", type=int, default=200)
    ap.add_argument("--boundary-pairs", type=int, default=100)
    ap.add_argument("--margin", type=float, default=1e-3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    dims = [int(d) for d in args.dims.split(",")]
    rng = np.random.default_rng(args.seed)

    t0 = time.perf_counter()
    ex = existence_study(dims, args.per_dim, args.margin, rng)
    bd = boundary_study(args.boundary_pairs, args.margin, rng)
    elapsed = time.perf_counter() - t0

    print(f"dims {dims}, {args.per_dim} pairs per dim, margin {args.margin:g}, "
          f"seed {args.seed}")
    print(f"  existence = distance positivity: "
          f"{ex['existence_agree']}/{ex['pairs']}")
    print(f"  certificates verified (1000 samples): "
          f"{ex['verified']}/{ex['certificates']}")
    print(f"  sym = OR of one-sided: {ex['sym_agree']}/{ex['sym_pairs']}")
    print(f"  boundary conditions consistent: "
          f"{bd['consistent']}/{bd['pairs']}")
    print(f"  margin-filtered draws: {ex['margin_skipped']}")
    print(f"  total time: {elapsed:.1f} s")


if __name__ == "__main__":
    main()
