"""Classify a random suite of colored fans and print label and timing statistics.

    python3 scripts/run_random_suite.py --n 500 --seed 2026
    python3 scripts/run_random_suite.py --n 200 --horospherical --json > stats.json
"""

from __future__ import annotations

import argparse
import json
import logging
import time
from collections import Counter
from dataclasses import asdict

from sphersing.coloredfan import decolor_and_resolve
from sphersing.random_fans import RandomFanConfig, random_suite
from sphersing.singularities import classify

log = logging.getLogger("random_suite")


def run(n: int, seed: int, cfg: RandomFanConfig, horospherical: bool | None) -> dict:
    t0 = time.perf_counter()
    fans = random_suite(n, seed, cfg, horospherical)
    t1 = time.perf_counter()
    labels, slowest = Counter(), []
    res_sizes = []
    for f in fans:
        s = time.perf_counter()
        labels[classify(f).label] += 1
        slowest.append((time.perf_counter() - s, f.name))
        res_sizes.append(len(decolor_and_resolve(f).cones))
    t2 = time.perf_counter()
    slowest.sort(reverse=True)
    return {
        "config": asdict(cfg),
        "n": n,
        "seed": seed,
        "generate_seconds": round(t1 - t0, 3),
        "classify_seconds": round(t2 - t1, 3),
        "horospherical": sum(f.space.is_horospherical for f in fans),
        "ranks": dict(Counter(f.rank for f in fans)),
        "colors_per_space": dict(Counter(len(f.space.colors) for f in fans)),
        "labels": dict(labels.most_common()),
        "max_resolution_cones": max(res_sizes),
        "slowest": [{"fan": name, "seconds": round(dt, 3)} for dt, name in slowest[:5]],
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=500)
    ap.add_argument("--seed", type=int, default=2026)
    ap.add_argument("--coord-bound", type=int, default=RandomFanConfig.coord_bound)
    ap.add_argument("--max-colors", type=int, default=RandomFanConfig.max_colors)
    kind = ap.add_mutually_exclusive_group()
    kind.add_argument("--horospherical", dest="horo", action="store_true", default=None)
    kind.add_argument("--non-horospherical", dest="horo", action="store_false")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    cfg = RandomFanConfig(coord_bound=args.coord_bound, max_colors=args.max_colors)
    stats = run(args.n, args.seed, cfg, args.horo)
    if args.json:
        print(json.dumps(stats, indent=2))
        return
    log.info("%d fans generated in %.1fs, classified in %.1fs", stats["n"], stats["generate_seconds"],
             stats["classify_seconds"])
    log.info("horospherical: %d, ranks: %s, colors: %s", stats["horospherical"], stats["ranks"],
             stats["colors_per_space"])
    for label, count in stats["labels"].items():
        log.info("%5d  %s", count, label)
    log.info("largest resolution: %d cones", stats["max_resolution_cones"])


if __name__ == "__main__":
    main()
