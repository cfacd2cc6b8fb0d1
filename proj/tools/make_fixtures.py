#!/usr/bin/env python3
# SPDX-FileCopyrightText: Contributors to the suc-benders project
#
# SPDX-License-Identifier: Apache-2.0
"""Writes the bundled fixtures (toy-a, med-b) into fixtures/."""

import argparse
import csv
import json
from pathlib import Path

import numpy as np


def generator(gid, node, cost, su, cu, cd, cplus, cminus, pmin, pmax, ru, rd, rplus, rminus, ut, dt, u0,
              lu=0, ld=0):
    return {
        "id": gid, "node": node, "cost": cost, "startup_cost": su,
        "reserve_up_cost": cu, "reserve_down_cost": cd,
        "deploy_up_price": cplus, "deploy_down_price": cminus,
        "p_min": pmin, "p_max": pmax, "ramp_up": ru, "ramp_down": rd,
        "reserve_up_max": rplus, "reserve_down_max": rminus,
        "min_up": ut, "min_down": dt, "initial_status": u0,
        "initial_on_periods": lu, "initial_off_periods": ld,
    }


def instance(name, horizon, nodes, lines, generators, farms, load, shed_cost):
    return {
        "meta": {"name": name, "horizon": horizon, "ref_node": nodes[0],
                 "units": {"power": "MW", "cost": "$", "time": "h"}},
        "nodes": nodes,
        "lines": lines,
        "generators": generators,
        "wind_farms": farms,
        "load": [{"node": n, "period": t + 1, "mw": float(load[n][t])}
                 for n in nodes for t in range(horizon)],
        "shed_cost": shed_cost,
    }


def write(out: Path, name: str, inst: dict, scenarios: dict):
    (out / f"{name}.json").write_text(json.dumps(inst, indent=2) + "\n")
    with open(out / f"{name}.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["scenario", "farm", "period", "value_mw"])
        for sid, farms in scenarios.items():
            for fid, values in farms.items():
                for t, v in enumerate(values):
                    w.writerow([sid, fid, t + 1, f"{v:g}"])


def toy_a():
    nodes = ["n1", "n2"]
    lines = [{"id": "l1", "from": "n1", "to": "n2", "susceptance": 10.0, "capacity": 50.0}]
    gens = [
        generator("g1", "n1", 10, 100, 2, 1, 15, 8, 10, 100, 60, 60, 40, 40, 2, 2, 1),
        generator("g2", "n2", 30, 50, 4, 2, 40, 20, 5, 50, 50, 50, 30, 30, 1, 1, 0),
    ]
    farms = [{"id": "w1", "node": "n2", "capacity": 40.0}]
    load = {"n1": [10, 10, 10, 10], "n2": [60, 80, 90, 70]}
    scen = {
        "s1": {"w1": [35, 30, 20, 25]},
        "s2": {"w1": [20, 15, 30, 35]},
        "s3": {"w1": [5, 10, 25, 40]},
    }
    return instance("toy-a", 4, nodes, lines, gens, farms, load, 500.0), scen


def med_b(seed: int):
    rng = np.random.default_rng(seed)
    T = 12
    nodes = [f"b{i}" for i in range(1, 7)]
    topo = [("b1", "b2", 60), ("b2", "b3", 60), ("b3", "b4", 60), ("b4", "b5", 60),
            ("b5", "b6", 60), ("b6", "b1", 60), ("b2", "b5", 40)]
    topo = [(a, b, 3 * cap) for a, b, cap in topo]
    lines = [{"id": f"l{i + 1}", "from": a, "to": b, "susceptance": 8.0 + i, "capacity": float(cap)}
             for i, (a, b, cap) in enumerate(topo)]
    gens = [
        generator("g1", "b1", 12, 400, 3, 2, 16, 9, 30, 150, 60, 60, 40, 40, 4, 4, 1, lu=12),
        generator("g2", "b2", 18, 200, 4, 2, 22, 14, 20, 100, 50, 50, 35, 35, 4, 4, 1, lu=6),
        generator("g3", "b3", 25, 120, 5, 3, 30, 20, 10, 80, 50, 50, 30, 30, 3, 3, 0),
        generator("g4", "b4", 30, 90, 6, 3, 36, 24, 10, 60, 45, 45, 30, 30, 3, 3, 0),
        generator("g5", "b5", 35, 60, 7, 4, 42, 28, 5, 50, 40, 40, 25, 25, 2, 2, 0),
        generator("g6", "b6", 45, 40, 8, 4, 54, 36, 5, 40, 40, 40, 20, 20, 2, 2, 0),
    ]
    farms = [{"id": "w1", "node": "b4", "capacity": 120.0}, {"id": "w2", "node": "b6", "capacity": 100.0}]
    shape = np.array([0.70, 0.65, 0.62, 0.64, 0.72, 0.85, 0.95, 1.00, 0.98, 0.92, 0.85, 0.78])
    peak = {"b1": 40, "b2": 50, "b3": 60, "b4": 100, "b5": 50, "b6": 85}
    load = {n: np.round(peak[n] * shape, 1) for n in nodes}
    # Two weather regimes, windy and calm; scenario s repeats regime s mod 2.
    levels = np.array([[0.75, 0.7], [0.25, 0.2]])
    regimes = [[np.clip(level[j] + np.cumsum(rng.normal(0, 0.08, size=T)), 0.0, 1.0) for j in range(2)]
               for level in levels]
    scen = {}
    for s in range(10):
        scen[f"s{s + 1}"] = {farm["id"]: np.round(regimes[s % 2][j] * farm["capacity"], 1)
                             for j, farm in enumerate(farms)}
    return instance("med-b", T, nodes, lines, gens, farms, load, 300.0), scen


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "fixtures")
    ap.add_argument("--seed", type=int, default=4)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    write(args.out, "toy-a", *toy_a())
    write(args.out, "med-b", *med_b(args.seed))


if __name__ == "__main__":
    main()
