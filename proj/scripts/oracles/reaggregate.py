#!/usr/bin/env python3
"""Recompute season totals from a season.csv and compare with totals.json."""
import csv
import json
import math
import sys


def fold(rows, traversable_km2):
    n = len(rows)
    visits = sum(int(r["total_visits"]) for r in rows)
    trips = sum(int(r["trips"]) for r in rows)
    hours = math.fsum(float(r["foraging_h"]) for r in rows) / n
    rate = math.fsum(float(r["trips_per_sun_h"]) for r in rows) / n
    last = rows[-1]
    cov = float(last["covered_area_frac"])
    return {
        "days": n,
        "total_visits": visits,
        "total_completed_trips": trips,
        "mean_foraging_period_h": hours,
        "mean_trips_per_sunshine_hour": rate,
        "detected_patches": int(last["detected_patches"]),
        "covered_area_fraction": cov,
        "covered_area_km2": cov * traversable_km2,
    }


def main():
    season_path, totals_path, km2 = sys.argv[1], sys.argv[2], float(sys.argv[3])
    with open(season_path, newline="") as f:
        rows = list(csv.DictReader(f))
    with open(totals_path) as f:
        totals = json.load(f)
    ours = fold(rows, km2)
    bad = 0
    for key, value in ours.items():
        theirs = totals[key]
        ok = value == theirs if isinstance(value, int) else math.isclose(value, theirs, rel_tol=1e-12, abs_tol=1e-15)
        print(f"{key}: oracle={value!r} file={theirs!r} {'ok' if ok else 'MISMATCH'}")
        bad += not ok
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
