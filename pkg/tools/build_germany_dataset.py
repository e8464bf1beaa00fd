"""Regenerate the bundled approximate German residential PV dataset (2006-2014).

All numbers are hand-entered approximations of public figures, not registry
extracts:

* feed-in tariff for rooftop systems up to 30 kWp (10 kWp from April 2012),
  applied from the first day of the month it takes effect;
* self-consumption tariff, January 2009 to March 2012 (the rate for
  self-consumption shares up to 30 %);
* yearly average household retail price;
* monthly average yield of public-sector bonds;
* turnkey system cost below 10 kWp as quarterly anchors (interpolated on load);
* monthly count of new installations below 10 kWp. Registry data is not
  redistributed here; the series is reconstructed from approximate yearly
  totals, a mild summer season, run-ups in the months before announced tariff
  cuts, dips right after them, and a mid-2011 bump, with 5 % multiplicative
  noise from a fixed seed.

Run ``python tools/build_germany_dataset.py`` to rewrite the CSV files.
"""

from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parents[1] / "src" / "pvuptake" / "data" / "germany"

FIRST, LAST = (2006, 1), (2014, 12)


def months(first=FIRST, last=LAST):
    y, m = first
    while (y, m) <= last:
        yield y, m
        y, m = (y + 1, 1) if m == 12 else (y, m + 1)


def tag(y, m):
    return f"{y:04d}-{m:02d}"


# (effective month, EUR/kWh)
TARIFF_STEPS = [
    ((2006, 1), 0.5180),
    ((2007, 1), 0.4921),
    ((2008, 1), 0.4675),
    ((2009, 1), 0.4301),
    ((2010, 1), 0.3914),
    ((2010, 7), 0.3405),
    ((2010, 10), 0.3303),
    ((2011, 1), 0.2874),
    ((2012, 1), 0.2443),
    ((2012, 4), 0.1950),
]
MONTHLY_TARIFF_FROM_2012_05 = [
    0.1931, 0.1911, 0.1892, 0.1873, 0.1854, 0.1836, 0.1790, 0.1745,
    0.1702, 0.1664, 0.1628, 0.1592, 0.1563, 0.1535, 0.1507, 0.1480, 0.1454, 0.1427, 0.1407, 0.1388,
    0.1368, 0.1355, 0.1341, 0.1328, 0.1315, 0.1302, 0.1288, 0.1275, 0.1269, 0.1262, 0.1256, 0.1250,
]

SC_TARIFF_STEPS = [
    ((2006, 1), 0.0),
    ((2009, 1), 0.2501),
    ((2010, 1), 0.2276),
    ((2010, 7), 0.1767),
    ((2010, 10), 0.1665),
    ((2011, 1), 0.1236),
    ((2012, 1), 0.0805),
    ((2012, 4), 0.0),
]

RETAIL_BY_YEAR = {
    2006: 0.1946, 2007: 0.2064, 2008: 0.2165, 2009: 0.2321, 2010: 0.2369,
    2011: 0.2523, 2012: 0.2589, 2013: 0.2884, 2014: 0.2913,
}

BOND_YIELD_PCT = {
    2006: [3.3, 3.4, 3.6, 3.8, 3.9, 3.9, 3.9, 3.8, 3.7, 3.7, 3.7, 3.7],
    2007: [4.0, 4.0, 3.9, 4.1, 4.3, 4.5, 4.5, 4.3, 4.2, 4.2, 4.0, 4.2],
    2008: [3.9, 3.8, 3.6, 3.9, 4.1, 4.5, 4.5, 4.2, 4.1, 3.8, 3.4, 2.9],
    2009: [2.9, 3.0, 2.9, 2.9, 3.1, 3.3, 3.2, 3.1, 3.0, 3.0, 3.0, 3.0],
    2010: [2.9, 2.8, 2.7, 2.7, 2.3, 2.2, 2.2, 2.0, 2.0, 2.0, 2.3, 2.6],
    2011: [2.8, 3.0, 3.0, 3.2, 2.9, 2.8, 2.7, 2.1, 1.7, 1.8, 1.7, 1.7],
    2012: [1.6, 1.6, 1.5, 1.4, 1.2, 1.2, 1.1, 1.1, 1.3, 1.2, 1.1, 1.0],
    2013: [1.3, 1.4, 1.3, 1.1, 1.1, 1.4, 1.5, 1.6, 1.7, 1.5, 1.5, 1.6],
    2014: [1.5, 1.3, 1.3, 1.2, 1.1, 1.0, 0.9, 0.8, 0.7, 0.7, 0.6, 0.5],
}

# Quarterly anchors, EUR/kWp; the dataset starts in the last quarter of 2006.
SYSTEM_COST = [
    ((2006, 10), 5050), ((2007, 1), 5000), ((2007, 4), 4900), ((2007, 7), 4800), ((2007, 10), 4700),
    ((2008, 1), 4600), ((2008, 4), 4500), ((2008, 7), 4400), ((2008, 10), 4300),
    ((2009, 1), 4100), ((2009, 4), 3700), ((2009, 7), 3300), ((2009, 10), 3100),
    ((2010, 1), 3000), ((2010, 4), 2850), ((2010, 7), 2700), ((2010, 10), 2600),
    ((2011, 1), 2500), ((2011, 4), 2400), ((2011, 7), 2250), ((2011, 10), 2100),
    ((2012, 1), 1950), ((2012, 4), 1800), ((2012, 7), 1700), ((2012, 10), 1650),
    ((2013, 1), 1650), ((2013, 4), 1620), ((2013, 7), 1600), ((2013, 10), 1580),
    ((2014, 1), 1560), ((2014, 4), 1540), ((2014, 7), 1520), ((2014, 10), 1500), ((2014, 12), 1490),
]

# Approximate yearly installation counts below 10 kWp.
YEARLY_INSTALLATIONS = {
    2006: 45_000, 2007: 50_000, 2008: 65_000, 2009: 105_000, 2010: 150_000,
    2011: 110_000, 2012: 105_000, 2013: 70_000, 2014: 50_000,
}
# Month before a cut: run-up factor; month of the cut: dip factor.
RUN_UP = {
    (2006, 12): 1.8, (2007, 12): 1.8, (2008, 12): 1.8, (2009, 12): 2.5,
    (2010, 6): 3.0, (2010, 9): 1.8, (2010, 12): 2.2, (2011, 12): 2.5, (2012, 3): 2.5,
}
RUN_UP_EARLY = {(2009, 11): 1.3, (2010, 5): 1.5, (2011, 11): 1.3, (2012, 2): 1.4}
DIP = {
    (2007, 1): 0.6, (2008, 1): 0.6, (2009, 1): 0.6, (2010, 1): 0.6,
    (2010, 7): 0.5, (2010, 10): 0.7, (2011, 1): 0.5, (2012, 1): 0.6, (2012, 4): 0.5,
}
MID_2011 = {(2011, 5): 1.4, (2011, 6): 1.5, (2011, 7): 1.3}


def step_series(steps, monthly_tail=None, tail_from=None):
    out = {}
    for y, m in months():
        value = None
        for (sy, sm), v in steps:
            if (sy, sm) <= (y, m):
                value = v
        out[(y, m)] = value
    if monthly_tail is not None:
        for (y, m), v in zip(months(tail_from), monthly_tail):
            out[(y, m)] = v
    return out


def observed_deployment(seed=2017):
    rng = np.random.default_rng(seed)
    keys = list(months())
    weight = {}
    for y, m in keys:
        w = 1.0 + 0.25 * np.cos(2 * np.pi * (m - 7) / 12)
        for table in (RUN_UP, RUN_UP_EARLY, DIP, MID_2011):
            w *= table.get((y, m), 1.0)
        weight[(y, m)] = w
    counts = {}
    for year, total in YEARLY_INSTALLATIONS.items():
        ks = [k for k in keys if k[0] == year]
        w = np.array([weight[k] for k in ks])
        w *= np.exp(rng.normal(0.0, 0.05, size=w.size))
        for k, c in zip(ks, total * w / w.sum()):
            counts[k] = int(round(c))
    return counts


def write(name, unit, rows):
    with open(OUT / name, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# unit: {unit}\n")
        fh.write("month,value\n")
        for (y, m), v in rows:
            fh.write(f"{tag(y, m)},{v}\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    tariff = step_series(TARIFF_STEPS, MONTHLY_TARIFF_FROM_2012_05, (2012, 5))
    write("feed_in_tariff.csv", "EUR/kWh", sorted(tariff.items()))
    write("fit_self_consumption.csv", "EUR/kWh", sorted(step_series(SC_TARIFF_STEPS).items()))
    write("retail_price.csv", "EUR/kWh", [((y, m), RETAIL_BY_YEAR[y]) for y, m in months()])
    write("bond_yield.csv", "fraction", [((y, m), round(BOND_YIELD_PCT[y][m - 1] / 100, 6)) for y, m in months()])
    write("system_cost.csv", "EUR/kWp", SYSTEM_COST)
    write("observed_deployment.csv", "count", sorted(observed_deployment().items()))


if __name__ == "__main__":
    main()
