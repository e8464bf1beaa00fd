# coding: utf-8

# # Economic potential and mean IRR
#
# Draw 20,000 systems for one month, count how many are profitable at every
# rate on the grid, and turn that curve into an IRR distribution.

import numpy as np

from pvuptake import DEFAULT_SPECS, MonthIndex, economic_potential, irr_density, mean_irr, sample_population
from pvuptake.synthetic import step_inputs

month = MonthIndex(2010, 1)
inputs = step_inputs(month, (0.39,), sc_tariff=0.2276, system_cost=3000.0, retail_price=0.2369)

population = sample_population(DEFAULT_SPECS, month, inputs.as_mapping(), 20_000, seed=1)
table = economic_potential(population, month=month)

# Share of systems with positive NPV, every fifth grid rate.

for r, theta in list(zip(table.grid.rates, table.theta))[::5]:
    print(f"r = {r:+.3f}  share profitable = {theta:.3f}")

# The drop between neighbouring rates is the IRR mass in that cell.

edges, mass = irr_density(table)
k = int(np.argmax(mass))
print(f"most common IRR cell: [{edges[k]:.3f}, {edges[k] + table.grid.step:.3f}) with mass {mass[k]:.3f}")

result = mean_irr(table)
print(f"mean IRR {result.value:.4f}, {result.captured_mass:.4f} of the mass inside the grid")
