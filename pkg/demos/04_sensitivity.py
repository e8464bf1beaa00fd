# coding: utf-8

# # How loss aversion and return sensitivity shape the curve
#
# Same tariff-cut scenario as before; we sweep lambda and kappa.

from pvuptake import mean_irr_series, sweep
from pvuptake.synthetic import point_specs, single_cut_inputs

rush = [100.0] * 5 + [320.0, 15.0] + [60.0] * 5
inputs = single_cut_inputs(n_months=12, cut_at=6, observed=rush)
irr = mean_irr_series(inputs.as_mapping(), inputs.start, inputs.end, n_samples=1, specs=point_specs())
args = (irr.mean_irr, inputs.bond_yield, inputs.observed_deployment)

# ## Loss aversion
#
# Bigger lambda makes the pre-cut spike taller relative to the average month.

for point in sweep("lambda", [1.0, 1.5, 2.25, 3.0], *args).points:
    d = point.deployment.values
    print(f"lambda = {point.value:4.2f}  peak/mean = {d.max() / d.mean():.3f}  r = {point.pearson_r:.3f}")

# ## Return sensitivity
#
# Bigger kappa moves deployment toward the high-return months.

for point in sweep("kappa", [10.0, 20.0, 30.0], *args).points:
    d = point.deployment.values
    print(f"kappa = {point.value:4.1f}  share before cut = {d[:6].sum() / d.sum():.3f}")
