# coding: utf-8

# # Two uptake models around a tariff cut
#
# Twelve months, tariff cut from 0.30 to 0.22 EUR/kWh after month six.
# Observed installations rush in just before the cut and collapse after it.

import numpy as np

from pvuptake import fit_models, mean_irr_series
from pvuptake.synthetic import point_specs, single_cut_inputs

rush = [100.0] * 5 + [320.0, 15.0] + [60.0] * 5
inputs = single_cut_inputs(n_months=12, cut_at=6, observed=rush)

# One representative system per month keeps the mean IRR noise-free.

irr = mean_irr_series(inputs.as_mapping(), inputs.start, inputs.end, n_samples=1, specs=point_specs())
result = fit_models(irr, inputs)

print("month    observed  exponential  prospect")
for m, obs, e, p in zip(
    result.prospect.deployment.months,
    inputs.observed_deployment.values,
    result.exponential.deployment.values,
    result.prospect.deployment.values,
):
    print(f"{m}  {obs:8.0f}  {e:11.1f}  {p:8.1f}")

for rep in result.reports:
    print(f"{rep.model:12s} scale {rep.scale:8.2f}  r = {rep.pearson_r:.3f}")

# The exponential model only steps down. The prospect model anticipates the cut.

print("prospect peak month:", result.prospect.deployment.months[int(np.argmax(result.prospect.deployment.values))])
