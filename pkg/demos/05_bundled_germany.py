# coding: utf-8

# # The bundled German dataset
#
# Approximate public inputs for 2006-10 to 2014-12. This uses 5,000 samples
# per month to finish quickly; the command-line default is 100,000.

from pvuptake import ScenarioConfig, run_scenario

config = ScenarioConfig(n_samples=5_000, seed=0)
result = run_scenario(config)

irr = result.mean_irr.mean_irr
print(f"{len(irr)} months, mean IRR from {irr.values.min():.4f} to {irr.values.max():.4f}")

for rep in result.reports:
    print(f"{rep.model:12s} r = {rep.pearson_r:.3f}  significant = {rep.significant}")
for name, r in result.feature_correlations.items():
    print(f"{name:18s} r = {r:.3f}")
