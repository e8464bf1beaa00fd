# coding: utf-8

# # Cash flow of one rooftop system
#
# A single 5 kWp system bought in a month with a 0.43 EUR/kWh feed-in tariff.
# We build its 20-year cash flow and look at the NPV at a few discount rates.

import numpy as np

from pvuptake import SystemSample, build_profile, investment_cost, npv

system = SystemSample(
    size_kwp=5.0,
    specific_cost=4000.0,
    performance_ratio=0.84,
    self_consumption=0.05,
    degradation=0.005,
    inclination_factor=0.98,
    irradiance=1253.0,
    om_share=0.015,
    retail_price=0.21,
    tariff=0.43,
    sc_tariff=0.0,
)

# Small systems cost more per kWp than the 10 kWp reference.

print("outlay:", round(investment_cost(system.size_kwp, system.specific_cost), 2))

profile = build_profile(system)
print("first years:", np.round(profile.flows[:3], 2))
print("last year:  ", np.round(profile.flows[-1], 2))

# ## NPV against the discount rate

rates = np.array([-0.05, 0.0, 0.05, 0.10, 0.15])
for r, value in zip(rates, npv(profile, rates)):
    print(f"r = {r:+.2f}  NPV = {value:10.2f}")
