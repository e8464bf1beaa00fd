"""Residential PV uptake from Monte Carlo profitability and loss-averse utility."""

__version__ = "0.1.0"

from .analysis import (
    FitReport,
    ScenarioResult,
    SweepResult,
    calibrate_scale,
    fit_models,
    pearson,
    run_scenario,
    sensitivity_sweep,
    sweep,
)
from .cashflow import CashFlowProfile, annual_energy, build_profile, investment_cost, npv, positive_cash_flow
from .irr import DiscountGrid, EconomicPotentialTable, economic_potential, irr_density, mean_irr, mean_irr_series
from .sampling import DEFAULT_SPECS, ParameterSpec, Population, SystemSample, sample_beta_mmm, sample_population
from .scenario import ScenarioConfig, ScenarioInputs, bundled_data_dir, load_inputs
from .timeseries import MonthIndex, MonthlyTimeSeries, align, interpolate_to_monthly, load_series
from .uptake import (
    BehavioralParams,
    UptakeResult,
    deployment,
    exp_utility,
    prospect_utility,
    risk_adjusted_irr,
    value_function,
)
