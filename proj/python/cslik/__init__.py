"""Likelihood-based P-value interpretation.

From a study's P-value and effective sample size: the most likely effect
size (MLES), 95% likelihood support intervals, and the clinical significance
support level (S-value) against a stated minimum clinically significant
effect size (MCSES).
"""

from ._cslik import (
    MlesResult,
    SupportInterval,
    SValueResult,
    chi2_1_cdf,
    closed_form_upper,
    lambda_stat,
    likelihood_ratio,
    marginal_power,
    mcses_sweep,
    mles,
    mles_closed_form,
    normal_cdf,
    normal_quantile,
    report_csv,
    rule_a_upper,
    s_display,
    s_value,
    sample_curve,
    std_effect_from_hazard,
    std_effect_from_means,
    std_effect_from_proportions,
    support_interval,
)

__all__ = [
    "MlesResult",
    "SupportInterval",
    "SValueResult",
    "chi2_1_cdf",
    "closed_form_upper",
    "lambda_stat",
    "likelihood_ratio",
    "marginal_power",
    "mcses_sweep",
    "mles",
    "mles_closed_form",
    "normal_cdf",
    "normal_quantile",
    "report_csv",
    "rule_a_upper",
    "s_display",
    "s_value",
    "sample_curve",
    "std_effect_from_hazard",
    "std_effect_from_means",
    "std_effect_from_proportions",
    "support_interval",
]
