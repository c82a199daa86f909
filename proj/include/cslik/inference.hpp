#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cslik/likelihood.hpp"

namespace cslik {

// Fraction of the maximum likelihood ratio at which the 95% likelihood
// interval endpoints sit. Kept as the printed constant, not re-derived from
// exp(-chi2_{0.05,1}/2).
inline constexpr double kIntervalThresholdFraction = 0.1465;

// 95% likelihood support interval. The lower bound is empty when the interval
// includes zero (the likelihood function is undefined for negative effect
// sizes, so the bound is reported as "includes zero and negative" instead).
struct SupportInterval {
    std::optional<double> lower;  // empty <=> includes zero and negative
    double upper;
    double threshold_lr;  // 0.1465 * lr_max
    enum class Method { numeric, closed_form } method = Method::numeric;

    bool includes_zero_and_negative() const { return !lower.has_value(); }
};

// Minimum clinically significant effect size, as a standardized magnitude
// plus a description of the scale it came from (for reporting only).
struct McsesSpec {
    double delta;
    std::string source_scale;

    explicit McsesSpec(double d, std::string scale = "standardized")
        : delta(d), source_scale(std::move(scale)) {
        if (!std::isfinite(d) || d < 0.0) {
            throw std::invalid_argument("McsesSpec: delta must be finite and >= 0");
        }
    }
};

enum class SBranch { above, below, equal };

struct SValueResult {
    double s;       // clinical significance support level, in (0,1)
    double lambda;  // likelihood-ratio statistic, >= 0
    double k;       // chi2(1) CDF at lambda
    SBranch branch;
    MlesResult mles;
    // Heuristic flag: P > 0.5 and delta_mcses*sqrt(n) < 1, the regime where
    // the Wilks quadratic approximation can degrade.
    bool low_regularity = false;
    // Set when the caller declared the observed effect to oppose the MCSES
    // direction and P < 0.5; the below-MCSES branch is then forced.
    bool direction_opposed = false;
};

// Numeric support interval via bisection on both flanks of the (unimodal)
// likelihood function. Authoritative; the closed forms below are checks.
SupportInterval support_interval(const StudyInput& study);

// Upper bound (z_{1-P/2} + 1.77)/sqrt(n); valid for P < 0.2 and n > 30 only,
// errors outside that region.
double closed_form_upper(const StudyInput& study);

// Approximate upper bound MLES + (2.96 - P)/sqrt(n) for P >= 0.5. Documented
// approximation (agrees with the numeric interval to ~5%), never used as the
// authoritative computation.
double rule_a_upper(const StudyInput& study);

// Likelihood-ratio statistic -2*ln(LR(mcses)/LR(mles)), clamped at 0 against
// float residue when MCSES ~ MLES.
double lambda_stat(const StudyInput& study, const McsesSpec& mcses);

// The S-value: one-sided support that the true effect exceeds the MCSES.
SValueResult s_value(const StudyInput& study, const McsesSpec& mcses,
                     bool direction_opposed = false);

// One s_value per grid point, in grid order. The grid must be nonempty and
// strictly increasing in delta.
std::vector<std::pair<McsesSpec, SValueResult>> mcses_sweep(
    const StudyInput& study, const std::vector<McsesSpec>& grid);

}  // namespace cslik
