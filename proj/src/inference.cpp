#include "cslik/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cslik {

SupportInterval support_interval(const StudyInput& study) {
    const MlesResult m = mles(study);
    const double threshold = kIntervalThresholdFraction * m.lr_max;
    const double ftol = 1e-10 * std::max(1.0, threshold);
    const double scale = 1.0 / std::sqrt(std::max(study.n_effective, 1.0));

    auto excess = [&](double d) { return likelihood_ratio(d, study) - threshold; };

    // Upper flank: LR decreases to 0 as delta grows, so expand until the
    // bracket straddles the threshold.
    double hi = m.mles + scale;
    while (excess(hi) >= 0.0) hi = m.mles + 2.0 * (hi - m.mles);
    const double upper = bisect(excess, Bracket{m.mles, hi, ftol});

    SupportInterval out{std::nullopt, upper, threshold, SupportInterval::Method::numeric};

    // Lower flank exists only when LR(0) falls below the threshold; otherwise
    // the interval includes zero and a negative effect size (rule c).
    if (likelihood_ratio(0.0, study) < threshold) {
        out.lower = bisect(excess, Bracket{0.0, m.mles, ftol});
    }
    return out;
}

double closed_form_upper(const StudyInput& study) {
    const double p = study.p_value.value();
    if (!(p < 0.2) || !(study.n_effective > 30.0)) {
        throw std::domain_error(
            "closed_form_upper: valid only for P < 0.2 and n > 30; use support_interval");
    }
    return (normal_quantile(1.0 - p / 2.0) + 1.77) / std::sqrt(study.n_effective);
}

double rule_a_upper(const StudyInput& study) {
    const double p = study.p_value.value();
    if (p < 0.5) {
        throw std::domain_error("rule_a_upper: applies to P >= 0.5 only");
    }
    if (study.n_effective <= 0.0) {
        throw std::domain_error("rule_a_upper: requires n_effective > 0");
    }
    return mles(study).mles + (2.96 - p) / std::sqrt(study.n_effective);
}

double lambda_stat(const StudyInput& study, const McsesSpec& mcses) {
    const MlesResult m = mles(study);
    double ratio = likelihood_ratio(mcses.delta, study) / m.lr_max;
    // Far out in the tail the ratio underflows to 0; floor it at the smallest
    // normal double so lambda stays finite instead of -2*log(0) = +inf.
    ratio = std::max(ratio, std::numeric_limits<double>::min());
    return std::max(0.0, -2.0 * std::log(ratio));
}

SValueResult s_value(const StudyInput& study, const McsesSpec& mcses,
                     bool direction_opposed) {
    const double p = study.p_value.value();
    const MlesResult m = mles(study);
    const double lambda = lambda_stat(study, mcses);
    // Clamp just below 1 so K in [0,1) and S in (0,1) hold even when the
    // chi-square tail is no longer resolvable in double precision.
    const double k = std::min(chi2_1_cdf(lambda), 1.0 - std::numeric_limits<double>::epsilon());

    SValueResult r{0.5, lambda, k, SBranch::equal, m};
    r.low_regularity = p > 0.5 && mcses.delta * std::sqrt(study.n_effective) < 1.0;
    r.direction_opposed = direction_opposed && p < 0.5;

    if (r.direction_opposed) {
        r.branch = SBranch::below;
    } else if (std::abs(m.mles - mcses.delta) <= 1e-9) {
        r.branch = SBranch::equal;
    } else if (m.mles > mcses.delta) {
        r.branch = SBranch::above;
    } else {
        r.branch = SBranch::below;
    }

    // K + (1-K)/2 = Phi(sqrt(lambda)) and (1-K)/2 = Phi(-sqrt(lambda)); the
    // Phi forms keep the tail resolvable where 1-K would round away.
    const double root = std::sqrt(lambda);
    switch (r.branch) {
        case SBranch::above:
            r.s = std::min(normal_cdf(root),
                           std::nextafter(1.0, 0.0));
            break;
        case SBranch::below:
            r.s = std::max(normal_cdf(-root),
                           std::numeric_limits<double>::denorm_min());
            break;
        case SBranch::equal: r.s = 0.5; break;
    }
    return r;
}

std::vector<std::pair<McsesSpec, SValueResult>> mcses_sweep(
    const StudyInput& study, const std::vector<McsesSpec>& grid) {
    if (grid.empty()) {
        throw std::invalid_argument("mcses_sweep: grid must be nonempty");
    }
    for (size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i].delta > grid[i - 1].delta)) {
            throw std::invalid_argument("mcses_sweep: grid must be strictly increasing");
        }
    }
    std::vector<std::pair<McsesSpec, SValueResult>> out;
    out.reserve(grid.size());
    for (const auto& spec : grid) {
        out.emplace_back(spec, s_value(study, spec));
    }
    return out;
}

}  // namespace cslik
