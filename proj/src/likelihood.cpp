#include "cslik/likelihood.hpp"

#include <cmath>

namespace cslik {

double marginal_power(double delta, const StudyInput& study) {
    if (!std::isfinite(delta) || delta < 0.0) {
        throw std::invalid_argument("marginal_power: delta must be finite and >= 0");
    }
    const double p = study.p_value.value();
    const double z = normal_quantile(1.0 - p / 2.0);
    const double shift = delta * std::sqrt(study.n_effective);
    return 1.0 - normal_cdf(z - shift) + normal_cdf(-z - shift);
}

double likelihood_ratio(double delta, const StudyInput& study) {
    if (!std::isfinite(delta) || delta < 0.0) {
        throw std::invalid_argument("likelihood_ratio: delta must be finite and >= 0");
    }
    if (delta == 0.0) return 1.0;  // gamma(0) = P exactly
    const double p = study.p_value.value();
    const double z = normal_quantile(1.0 - p / 2.0);
    const double shift = delta * std::sqrt(study.n_effective);
    // gamma = 1 - a + b with a = Phi(z - shift), b = Phi(-z - shift), so the
    // numerator gamma*(1-gamma) = (1 - a + b)(a - b). This form keeps the
    // tail resolvable when gamma rounds to 1.
    const double a = normal_cdf(z - shift);
    const double b = normal_cdf(-z - shift);
    return (1.0 - a + b) * (a - b) / (p - p * p);
}

MlesResult mles(const StudyInput& study) {
    const double p = study.p_value.value();
    if (p >= 0.5) {
        // gamma(0) = P >= 0.5, so gamma - gamma^2 is maximized at delta = 0
        // and LR(0) = 1. At P exactly 0.5 this coincides with 0.25/(P - P^2).
        return MlesResult{0.0, marginal_power(0.0, study), true, 1.0};
    }
    if (study.n_effective <= 0.0) {
        throw std::domain_error(
            "mles: no solution for P < 0.5 with n_effective = 0 (power is constant at P)");
    }
    const double z = normal_quantile(1.0 - p / 2.0);
    const double hi = (z + 10.0) / std::sqrt(study.n_effective);  // gamma(hi) > 0.5 for all valid P
    const double root = bisect(
        [&](double d) { return marginal_power(d, study) - 0.5; },
        Bracket{0.0, hi, 1e-10});
    return MlesResult{root, marginal_power(root, study), false, 0.25 / (p - p * p)};
}

double mles_closed_form(const StudyInput& study) {
    const double p = study.p_value.value();
    if (p >= 0.5) {
        throw std::domain_error("mles_closed_form: undefined for P >= 0.5");
    }
    if (study.n_effective <= 0.0) {
        throw std::domain_error("mles_closed_form: requires n_effective > 0");
    }
    return normal_quantile(1.0 - p / 2.0) / std::sqrt(study.n_effective);
}

LikelihoodCurve sample_curve(const StudyInput& study, double delta_max, int count) {
    if (!(delta_max > 0.0)) {
        throw std::invalid_argument("sample_curve: delta_max must be > 0");
    }
    if (count < 2) {
        throw std::invalid_argument("sample_curve: count must be >= 2");
    }
    LikelihoodCurve curve{{}, study};
    curve.points.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        double d = delta_max * static_cast<double>(i) / static_cast<double>(count - 1);
        curve.points.push_back({d, likelihood_ratio(d, study)});
    }
    return curve;
}

}  // namespace cslik
