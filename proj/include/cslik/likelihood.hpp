#pragma once

#include <vector>

#include "cslik/numkernel.hpp"

namespace cslik {

// The pair (P, n) that fixes the likelihood function. n_effective is a real
// number: per-group subjects for two-arm comparisons, total events for
// hazard-ratio outcomes, and adapters may scale it by rates.
struct StudyInput {
    Probability p_value;
    double n_effective;

    StudyInput(Probability p, double n) : p_value(p), n_effective(n) {
        if (!std::isfinite(n) || n < 0.0) {
            throw std::invalid_argument("StudyInput: n_effective must be finite and >= 0");
        }
    }
};

struct CurvePoint {
    double delta;  // standardized effect size, >= 0
    double lr;     // likelihood ratio relative to delta = 0
};

struct LikelihoodCurve {
    std::vector<CurvePoint> points;  // strictly increasing in delta
    StudyInput study;
};

struct MlesResult {
    double mles;           // 0 exactly when degenerate
    double gamma_at_mles;  // marginal power at the MLES
    bool degenerate;       // true iff P >= 0.5
    double lr_max;         // 0.25/(P - P^2) when non-degenerate, else 1
};

// Marginal power: gamma = 1 - Phi(z_{1-P/2} - d*sqrt(n)) + Phi(-z_{1-P/2} - d*sqrt(n)).
// Both tail terms are always evaluated; closed-form fast paths that drop the
// second term live elsewhere.
double marginal_power(double delta, const StudyInput& study);

// Likelihood ratio for effect size delta over zero: (g - g^2)/(P - P^2).
double likelihood_ratio(double delta, const StudyInput& study);

// The most likely effect size: the unique delta > 0 with gamma(delta) = 0.5,
// or 0 when P >= 0.5 (no solution exists; the ratio is then maximized at zero).
MlesResult mles(const StudyInput& study);

// Large-sample approximation z_{1-P/2}/sqrt(n). Valid for P < 0.5; intended
// for n > 30 and small P, where it matches the observed study effect size.
double mles_closed_form(const StudyInput& study);

// Uniform sampling of the likelihood function on [0, delta_max], endpoints
// included. count >= 2.
LikelihoodCurve sample_curve(const StudyInput& study, double delta_max, int count);

}  // namespace cslik
