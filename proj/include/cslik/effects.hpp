#pragma once

#include <cmath>
#include <stdexcept>

namespace cslik {

// (standardized effect magnitude, effective sample size) produced by the
// effect-scale adapters below.
struct StandardizedEffect {
    double delta;        // >= 0
    double n_effective;  // > 0
};

// Two-arm binary outcome: event proportions per arm and per-group n.
struct ProportionSummary {
    double p1;
    double p2;
    double n_per_group;

    ProportionSummary(double a, double b, double n) : p1(a), p2(b), n_per_group(n) {
        if (!(p1 > 0.0 && p1 < 1.0) || !(p2 > 0.0 && p2 < 1.0)) {
            throw std::invalid_argument("ProportionSummary: proportions must lie in (0,1)");
        }
        if (!(n_per_group > 0.0) || !std::isfinite(n_per_group)) {
            throw std::invalid_argument("ProportionSummary: n_per_group must be > 0");
        }
    }
};

// Time-to-event outcome: hazard ratio plus total observed events. allocation
// is the randomization fraction q of one arm; the standardization divisor is
// 1/sqrt(q(1-q)), i.e. 2 at the default 1:1 allocation.
struct HazardSummary {
    double hazard_ratio;
    double total_events;
    double allocation;

    HazardSummary(double hr, double events, double q = 0.5)
        : hazard_ratio(hr), total_events(events), allocation(q) {
        if (!(hazard_ratio > 0.0) || !std::isfinite(hazard_ratio)) {
            throw std::invalid_argument("HazardSummary: hazard_ratio must be > 0");
        }
        if (!(total_events > 0.0) || !std::isfinite(total_events)) {
            throw std::invalid_argument("HazardSummary: total_events must be > 0");
        }
        if (!(allocation > 0.0 && allocation < 1.0)) {
            throw std::invalid_argument("HazardSummary: allocation must lie in (0,1)");
        }
    }
};

// Two-arm continuous outcome: group means, pooled SD, per-group n.
struct MeanSummary {
    double m1;
    double m2;
    double pooled_sd;
    double n_per_group;

    MeanSummary(double a, double b, double sd, double n)
        : m1(a), m2(b), pooled_sd(sd), n_per_group(n) {
        if (!(pooled_sd > 0.0) || !std::isfinite(pooled_sd)) {
            throw std::invalid_argument("MeanSummary: pooled_sd must be > 0");
        }
        if (!(n_per_group > 0.0) || !std::isfinite(n_per_group)) {
            throw std::invalid_argument("MeanSummary: n_per_group must be > 0");
        }
    }
};

// delta = |p1 - p2| / sqrt(p1(1-p1) + p2(1-p2)); n_effective = n_per_group.
StandardizedEffect std_effect_from_proportions(const ProportionSummary& s);

// delta = |ln HR| * sqrt(q(1-q)); n_effective = total_events.
StandardizedEffect std_effect_from_hazard(const HazardSummary& s);

// delta = |m1 - m2| / pooled_sd; n_effective = n_per_group.
StandardizedEffect std_effect_from_means(const MeanSummary& s);

}  // namespace cslik
