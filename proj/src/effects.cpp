#include "cslik/effects.hpp"

#include <cmath>

namespace cslik {

StandardizedEffect std_effect_from_proportions(const ProportionSummary& s) {
    const double sd = std::sqrt(s.p1 * (1.0 - s.p1) + s.p2 * (1.0 - s.p2));
    return {std::abs(s.p1 - s.p2) / sd, s.n_per_group};
}

StandardizedEffect std_effect_from_hazard(const HazardSummary& s) {
    const double q = s.allocation;
    return {std::abs(std::log(s.hazard_ratio)) * std::sqrt(q * (1.0 - q)), s.total_events};
}

StandardizedEffect std_effect_from_means(const MeanSummary& s) {
    return {std::abs(s.m1 - s.m2) / s.pooled_sd, s.n_per_group};
}

}  // namespace cslik
