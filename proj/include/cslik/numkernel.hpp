#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cslik {

// A probability strictly inside (0,1). Boundary values are rejected because
// every downstream formula divides by p or 1-p (or feeds the normal quantile).
class Probability {
public:
    explicit Probability(double v) : value_(v) {
        if (!std::isfinite(v) || v <= 0.0 || v >= 1.0) {
            throw std::invalid_argument(
                "Probability must lie strictly in (0,1), got " + std::to_string(v));
        }
    }
    double value() const { return value_; }

private:
    double value_;
};

// Standard normal CDF. Accurate to ~1e-16 relative via erfc.
double normal_cdf(double x);

// Inverse standard normal CDF on (0,1). AS241-style rational approximation
// polished with one Newton step; |Phi(quantile(p)) - p| <= 1e-14.
double normal_quantile(const Probability& p);
double normal_quantile(double p);

// Chi-squared CDF with one degree of freedom, computed through the exact
// identity F(x) = 2*Phi(sqrt(x)) - 1. Single code path.
double chi2_1_cdf(double x);

struct Bracket {
    double lo;
    double hi;
    double tol = 1e-10;  // absolute tolerance on the function value
};

// Bisection on a sign-changing bracket. The target functions in this library
// are monotone on their brackets, so bisection is used everywhere instead of
// derivative-based methods.
template <typename F>
double bisect(F&& f, Bracket b) {
    if (!(b.lo < b.hi) || !(b.tol > 0.0)) {
        throw std::invalid_argument("bisect: need lo < hi and tol > 0");
    }
    double flo = f(b.lo);
    double fhi = f(b.hi);
    if (std::abs(flo) <= b.tol) return b.lo;
    if (std::abs(fhi) <= b.tol) return b.hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        const char* side = (std::abs(flo) < std::abs(fhi)) ? "hi" : "lo";
        throw std::domain_error(std::string("bisect: no sign change in bracket; ") +
                                "endpoint '" + side + "' has the larger residual");
    }
    double lo = b.lo, hi = b.hi;
    for (int i = 0; i < 500; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (std::abs(fm) <= b.tol) return mid;
        if ((fm > 0.0) == (fhi > 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
        }
        if (hi - lo <= std::numeric_limits<double>::epsilon() * (std::abs(lo) + std::abs(hi) + 1.0)) {
            return 0.5 * (lo + hi);
        }
    }
    throw std::runtime_error("bisect: failed to converge");
}

}  // namespace cslik
