// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each check pins its tolerance in code.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cslik/studies.hpp"

using namespace cslik;

namespace {

int g_failures = 0;

void report(int idx, const char* what, bool ok, const std::string& detail = "") {
    std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, what,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

StudyInput study(double p, double n) { return StudyInput(Probability(p), n); }

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Criterion 1: null-MCSES S from P alone, reproducing the published column.
void criterion1() {
    bool ok = true;
    std::ostringstream detail;
    struct Row {
        double p;
        double printed_pct;  // printed percent; "<1"/" >99" entries use 100/0 saturation
    };
    const Row rows[] = {{0.02, 99.0}, {0.048, 97.0}, {0.1, 92.0}, {0.32, 70.0}};
    for (const Row& r : rows) {
        double lr_max = 0.25 / (r.p - r.p * r.p);
        double s_analytic = chi2_1_cdf(2.0 * std::log(lr_max)) * 0.5 + 0.5;
        double s_engine = s_value(study(r.p, 1490.0), McsesSpec(0.0)).s;
        if (std::abs(s_engine - s_analytic) > 1e-9) ok = false;
        if (std::abs(s_engine * 100.0 - r.printed_pct) > 1.0) ok = false;
        detail << "P=" << r.p << "->" << s_display(s_engine) << " ";
    }
    double s_small = s_value(study(0.001, 1490.0), McsesSpec(0.0)).s;
    if (!(s_display(s_small) == ">99%")) ok = false;
    detail << "P<0.001->" << s_display(s_small);
    report(1, "null-MCSES S-values from P alone (within 1 percentage point)", ok,
           detail.str());
}

// Criterion 2: the published 3x4 WOMAN S-value matrix within +/-5 percentage points.
void criterion2() {
    StudyFile woman = parse_study(read_file(std::string(CSLIK_FIXTURE_DIR) + "/woman.study"));
    // MCSES rate differences converted at the trial's stated standardization
    // anchor (0.75% difference at ~1.9% base rates).
    const double rate_diffs[] = {0.0, 0.0025, 0.005, 0.0075};
    const double printed[3][4] = {
        {50.0, 13.0, 1.0, 0.0},    // primary outcome, "<1%" as 0
        {97.0, 75.0, 23.0, 2.0},   // mortality due to bleeding
        {100.0, 95.0, 65.0, 22.0}, // <=3h subgroup, ">99%" as 100
    };
    bool ok = woman.outcomes.size() == 3;
    std::ostringstream detail;
    for (size_t i = 0; ok && i < 3; ++i) {
        const auto& o = woman.outcomes[i];
        const StandardizedEffect eff = standardize(o.summary);
        StudyInput s(o.p_value, eff.n_effective);
        for (int j = 0; j < 4; ++j) {
            McsesDecl decl = o.mcses;  // fixture carries the reference rates
            decl.value = rate_diffs[j];
            double sv = s_value(s, decl.standardized()).s;
            double diff = std::abs(sv * 100.0 - printed[i][j]);
            if (diff > 5.0) {
                ok = false;
                detail << "row " << i << " col " << j << ": got " << sv * 100.0
                       << "% want " << printed[i][j] << "% ";
            }
        }
    }
    report(2, "WOMAN published S-value matrix (within 5 percentage points)", ok, detail.str());
}

// Criterion 3: RELIEF primary outcome S ~ 1%.
void criterion3() {
    auto eff = std_effect_from_hazard(HazardSummary(1.05, 0.18 * 2983.0));
    auto mcses_delta = std_effect_from_hazard(HazardSummary(0.8, 1.0)).delta;
    double s = s_value(study(0.61, eff.n_effective), McsesSpec(mcses_delta)).s;
    bool ok = std::abs(s * 100.0 - 1.0) <= 1.0;
    std::ostringstream detail;
    detail << "S=" << s * 100.0 << "% (MCSES delta=" << mcses_delta << ")";
    report(3, "RELIEF primary outcome (1% within 1 percentage point)", ok, detail.str());
}

// Criterion 4: MLES anchor for P=0.1, n=100 and the sweep crossing.
void criterion4() {
    auto s = study(0.1, 100.0);
    double m = mles(s).mles;
    bool ok = m >= 0.163 && m <= 0.166;

    std::vector<McsesSpec> grid;
    const double step = 0.0005;
    for (int i = 0; i <= 800; ++i) grid.emplace_back(step * i);
    auto sweep = mcses_sweep(s, grid);
    double crossing = -1.0;
    for (size_t i = 1; i < sweep.size(); ++i) {
        if (sweep[i - 1].second.s >= 0.5 && sweep[i].second.s < 0.5) {
            crossing = sweep[i - 1].first.delta;
            break;
        }
    }
    if (!(std::abs(crossing - m) <= step)) ok = false;
    std::ostringstream detail;
    detail << "mles=" << m << " crossing=" << crossing;
    report(4, "MLES(0.1, 100) anchor and S=0.5 crossing", ok, detail.str());
}

// Criterion 5: closed-form upper bound anchors and agreement grids.
void criterion5() {
    bool ok = true;
    std::ostringstream detail;

    double numeric = support_interval(study(0.05, 100.0)).upper;
    if (std::abs(numeric - 0.373) / 0.373 > 0.01) {
        ok = false;
        detail << "anchor: numeric upper " << numeric << " ";
    }

    int points = 0;
    for (double p = 0.01; p <= 0.1501; p += 0.01) {
        for (double n : {31.0, 60.0, 100.0, 400.0, 1500.0, 6000.0, 20000.0}) {
            auto s = study(p, n);
            double num = support_interval(s).upper;
            double closed = closed_form_upper(s);
            ++points;
            if (std::abs(closed - num) / num > 0.02) {
                ok = false;
                detail << "closed-form gap at P=" << p << " n=" << n << " ";
            }
        }
    }
    if (points < 100) ok = false;

    for (double p : {0.5, 0.55, 0.6, 0.7, 0.8, 0.9, 0.95}) {
        for (double n : {30.0, 100.0, 1000.0, 10000.0}) {
            auto s = study(p, n);
            double num = support_interval(s).upper;
            if (std::abs(rule_a_upper(s) - num) / num > 0.05) {
                ok = false;
                detail << "rule-a gap at P=" << p << " n=" << n << " ";
            }
        }
    }
    std::ostringstream extra;
    extra << "grid points=" << points;
    report(5, "interval upper-bound anchor and closed-form agreement grids", ok,
           detail.str() + extra.str());
}

// Criterion 6: property suites.
void criterion6() {
    bool ok = true;
    std::ostringstream detail;
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> up_half(0.001, 0.499);
    std::uniform_real_distribution<double> up_full(0.001, 0.999);
    std::uniform_real_distribution<double> un(10.0, 20000.0);

    // (a) grid-oracle MLES maximality, 200 studies x 1e4-point grids
    for (int i = 0; i < 200 && ok; ++i) {
        auto s = study(up_half(rng), un(rng));
        MlesResult m = mles(s);
        double hi = (normal_quantile(1.0 - s.p_value.value() / 2.0) + 10.0) /
                    std::sqrt(s.n_effective);
        for (int j = 0; j < 10000; ++j) {
            double d = hi * j / 9999.0;
            if (likelihood_ratio(d, s) > m.lr_max * (1.0 + 1e-6)) {
                ok = false;
                detail << "(a) exceedance at P=" << s.p_value.value() << " ";
                break;
            }
        }
    }

    // (b) gamma(0) = P on 1e3 random studies
    for (int i = 0; i < 1000; ++i) {
        double p = up_full(rng);
        if (std::abs(marginal_power(0.0, study(p, un(rng))) - p) > 1e-12) {
            ok = false;
            detail << "(b) gamma(0)!=P ";
            break;
        }
    }

    // (c) LR(0) = 1
    for (int i = 0; i < 1000; ++i) {
        if (std::abs(likelihood_ratio(0.0, study(up_full(rng), un(rng))) - 1.0) > 1e-9) {
            ok = false;
            detail << "(c) LR(0)!=1 ";
            break;
        }
    }

    // (d) lambda >= 0, S in (0,1), continuity at the MCSES=MLES boundary
    std::uniform_real_distribution<double> ud(0.0, 0.5);
    for (int i = 0; i < 500; ++i) {
        auto s = study(up_full(rng), un(rng));
        auto sv = s_value(s, McsesSpec(ud(rng)));
        if (!(sv.lambda >= 0.0) || !(sv.s > 0.0 && sv.s < 1.0)) {
            ok = false;
            detail << "(d) bounds ";
            break;
        }
    }
    for (int i = 0; i < 50; ++i) {
        auto s = study(up_half(rng), un(rng));
        double m = mles(s).mles;
        if (std::abs(s_value(s, McsesSpec(m)).s - 0.5) > 1e-6 ||
            std::abs(s_value(s, McsesSpec(m + 1e-9)).s - 0.5) > 1e-6) {
            ok = false;
            detail << "(d) continuity ";
            break;
        }
    }

    // (e) S strictly decreasing in MCSES when MLES > 0
    for (int i = 0; i < 50; ++i) {
        auto s = study(up_half(rng), un(rng));
        // Stay where Phi(-sqrt(lambda)) is resolvable; past delta*sqrt(n) ~ 38
        // the S values collapse into the subnormal floor and can tie.
        const double top = std::min(0.5, 30.0 / std::sqrt(s.n_effective));
        double prev = 2.0;
        for (int j = 0; j <= 100; ++j) {
            double sv = s_value(s, McsesSpec(top * j / 100.0)).s;
            if (!(sv < prev)) {
                ok = false;
                detail << "(e) not decreasing ";
                break;
            }
            prev = sv;
        }
        if (!ok) break;
    }

    // (f) sample-size monotonicity at MCSES=0.2 while MLES < MCSES
    for (double p : {0.1, 0.2, 0.4}) {
        double prev_s = -1.0;
        bool prev_valid = false;
        for (double n = 25.0; n <= 6400.0; n *= 2.0) {
            auto s = study(p, n);
            if (mles_closed_form(s) >= 0.2) {
                prev_valid = false;
                continue;
            }
            double sv = s_value(s, McsesSpec(0.2)).s;
            if (prev_valid && !(sv < prev_s)) {
                ok = false;
                detail << "(f) P=" << p << " n=" << n << " ";
            }
            prev_s = sv;
            prev_valid = true;
        }
    }

    report(6, "property suites (a)-(f)", ok, detail.str());
}

// Criterion 7: interval endpoint defining property.
void criterion7() {
    bool ok = true;
    std::ostringstream detail;
    std::mt19937 rng(7777);
    std::uniform_real_distribution<double> up(0.001, 0.99);
    std::uniform_real_distribution<double> un(20.0, 20000.0);
    int rule_c_count = 0;
    for (int i = 0; i < 200; ++i) {
        auto s = study(up(rng), un(rng));
        MlesResult m = mles(s);
        SupportInterval si = support_interval(s);
        if (std::abs(likelihood_ratio(si.upper, s) / m.lr_max - 0.1465) > 1e-6) {
            ok = false;
            detail << "upper endpoint off at P=" << s.p_value.value() << " ";
        }
        if (si.lower) {
            if (std::abs(likelihood_ratio(*si.lower, s) / m.lr_max - 0.1465) > 1e-6) {
                ok = false;
                detail << "lower endpoint off at P=" << s.p_value.value() << " ";
            }
        } else {
            ++rule_c_count;
            if (!(likelihood_ratio(0.0, s) >= 0.1465 * m.lr_max)) {
                ok = false;
                detail << "rule c misfired at P=" << s.p_value.value() << " ";
            }
        }
    }
    std::ostringstream extra;
    extra << "rule-c cases=" << rule_c_count;
    report(7, "interval endpoints at 0.1465 of the peak", ok, detail.str() + extra.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
