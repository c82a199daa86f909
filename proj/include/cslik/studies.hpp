#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cslik/effects.hpp"
#include "cslik/inference.hpp"

namespace cslik {

// Pre-standardized (delta, n) pair for outcomes published directly on the
// standardized scale.
struct RawSummary {
    double delta;
    double n_effective;
};

using OutcomeSummary = std::variant<ProportionSummary, HazardSummary, MeanSummary, RawSummary>;

// MCSES as declared in a study file, on its source scale.
struct McsesDecl {
    enum class Kind { raw, hazard_ratio, rate_diff };
    Kind kind = Kind::raw;
    double value = 0.0;
    // rate_diff only: reference event proportions that anchor the
    // standardization (the SD of the difference at those rates).
    double ref_p1 = 0.0;
    double ref_p2 = 0.0;

    McsesSpec standardized() const;
};

struct OutcomeRecord {
    std::string name;
    Probability p_value;
    OutcomeSummary summary;
    McsesDecl mcses;
    std::string direction;  // "", "aligned" or "opposed", plus optional note

    bool direction_opposed() const { return direction.rfind("opposed", 0) == 0; }
};

struct StudyFile {
    std::string study_name;
    std::vector<OutcomeRecord> outcomes;  // nonempty, names unique
};

// (delta, n_effective) for an outcome, via the matching effects adapter.
StandardizedEffect standardize(const OutcomeSummary& summary);

// Line-oriented study file format:
//
//   study <name>
//   outcome
//   name <text>
//   p <value>
//   proportions <p1> <p2> <n_per_group>   (or hazard <hr> <events> [q]
//                                          or means <m1> <m2> <sd> <n_per_group>
//                                          or raw <delta> <n>)
//   mcses raw <delta>                     (or hr <ratio>
//                                          or rate_diff <diff> <ref_p1> <ref_p2>)
//   direction <aligned|opposed> [note]
//   end
//
// '#' starts a comment; blank lines are ignored. Parse errors carry the line
// number and field name.
StudyFile parse_study(std::string_view text);

// Inverse of parse_study: parse(serialize(f)) reproduces f exactly.
std::string serialize_study(const StudyFile& f);

struct ReportRow {
    std::string outcome;
    double p_value = 0.0;
    double mles = 0.0;
    std::optional<double> interval_lower;  // empty <=> rule c, printed as LT_ZERO
    double interval_upper = 0.0;
    double lambda = 0.0;
    double k = 0.0;
    double s_raw = 0.0;
    std::string s_display;
    std::vector<std::string> flags;
    std::string error;  // nonempty when this outcome failed; other fields unset
};

// One row per outcome via effects -> likelihood -> inference. A failing
// outcome yields a row carrying the error; remaining rows are still produced.
std::vector<ReportRow> build_report(const StudyFile& f);

// Header: outcome,p_value,mles,interval_lower,interval_upper,lambda,k,s_raw,s_display,flags
std::string report_to_csv(const std::vector<ReportRow>& rows);

// Percent display with the saturation used in the published tables:
// "<1%" below 0.005, ">99%" above 0.995, else round-half-up whole percent.
std::string s_display(double s);

// A sampled series for export: likelihood curves (x = delta, y = LR) or
// MCSES sweeps (x = mcses, y = S).
struct Series {
    std::string x_meaning;  // e.g. "delta" or "mcses"
    std::string y_meaning;  // e.g. "lr" or "s"
    std::vector<std::pair<double, double>> points;
};

Series curve_series(const LikelihoodCurve& curve);
Series sweep_series(const std::vector<std::pair<McsesSpec, SValueResult>>& sweep);

// CSV: leading comment line "# x=<meaning>", then header "x,y".
std::string export_curve_csv(const Series& s);

// Minimal SVG polyline plot with axis labels.
std::string export_curve_svg(const Series& s);

}  // namespace cslik
