#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cslik/studies.hpp"

namespace cslik::cli {

namespace {

using nlohmann::json;

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

// How --mcses (and sweep bounds) are interpreted, and where n comes from.
struct ScaleOptions {
    std::string scale = "raw";
    double p1 = 0.0, p2 = 0.0;  // proportions: reference event rates
    double sd = 0.0;            // means: pooled SD
    double allocation = 0.5;    // hazard: randomization fraction

    void attach(CLI::App* cmd) {
        cmd->add_option("--scale", scale, "MCSES scale: raw|proportions|hazard|means")
            ->check(CLI::IsMember({"raw", "proportions", "hazard", "means"}))
            ->capture_default_str();
        cmd->add_option("--p1", p1, "reference event rate, arm 1 (proportions scale)");
        cmd->add_option("--p2", p2, "reference event rate, arm 2 (proportions scale)");
        cmd->add_option("--sd", sd, "pooled standard deviation (means scale)");
        cmd->add_option("--allocation", allocation,
                        "randomization fraction of one arm (hazard scale)")
            ->capture_default_str();
    }

    // Standardize one MCSES value given on this scale.
    double standardize(double value) const {
        if (scale == "raw") return value;
        if (scale == "proportions") {
            const double sd_ref = std::sqrt(p1 * (1.0 - p1) + p2 * (1.0 - p2));
            return std::abs(value) / sd_ref;
        }
        if (scale == "hazard") {
            return std_effect_from_hazard(HazardSummary(value, 1.0, allocation)).delta;
        }
        if (sd <= 0.0) throw std::invalid_argument("means scale requires --sd > 0");
        return std::abs(value) / sd;
    }

    void validate() const {
        if (scale == "proportions" && !(p1 > 0.0 && p1 < 1.0 && p2 > 0.0 && p2 < 1.0)) {
            throw std::invalid_argument("proportions scale requires --p1 and --p2 in (0,1)");
        }
        if (scale == "means" && !(sd > 0.0)) {
            throw std::invalid_argument("means scale requires --sd > 0");
        }
    }
};

void emit(std::ostream& out, const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
}

json interval_json(const SupportInterval& si) {
    json j;
    j["lower"] = si.lower ? json(*si.lower) : json("LT_ZERO");
    j["upper"] = si.upper;
    j["threshold_lr"] = si.threshold_lr;
    j["includes_zero_and_negative"] = si.includes_zero_and_negative();
    return j;
}

json svalue_json(const SValueResult& sv) {
    json j;
    j["mles"] = sv.mles.mles;
    j["degenerate"] = sv.mles.degenerate;
    j["lambda"] = sv.lambda;
    j["k"] = sv.k;
    j["s_raw"] = sv.s;
    j["s_display"] = s_display(sv.s);
    j["branch"] = sv.branch == SBranch::above   ? "above"
                  : sv.branch == SBranch::below ? "below"
                                                : "equal";
    json flags = json::array();
    if (sv.mles.degenerate) flags.push_back("degenerate");
    if (sv.low_regularity) flags.push_back("low_regularity");
    if (sv.direction_opposed) flags.push_back("direction_opposed");
    j["flags"] = flags;
    return j;
}

std::string flags_line(const SValueResult& sv) {
    std::string flags;
    auto add = [&](const char* f) {
        if (!flags.empty()) flags += ';';
        flags += f;
    };
    if (sv.mles.degenerate) add("degenerate");
    if (sv.low_regularity) add("low_regularity");
    if (sv.direction_opposed) add("direction_opposed");
    return flags;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"clinical-significance likelihood calculator"};
    app.require_subcommand(1);

    double p = 0.0, n = 0.0, delta = 0.0, mcses_value = 0.0;
    double delta_max = 0.0, mcses_min = 0.0, mcses_max = 0.0;
    int count = 101;
    bool as_json = false, as_svg = false, direction_opposed = false;
    std::string in_path, out_path;

    auto add_study_flags = [&](CLI::App* cmd) {
        cmd->add_option("--p", p, "P-value, in (0,1)")->required();
        cmd->add_option("--n", n, "effective sample size")->required();
        cmd->add_flag("--json", as_json, "machine-readable JSON output");
    };

    auto* c_power = app.add_subcommand("power", "marginal power at an effect size");
    add_study_flags(c_power);
    c_power->add_option("--delta", delta, "standardized effect size")->required();

    auto* c_mles = app.add_subcommand("mles", "most likely effect size");
    add_study_flags(c_mles);

    auto* c_interval = app.add_subcommand("interval", "95% likelihood support interval");
    add_study_flags(c_interval);

    auto* c_svalue = app.add_subcommand("svalue", "clinical significance support level");
    add_study_flags(c_svalue);
    c_svalue->add_option("--mcses", mcses_value, "minimum clinically significant effect size")
        ->required();
    c_svalue->add_flag("--direction-opposed", direction_opposed,
                       "observed effect opposes the MCSES direction");
    ScaleOptions sv_scale;
    sv_scale.attach(c_svalue);

    auto* c_sweep = app.add_subcommand("sweep", "S-values over an MCSES grid (CSV)");
    add_study_flags(c_sweep);
    c_sweep->add_option("--mcses-min", mcses_min, "grid lower bound")->required();
    c_sweep->add_option("--mcses-max", mcses_max, "grid upper bound")->required();
    c_sweep->add_option("--count", count, "grid size")->capture_default_str();
    c_sweep->add_option("--out", out_path, "output file ('-' for stdout)");
    c_sweep->add_flag("--svg", as_svg, "emit an SVG plot instead of CSV");
    ScaleOptions sw_scale;
    sw_scale.attach(c_sweep);

    auto* c_curve = app.add_subcommand("curve", "likelihood function samples (CSV)");
    add_study_flags(c_curve);
    c_curve->add_option("--delta-max", delta_max, "sampling upper bound")->required();
    c_curve->add_option("--count", count, "number of samples")->capture_default_str();
    c_curve->add_option("--out", out_path, "output file ('-' for stdout)");
    c_curve->add_flag("--svg", as_svg, "emit an SVG plot instead of CSV");

    auto* c_report = app.add_subcommand("report", "per-outcome report from a study file");
    c_report->add_option("--in", in_path, "study file ('-' for stdin)")->required();
    c_report->add_option("--out", out_path, "output file ('-' for stdout)");
    c_report->add_flag("--json", as_json, "machine-readable JSON output");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("cslik");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (c_power->parsed()) {
            StudyInput study(Probability(p), n);
            double g = marginal_power(delta, study);
            if (as_json) {
                out << json{{"gamma", g}}.dump() << "\n";
            } else {
                out << "gamma " << fixed6(g) << "\n";
            }
        } else if (c_mles->parsed()) {
            StudyInput study(Probability(p), n);
            MlesResult m = mles(study);
            if (as_json) {
                json j{{"mles", m.mles},
                       {"gamma_at_mles", m.gamma_at_mles},
                       {"degenerate", m.degenerate},
                       {"lr_max", m.lr_max}};
                out << j.dump() << "\n";
            } else {
                out << "mles " << fixed6(m.mles) << "\n";
                out << "gamma_at_mles " << fixed6(m.gamma_at_mles) << "\n";
                out << "degenerate " << (m.degenerate ? "yes" : "no") << "\n";
                out << "lr_max " << fixed6(m.lr_max) << "\n";
            }
        } else if (c_interval->parsed()) {
            StudyInput study(Probability(p), n);
            SupportInterval si = support_interval(study);
            if (as_json) {
                out << interval_json(si).dump() << "\n";
            } else {
                out << "lower " << (si.lower ? fixed6(*si.lower) : std::string("LT_ZERO"))
                    << "\n";
                out << "upper " << fixed6(si.upper) << "\n";
                out << "threshold_lr " << fixed6(si.threshold_lr) << "\n";
            }
        } else if (c_svalue->parsed()) {
            sv_scale.validate();
            StudyInput study(Probability(p), n);
            McsesSpec spec(sv_scale.standardize(mcses_value), sv_scale.scale);
            SValueResult sv = s_value(study, spec, direction_opposed);
            if (as_json) {
                json j = svalue_json(sv);
                j["mcses_delta"] = spec.delta;
                out << j.dump() << "\n";
            } else {
                out << "mcses_delta " << fixed6(spec.delta) << "\n";
                out << "mles " << fixed6(sv.mles.mles) << "\n";
                out << "lambda " << fixed6(sv.lambda) << "\n";
                out << "k " << fixed6(sv.k) << "\n";
                out << "branch "
                    << (sv.branch == SBranch::above   ? "above"
                        : sv.branch == SBranch::below ? "below"
                                                      : "equal")
                    << "\n";
                out << "s_raw " << fixed6(sv.s) << "\n";
                out << "s " << s_display(sv.s) << "\n";
                out << "flags " << flags_line(sv) << "\n";
            }
        } else if (c_sweep->parsed()) {
            sw_scale.validate();
            if (!(mcses_max > mcses_min)) {
                throw std::invalid_argument("sweep: need --mcses-max > --mcses-min");
            }
            if (count < 2) throw std::invalid_argument("sweep: need --count >= 2");
            StudyInput study(Probability(p), n);
            Series series{sw_scale.scale == "raw" ? "mcses" : "mcses_" + sw_scale.scale, "s", {}};
            for (int i = 0; i < count; ++i) {
                double x = mcses_min + (mcses_max - mcses_min) * i / (count - 1);
                McsesSpec spec(sw_scale.standardize(x), sw_scale.scale);
                series.points.emplace_back(x, s_value(study, spec).s);
            }
            if (as_json) {
                json j{{"x_meaning", series.x_meaning}, {"points", series.points}};
                emit(out, j.dump() + "\n", out_path);
            } else {
                emit(out, as_svg ? export_curve_svg(series) : export_curve_csv(series),
                     out_path);
            }
        } else if (c_curve->parsed()) {
            StudyInput study(Probability(p), n);
            Series series = curve_series(sample_curve(study, delta_max, count));
            if (as_json) {
                json j{{"x_meaning", series.x_meaning}, {"points", series.points}};
                emit(out, j.dump() + "\n", out_path);
            } else {
                emit(out, as_svg ? export_curve_svg(series) : export_curve_csv(series),
                     out_path);
            }
        } else if (c_report->parsed()) {
            std::string text;
            if (in_path == "-") {
                std::ostringstream ss;
                ss << std::cin.rdbuf();
                text = ss.str();
            } else {
                std::ifstream f(in_path, std::ios::binary);
                if (!f) throw std::runtime_error("cannot open study file: " + in_path);
                std::ostringstream ss;
                ss << f.rdbuf();
                text = ss.str();
            }
            StudyFile study = parse_study(text);
            auto rows = build_report(study);
            if (as_json) {
                json arr = json::array();
                for (const auto& r : rows) {
                    json j;
                    j["outcome"] = r.outcome;
                    if (!r.error.empty()) {
                        j["error"] = r.error;
                    } else {
                        j["p_value"] = r.p_value;
                        j["mles"] = r.mles;
                        j["interval_lower"] =
                            r.interval_lower ? json(*r.interval_lower) : json("LT_ZERO");
                        j["interval_upper"] = r.interval_upper;
                        j["lambda"] = r.lambda;
                        j["k"] = r.k;
                        j["s_raw"] = r.s_raw;
                        j["s_display"] = r.s_display;
                        j["flags"] = r.flags;
                    }
                    arr.push_back(std::move(j));
                }
                emit(out, arr.dump() + "\n", out_path);
            } else {
                emit(out, report_to_csv(rows), out_path);
            }
        }
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace cslik::cli
