#include "cslik/studies.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace cslik {

namespace {

// Shortest round-trip formatting, so serialize/parse is lossless.
std::string fmt_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

std::string fmt_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

struct ParseError : std::runtime_error {
    ParseError(size_t line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream iss{std::string(s)};
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

double parse_number(const std::string& tok, size_t line, const std::string& field) {
    double v;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size()) {
        throw ParseError(line, "field '" + field + "': not a number: '" + tok + "'");
    }
    return v;
}

void expect_args(const std::vector<std::string>& toks, size_t n, size_t line,
                 const std::string& field) {
    if (toks.size() - 1 != n) {
        throw ParseError(line, "field '" + field + "' expects " + std::to_string(n) +
                                   " value(s), got " + std::to_string(toks.size() - 1));
    }
}

// A record under construction; everything optional until 'end'.
struct PendingOutcome {
    size_t start_line = 0;
    std::optional<std::string> name;
    std::optional<Probability> p;
    std::optional<OutcomeSummary> summary;
    std::optional<McsesDecl> mcses;
    std::string direction;
};

}  // namespace

McsesSpec McsesDecl::standardized() const {
    switch (kind) {
        case Kind::raw:
            return McsesSpec(value, "standardized");
        case Kind::hazard_ratio:
            return McsesSpec(std::abs(std::log(value)) / 2.0,
                             "hazard ratio " + fmt_double(value));
        case Kind::rate_diff: {
            const double sd = std::sqrt(ref_p1 * (1.0 - ref_p1) + ref_p2 * (1.0 - ref_p2));
            return McsesSpec(std::abs(value) / sd, "rate difference " + fmt_double(value));
        }
    }
    throw std::logic_error("McsesDecl: unknown kind");
}

StandardizedEffect standardize(const OutcomeSummary& summary) {
    return std::visit(
        [](const auto& s) -> StandardizedEffect {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ProportionSummary>) {
                return std_effect_from_proportions(s);
            } else if constexpr (std::is_same_v<T, HazardSummary>) {
                return std_effect_from_hazard(s);
            } else if constexpr (std::is_same_v<T, MeanSummary>) {
                return std_effect_from_means(s);
            } else {
                if (!(s.delta >= 0.0) || !(s.n_effective >= 0.0)) {
                    throw std::invalid_argument("raw summary: delta and n must be >= 0");
                }
                return StandardizedEffect{s.delta, s.n_effective};
            }
        },
        summary);
}

StudyFile parse_study(std::string_view text) {
    StudyFile file;
    std::optional<PendingOutcome> cur;
    std::set<std::string> seen_names;

    size_t lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++lineno;

        // strip comments and surrounding whitespace
        if (size_t h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
        size_t b = raw.find_first_not_of(" \t\r");
        if (b == std::string_view::npos) continue;
        size_t e = raw.find_last_not_of(" \t\r");
        std::string_view line = raw.substr(b, e - b + 1);

        auto toks = split_ws(line);
        const std::string& key = toks[0];
        // text after the keyword, whitespace-normalized
        auto rest_of = [&](size_t from) {
            std::string r;
            for (size_t i = from; i < toks.size(); ++i) {
                if (!r.empty()) r += ' ';
                r += toks[i];
            }
            return r;
        };

        if (key == "study") {
            if (!file.study_name.empty()) throw ParseError(lineno, "duplicate 'study' line");
            if (toks.size() < 2) throw ParseError(lineno, "field 'study': missing name");
            file.study_name = rest_of(1);
            continue;
        }
        if (key == "outcome") {
            if (cur) throw ParseError(lineno, "'outcome' inside an open outcome block");
            cur = PendingOutcome{};
            cur->start_line = lineno;
            continue;
        }
        if (!cur) throw ParseError(lineno, "'" + key + "' outside an outcome block");

        if (key == "name") {
            if (toks.size() < 2) throw ParseError(lineno, "field 'name': missing text");
            cur->name = rest_of(1);
        } else if (key == "p") {
            expect_args(toks, 1, lineno, "p");
            double v = parse_number(toks[1], lineno, "p");
            try {
                cur->p = Probability(v);
            } catch (const std::invalid_argument& ex) {
                throw ParseError(lineno, std::string("field 'p': ") + ex.what());
            }
        } else if (key == "proportions" || key == "hazard" || key == "means" || key == "raw") {
            if (cur->summary) throw ParseError(lineno, "more than one summary in outcome block");
            try {
                if (key == "proportions") {
                    expect_args(toks, 3, lineno, key);
                    cur->summary = ProportionSummary(parse_number(toks[1], lineno, key),
                                                     parse_number(toks[2], lineno, key),
                                                     parse_number(toks[3], lineno, key));
                } else if (key == "hazard") {
                    if (toks.size() != 3 && toks.size() != 4) {
                        throw ParseError(lineno, "field 'hazard' expects 2 or 3 values");
                    }
                    double q = toks.size() == 4 ? parse_number(toks[3], lineno, key) : 0.5;
                    cur->summary = HazardSummary(parse_number(toks[1], lineno, key),
                                                 parse_number(toks[2], lineno, key), q);
                } else if (key == "means") {
                    expect_args(toks, 4, lineno, key);
                    cur->summary = MeanSummary(
                        parse_number(toks[1], lineno, key), parse_number(toks[2], lineno, key),
                        parse_number(toks[3], lineno, key), parse_number(toks[4], lineno, key));
                } else {
                    expect_args(toks, 2, lineno, key);
                    cur->summary = RawSummary{parse_number(toks[1], lineno, key),
                                              parse_number(toks[2], lineno, key)};
                }
            } catch (const std::invalid_argument& ex) {
                throw ParseError(lineno, "field '" + key + "': " + ex.what());
            }
        } else if (key == "mcses") {
            if (cur->mcses) throw ParseError(lineno, "duplicate 'mcses' line");
            if (toks.size() < 3) throw ParseError(lineno, "field 'mcses': expects kind and value");
            McsesDecl d;
            const std::string& kind = toks[1];
            if (kind == "raw") {
                expect_args(toks, 2, lineno, "mcses raw");
                d.kind = McsesDecl::Kind::raw;
                d.value = parse_number(toks[2], lineno, "mcses");
            } else if (kind == "hr") {
                expect_args(toks, 2, lineno, "mcses hr");
                d.kind = McsesDecl::Kind::hazard_ratio;
                d.value = parse_number(toks[2], lineno, "mcses");
                if (!(d.value > 0.0)) throw ParseError(lineno, "field 'mcses': hr must be > 0");
            } else if (kind == "rate_diff") {
                expect_args(toks, 4, lineno, "mcses rate_diff");
                d.kind = McsesDecl::Kind::rate_diff;
                d.value = parse_number(toks[2], lineno, "mcses");
                d.ref_p1 = parse_number(toks[3], lineno, "mcses");
                d.ref_p2 = parse_number(toks[4], lineno, "mcses");
                if (!(d.ref_p1 > 0.0 && d.ref_p1 < 1.0 && d.ref_p2 > 0.0 && d.ref_p2 < 1.0)) {
                    throw ParseError(lineno, "field 'mcses': reference rates must lie in (0,1)");
                }
            } else {
                throw ParseError(lineno, "field 'mcses': unknown kind '" + kind + "'");
            }
            try {
                d.standardized();
            } catch (const std::invalid_argument& ex) {
                throw ParseError(lineno, std::string("field 'mcses': ") + ex.what());
            }
            cur->mcses = d;
        } else if (key == "direction") {
            if (toks.size() < 2 || (toks[1] != "aligned" && toks[1] != "opposed")) {
                throw ParseError(lineno, "field 'direction': expects 'aligned' or 'opposed'");
            }
            cur->direction = rest_of(1);
        } else if (key == "end") {
            if (!cur->name) throw ParseError(lineno, "outcome block missing 'name'");
            if (!cur->p) throw ParseError(lineno, "outcome block missing 'p'");
            if (!cur->summary) throw ParseError(lineno, "outcome block missing a summary");
            if (!cur->mcses) throw ParseError(lineno, "outcome block missing 'mcses'");
            if (!seen_names.insert(*cur->name).second) {
                throw ParseError(lineno, "duplicate outcome name '" + *cur->name + "'");
            }
            file.outcomes.push_back(OutcomeRecord{*cur->name, *cur->p, *cur->summary,
                                                  *cur->mcses, cur->direction});
            cur.reset();
        } else {
            throw ParseError(lineno, "unknown key '" + key + "'");
        }
    }

    if (cur) throw ParseError(cur->start_line, "unterminated outcome block (missing 'end')");
    if (file.study_name.empty()) throw ParseError(1, "missing 'study' line");
    if (file.outcomes.empty()) throw ParseError(1, "study has no outcomes");
    return file;
}

std::string serialize_study(const StudyFile& f) {
    std::ostringstream out;
    out << "study " << f.study_name << "\n";
    for (const auto& o : f.outcomes) {
        out << "\noutcome\n";
        out << "name " << o.name << "\n";
        out << "p " << fmt_double(o.p_value.value()) << "\n";
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, ProportionSummary>) {
                    out << "proportions " << fmt_double(s.p1) << ' ' << fmt_double(s.p2) << ' '
                        << fmt_double(s.n_per_group) << "\n";
                } else if constexpr (std::is_same_v<T, HazardSummary>) {
                    out << "hazard " << fmt_double(s.hazard_ratio) << ' '
                        << fmt_double(s.total_events);
                    if (s.allocation != 0.5) out << ' ' << fmt_double(s.allocation);
                    out << "\n";
                } else if constexpr (std::is_same_v<T, MeanSummary>) {
                    out << "means " << fmt_double(s.m1) << ' ' << fmt_double(s.m2) << ' '
                        << fmt_double(s.pooled_sd) << ' ' << fmt_double(s.n_per_group) << "\n";
                } else {
                    out << "raw " << fmt_double(s.delta) << ' ' << fmt_double(s.n_effective)
                        << "\n";
                }
            },
            o.summary);
        switch (o.mcses.kind) {
            case McsesDecl::Kind::raw:
                out << "mcses raw " << fmt_double(o.mcses.value) << "\n";
                break;
            case McsesDecl::Kind::hazard_ratio:
                out << "mcses hr " << fmt_double(o.mcses.value) << "\n";
                break;
            case McsesDecl::Kind::rate_diff:
                out << "mcses rate_diff " << fmt_double(o.mcses.value) << ' '
                    << fmt_double(o.mcses.ref_p1) << ' ' << fmt_double(o.mcses.ref_p2) << "\n";
                break;
        }
        if (!o.direction.empty()) out << "direction " << o.direction << "\n";
        out << "end\n";
    }
    return out.str();
}

std::string s_display(double s) {
    if (s < 0.005) return "<1%";
    if (s > 0.995) return ">99%";
    int pct = static_cast<int>(std::floor(s * 100.0 + 0.5));
    return std::to_string(pct) + "%";
}

std::vector<ReportRow> build_report(const StudyFile& f) {
    std::vector<ReportRow> rows;
    rows.reserve(f.outcomes.size());
    for (const auto& o : f.outcomes) {
        ReportRow row;
        row.outcome = o.name;
        try {
            const StandardizedEffect eff = standardize(o.summary);
            const StudyInput study(o.p_value, eff.n_effective);
            const McsesSpec mcses = o.mcses.standardized();
            const SValueResult sv = s_value(study, mcses, o.direction_opposed());
            const SupportInterval si = support_interval(study);

            row.p_value = o.p_value.value();
            row.mles = sv.mles.mles;
            row.interval_lower = si.lower;
            row.interval_upper = si.upper;
            row.lambda = sv.lambda;
            row.k = sv.k;
            row.s_raw = sv.s;
            row.s_display = s_display(sv.s);
            if (sv.mles.degenerate) row.flags.push_back("degenerate");
            if (sv.low_regularity) row.flags.push_back("low_regularity");
            if (sv.direction_opposed) row.flags.push_back("direction_opposed");
        } catch (const std::exception& ex) {
            row.error = std::string("outcome '") + o.name + "': " + ex.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

std::string report_to_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    out << "outcome,p_value,mles,interval_lower,interval_upper,lambda,k,s_raw,s_display,flags\n";
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            out << csv_field(r.outcome) << ",,,,,,,,," << "error:" << r.error << "\n";
            continue;
        }
        std::string flags;
        for (const auto& fl : r.flags) {
            if (!flags.empty()) flags += ';';
            flags += fl;
        }
        out << csv_field(r.outcome) << ',' << fmt_double(r.p_value) << ',' << fmt_fixed(r.mles, 6) << ','
            << (r.interval_lower ? fmt_fixed(*r.interval_lower, 6) : std::string("LT_ZERO"))
            << ',' << fmt_fixed(r.interval_upper, 6) << ',' << fmt_fixed(r.lambda, 6) << ','
            << fmt_fixed(r.k, 6) << ',' << fmt_fixed(r.s_raw, 6) << ',' << r.s_display << ','
            << flags << "\n";
    }
    return out.str();
}

Series curve_series(const LikelihoodCurve& curve) {
    Series s{"delta", "lr", {}};
    s.points.reserve(curve.points.size());
    for (const auto& pt : curve.points) s.points.emplace_back(pt.delta, pt.lr);
    return s;
}

Series sweep_series(const std::vector<std::pair<McsesSpec, SValueResult>>& sweep) {
    Series s{"mcses", "s", {}};
    s.points.reserve(sweep.size());
    for (const auto& [spec, sv] : sweep) s.points.emplace_back(spec.delta, sv.s);
    return s;
}

std::string export_curve_csv(const Series& s) {
    if (s.points.empty()) throw std::invalid_argument("export_curve_csv: empty series");
    std::ostringstream out;
    out << "# x=" << s.x_meaning << "\n";
    out << "x,y\n";
    for (const auto& [x, y] : s.points) {
        out << fmt_double(x) << ',' << fmt_double(y) << "\n";
    }
    return out.str();
}

std::string export_curve_svg(const Series& s) {
    if (s.points.empty()) throw std::invalid_argument("export_curve_svg: empty series");
    const double W = 640, H = 480, ml = 60, mr = 20, mt = 20, mb = 40;
    double xmin = s.points.front().first, xmax = xmin;
    double ymin = s.points.front().second, ymax = ymin;
    for (const auto& [x, y] : s.points) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto sy = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\">\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 8 << "\">" << s.x_meaning
        << "</text>\n";
    out << "<text x=\"12\" y=\"" << (mt + H - mb) / 2 << "\" transform=\"rotate(-90 12 "
        << (mt + H - mb) / 2 << ")\">" << s.y_meaning << "</text>\n";
    out << "<text x=\"" << ml << "\" y=\"" << H - mb + 16 << "\" font-size=\"10\">"
        << fmt_double(xmin) << "</text>\n";
    out << "<text x=\"" << W - mr - 40 << "\" y=\"" << H - mb + 16 << "\" font-size=\"10\">"
        << fmt_double(xmax) << "</text>\n";
    out << "<text x=\"4\" y=\"" << H - mb << "\" font-size=\"10\">" << fmt_double(ymin)
        << "</text>\n";
    out << "<text x=\"4\" y=\"" << mt + 10 << "\" font-size=\"10\">" << fmt_double(ymax)
        << "</text>\n";
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : s.points) {
        out << fmt_fixed(sx(x), 2) << ',' << fmt_fixed(sy(y), 2) << ' ';
    }
    out << "\"/>\n</svg>\n";
    return out.str();
}

}  // namespace cslik
