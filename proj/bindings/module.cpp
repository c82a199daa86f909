#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cslik/studies.hpp"

namespace py = pybind11;
using namespace cslik;

namespace {

StudyInput make_study(double p, double n) { return StudyInput(Probability(p), n); }

const char* branch_name(SBranch b) {
    switch (b) {
        case SBranch::above: return "above";
        case SBranch::below: return "below";
        case SBranch::equal: return "equal";
    }
    return "?";
}

}  // namespace

PYBIND11_MODULE(_cslik, m) {
    m.doc() = "Likelihood-based P-value interpretation: most likely effect sizes, "
              "support intervals and clinical significance support levels";

    py::class_<MlesResult>(m, "MlesResult")
        .def_readonly("mles", &MlesResult::mles)
        .def_readonly("gamma_at_mles", &MlesResult::gamma_at_mles)
        .def_readonly("degenerate", &MlesResult::degenerate)
        .def_readonly("lr_max", &MlesResult::lr_max)
        .def("__repr__", [](const MlesResult& r) {
            return "MlesResult(mles=" + std::to_string(r.mles) +
                   ", degenerate=" + (r.degenerate ? std::string("True") : "False") + ")";
        });

    py::class_<SupportInterval>(m, "SupportInterval")
        .def_property_readonly("lower",
                               [](const SupportInterval& si) -> py::object {
                                   if (si.lower) return py::float_(*si.lower);
                                   return py::none();
                               })
        .def_readonly("upper", &SupportInterval::upper)
        .def_readonly("threshold_lr", &SupportInterval::threshold_lr)
        .def("includes_zero_and_negative", &SupportInterval::includes_zero_and_negative);

    py::class_<SValueResult>(m, "SValueResult")
        .def_readonly("s", &SValueResult::s)
        .def_readonly("lambda_", &SValueResult::lambda)
        .def_readonly("k", &SValueResult::k)
        .def_property_readonly("branch",
                               [](const SValueResult& r) { return branch_name(r.branch); })
        .def_readonly("mles", &SValueResult::mles)
        .def_readonly("low_regularity", &SValueResult::low_regularity)
        .def_readonly("direction_opposed", &SValueResult::direction_opposed)
        .def("__repr__", [](const SValueResult& r) {
            return "SValueResult(s=" + std::to_string(r.s) + ", branch=" +
                   branch_name(r.branch) + ")";
        });

    m.def("normal_cdf", &normal_cdf, py::arg("x"));
    m.def("normal_quantile", [](double p) { return normal_quantile(p); }, py::arg("p"));
    m.def("chi2_1_cdf", &chi2_1_cdf, py::arg("x"));

    m.def(
        "marginal_power",
        [](double delta, double p, double n) { return marginal_power(delta, make_study(p, n)); },
        py::arg("delta"), py::arg("p"), py::arg("n"));
    m.def(
        "likelihood_ratio",
        [](double delta, double p, double n) {
            return likelihood_ratio(delta, make_study(p, n));
        },
        py::arg("delta"), py::arg("p"), py::arg("n"));
    m.def(
        "mles", [](double p, double n) { return mles(make_study(p, n)); }, py::arg("p"),
        py::arg("n"));
    m.def(
        "mles_closed_form", [](double p, double n) { return mles_closed_form(make_study(p, n)); },
        py::arg("p"), py::arg("n"));
    m.def(
        "sample_curve",
        [](double p, double n, double delta_max, int count) {
            auto curve = sample_curve(make_study(p, n), delta_max, count);
            std::vector<std::pair<double, double>> pts;
            pts.reserve(curve.points.size());
            for (const auto& pt : curve.points) pts.emplace_back(pt.delta, pt.lr);
            return pts;
        },
        py::arg("p"), py::arg("n"), py::arg("delta_max"), py::arg("count") = 101);

    m.def(
        "support_interval", [](double p, double n) { return support_interval(make_study(p, n)); },
        py::arg("p"), py::arg("n"));
    m.def(
        "closed_form_upper", [](double p, double n) { return closed_form_upper(make_study(p, n)); },
        py::arg("p"), py::arg("n"));
    m.def(
        "rule_a_upper", [](double p, double n) { return rule_a_upper(make_study(p, n)); },
        py::arg("p"), py::arg("n"));
    m.def(
        "lambda_stat",
        [](double p, double n, double mcses) {
            return lambda_stat(make_study(p, n), McsesSpec(mcses));
        },
        py::arg("p"), py::arg("n"), py::arg("mcses"));
    m.def(
        "s_value",
        [](double p, double n, double mcses, bool direction_opposed) {
            return s_value(make_study(p, n), McsesSpec(mcses), direction_opposed);
        },
        py::arg("p"), py::arg("n"), py::arg("mcses"), py::arg("direction_opposed") = false);
    m.def(
        "mcses_sweep",
        [](double p, double n, const std::vector<double>& deltas) {
            std::vector<McsesSpec> grid;
            grid.reserve(deltas.size());
            for (double d : deltas) grid.emplace_back(d);
            auto res = mcses_sweep(make_study(p, n), grid);
            std::vector<std::pair<double, SValueResult>> out;
            out.reserve(res.size());
            for (auto& [spec, sv] : res) out.emplace_back(spec.delta, sv);
            return out;
        },
        py::arg("p"), py::arg("n"), py::arg("mcses_grid"));

    m.def(
        "std_effect_from_proportions",
        [](double p1, double p2, double n_per_group) {
            auto e = std_effect_from_proportions(ProportionSummary(p1, p2, n_per_group));
            return std::make_pair(e.delta, e.n_effective);
        },
        py::arg("p1"), py::arg("p2"), py::arg("n_per_group"));
    m.def(
        "std_effect_from_hazard",
        [](double hr, double events, double allocation) {
            auto e = std_effect_from_hazard(HazardSummary(hr, events, allocation));
            return std::make_pair(e.delta, e.n_effective);
        },
        py::arg("hazard_ratio"), py::arg("total_events"), py::arg("allocation") = 0.5);
    m.def(
        "std_effect_from_means",
        [](double m1, double m2, double sd, double n_per_group) {
            auto e = std_effect_from_means(MeanSummary(m1, m2, sd, n_per_group));
            return std::make_pair(e.delta, e.n_effective);
        },
        py::arg("m1"), py::arg("m2"), py::arg("pooled_sd"), py::arg("n_per_group"));

    m.def("s_display", &s_display, py::arg("s"));
    m.def(
        "report_csv",
        [](const std::string& study_text) {
            return report_to_csv(build_report(parse_study(study_text)));
        },
        py::arg("study_text"), "Parse a study file and render the per-outcome report CSV.");
}
