#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "afcfo/config.hpp"
#include "afcfo/csv.hpp"
#include "afcfo/experiment.hpp"
#include "afcfo/relay_chain.hpp"
#include "afcfo/signal_core.hpp"
#include "afcfo/snr_analysis.hpp"

namespace py = pybind11;
using namespace afcfo;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

ComplexVector to_vector(const CArray& a) {
    if (a.ndim() != 1) throw std::invalid_argument("expected a one-dimensional array");
    return ComplexVector(a.data(), a.data() + a.size());
}

CArray to_array(const ComplexVector& v) {
    CArray out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::object optional_float(const std::optional<double>& v) {
    return v ? py::object(py::float_(*v)) : py::object(py::none());
}

py::dict point_to_dict(const PointResult& r) {
    const CsvRecord rec = to_record(r);
    py::dict d;
    d["eps1"] = rec.eps1;
    d["eps2"] = rec.eps2;
    d["noise_scale"] = r.noise_scale;
    d["analytical_db"] = optional_float(rec.analytical_db);
    d["empirical_db"] = optional_float(rec.empirical_db);
    d["stderr_db"] = optional_float(rec.stderr_db);
    d["lambda1"] = optional_float(rec.lambda1);
    d["lambda2"] = optional_float(rec.lambda2);
    d["trials"] = rec.trials ? py::object(py::int_(*rec.trials)) : py::object(py::none());
    d["seed"] = rec.seed;
    return d;
}

SensitivityVariant parse_variant(const std::string& name) {
    if (name == "chain_rule") return SensitivityVariant::chain_rule;
    if (name == "paper_literal") return SensitivityVariant::paper_literal;
    throw std::invalid_argument("unknown sensitivity variant '" + name + "'");
}

// Offsets are plain floats on the Python side and validated on assignment.
template <typename T>
void offset_property(py::class_<T>& cls, const char* name, CfoValue T::*member) {
    cls.def_property(
        name, [member](const T& s) { return (s.*member).value(); },
        [member](T& s, double v) { s.*member = CfoValue(v); });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "OFDM amplify-and-forward relaying under carrier frequency offsets";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IsiConditionError>(m, "IsiConditionError", PyExc_ValueError);

    m.def("dft", [](const CArray& x) { return to_array(dft(to_vector(x))); }, py::arg("x"),
          "Unnormalised forward transform.");
    m.def("idft", [](const CArray& x) { return to_array(idft(to_vector(x))); }, py::arg("x"),
          "Inverse transform with the 1/N factor.");
    m.def("dirichlet_gain", [](double eps, long N) { return dirichlet_gain(CfoValue(eps), N); },
          py::arg("eps"), py::arg("N"));
    m.def("dirichlet_gain_derivative", [](double eps, long N) { return dirichlet_gain_derivative(CfoValue(eps), N); },
          py::arg("eps"), py::arg("N"));
    m.def("cfo_spectrum", [](double eps, long k, long N) { return cfo_spectrum(CfoValue(eps), k, N); },
          py::arg("eps"), py::arg("k"), py::arg("N"));
    m.def("cfo_spectrum_all", [](double eps, long N) { return to_array(cfo_spectrum_all(CfoValue(eps), N)); },
          py::arg("eps"), py::arg("N"));

    py::class_<LinkStats> link(m, "LinkStats");
    link.def(py::init<>())
        .def_readwrite("sigma_h1_sq", &LinkStats::sigma_h1_sq)
        .def_readwrite("sigma_h2_sq", &LinkStats::sigma_h2_sq)
        .def_readwrite("sigma_h3_sq", &LinkStats::sigma_h3_sq)
        .def_readwrite("sigma_x_sq", &LinkStats::sigma_x_sq)
        .def_readwrite("sigma_z1_sq", &LinkStats::sigma_z1_sq)
        .def_readwrite("sigma_z2_sq", &LinkStats::sigma_z2_sq)
        .def_readwrite("sigma_z3_sq", &LinkStats::sigma_z3_sq)
        .def_readwrite("rho", &LinkStats::rho)
        .def_readwrite("N", &LinkStats::N);
    offset_property(link, "eps1", &LinkStats::eps1);
    offset_property(link, "eps2", &LinkStats::eps2);

    py::class_<SnrBreakdown>(m, "SnrBreakdown")
        .def_readonly("numerator", &SnrBreakdown::numerator)
        .def_readonly("denominator", &SnrBreakdown::denominator)
        .def_readonly("snr_linear", &SnrBreakdown::snr_linear)
        .def_readonly("snr_db", &SnrBreakdown::snr_db)
        .def_readonly("infinite", &SnrBreakdown::infinite)
        .def("__repr__", [](const SnrBreakdown& s) {
            return "SnrBreakdown(A=" + std::to_string(s.numerator) + ", B=" + std::to_string(s.denominator) +
                   ", snr_db=" + std::to_string(s.snr_db) + ")";
        });

    py::class_<SensitivityPair>(m, "SensitivityPair")
        .def_readonly("lambda1", &SensitivityPair::lambda1)
        .def_readonly("lambda2", &SensitivityPair::lambda2)
        .def_property_readonly("variant", [](const SensitivityPair& p) { return std::string(to_string(p.variant)); });

    m.def("analytical_snr", &analytical_snr, py::arg("stats"));
    m.def(
        "analytical_snr_upa",
        [](const LinkStats& s, const std::string& form) {
            if (form != "substituted" && form != "as_printed") throw std::invalid_argument("unknown form '" + form + "'");
            return analytical_snr_upa(s, form == "substituted" ? UpaForm::substituted : UpaForm::as_printed);
        },
        py::arg("stats"), py::arg("form") = "substituted");
    m.def(
        "sensitivities", [](const LinkStats& s, const std::string& v) { return sensitivities(s, parse_variant(v)); },
        py::arg("stats"), py::arg("variant") = "chain_rule");
    m.def(
        "sensitivities_upa",
        [](const LinkStats& s, const std::string& v) { return sensitivities_upa(s, parse_variant(v)); },
        py::arg("stats"), py::arg("variant") = "chain_rule");

    py::class_<DirectLinkStats> direct(m, "DirectLinkStats");
    direct.def(py::init<>())
        .def_readwrite("sigma_h0_sq", &DirectLinkStats::sigma_h0_sq)
        .def_readwrite("sigma_z0_sq", &DirectLinkStats::sigma_z0_sq);
    offset_property(direct, "eps0", &DirectLinkStats::eps0);

    py::class_<BranchStats> branch(m, "BranchStats");
    branch.def(py::init<>())
        .def_readwrite("sigma_hi1_sq", &BranchStats::sigma_hi1_sq)
        .def_readwrite("sigma_hi2_sq", &BranchStats::sigma_hi2_sq)
        .def_readwrite("rho", &BranchStats::rho)
        .def_readwrite("sigma_zi1_sq", &BranchStats::sigma_zi1_sq)
        .def_readwrite("sigma_zi2_sq", &BranchStats::sigma_zi2_sq);
    offset_property(branch, "eps", &BranchStats::eps);

    py::class_<TopologyStats>(m, "TopologyStats")
        .def(py::init<>())
        .def_readwrite("direct", &TopologyStats::direct)
        .def_readwrite("branches", &TopologyStats::branches)
        .def_readwrite("sigma_x_sq", &TopologyStats::sigma_x_sq)
        .def_readwrite("N", &TopologyStats::N);

    m.def("multi_relay_snr", &multi_relay_snr, py::arg("topology"));
    m.def("to_topology", &to_topology, py::arg("stats"));

    m.def(
        "gain_factor",
        [](const std::string& mode, double sigma_h2_sq, double sigma_z2_sq, double rho, double P, double P_S,
           double P_R) {
            return gain_factor(RelayGainConfig{parse_gain_mode(mode), rho, P, P_S, P_R}, sigma_h2_sq, sigma_z2_sq);
        },
        py::arg("mode"), py::arg("sigma_h2_sq"), py::arg("sigma_z2_sq"), py::arg("rho") = 1.0, py::arg("P") = 2.0,
        py::arg("P_S") = 1.0, py::arg("P_R") = 1.0);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_readwrite("name", &ExperimentConfig::name)
        .def_readwrite("trials", &ExperimentConfig::trials)
        .def_readwrite("master_seed", &ExperimentConfig::master_seed)
        .def_readwrite("workers", &ExperimentConfig::workers)
        .def_readwrite("noise_scales", &ExperimentConfig::noise_scales)
        .def_property(
            "grid", [](const ExperimentConfig& c) { return c.sweep.grid; },
            [](ExperimentConfig& c, std::vector<double> g) { c.sweep.grid = std::move(g); })
        .def_property(
            "mode", [](const ExperimentConfig& c) { return std::string(to_string(c.mode)); },
            [](ExperimentConfig& c, const std::string& v) { c.mode = parse_run_mode(v); })
        .def("validate", &ExperimentConfig::validate)
        .def("to_json", [](const ExperimentConfig& c) { return to_json(c); })
        .def("digest", [](const ExperimentConfig& c) { return config_digest(c); });

    m.def("preset_names", [] {
        std::vector<std::string> names;
        for (const Preset& p : presets()) names.emplace_back(p.name);
        return names;
    });
    m.def("load_config", &resolve_config, py::arg("path_or_preset"),
          "Load a config file, or a shipped preset by name.");
    m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));

    m.def(
        "run_sweep",
        [](ExperimentConfig cfg) {
            cfg.validate();
            std::vector<PointResult> rows;
            {
                py::gil_scoped_release release;
                rows = run_sweep(cfg);
            }
            py::list out;
            for (const PointResult& r : rows) out.append(point_to_dict(r));
            return out;
        },
        py::arg("config"), "Run the configured sweep; one dict per CSV row.");
    m.def(
        "sweep_csv",
        [](ExperimentConfig cfg) {
            cfg.validate();
            std::vector<CsvRecord> rows;
            {
                py::gil_scoped_release release;
                for (const PointResult& r : run_sweep(cfg)) rows.push_back(to_record(r));
            }
            return format_csv(rows);
        },
        py::arg("config"), "Run the configured sweep and render it as CSV text.");
    m.attr("CSV_HEADER") = std::string(kCsvHeader);
}
