#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tbf/boundary.hpp"
#include "tbf/density.hpp"
#include "tbf/gfunction.hpp"
#include "tbf/ghoc.hpp"
#include "tbf/oracle.hpp"
#include "tbf/specification.hpp"
#include "tbf/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace py = pybind11;

namespace {

tbf::StoppingDistance to_distance(const py::object& n) {
    if (py::isinstance<py::int_>(n))
        return tbf::StoppingDistance::finite(n.cast<long>());
    double v = n.cast<double>();
    if (std::isinf(v) && v > 0) return tbf::StoppingDistance::infinity();
    if (v == std::floor(v)) return tbf::StoppingDistance::finite(static_cast<long>(v));
    throw std::domain_error("stopping distance must be a nonnegative integer or inf");
}

double from_state(const tbf::GhocState& s) {
    if (s.is_infinite()) return std::numeric_limits<double>::infinity();
    return static_cast<double>(s.value());
}

tbf::TailPattern tail_from_text(const std::string& text) {
    if (text == "ones") return tbf::TailPattern::all_ones();
    if (text == "empty") return tbf::TailPattern::all_empty();
    if (text.rfind("per:", 0) == 0) {
        std::vector<int> bits;
        for (char c : text.substr(4)) {
            if (c != '0' && c != '1')
                throw std::domain_error("tail bits must be 0 or 1");
            bits.push_back(c - '0');
        }
        return tbf::TailPattern::periodic(std::move(bits));
    }
    throw std::domain_error("expected ones, empty, or per:BITS");
}

py::dict kernel_to_dict(const tbf::KernelResult& res) {
    py::list rows;
    for (const auto& [word, prob] : res.probabilities)
        rows.append(py::make_tuple(word, prob));
    py::dict out;
    out["probabilities"] = rows;
    out["partition_value"] = res.partition_value;
    out["log_partition"] = res.log_partition;
    return out;
}

} // namespace

PYBIND11_MODULE(tbflab, m) {
    m.doc() = "thinned Bernoulli field laboratory";

    py::class_<tbf::BoundaryCondition>(m, "BoundaryCondition")
        .def_readonly("l", &tbf::BoundaryCondition::l)
        .def_readonly("r", &tbf::BoundaryCondition::r)
        .def_readonly("left_annulus", &tbf::BoundaryCondition::left_annulus)
        .def_readonly("right_annulus", &tbf::BoundaryCondition::right_annulus)
        .def_property_readonly(
            "left_tail",
            [](const tbf::BoundaryCondition& bc) { return bc.left_tail.text(); })
        .def_property_readonly(
            "right_tail",
            [](const tbf::BoundaryCondition& bc) { return bc.right_tail.text(); })
        .def("validate", &tbf::BoundaryCondition::validate)
        .def("__repr__",
             [](const tbf::BoundaryCondition& bc) { return format_boundary(bc); });

    m.def("boundary",
          [](long l, long r, const std::vector<int>& left_annulus,
             const std::vector<int>& right_annulus, const std::string& left_tail,
             const std::string& right_tail) {
              tbf::BoundaryCondition bc;
              bc.l = l;
              bc.r = r;
              bc.left_annulus = left_annulus;
              bc.right_annulus = right_annulus;
              bc.left_tail = tail_from_text(left_tail);
              bc.right_tail = tail_from_text(right_tail);
              bc.validate();
              return bc;
          },
          py::arg("l"), py::arg("r"), py::arg("left_annulus"),
          py::arg("right_annulus"), py::arg("left_tail") = "ones",
          py::arg("right_tail") = "ones");

    m.def("parse_boundary", &tbf::parse_boundary, py::arg("text"));
    m.def("format_boundary", &tbf::format_boundary, py::arg("bc"));

    m.def("spectrum", [](double p) {
        tbf::Spectrum s = tbf::build_spectrum(tbf::Density(p));
        py::dict out;
        out["p"] = s.p;
        out["sqrt_disc"] = s.sqrt_disc;
        out["lambda_pf"] = s.lambda_pf;
        out["lambda_r"] = s.lambda_r;
        out["a"] = s.a;
        out["v_pf"] = py::make_tuple(s.v_pf[0], s.v_pf[1]);
        out["v_r"] = py::make_tuple(s.v_r[0], s.v_r[1]);
        out["c_ratio"] = s.c_ratio;
        out["d_const"] = s.d_const;
        return out;
    }, py::arg("p"));

    m.def("g",
          [](double p, const py::object& n) {
              return tbf::g(tbf::Density(p), to_distance(n));
          },
          py::arg("p"), py::arg("n"));
    m.def("variation",
          [](double p, long n) { return tbf::variation(tbf::Density(p), n); },
          py::arg("p"), py::arg("n"));
    m.def("g_gap", [](double p, long n) { return tbf::g_gap(tbf::Density(p), n); },
          py::arg("p"), py::arg("n"));
    m.def("parity_limit", &tbf::parity_limit, py::arg("n"));

    m.def("stationary",
          [](double p, double threshold) {
              tbf::StationaryDistribution st =
                  tbf::stationary_auto(tbf::Density(p), threshold);
              py::dict out;
              out["probabilities"] = st.probabilities;
              out["probability_infinity"] = st.probability_infinity;
              out["truncation_level"] = st.truncation_level;
              out["tail_mass_bound"] = st.tail_mass_bound;
              return out;
          },
          py::arg("p"), py::arg("threshold") = 1e-10);

    m.def("sample_path",
          [](double p, long length, std::uint64_t seed) {
              std::vector<double> out;
              for (const tbf::GhocState& s :
                   tbf::sample_path(tbf::Density(p), length, seed))
                  out.push_back(from_state(s));
              return out;
          },
          py::arg("p"), py::arg("length"), py::arg("seed"));

    m.def("tau", [](const py::object& n) { return tbf::tau(to_distance(n)); },
          py::arg("n"));

    m.def("pattern_probability",
          [](double p, const std::vector<int>& word) {
              return tbf::pattern_probability(tbf::Density(p), word);
          },
          py::arg("p"), py::arg("word"));

    m.def("distance_sequence",
          [](const std::vector<int>& word, const std::string& left_tail) {
              std::vector<double> out;
              for (const tbf::GhocState& s :
                   tbf::distance_sequence(word, tail_from_text(left_tail)))
                  out.push_back(from_state(s));
              return out;
          },
          py::arg("word"), py::arg("left_tail") = "ones");

    m.def("thin", &tbf::thin, py::arg("word"), py::arg("left_spin"),
          py::arg("right_spin"));

    m.def("kernel",
          [](double p, const tbf::BoundaryCondition& bc) {
              return kernel_to_dict(tbf::kernel(tbf::Density(p), bc));
          },
          py::arg("p"), py::arg("bc"));
    m.def("kernel",
          [](double p, const std::string& bc_text) {
              tbf::BoundaryCondition bc = tbf::parse_boundary(bc_text);
              bc.validate();
              return kernel_to_dict(tbf::kernel(tbf::Density(p), bc));
          },
          py::arg("p"), py::arg("bc"));

    m.def("sensitivity_bounds",
          [](double p, long l, long r, long L, long R) {
              tbf::SensitivityBounds sb =
                  tbf::sensitivity_bounds(tbf::Density(p), l, r, L, R);
              return py::make_tuple(sb.n, sb.lower, sb.upper);
          },
          py::arg("p"), py::arg("l"), py::arg("r"), py::arg("L"), py::arg("R"));
    m.def("lower_bound_exact",
          [](double p, long n, long window_len) {
              return tbf::lower_bound_exact(tbf::Density(p), n, window_len);
          },
          py::arg("p"), py::arg("n"), py::arg("window_len"));
    m.def("witness_word", &tbf::witness_word, py::arg("window_len"));

    m.def("pushforward_marginal",
          [](double p, const std::vector<int>& pattern, long padding) {
              return tbf::pushforward_marginal(tbf::Density(p), pattern, padding);
          },
          py::arg("p"), py::arg("pattern"), py::arg("padding") = 2);
}
