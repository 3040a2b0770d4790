#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "schmidt/campaign.hpp"
#include "schmidt/config.hpp"
#include "schmidt/errors.hpp"
#include "schmidt/filtration.hpp"
#include "schmidt/places.hpp"
#include "schmidt/position.hpp"
#include "schmidt/projgeom.hpp"

namespace py = pybind11;
using namespace schmidt;

// Rationals cross the boundary as "p/q" strings; the Python layer turns them into Fractions.
namespace {

std::vector<HomForm> parse_forms(const std::vector<std::string>& texts, std::size_t n) {
  std::vector<HomForm> out;
  for (const auto& t : texts) out.push_back(parse_form(t, n));
  return out;
}

std::vector<Rational> parse_point(const std::vector<std::string>& coords) {
  std::vector<Rational> out;
  for (const auto& c : coords) out.push_back(parse_rational(c));
  return out;
}

CampaignConfig config_from(const std::string& json_text, bool hyperplane_mode) {
  auto cfg = parse_family_spec(json_text);
  if (hyperplane_mode) enable_hyperplane_mode(cfg);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact-arithmetic core: places, heights, position tests, filtrations and campaigns";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<PositionError>(m, "PositionError", PyExc_RuntimeError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  m.def("product_formula_check", [](const std::string& q) { return to_string(product_formula_check(parse_rational(q))); },
        py::arg("q"));

  m.def(
      "first_main_identity",
      [](const std::string& form, std::size_t n, const std::vector<std::string>& point) {
        const auto raw = parse_point(point);
        const auto x = ProjectivePoint::from_raw(std::span<const Rational>(raw));
        return to_string(first_main_identity(parse_form(form, n), x));
      },
      py::arg("form"), py::arg("n"), py::arg("point"));

  m.def(
      "point_height",
      [](const std::vector<std::string>& point) {
        const auto raw = parse_point(point);
        return to_string(point_height(ProjectivePoint::from_raw(std::span<const Rational>(raw))).kernel());
      },
      py::arg("point"));

  m.def(
      "form_height",
      [](const std::string& form, std::size_t n) { return to_string(form_height_primitive(parse_form(form, n)).kernel()); },
      py::arg("form"), py::arg("n"));

  m.def(
      "lemma33_count", [](std::size_t n, unsigned d, long M) { return to_string(lemma33_count(n, d, M)); }, py::arg("n"),
      py::arg("d"), py::arg("M"));

  m.def(
      "quotient_dim_rank",
      [](const std::vector<std::string>& forms, std::size_t n, unsigned L) {
        return quotient_dim_rank(parse_forms(forms, n), L);
      },
      py::arg("forms"), py::arg("n"), py::arg("L"));

  m.def(
      "filtration_stats",
      [](std::size_t n, unsigned d, unsigned L) {
        const auto s = filtration_stats(n, d, L);
        return py::dict(py::arg("u") = to_string(s.u), py::arg("K") = to_string(s.K), py::arg("a") = to_string(s.a));
      },
      py::arg("n"), py::arg("d"), py::arg("L"));

  m.def(
      "choose_L",
      [](std::size_t n, unsigned d, std::size_t N, const std::string& eps, const std::string& eps_prime) {
        const auto c = choose_L(n, d, N, parse_rational(eps), parse_rational(eps_prime));
        return py::make_tuple(c.L, to_string(c.ratio), to_string(c.bound));
      },
      py::arg("n"), py::arg("d"), py::arg("N"), py::arg("epsilon"), py::arg("epsilon_prime") = "1");

  m.def(
      "only_trivial_zero",
      [](const std::vector<std::string>& forms, std::size_t n) { return only_trivial_zero(parse_forms(forms, n)); },
      py::arg("forms"), py::arg("n"));

  m.def(
      "sylvester_resultant",
      [](const std::string& f, const std::string& g) {
        return to_string(sylvester_resultant(parse_form(f, 1), parse_form(g, 1)));
      },
      py::arg("f"), py::arg("g"));

  m.def(
      "reduce_to_general",
      [](const std::vector<std::string>& forms, std::size_t n, std::size_t N) {
        const auto r = reduce_to_general(parse_forms(forms, n), n, N);
        std::vector<std::vector<std::string>> coeffs;
        for (const auto& row : r.coefficients) {
          auto& out = coeffs.emplace_back();
          for (const auto& c : row) out.push_back(to_string(c));
        }
        std::vector<std::string> P;
        for (const auto& f : r.forms) P.push_back(f.to_string());
        return py::make_tuple(coeffs, P);
      },
      py::arg("forms"), py::arg("n"), py::arg("N"));

  m.def(
      "run_campaign",
      [](const std::string& config_json, const std::string& format, bool hyperplane_mode) {
        if (format != "csv" && format != "json") throw ConfigError("format: expected csv or json");
        const auto cfg = config_from(config_json, hyperplane_mode);
        std::ostringstream out;
        const auto s = run_campaign(cfg, out, format == "json" ? OutputFormat::json : OutputFormat::csv);
        return py::make_tuple(out.str(), summary_json(s, cfg));
      },
      py::arg("config_json"), py::arg("format") = "csv", py::arg("hyperplane_mode") = false,
      "Returns (rows, summary_json).");

  m.def(
      "check_position",
      [](const std::string& config_json) {
        const auto cfg = config_from(config_json, false);
        const auto v = check_position(cfg.family, cfg.N, cfg.position_samples);
        py::dict d;
        d["mode"] = v.mode_name();
        d["certified_weakly"] = v.certified_weakly;
        d["witness_subset"] = v.witness_subset ? py::cast(*v.witness_subset) : py::none();
        d["witness_alpha"] = v.witness_alpha ? py::cast(*v.witness_alpha) : py::none();
        return d;
      },
      py::arg("config_json"));

  m.def(
      "nondegeneracy_probe",
      [](const std::string& config_json, unsigned degree) {
        const auto cfg = config_from(config_json, false);
        const auto alphas = cfg.alphas();
        const auto v = nondegeneracy_probe(cfg.points, degree ? degree : cfg.probe_degree, alphas);
        py::dict d;
        d["nondegenerate"] = v.nondegenerate;
        d["rank"] = v.rank;
        d["columns"] = v.columns;
        d["witness"] = v.witness ? py::cast(v.witness->to_string()) : py::none();
        return d;
      },
      py::arg("config_json"), py::arg("degree") = 0);

}
