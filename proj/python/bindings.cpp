#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "invar/commands.hpp"
#include "invar/errors.hpp"
#include "invar/hilbert.hpp"
#include "invar/oracle.hpp"
#include "invar/presentation.hpp"
#include "invar/relcheck.hpp"

namespace py = pybind11;
using namespace invar;

namespace {

GroupSpec spec(const std::string& group, std::size_t n, std::uint64_t p, unsigned e) {
  return {parse_group_kind(group), n, Field::create(p, e)};
}

// JSON crosses the boundary as text; the Python side decodes it.
std::string presentation_json(const std::string& group, std::size_t n, std::uint64_t p, unsigned e) {
  return to_json(build_presentation(spec(group, n, p, e))).dump();
}

std::string presentation_text(const std::string& group, std::size_t n, std::uint64_t p, unsigned e,
                              const std::string& format) {
  const auto pres = build_presentation(spec(group, n, p, e));
  if (format == "cas") return to_cas_script(pres);
  if (format == "text") return to_text(pres);
  throw std::invalid_argument("format must be text or cas");
}

std::string verify_json(const std::string& group, std::size_t n, std::uint64_t p, unsigned e, unsigned jobs) {
  const auto pres = build_presentation(spec(group, n, p, e));
  require_verifiable(pres);
  return verify_presentation(pres, "generated", jobs).to_json().dump();
}

std::string verify_presentation_json(const std::string& text, unsigned jobs) {
  const auto pres = presentation_from_json(nlohmann::json::parse(text));
  require_verifiable(pres);
  return verify_presentation(pres, "input", jobs).to_json().dump();
}

std::string dims_json(const std::string& group, std::size_t n, std::uint64_t p, unsigned e, std::size_t cutoff,
                      unsigned jobs) {
  return invariant_dims(spec(group, n, p, e), cutoff, OracleLimits::from_env(), {}, jobs).to_json().dump();
}

std::string hilbert_json(const std::string& group, std::size_t n, std::uint64_t p, unsigned e, std::size_t cutoff) {
  const auto g = spec(group, n, p, e);
  const auto h = series_for(g.kind, n, g.field.q());
  auto j = to_json(expand(h, cutoff, cutoff), cutoff);
  j["series"] = to_json(h);
  return j.dump();
}

std::string conjecture_json(std::size_t n, std::uint64_t p, unsigned e, std::size_t cutoff, unsigned jobs) {
  const GroupSpec g{GroupKind::GLn, n, Field::create(p, e)};
  return check_generation(g, conjecture_generators(g.field, n), cutoff, OracleLimits::from_env(), {}, false, jobs)
      .to_json()
      .dump();
}

std::string fuzz_json(std::uint64_t seed, std::size_t max_n, std::size_t trials) {
  return to_json(fuzz_det_identity(seed, max_n, trials, default_fuzz_rings())).dump();
}

std::string sl2_json(std::size_t cutoff) { return sl2_counterexample_report(cutoff, OracleLimits::from_env()).to_json().dump(); }

py::tuple cli(const std::vector<std::string>& args) {
  std::vector<std::string> full{"invar"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : full) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_invar, m) {
  m.doc() = "Invariant rings of U_n, B_n, SL_n, GL_n on V + V* over finite fields";
  py::register_exception<ResourceLimit>(m, "ResourceLimit");

  m.def("presentation_json", &presentation_json, py::arg("group"), py::arg("n"), py::arg("p"), py::arg("e") = 1);
  m.def("presentation_text", &presentation_text, py::arg("group"), py::arg("n"), py::arg("p"), py::arg("e") = 1,
        py::arg("format") = "text");
  m.def("verify_json", &verify_json, py::arg("group"), py::arg("n"), py::arg("p"), py::arg("e") = 1,
        py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("verify_presentation_json", &verify_presentation_json, py::arg("text"), py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("dims_json", &dims_json, py::arg("group"), py::arg("n"), py::arg("p"), py::arg("e") = 1, py::arg("cutoff"),
        py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("hilbert_json", &hilbert_json, py::arg("group"), py::arg("n"), py::arg("p"), py::arg("e") = 1,
        py::arg("cutoff"));
  m.def("conjecture_json", &conjecture_json, py::arg("n"), py::arg("p"), py::arg("e") = 1, py::arg("cutoff"),
        py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("fuzz_json", &fuzz_json, py::arg("seed"), py::arg("max_n"), py::arg("trials"),
        py::call_guard<py::gil_scoped_release>());
  m.def("sl2_json", &sl2_json, py::arg("cutoff") = 6, py::call_guard<py::gil_scoped_release>());
  m.def("cli", &cli, py::arg("args"));
}
