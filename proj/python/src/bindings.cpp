// Copyright 2026 The complexity-lab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings. Matrices cross the boundary as NumPy arrays; structured
// results cross as JSON text that the Python package decodes into dicts, so
// both front ends share one serialization.

#include <string>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "complexity_lab/constructions.hpp"
#include "complexity_lab/core.hpp"
#include "complexity_lab/embeddings.hpp"
#include "complexity_lab/error.hpp"
#include "complexity_lab/io.hpp"
#include "complexity_lab/learners.hpp"
#include "complexity_lab/measures.hpp"
#include "complexity_lab/spectral.hpp"
#include "complexity_lab/verify.hpp"
#include "complexity_lab/version.hpp"

namespace py = pybind11;
using namespace clab;

namespace {

std::string dump(const Json& j) { return j.dump(); }

DimSearchMode search_mode(bool greedy, int exact_cap) {
  return {greedy ? SearchMode::kGreedy : SearchMode::kExact, exact_cap};
}

LossSpec loss_of(const std::string& name) { return LossSpec::of_kind(parse_loss_kind(name)); }

FamilyGenerator generator_of(const std::string& family, const FiniteHypothesisClass& h,
                             const DistributionOverX& d, std::uint64_t seed,
                             double cover_eps) {
  if (family == "svd") return svd_family_generator(h, d);
  if (family == "zero") return zero_family_generator(h.num_points());
  if (family == "jl") return jl_family_generator(h.num_points(), seed);
  if (family == "cover") return cover_family_generator(h, d, cover_eps);
  throw ConfigError("unknown family '" + family + "' (expected svd, zero, jl or cover)");
}

}  // namespace

PYBIND11_MODULE(_complexity_lab, m) {
  m.doc() = "Native core of complexity_lab";
  m.attr("__version__") = std::string(kVersion);

  // Translators run newest first, so the base class is registered first.
  auto& base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ConstraintError>(m, "ConstraintError", base.ptr());
  py::register_exception<SizeError>(m, "SizeError", base.ptr());

  py::class_<FiniteHypothesisClass>(m, "FiniteHypothesisClass")
      .def(py::init([](IdList domain, IdList hypotheses, const Matrix& values,
                       const std::string& label_kind) {
             return FiniteHypothesisClass(std::move(domain), std::move(hypotheses), values,
                                          parse_label_kind(label_kind));
           }),
           py::arg("domain"), py::arg("hypotheses"), py::arg("values"),
           py::arg("label_kind") = "binary")
      .def_property_readonly("domain", &FiniteHypothesisClass::domain)
      .def_property_readonly("hypotheses", &FiniteHypothesisClass::hypotheses)
      .def_property_readonly("values", &FiniteHypothesisClass::values)
      .def_property_readonly("label_kind",
                             [](const FiniteHypothesisClass& h) {
                               return std::string(to_string(h.label_kind()));
                             })
      .def("to_json", [](const FiniteHypothesisClass& h) { return dump(to_json(h)); })
      .def_static("from_json", [](const std::string& text) {
        return class_from_json(parse_json_text(text, "<python>"));
      });

  py::class_<DistributionOverX>(m, "DistributionOverX")
      .def(py::init([](const Vector& p) { return DistributionOverX(p); }), py::arg("probabilities"))
      .def_static("uniform", [](int n) { return DistributionOverX::uniform(n); }, py::arg("n"))
      .def_property_readonly("probabilities", &DistributionOverX::probabilities)
      .def("__len__", &DistributionOverX::size);

  py::class_<NormalizedClass>(m, "NormalizedClass")
      .def_property_readonly("hypotheses", &NormalizedClass::hypotheses)
      .def_property_readonly("distribution", &NormalizedClass::distribution)
      .def_property_readonly("values", &NormalizedClass::values)
      .def("__len__", &NormalizedClass::size);

  m.def("normalize_class", &normalize_class, py::arg("h"), py::arg("d"));
  m.def("eval_loss", [](const std::string& loss, double yhat, double y) {
    return eval_loss(loss_of(loss), yhat, y);
  }, py::arg("loss"), py::arg("yhat"), py::arg("y"));

  // Constructions.
  m.def("parities", &parities, py::arg("n"));
  m.def("one_sparse", &one_sparse, py::arg("n"));
  m.def("pattern_decision_list", &pattern_decision_list, py::arg("k"), py::arg("p"));
  m.def("random_class", &random_class, py::arg("num_hypotheses"), py::arg("num_points"),
        py::arg("binary"), py::arg("seed"));
  m.def("random_halfplane_class", &random_halfplane_class, py::arg("num_points"),
        py::arg("num_hypotheses"), py::arg("seed"));
  m.def("random_distribution", &random_distribution, py::arg("num_points"), py::arg("seed"));
  m.def("psi", &psi, py::arg("a"), py::arg("z"));
  m.def("zigzag_parameter", &zigzag_parameter, py::arg("n"));

  // Spectral.
  m.def("gram_matrix", [](const NormalizedClass& h, const IdList& subset) {
    return gram_matrix(h, subset).matrix();
  }, py::arg("h"), py::arg("subset"));
  m.def("gershgorin_bound", py::overload_cast<const Matrix&>(&gershgorin_bound), py::arg("g"));
  m.def("min_eigenvalue", &min_eigenvalue, py::arg("symmetric"));
  m.def("sq_dimension", [](const NormalizedClass& h, bool greedy, int exact_cap) {
    return dump(to_json(sq_dimension(h, search_mode(greedy, exact_cap))));
  }, py::arg("h"), py::arg("greedy") = false, py::arg("exact_cap") = 20);
  m.def("min_ev_dimension", [](const NormalizedClass& h, double lambda, bool greedy, int exact_cap) {
    return dump(to_json(min_ev_dimension(h, lambda, search_mode(greedy, exact_cap))));
  }, py::arg("h"), py::arg("lam"), py::arg("greedy") = false, py::arg("exact_cap") = 20);
  m.def("avg_rank_error_oracle",
        py::overload_cast<const NormalizedClass&, int>(&avg_rank_error_oracle), py::arg("h"),
        py::arg("d"));

  // Embeddings.
  m.def("greedy_cover", [](const FiniteHypothesisClass& h, const DistributionOverX& d, double eps) {
    return dump(to_json(greedy_cover(h, d, eps)));
  }, py::arg("h"), py::arg("d"), py::arg("eps"));
  m.def("representer_reduce", [](const Matrix& features, const std::vector<int>& sample) {
    const RepresenterReduction r = representer_reduce(Embedding::tabular(features), sample);
    return py::make_tuple(r.reduced.features(), r.basis);
  }, py::arg("features"), py::arg("sample_points"));
  m.def("jl_matrix", &jl_matrix, py::arg("d_in"), py::arg("d_target"), py::arg("seed"));

  // Learners.
  m.def("linear_erm", [](const Matrix& x, const Vector& y, const std::string& loss,
                         std::optional<double> radius) {
    ErmOptions opts;
    opts.certify = false;
    const ErmResult r = radius ? norm_constrained_erm(x, y, *radius, loss_of(loss), opts)
                               : linear_erm(x, y, loss_of(loss), opts);
    return py::make_tuple(r.w, r.empirical_loss, r.method);
  }, py::arg("x"), py::arg("y"), py::arg("loss") = "squared", py::arg("radius") = py::none());

  // Measures.
  m.def("dc_criterion", [](const FiniteHypothesisClass& h, const DistributionOverX& d,
                           const std::string& family, int dim, const std::string& loss,
                           int draws, std::uint64_t seed, double cover_eps) {
    return dump(to_json(distributional_dc_criterion(
        generator_of(family, h, d, seed, cover_eps)(dim), h, d, loss_of(loss), draws, seed)));
  }, py::arg("h"), py::arg("d"), py::arg("family"), py::arg("dim"),
     py::arg("loss") = "squared", py::arg("draws") = 20, py::arg("seed") = 42,
     py::arg("cover_eps") = 0.25);
  m.def("min_dim_for_criterion", [](const FiniteHypothesisClass& h, const DistributionOverX& d,
                                    const std::string& family, double eps, int d_min, int d_max,
                                    const std::string& loss, int draws, std::uint64_t seed,
                                    double cover_eps) {
    CriterionOptions opts;
    opts.erm.seed = derive_seed(seed, "erm");
    return dump(to_json(min_dim_for_criterion(generator_of(family, h, d, seed, cover_eps), h, d,
                                              loss_of(loss), eps, d_min, d_max, draws, seed,
                                              opts)));
  }, py::arg("h"), py::arg("d"), py::arg("family"), py::arg("eps"), py::arg("d_min") = 1,
     py::arg("d_max") = 8, py::arg("loss") = "squared", py::arg("draws") = 20,
     py::arg("seed") = 42, py::arg("cover_eps") = 0.25);
  m.def("thm9_lower_bound", [](const NormalizedClass& h, double eps,
                               const std::vector<double>& lambdas) {
    return dump(to_json(thm9_lower_bound(h, eps, lambdas)));
  }, py::arg("h"), py::arg("eps"), py::arg("lambda_grid"));
  m.def("cor10_lower_bound", [](const NormalizedClass& h, double eps) {
    return dump(to_json(cor10_lower_bound(h, eps)));
  }, py::arg("h"), py::arg("eps"));
  m.def("binary_entropy", &binary_entropy, py::arg("q"));
  m.def("thm12_coefficient", [](double eps, bool natural_log) {
    return thm12_coefficient(eps, natural_log ? LogBase::kE : LogBase::kTwo);
  }, py::arg("eps"), py::arg("natural_log") = false);
  m.def("sm_log_count_bound", &sm_log_count_bound, py::arg("n"), py::arg("d"));
  m.def("lemma3_dim_transfer", [](double radius, double eps, double eta, const std::string& loss,
                                  double lipschitz, double calibration) {
    const Lemma3Result r = lemma3_dim_transfer(radius, eps, eta, parse_loss_kind(loss),
                                               lipschitz, calibration);
    return py::make_tuple(r.dimension, r.raw);
  }, py::arg("radius"), py::arg("eps"), py::arg("eta"), py::arg("loss") = "zero_one",
     py::arg("lipschitz") = 1.0, py::arg("calibration") = 8.0);
  m.def("vc_dimension", [](const FiniteHypothesisClass& h, int cap) {
    return dump(to_json(vc_dimension(h, cap)));
  }, py::arg("h"), py::arg("cap") = 10);
  m.def("mc_upper_heuristic", [](const FiniteHypothesisClass& h, int restarts, std::uint64_t seed) {
    return dump(to_json(mc_upper_heuristic(h, restarts, seed)));
  }, py::arg("h"), py::arg("restarts") = 8, py::arg("seed") = 42);

  m.def("run_verify", [](const std::string& suite, std::uint64_t seed) {
    return verify_report_json(run_verify(suite, seed));
  }, py::arg("suite") = "all", py::arg("seed") = 42);
}
