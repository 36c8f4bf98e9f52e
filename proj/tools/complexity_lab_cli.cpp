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

// complexity-lab: batch front end over the library. Every subcommand writes
// one JSON report (or a CSV table) to stdout or --out.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "complexity_lab/constructions.hpp"
#include "complexity_lab/core.hpp"
#include "complexity_lab/embeddings.hpp"
#include "complexity_lab/io.hpp"
#include "complexity_lab/learners.hpp"
#include "complexity_lab/measures.hpp"
#include "complexity_lab/rng.hpp"
#include "complexity_lab/spectral.hpp"
#include "complexity_lab/verify.hpp"
#include "complexity_lab/version.hpp"

namespace {

using namespace clab;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNotFound = 3;

const double kUnset = std::numeric_limits<double>::quiet_NaN();

// Every option value lives here. Only one subcommand runs per process, so
// the leaves share storage and register the fields they read.
struct Options {
  std::string cls;
  std::string dist = "uniform";
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 42;
  bool timing = false;

  int n = 3;
  int k = 2;
  int p = 2;
  int hypotheses = 8;
  int points = 8;
  int t = 4;
  bool binary = false;
  int restrict_m = 0;
  std::string spec;
  double radius = kUnset;
  int dim = 0;

  double eps = kUnset;
  double eta = 0.1;
  double lambda = kUnset;
  std::vector<double> lambdas;
  int exact_cap = 20;
  bool greedy = false;
  bool signed_bound = false;
  double gamma = kUnset;
  std::string log_base = "2";
  std::string loss = "squared";
  double lipschitz = 1.0;
  double calibration = 8.0;
  int restarts = 8;
  int cap = 10;
  int rank = -1;

  std::string mode = "Lin";
  std::string family = "identity";
  int m = 16;
  int trials = 20;
  int probes = 0;
  std::vector<std::string> targets;
  double c_dc = kUnset;
  double c_mc = kUnset;
  int draws = 20;
  int d_min = 1;
  int d_max = 0;
  std::string erm = "auto";
  double cover_eps = kUnset;
  std::string pairs;

  std::string suite;
  std::string fault = "none";
};

std::string config_key(std::string name) {
  while (!name.empty() && name.front() == '-') name.erase(name.begin());
  for (char& c : name) {
    if (c == '-') c = '_';
  }
  return name;
}

// One registered option: how to fill it from a config value and how to
// echo it back.
struct Param {
  std::string key;
  CLI::Option* option;
  std::function<void(const Json&)> load;
  std::function<Json()> echo;
};

Json echo_double(double v) { return std::isnan(v) ? Json(nullptr) : Json(v); }

class Leaf {
 public:
  Leaf(CLI::App* app, std::string path) : app_(app), path_(std::move(path)) {}

  CLI::App* app() const { return app_; }
  const std::string& path() const { return path_; }

  template <typename T>
  CLI::Option* add(const std::string& flag, T& var, const std::string& help) {
    CLI::Option* opt = app_->add_option(flag, var, help);
    params_.push_back({config_key(flag), opt,
                       [&var, flag](const Json& j) {
                         try {
                           var = j.get<T>();
                         } catch (const std::exception&) {
                           throw ConfigError("config field '" + config_key(flag) +
                                             "' has the wrong type");
                         }
                       },
                       [&var]() { return Json(var); }});
    return opt;
  }

  void add_double(const std::string& flag, double& var, const std::string& help) {
    CLI::Option* opt = app_->add_option(flag, var, help);
    params_.push_back({config_key(flag), opt,
                       [&var, flag](const Json& j) {
                         if (!j.is_number()) {
                           throw ConfigError("config field '" + config_key(flag) +
                                             "' must be a number");
                         }
                         var = j.get<double>();
                       },
                       [&var]() { return echo_double(var); }});
  }

  void add_flag(const std::string& flag, bool& var, const std::string& help) {
    CLI::Option* opt = app_->add_flag(flag, var, help);
    params_.push_back({config_key(flag), opt,
                       [&var, flag](const Json& j) {
                         if (!j.is_boolean()) {
                           throw ConfigError("config field '" + config_key(flag) +
                                             "' must be true or false");
                         }
                         var = j.get<bool>();
                       },
                       [&var]() { return Json(var); }});
  }

  // Config values fill options that were not given on the command line.
  void apply_config(const Json& config) const {
    for (const auto& [key, value] : config.items()) {
      if (key == "command") continue;
      const Param* match = nullptr;
      for (const Param& p : params_) {
        if (p.key == config_key(key)) match = &p;
      }
      if (!match) {
        throw ConfigError("config field '" + key + "' is not an option of '" +
                          path_ + "'");
      }
      if (match->option->count() == 0) match->load(value);
    }
  }

  Json echo() const {
    Json j = Json::object();
    for (const Param& p : params_) {
      if (p.key == "out" || p.key == "timing") continue;
      j[p.key] = p.echo();
    }
    return j;
  }

  std::function<Json(Json& calibration, std::string& csv, int& exit_code)> run;

 private:
  CLI::App* app_;
  std::string path_;
  std::vector<Param> params_;
};

// ------------------------------------------------------------ loaders

FiniteHypothesisClass load_class(const std::string& source) {
  if (source.empty()) throw ConfigError("--class is required");
  auto suffix = [&](const std::string& prefix) -> std::optional<std::string> {
    if (source.rfind(prefix, 0) == 0) return source.substr(prefix.size());
    return std::nullopt;
  };
  try {
    if (auto s = suffix("parities:")) return parities(std::stoi(*s));
    if (auto s = suffix("one-sparse:")) return one_sparse(std::stoi(*s));
    if (auto s = suffix("decision-list:")) {
      const auto x = s->find('x');
      if (x == std::string::npos) throw ConfigError("expected decision-list:KxP");
      return pattern_decision_list(std::stoi(s->substr(0, x)), std::stoi(s->substr(x + 1)));
    }
  } catch (const std::logic_error&) {
    throw ConfigError("cannot parse class spec '" + source + "'");
  }
  const Json j = read_json_file(source);
  if (j.is_object() && j.value("type", "") == "functional_class") {
    throw InputError("'" + source +
                     "' is a functional class; restrict it to a finite sample "
                     "first (construct --class restriction)");
  }
  return class_from_json(j);
}

DistributionOverX load_dist(const std::string& source, const FiniteHypothesisClass& h) {
  DistributionOverX d = source == "uniform"
                            ? DistributionOverX::uniform(h.num_points())
                            : distribution_from_json(read_json_file(source), h.num_points());
  d.check_aligned(h);
  return d;
}

LossSpec make_loss(const Options& o) {
  const LossKind kind = parse_loss_kind(o.loss);
  LossSpec loss = kind == LossKind::kSquared ? LossSpec::squared(o.lipschitz)
                                             : LossSpec::of_kind(kind);
  if (!std::isnan(o.c_dc)) loss = loss.with_c_dc(o.c_dc);
  if (!std::isnan(o.c_mc)) loss = loss.with_c_mc(o.c_mc);
  return loss;
}

Json loss_calibration(const LossSpec& loss) {
  return {{"loss", std::string(to_string(loss.kind()))},
          {"c_dc", loss.c_dc()},
          {"c_mc", loss.c_mc()}};
}

double require(double v, const char* name) {
  if (std::isnan(v)) throw ConfigError(std::string("--") + name + " is required");
  return v;
}

DimSearchMode search_mode(const Options& o) {
  return {o.greedy ? SearchMode::kGreedy : SearchMode::kExact, o.exact_cap};
}

double cover_radius(const Options& o) {
  if (!std::isnan(o.cover_eps)) return o.cover_eps;
  if (!std::isnan(o.eps)) return o.eps;
  throw ConfigError("the cover family needs --cover-eps or --eps");
}

EmbeddingFamily make_family(const Options& o, const FiniteHypothesisClass& h,
                            const DistributionOverX& d) {
  const int nx = h.num_points();
  if (o.family == "identity") return EmbeddingFamily::identity(nx);
  if (o.family == "cover") return EmbeddingFamily::fixed(greedy_cover(h, d, cover_radius(o)).pair);
  if (o.family.rfind("fixed:", 0) == 0) {
    return EmbeddingFamily::fixed(pair_from_json(read_json_file(o.family.substr(6))));
  }
  if (o.dim < 1) throw ConfigError("family '" + o.family + "' needs --dim >= 1");
  if (o.family == "zero") return EmbeddingFamily::zero(nx, o.dim);
  if (o.family == "svd") return EmbeddingFamily::svd(h, d, o.dim);
  if (o.family == "jl") {
    return EmbeddingFamily::jl_gaussian(Embedding::tabular(Matrix::Identity(nx, nx)), o.dim,
                                        derive_seed(o.seed, "family"));
  }
  throw ConfigError("unknown family '" + o.family +
                    "' (expected identity, zero, svd, jl, cover or fixed:<file>)");
}

FamilyGenerator make_generator(const Options& o, const FiniteHypothesisClass& h,
                               const DistributionOverX& d) {
  if (o.family == "svd") return svd_family_generator(h, d);
  if (o.family == "zero") return zero_family_generator(h.num_points());
  if (o.family == "jl") return jl_family_generator(h.num_points(), o.seed);
  if (o.family == "cover") return cover_family_generator(h, d, cover_radius(o));
  throw ConfigError("dimension search supports the svd, zero, jl and cover families");
}

bool run_erm(const Options& o) {
  if (o.erm == "on") return true;
  if (o.erm == "off") return false;
  if (o.erm == "auto") return o.family != "cover" && o.family.rfind("fixed:", 0) != 0;
  throw ConfigError("--erm must be auto, on or off");
}

std::vector<double> default_lambdas() {
  std::vector<double> grid;
  for (int i = 3; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

// ------------------------------------------------------------ commands

void add_common(Leaf& leaf, Options& o, bool with_class) {
  if (with_class) {
    leaf.add("--class", o.cls, "class JSON file or builtin (parities:N, one-sparse:N, decision-list:KxP)");
    leaf.add("--dist", o.dist, "distribution JSON file or 'uniform'");
  }
  leaf.add("--seed", o.seed, "master seed");
  leaf.add("--out", o.out, "write the report here instead of stdout");
  leaf.add("--format", o.format, "json or csv");
  leaf.add_flag("--timing", o.timing, "include wall-clock time in the report");
}

void build_construct(Leaf& leaf, Options& o) {
  add_common(leaf, o, false);
  leaf.add("--class", o.cls,
           "parities, one-sparse, decision-list, random, halfplane, planted, "
           "zigzag, restriction or combination");
  leaf.add("--n", o.n, "cube or input dimension");
  leaf.add("--k", o.k, "decision list blocks");
  leaf.add("--p", o.p, "decision list block width");
  leaf.add("--hypotheses", o.hypotheses, "number of hypotheses");
  leaf.add("--points", o.points, "number of domain points");
  leaf.add("--t", o.t, "number of zigzag directions");
  leaf.add("--dim", o.dim, "feature dimension (planted)");
  leaf.add_double("--radius", o.radius, "margin radius (planted)");
  leaf.add_flag("--binary", o.binary, "random classes with +-1 labels");
  leaf.add("--restrict", o.restrict_m, "restrict a zigzag class to this many Gaussian points");
  leaf.add("--spec", o.spec, "combination spec JSON");
  leaf.run = [&o](Json&, std::string&, int&) -> Json {
    const std::string& c = o.cls;
    if (c == "parities") return to_json(parities(o.n));
    if (c == "one-sparse") return to_json(one_sparse(o.n));
    if (c == "decision-list") return to_json(pattern_decision_list(o.k, o.p));
    if (c == "random") return to_json(random_class(o.hypotheses, o.points, o.binary, o.seed));
    if (c == "halfplane") return to_json(random_halfplane_class(o.points, o.hypotheses, o.seed));
    if (c == "planted") {
      const PlantedMarginClass pm = planted_margin_class(
          o.points, o.hypotheses, o.dim < 1 ? 8 : o.dim,
          std::isnan(o.radius) ? 2.0 : o.radius, o.seed);
      return {{"class", to_json(pm.hypotheses)}, {"witness", to_json(pm.witness)}};
    }
    if (c == "zigzag" || c == "restriction") {
      const FunctionalClass f = zigzag_class_sample(o.n, o.t, o.seed);
      if (c == "zigzag" && o.restrict_m < 1) return to_json(f);
      const int m = o.restrict_m < 1 ? 64 : o.restrict_m;
      const Restriction r = finite_restriction(f, m, derive_seed(o.seed, "restriction"));
      return {{"class", to_json(r.hypotheses)},
              {"distribution", to_json(r.distribution)},
              {"points", matrix_to_json(r.points)}};
    }
    if (c == "combination") {
      if (o.spec.empty()) throw ConfigError("--class combination needs --spec");
      const Json s = read_json_file(o.spec);
      CombinationSpec cs{class_from_json(s.at("base")), {}, s.value("kappa", 1.0),
                         s.value("coefficient_budget", std::numeric_limits<double>::infinity()),
                         s.value("max_terms", 0)};
      for (const Json& e : s.at("combinations")) {
        Combination comb;
        comb.hypothesis_ids = e.at("hypotheses").get<std::vector<std::string>>();
        comb.coefficients = e.at("coefficients").get<std::vector<double>>();
        comb.id = e.value("id", "");
        cs.combinations.push_back(std::move(comb));
      }
      return to_json(std::get<FiniteHypothesisClass>(build_combination(cs)));
    }
    throw ConfigError("unknown class kind '" + c + "'");
  };
}

void build_measure(CLI::App* measure, std::vector<std::unique_ptr<Leaf>>& leaves, Options& o) {
  auto leaf = [&](const std::string& name, const std::string& help) -> Leaf& {
    leaves.push_back(std::make_unique<Leaf>(measure->add_subcommand(name, help), "measure " + name));
    return *leaves.back();
  };
  auto bound_out = [&o](std::string& csv, const BoundReport& r) {
    if (o.format == "csv") csv = bound_csv({r});
    return to_json(r);
  };

  Leaf& sq = leaf("sqdim", "SQ dimension");
  add_common(sq, o, true);
  sq.add("--exact-cap", o.exact_cap, "largest class searched exactly");
  sq.add_flag("--greedy", o.greedy, "greedy search only");
  sq.add_flag("--signed", o.signed_bound, "signed correlation bound");
  sq.add_double("--gamma", o.gamma, "fixed correlation threshold");
  sq.run = [&o](Json&, std::string&, int&) -> Json {
    const FiniteHypothesisClass h = load_class(o.cls);
    SqDimOptions opts;
    opts.signed_bound = o.signed_bound;
    if (!std::isnan(o.gamma)) opts.gamma = o.gamma;
    return to_json(sq_dimension(normalize_class(h, load_dist(o.dist, h)), search_mode(o), opts));
  };

  Leaf& mev = leaf("minev", "minimum-eigenvalue dimension");
  add_common(mev, o, true);
  mev.add_double("--lambda", o.lambda, "eigenvalue threshold");
  mev.add("--exact-cap", o.exact_cap, "largest class searched exactly");
  mev.add_flag("--greedy", o.greedy, "greedy search only");
  mev.run = [&o](Json&, std::string&, int&) -> Json {
    const FiniteHypothesisClass h = load_class(o.cls);
    return to_json(min_ev_dimension(normalize_class(h, load_dist(o.dist, h)),
                                    require(o.lambda, "lambda"), search_mode(o)));
  };

  Leaf& t9 = leaf("thm9", "spectral lower bound on dimension complexity");
  add_common(t9, o, true);
  t9.add_double("--eps", o.eps, "target error");
  t9.add("--lambdas", o.lambdas, "lambda grid (default 0.3..1.0)");
  t9.add("--exact-cap", o.exact_cap, "largest class searched exactly");
  t9.add_flag("--greedy", o.greedy, "greedy search only");
  t9.run = [&o, bound_out](Json&, std::string& csv, int&) -> Json {
    const FiniteHypothesisClass h = load_class(o.cls);
    const auto grid = o.lambdas.empty() ? default_lambdas() : o.lambdas;
    return bound_out(csv, thm9_lower_bound(normalize_class(h, load_dist(o.dist, h)),
                                           require(o.eps, "eps"), grid, search_mode(o)));
  };

  Leaf& c10 = leaf("cor10", "SQ-dimension lower bound");
  add_common(c10, o, true);
  c10.add_double("--eps", o.eps, "target error");
  c10.add("--exact-cap", o.exact_cap, "largest class searched exactly");
  c10.add_flag("--greedy", o.greedy, "greedy search only");
  c10.run = [&o, bound_out](Json&, std::string& csv, int&) -> Json {
    const FiniteHypothesisClass h = load_class(o.cls);
    return bound_out(csv, cor10_lower_bound(normalize_class(h, load_dist(o.dist, h)),
                                            require(o.eps, "eps"), search_mode(o)));
  };

  Leaf& t12 = leaf("thm12", "entropy-based lower bound for decision lists");
  add_common(t12, o, false);
  t12.add("--n", o.n, "input dimension");
  t12.add_double("--eps", o.eps, "target error");
  t12.add("--log-base", o.log_base, "2 or e");
  t12.run = [&o, bound_out](Json&, std::string& csv, int&) -> Json {
    LogBase base;
    if (o.log_base == "2") {
      base = LogBase::kTwo;
    } else if (o.log_base == "e") {
      base = LogBase::kE;
    } else {
      throw ConfigError("--log-base must be 2 or e");
    }
    return bound_out(csv, thm12_lower_bound(o.n, require(o.eps, "eps"), base));
  };

  Leaf& l3 = leaf("lemma3", "dimension from margin transfer");
  add_common(l3, o, false);
  l3.add_double("--radius", o.radius, "margin complexity R");
  l3.add_double("--eps", o.eps, "target error (squared loss)");
  l3.add_double("--eta", o.eta, "slack");
  l3.add("--loss", o.loss, "zero_one, margin, hinge or squared");
  l3.add_double("--lipschitz", o.lipschitz, "Lipschitz constant (hinge)");
  l3.add_double("--calibration", o.calibration, "hidden constant");
  l3.run = [&o](Json& cal, std::string& csv, int&) -> Json {
    const double eps = std::isnan(o.eps) ? 0.0 : o.eps;
    const Lemma3Result r = lemma3_dim_transfer(require(o.radius, "radius"), eps, o.eta,
                                               parse_loss_kind(o.loss), o.lipschitz,
                                               o.calibration);
    cal["lemma3"] = r.calibration;
    BoundReport b;
    b.name = "lemma3";
    b.inputs = {{"radius", o.radius}, {"eps", eps}, {"eta", o.eta},
                {"lipschitz", o.lipschitz}, {"calibration", r.calibration}};
    b.value = r.dimension;
    if (o.format == "csv") csv = bound_csv({b});
    return {{"type", "lemma3"}, {"loss", o.loss}, {"raw", r.raw},
            {"dimension", r.dimension}, {"calibration", r.calibration}};
  };

  Leaf& cov = leaf("cover", "greedy eps-cover");
  add_common(cov, o, true);
  cov.add_double("--eps", o.eps, "cover radius");
  cov.run = [&o](Json&, std::string&, int&) -> Json {
    const FiniteHypothesisClass h = load_class(o.cls);
    return to_json(greedy_cover(h, load_dist(o.dist, h), require(o.eps, "eps")));
  };

  Leaf& mc = leaf("mc-upper", "heuristic upper bound on margin complexity");
  add_common(mc, o, true);
  mc.add("--restarts", o.restarts, "random restarts");
  mc.run = [&o](Json&, std::string&, int&) -> Json {
    return to_json(mc_upper_heuristic(load_class(o.cls), o.restarts, o.seed));
  };

  Leaf& vc = leaf("vc", "VC dimension by exhaustive shattering search");
  add_common(vc, o, true);
  vc.add("--cap", o.cap, "search cap");
  vc.run = [&o](Json&, std::string&, int&) -> Json {
    return to_json(vc_dimension(load_class(o.cls), o.cap));
  };

  Leaf& ar = leaf("avg-rank", "best rank-d average squared error (Eckart-Young)");
  add_common(ar, o, true);
  ar.add("--rank", o.rank, "rank d (all ranks when omitted)");
  ar.run = [&o](Json&, std::string& csv, int&) -> Json {
    const FiniteHypothesisClass h = load_class(o.cls);
    const NormalizedClass nh = normalize_class(h, load_dist(o.dist, h));
    const int limit = std::min(h.num_hypotheses(), h.num_points());
    Json values = Json::array();
    CsvWriter w({"rank", "error"});
    for (int d = (o.rank < 0 ? 0 : o.rank); d <= (o.rank < 0 ? limit : o.rank); ++d) {
      const double e = avg_rank_error_oracle(nh, d);
      values.push_back({{"rank", d}, {"error", e}});
      w.add_row({std::to_string(d), format_double(e)});
    }
    if (o.format == "csv") csv = w.str();
    return {{"type", "avg_rank"}, {"values", values}};
  };
}

void build_learn(Leaf& leaf, Options& o) {
  add_common(leaf, o, true);
  leaf.add("--mode", o.mode, "Lin, Ker, gLin or gKer");
  leaf.add("--loss", o.loss, "zero_one, margin, hinge or squared");
  leaf.add("--family", o.family, "identity, zero, svd, jl, cover or fixed:<pair.json>");
  leaf.add("--dim", o.dim, "embedding dimension");
  leaf.add("--m", o.m, "sample size");
  leaf.add("--trials", o.trials, "Monte Carlo trials");
  leaf.add_double("--radius", o.radius, "norm radius (Ker, gKer)");
  leaf.add("--targets", o.targets, "hypothesis ids (default: all)");
  leaf.add("--probes", o.probes, "null-space probes per trial");
  leaf.add_double("--c-dc", o.c_dc, "dimension bound constant");
  leaf.add_double("--c-mc", o.c_mc, "norm bound constant");
  leaf.add_double("--lipschitz", o.lipschitz, "squared loss Lipschitz constant");
  leaf.add_double("--cover-eps", o.cover_eps, "radius for the cover family");
  leaf.run = [&o](Json& cal, std::string& csv, int&) -> Json {
    const FiniteHypothesisClass h = load_class(o.cls);
    const DistributionOverX d = load_dist(o.dist, h);
    const LossSpec loss = make_loss(o);
    cal.update(loss_calibration(loss));
    LearningSimSpec spec{parse_learn_mode(o.mode), h, d, loss, make_family(o, h, d), o.m,
                         o.trials, std::isnan(o.radius) ? 0.0 : o.radius, o.seed,
                         ErmOptions{}, o.targets, o.probes};
    spec.erm.certify = false;
    spec.erm.seed = derive_seed(o.seed, "erm");
    const SimulationResult r = simulate_learning(spec);
    if (o.format == "csv") csv = simulation_csv(r);
    return to_json(r);
  };
}

void build_criterion(CLI::App* criterion, std::vector<std::unique_ptr<Leaf>>& leaves,
                     Options& o) {
  leaves.push_back(std::make_unique<Leaf>(
      criterion->add_subcommand("dc", "distributional dimension criterion"), "criterion dc"));
  Leaf& dc = *leaves.back();
  add_common(dc, o, true);
  dc.add("--loss", o.loss, "zero_one, margin, hinge or squared");
  dc.add("--family", o.family, "identity, zero, svd, jl, cover or fixed:<pair.json>");
  dc.add("--dim", o.dim, "embedding dimension (single evaluation)");
  dc.add("--d-min", o.d_min, "search lower end");
  dc.add("--d-max", o.d_max, "search upper end; enables the dimension search");
  dc.add_double("--eps", o.eps, "target criterion");
  dc.add("--draws", o.draws, "embedding draws for random families");
  dc.add_double("--radius", o.radius, "restrict weights to this ball");
  dc.add("--erm", o.erm, "auto, on or off");
  dc.add_double("--cover-eps", o.cover_eps, "radius for the cover family");
  dc.add_double("--lipschitz", o.lipschitz, "squared loss Lipschitz constant");
  dc.run = [&o](Json& cal, std::string& csv, int& code) -> Json {
    const FiniteHypothesisClass h = load_class(o.cls);
    const DistributionOverX d = load_dist(o.dist, h);
    const LossSpec loss = make_loss(o);
    cal.update(loss_calibration(loss));
    CriterionOptions opts;
    opts.run_erm = run_erm(o);
    if (!std::isnan(o.radius)) opts.radius = o.radius;
    opts.erm.seed = derive_seed(o.seed, "erm");
    if (o.d_max > 0) {
      const MinDimResult r = min_dim_for_criterion(make_generator(o, h, d), h, d, loss,
                                                   require(o.eps, "eps"), o.d_min, o.d_max,
                                                   o.draws, o.seed, opts);
      if (!r.found) code = kExitNotFound;
      if (o.format == "csv") csv = min_dim_csv(r);
      return to_json(r);
    }
    opts.eps = o.eps;
    const CriterionReport r = distributional_dc_criterion(make_family(o, h, d), h, d, loss,
                                                          o.draws, o.seed, opts);
    if (o.format == "csv") csv = criterion_csv(r);
    return to_json(r);
  };

  leaves.push_back(std::make_unique<Leaf>(
      criterion->add_subcommand("pointwise", "pointwise criterion of a pair family"),
      "criterion pointwise"));
  Leaf& pw = *leaves.back();
  add_common(pw, o, true);
  pw.add("--pairs", o.pairs, "JSON array of {pair fields..., probability}");
  pw.add("--loss", o.loss, "loss scored per cell (default zero_one)");
  pw.run = [&o](Json&, std::string&, int&) -> Json {
    const FiniteHypothesisClass h = load_class(o.cls);
    if (o.pairs.empty()) throw ConfigError("--pairs is required");
    const Json j = read_json_file(o.pairs);
    if (!j.is_array()) throw ConfigError(o.pairs + ": expected an array of pairs");
    std::vector<WeightedPair> pairs;
    for (const Json& e : j) pairs.push_back({pair_from_json(e), e.value("probability", 1.0)});
    return to_json(pointwise_dc_criterion(pairs, h, LossSpec::of_kind(parse_loss_kind(o.loss))));
  };
}

int emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(o.out, text);
  }
  return 0;
}

int run(int argc, char** argv) {
  Options o;
  CLI::App app{"Dimension and margin complexity laboratory", "complexity-lab"};
  app.set_version_flag("--version", kVersion);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with option defaults");
  app.require_subcommand(0, 1);

  std::vector<std::unique_ptr<Leaf>> leaves;
  leaves.push_back(std::make_unique<Leaf>(app.add_subcommand("construct", "build a class"),
                                          "construct"));
  build_construct(*leaves.back(), o);

  CLI::App* measure = app.add_subcommand("measure", "closed-form bounds and dimensions");
  measure->require_subcommand(1);
  build_measure(measure, leaves, o);

  leaves.push_back(std::make_unique<Leaf>(
      app.add_subcommand("learn", "Monte Carlo learning simulation"), "learn"));
  build_learn(*leaves.back(), o);

  CLI::App* criterion = app.add_subcommand("criterion", "embedding criteria");
  criterion->require_subcommand(1);
  build_criterion(criterion, leaves, o);

  leaves.push_back(std::make_unique<Leaf>(
      app.add_subcommand("verify", "run property suites"), "verify"));
  Leaf& ver = *leaves.back();
  ver.app()->add_option("suite", o.suite, "spectral, embeddings, learners, measures, constructions, core or all")
      ->required();
  ver.add("--seed", o.seed, "master seed");
  ver.add("--out", o.out, "write the report here instead of stdout");
  ver.add("--inject-fault", o.fault, "")->group("");

  // A config may name the command itself when none is given on the line.
  std::vector<std::string> args(argv + 1, argv + argc);
  Json config;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") config_path = args[i + 1];
  }
  for (const auto& a : args) {
    if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
  }
  if (!config_path.empty()) {
    config = read_json_file(config_path);
    if (!config.is_object()) throw ConfigError(config_path + ": expected a JSON object");
    bool has_command = false;
    for (const auto& a : args) {
      if (a == "construct" || a == "measure" || a == "learn" || a == "criterion" ||
          a == "verify") {
        has_command = true;
      }
    }
    if (!has_command && config.contains("command")) {
      std::istringstream words(config["command"].get<std::string>());
      std::vector<std::string> cmd;
      for (std::string w; words >> w;) cmd.push_back(w);
      args.insert(args.end(), cmd.begin(), cmd.end());
    }
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  Leaf* active = nullptr;
  for (const auto& leaf : leaves) {
    if (leaf->app()->parsed()) active = leaf.get();
  }
  if (!active) {
    std::cout << app.help();
    return kExitInvalid;
  }
  if (!config.is_null()) active->apply_config(config);

  if (active->path() == "verify") {
    const VerifyReport r = run_verify(o.suite, o.seed, parse_fault(o.fault));
    emit(o, verify_report_json(r));
    return r.passed() ? 0 : kExitVerifyFailed;
  }

  if (o.format != "json" && o.format != "csv") throw ConfigError("--format must be json or csv");
  const auto start = std::chrono::steady_clock::now();
  Json calibration = Json::object();
  calibration["lemma3"] = o.calibration;
  std::string csv;
  int code = 0;
  Json result = active->run(calibration, csv, code);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (o.format == "csv") {
    if (csv.empty()) throw ConfigError("'" + active->path() + "' has no CSV form; use json");
    emit(o, csv);
    return code;
  }
  Json report;
  report["tool"] = "complexity-lab";
  report["version"] = kVersion;
  report["command"] = active->path();
  report["seed"] = o.seed;
  report["config"] = active->echo();
  report["calibration"] = calibration;
  report["result"] = std::move(result);
  if (o.timing) report["wall_clock_seconds"] = seconds;
  emit(o, report.dump(2) + "\n");
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const clab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad JSON content: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
