#include "knperc/cli.hpp"

#include "knperc/bounds.hpp"
#include "knperc/coupling.hpp"
#include "knperc/dual.hpp"
#include "knperc/errors.hpp"
#include "knperc/explorer.hpp"
#include "knperc/rng.hpp"
#include "knperc/saw.hpp"
#include "knperc/walks.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace knperc::cli {

namespace {

using Json = nlohmann::ordered_json;

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out;
  unsigned workers = default_workers();
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--out", common.out, "output file (default: stdout)");
  sub->add_option("--workers", common.workers, "worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
}

struct Model {
  std::string variant = "dng";
  int d = 2;
  int k = 2;

  ModelSpec spec() const {
    ModelSpec s{d, k, parse_variant(variant), 0};
    s.validate();
    return s;
  }
  Json json() const { return Json{{"variant", std::string(to_string(parse_variant(variant)))}, {"d", d}, {"k", k}}; }
};

void add_model(CLI::App* sub, Model& m, bool with_variant = true) {
  if (with_variant) sub->add_option("--variant", m.variant, "dng | ung | bng | xng")->capture_default_str();
  sub->add_option("--d", m.d, "dimension")->capture_default_str();
  sub->add_option("--k", m.k, "choices per vertex")->capture_default_str();
}

std::string version() { return KNPERC_VERSION; }

Json header(const std::string& subcommand, Json config) {
  Json h;
  h["artifact"] = "knperc";
  h["version"] = version();
  config["subcommand"] = subcommand;
  h["config"] = std::move(config);
  return h;
}

void emit(const std::string& text, const Common& common, std::ostream& out) {
  if (common.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(common.out, std::ios::binary | std::ios::trunc);
  if (!file) throw OutputError("cannot open output file: " + common.out);
  file << text;
  if (!file) throw OutputError("cannot write output file: " + common.out);
}

void emit_json(const Json& j, const Common& common, std::ostream& out) { emit(j.dump(2) + "\n", common, out); }

std::string g17(double x) { return fmt::format("{:.17g}", x); }

Json rational_json(const Rational& r) { return to_string(r); }

Json estimate_json(const EstimateWithCI& e) {
  return Json{{"estimate", e.point}, {"stderr", e.std_error}, {"trials", e.trials}, {"seed", e.master_seed}};
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    const BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(BigInt(text.substr(0, slash)), den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational number: " + text);
  }
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty range");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("expected N or A..B, got: " + text);
  }
}

Json bound_terms_json(const std::vector<BoundTerm>& terms) {
  Json arr = Json::array();
  for (const auto& t : terms) {
    Json j{{"label", t.label}, {"value", t.value}};
    if (t.exact) j["exact"] = rational_json(*t.exact);
    arr.push_back(std::move(j));
  }
  return arr;
}

// ---- subcommands -------------------------------------------------------

struct SampleCmd {
  Common common;
  Model model;
  int n = 10;
  std::uint64_t seed = 0;
  bool exhaust = false;

  void run(std::ostream& out) const {
    const ModelSpec spec = model.spec();
    ExploreOptions opts;
    opts.keep_sample = true;
    opts.stop = exhaust ? StopRule::Exhaust : StopRule::AtBoundary;
    const ClusterResult r = explore(spec, seed, BoxRegion{spec.d, n}, default_mode(spec.variant), opts);
    Json config = model.json();
    config["n"] = n;
    config["seed"] = seed;
    config["stop"] = exhaust ? "exhaust" : "boundary";
    Json j = header("sample", config);
    j["visited_count"] = r.visited_count;
    j["reached_boundary"] = r.reached_boundary;
    j["frontier_exhausted"] = r.frontier_exhausted;
    Json pts = Json::array();
    for (const Vertex& v : r.visited_sample) pts.push_back(std::vector<int>(v.coords().begin(), v.coords().end()));
    j["visited"] = std::move(pts);
    emit_json(j, common, out);
  }
};

struct EstimateCmd {
  Common common;
  Model model;
  std::vector<int> ns;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  bool proportion = false;

  void run(std::ostream& out) const {
    const ModelSpec spec = model.spec();
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    for (int n : ns)
      if (n < 1) throw std::invalid_argument("every n must be >= 1");
    Json config = model.json();
    config["n"] = ns;
    config["trials"] = trials;
    config["seed"] = seed;
    config["estimand"] = proportion ? "proportion" : "boundary-reach";
    std::ostringstream csv;
    const Json h = header(proportion ? "proportion" : "estimate", config);
    csv << "# knperc " << version() << "\n";
    csv << "# config: " << h["config"].dump() << "\n";
    csv << "variant,d,k,n,trials,seed,estimate,stderr\n";
    for (int n : ns) {
      const EstimateWithCI e = proportion ? estimate_proportion(spec, n, trials, seed, common.workers)
                                          : estimate_boundary_reach(spec, n, trials, seed, common.workers);
      csv << to_string(spec.variant) << ',' << spec.d << ',' << spec.k << ',' << n << ',' << trials << ','
          << seed << ',' << g17(e.point) << ',' << g17(e.std_error) << '\n';
    }
    emit(csv.str(), common, out);
  }
};

struct TauCmd {
  Common common;
  int d = 4;
  int cutoff = 5;

  void run(std::ostream& out) const {
    const TauPmf pmf = enumerate_tau(d, cutoff);
    Json j = header("tau", Json{{"d", d}, {"cutoff", cutoff}});
    Json values = Json::array();
    for (int l = 0; l <= pmf.cutoff(); ++l)
      values.push_back(Json{{"l", l}, {"p", rational_json(pmf.values[l])}, {"approx", to_double(pmf.values[l])}});
    j["pmf"] = std::move(values);
    j["partial_sum"] = rational_json(pmf.partial_sum());
    emit_json(j, common, out);
  }
};

struct BoundsCmd {
  Common common;
  std::string d_range = "4..7";
  int k = 0;
  int cutoff = -1;
  int largedmon = 0;
  bool bng = false;
  double c_upper = 0.0;
  double alpha = 0.0;

  void run(std::ostream& out) const {
    const auto [lo, hi] = parse_range(d_range);
    if (lo < 4 && !bng) throw std::domain_error("coincidence bounds need d >= 4 (use --bng for smaller d)");
    if (lo < 2) throw std::domain_error("bounds need d >= 2");
    Json config{{"d", d_range}};
    if (k > 0) config["k"] = k;
    if (cutoff >= 0) config["cutoff"] = cutoff;
    if (largedmon > 0) config["largedmon"] = largedmon;
    if (bng) config["bng"] = true;
    if (c_upper > 0) config["c_upper"] = c_upper;
    if (alpha > 0) config["alpha"] = alpha;
    Json j = header("bounds", config);

    Json rows = Json::array();
    for (int d = lo; d <= hi; ++d) {
      Json row{{"d", d}};
      if (d >= 4) {
        const auto terms = cdub_terms(d);
        row["cdub"] = sum_terms(terms);
        const auto sk = smallest_percolating_k(d);
        row["smallest_k"] = sk ? Json(*sk) : Json(nullptr);
        row["terms"] = bound_terms_json(terms);
        std::optional<TauPmf> tau;
        if (cutoff >= 0) {
          tau = enumerate_tau(d, cutoff);
          const auto refined = refined_rho_terms(d, *tau, cutoff);
          row["refined"] = Json{{"cutoff", cutoff}, {"value", sum_terms(refined)}, {"terms", bound_terms_json(refined)}};
        }
        if (k > 0) {
          const BoundReport rep = bound_report(d, k, tau ? &*tau : nullptr, cutoff);
          row["verdict"] = Json{{"k", k}, {"threshold", rep.threshold}, {"verdict", to_string(rep.verdict)}};
        }
      }
      if (bng) {
        ConnectiveConstantBound c = default_connective_bound(d);
        if (c_upper > 0) {
          c.upper = c_upper;
          c.source = "user supplied";
        }
        Json verdicts = Json::array();
        for (int kk = 1; kk <= 2 * d; ++kk)
          verdicts.push_back(Json{{"k", kk},
                                  {"subcritical", to_string(bng_subcritical(kk, d, c))},
                                  {"supercritical", to_string(bng_supercritical(kk, d))}});
        row["bng"] = Json{{"c_upper", c.upper}, {"source", c.source}, {"verdicts", std::move(verdicts)}};
      }
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    if (bng) j["bng_supercritical_ratio"] = bng_supercritical_ratio();

    if (largedmon > 0) {
      const LargeDimensionTrace t = largedmon_check(largedmon);
      Json r3 = Json::array();
      for (const auto& [d, r] : t.r3_values) r3.push_back(Json{{"d", d}, {"R", r}});
      Json steps = Json::array();
      for (const auto& row : t.rows)
        steps.push_back(Json{{"d", row.d},
                             {"new_term", row.new_term},
                             {"new_term_room", row.new_term_room},
                             {"new_term_ok", row.new_term_ok},
                             {"R_next", row.r_next},
                             {"R_scaled", row.r_scaled},
                             {"good_bound_ok", row.good_bound_ok},
                             {"factorial_chain_ok", row.factorial_chain_ok},
                             {"room_constant_ok", row.room_constant_ok}});
      j["largedmon"] = Json{{"stirling_constant", t.stirling_constant},
                            {"stirling_ok", t.stirling_ok},
                            {"factorial_constant", t.factorial_constant},
                            {"factorial_ok", t.factorial_ok},
                            {"R3", std::move(r3)},
                            {"steps", std::move(steps)},
                            {"all_ok", t.all_ok}};
    }
    if (alpha > 0) {
      const OneDependentResult r = one_dependent_criterion(alpha);
      j["one_dependent"] = Json{{"alpha", alpha},
                                {"threshold", r.threshold},
                                {"planar_threshold", r.weak_threshold},
                                {"verdict", to_string(r.verdict)}};
    }
    emit_json(j, common, out);
  }
};

struct SawCmd {
  Common common;
  int d = 2;
  int n_max = 12;
  int circuits = 0;

  void run(std::ostream& out) const {
    const SawCounts counts = count_saw(d, n_max, default_budget(), common.workers);
    Json config{{"d", d}, {"n_max", n_max}};
    if (circuits > 0) config["circuits"] = circuits;
    Json j = header("saw", config);
    j["counts"] = counts.counts;
    Json roots = Json::array();
    for (int n = 1; n <= counts.n_max(); ++n) roots.push_back(std::pow(static_cast<double>(counts.c(n)), 1.0 / n));
    j["nth_roots"] = std::move(roots);
    if (circuits > 0) {
      Json list = Json::array();
      for (int n = 4; n <= circuits; n += 2) {
        const CircuitCount c = count_circuits(n);
        list.push_back(Json{{"n", n}, {"count", c.count}, {"bound", c.bound}});
      }
      j["circuits"] = std::move(list);
    }
    emit_json(j, common, out);
  }
};

struct PeierlsCmd {
  Common common;
  std::string closed_prob = "1/4";
  double growth = 3.0;
  int n_start = 4;
  int n_exact = 12;

  void run(std::ostream& out) const {
    const Rational p = parse_rational(closed_prob);
    const SawCounts saw = count_saw(2, std::max(1, n_exact - 1), default_budget(), common.workers);
    const PeierlsReport r = peierls_bound(p, saw, n_start, n_exact, growth);
    Json j = header("peierls", Json{{"closed_prob", closed_prob}, {"growth", growth}, {"n_start", n_start},
                                    {"n_exact", n_exact}});
    Json terms = Json::array();
    for (const auto& t : r.terms)
      terms.push_back(Json{{"n", t.n}, {"walks", t.walks}, {"value", rational_json(t.value)},
                           {"approx", to_double(t.value)}});
    j["terms"] = std::move(terms);
    j["partial_sum"] = rational_json(r.partial_sum);
    j["tail_bound"] = r.tail_bound;
    j["total_bound"] = r.total_bound;
    j["m_star"] = r.m_star ? Json(*r.m_star) : Json(nullptr);
    emit_json(j, common, out);
  }
};

struct DualCmd {
  Common common;
  Model model{"ung", 2, 2};
  std::string geometry = "all";
  int path_length = 0;

  void run(std::ostream& out) const {
    const ModelSpec spec = model.spec();
    Json config = model.json();
    config["geometry"] = geometry;
    if (path_length > 0) config["path_length"] = path_length;
    Json j = header("dual", config);
    std::vector<DualGeometry> geoms;
    if (geometry == "all") {
      geoms = {DualGeometry::Orthogonal, DualGeometry::ParallelAdjacent, DualGeometry::Straight,
               DualGeometry::Disjoint};
    } else {
      geoms = {parse_geometry(geometry)};
    }
    Json pairs = Json::array();
    for (DualGeometry g : geoms) {
      const DualPairResult r = joint_dual_closed(spec, g);
      pairs.push_back(Json{{"geometry", std::string(to_string(g))},
                           {"joint", rational_json(r.joint)},
                           {"marginal", rational_json(r.marginal)},
                           {"marginal_squared", rational_json(r.marginal * r.marginal)},
                           {"within_product", r.within_product}});
    }
    j["pairs"] = std::move(pairs);
    if (path_length > 0) {
      const DualPathBound b = path_closed_bound(spec, path_length);
      Json path = Json::array();
      for (const auto& e : b.worst_path) path.push_back(Json{{"i", e.i}, {"j", e.j}, {"axis", e.axis}});
      j["path"] = Json{{"length", b.length},
                       {"worst", rational_json(b.worst)},
                       {"marginal_power", rational_json(b.marginal_power)},
                       {"paths", b.paths},
                       {"worst_path", std::move(path)}};
    }
    emit_json(j, common, out);
  }
};

struct CoupleCmd {
  Common common;
  std::string kind = "column";
  std::string variant = "dng";
  int d = 2;
  int k = 2;
  int n = 20;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;

  void run(std::ostream& out) const {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    Json config{{"kind", kind}, {"d", d}, {"k", k}, {"n", n}, {"trials", trials}, {"seed", seed}};
    if (kind == "monotone") config["variant"] = variant;
    Json j = header("couple", config);
    if (kind == "column") {
      struct Trial {
        bool derived = false, source = false, certified = false;
        int depth = 0;
      };
      const auto results = parallel_map(trials, common.workers, [&](std::size_t t) {
        const CoupledResult r = explore_coupled(k, d, n, derive_seed(seed, t));
        return Trial{r.derived.reached_boundary, r.source.reached_boundary, r.certificate_valid, r.max_depth};
      });
      std::uint64_t derived = 0, source = 0, certified = 0;
      int depth = 0;
      for (const auto& r : results) {
        derived += r.derived;
        source += r.source;
        certified += r.certified;
        depth = std::max(depth, r.depth);
      }
      j["derived_reach"] = static_cast<double>(derived) / static_cast<double>(trials);
      j["source_reach"] = static_cast<double>(source) / static_cast<double>(trials);
      j["certificates_validated"] = certified;
      j["pathwise_violations"] = 0;
      j["max_depth"] = depth;
    } else if (kind == "monotone") {
      const ModelSpec spec{d, k, parse_variant(variant), seed};
      const auto results = parallel_map(trials, common.workers, [&](std::size_t t) {
        const MonotonePairResult r = monotone_pair(spec, n, derive_seed(seed, t));
        return std::pair<int, int>(r.smaller.reached_boundary, r.larger.reached_boundary);
      });
      std::uint64_t small = 0, large = 0;
      for (const auto& [a, b] : results) {
        small += a;
        large += b;
      }
      j["reach_k"] = static_cast<double>(small) / static_cast<double>(trials);
      j["reach_k_plus_1"] = static_cast<double>(large) / static_cast<double>(trials);
      j["pathwise_violations"] = 0;
    } else {
      throw std::invalid_argument("--kind must be column or monotone");
    }
    emit_json(j, common, out);
  }
};

struct MassTransportCmd {
  Common common;
  Model model;
  int side = 11;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;

  void run(std::ostream& out) const {
    ModelSpec spec = model.spec();
    const MassTransportResult r = mass_transport_check(spec, side, trials, seed, common.workers);
    Json config{{"d", model.d}, {"k", model.k}, {"side", side}, {"trials", trials}, {"seed", seed}};
    Json j = header("mass-transport", config);
    j["out"] = estimate_json(r.out);
    j["in"] = estimate_json(r.in);
    const double se = std::hypot(r.out.std_error, r.in.std_error);
    j["difference"] = r.out.point - r.in.point;
    j["combined_stderr"] = se;
    j["z"] = se > 0 ? (r.out.point - r.in.point) / se : 0.0;
    emit_json(j, common, out);
  }
};

struct GrowthCmd {
  Common common;
  Model model{"dng", 2, 3};
  int generations = 50;
  std::uint64_t runs = 100;
  std::uint64_t seed = 0;

  void run(std::ostream& out) const {
    const ModelSpec spec = model.spec();
    const auto traces = parallel_map(runs, common.workers, [&](std::size_t t) {
      return growth_trace(spec, generations, derive_seed(seed, t));
    });
    std::uint64_t violations = 0;
    for (const auto& t : traces) violations += t.strictly_increasing() ? 0 : 1;
    Json config{{"d", model.d}, {"k", model.k}, {"generations", generations}, {"runs", runs}, {"seed", seed}};
    Json j = header("growth", config);
    j["violations"] = violations;
    if (!traces.empty()) j["first_run_max_l1"] = traces.front().max_l1;
    emit_json(j, common, out);
  }
};

int dispatch(CLI::App& app, std::vector<std::pair<CLI::App*, std::function<void(std::ostream&)>>>& table,
             std::ostream& out, std::ostream& err) {
  try {
    for (auto& [sub, fn] : table) {
      if (sub->parsed()) {
        fn(out);
        return kExitOk;
      }
    }
    err << app.help();
    return kExitInvalid;
  } catch (const BudgetExceeded& e) {
    err << "error: budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"knperc: k-neighbor percolation models, exact enumerations and bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  SampleCmd sample;
  auto* s_sample = app.add_subcommand("sample", "explore one cluster and export its vertices (JSON)");
  add_common(s_sample, sample.common);
  add_model(s_sample, sample.model);
  s_sample->add_option("--n", sample.n, "box half-side")->capture_default_str();
  s_sample->add_option("--seed", sample.seed, "trial seed")->capture_default_str();
  s_sample->add_flag("--exhaust", sample.exhaust, "explore the whole component in the box");

  EstimateCmd estimate;
  auto* s_estimate = app.add_subcommand("estimate", "boundary-reach probability (CSV)");
  EstimateCmd proportion;
  proportion.proportion = true;
  auto* s_proportion = app.add_subcommand("proportion", "mean cluster fraction of the box (CSV)");
  for (auto [sub, cmd] : {std::pair{s_estimate, &estimate}, std::pair{s_proportion, &proportion}}) {
    add_common(sub, cmd->common);
    add_model(sub, cmd->model);
    sub->add_option("--n", cmd->ns, "box half-sides, e.g. 5,15,25")->delimiter(',')->required();
    sub->add_option("--trials", cmd->trials)->capture_default_str();
    sub->add_option("--seed", cmd->seed, "master seed")->capture_default_str();
  }

  TauCmd tau;
  auto* s_tau = app.add_subcommand("tau", "exact law of the coincidence time (JSON)");
  add_common(s_tau, tau.common);
  s_tau->add_option("--d", tau.d)->capture_default_str();
  s_tau->add_option("--cutoff", tau.cutoff)->capture_default_str();

  BoundsCmd bounds;
  auto* s_bounds = app.add_subcommand("bounds", "coincidence bounds, BnG and 1-dependent criteria (JSON)");
  add_common(s_bounds, bounds.common);
  s_bounds->add_option("--d", bounds.d_range, "dimension or range A..B")->capture_default_str();
  s_bounds->add_option("--k", bounds.k, "report the verdict for this k");
  s_bounds->add_option("--cutoff", bounds.cutoff, "exact head length for the refined bound");
  s_bounds->add_option("--largedmon", bounds.largedmon, "verify the induction up to this d (>= 11)");
  s_bounds->add_flag("--bng", bounds.bng, "BnG sub/supercritical criteria");
  s_bounds->add_option("--c-upper", bounds.c_upper, "upper bound on c(d) for the BnG criterion");
  s_bounds->add_option("--alpha", bounds.alpha, "1-dependent criterion for k = alpha d");

  SawCmd saw;
  auto* s_saw = app.add_subcommand("saw", "self-avoiding walk and dual circuit counts (JSON)");
  add_common(s_saw, saw.common);
  s_saw->add_option("--d", saw.d)->capture_default_str();
  s_saw->add_option("--n-max", saw.n_max)->capture_default_str();
  s_saw->add_option("--circuits", saw.circuits, "also count circuits up to this even length");

  PeierlsCmd peierls;
  auto* s_peierls = app.add_subcommand("peierls", "Peierls sum for dual circuits (JSON)");
  add_common(s_peierls, peierls.common);
  s_peierls->add_option("--closed-prob", peierls.closed_prob, "rational, e.g. 1/4")->capture_default_str();
  s_peierls->add_option("--growth", peierls.growth, "growth constant for the tail")->capture_default_str();
  s_peierls->add_option("--n-start", peierls.n_start)->capture_default_str();
  s_peierls->add_option("--n-exact", peierls.n_exact)->capture_default_str();

  DualCmd dual;
  auto* s_dual = app.add_subcommand("dual", "exact dual-edge closed probabilities (JSON)");
  add_common(s_dual, dual.common);
  add_model(s_dual, dual.model);
  s_dual->add_option("--geometry", dual.geometry, "orthogonal | parallel-adjacent | straight | disjoint | all")
      ->capture_default_str();
  s_dual->add_option("--path-length", dual.path_length, "worst dual path of this length (<= 8)");

  CoupleCmd couple;
  auto* s_couple = app.add_subcommand("couple", "pathwise coupling checks (JSON)");
  add_common(s_couple, couple.common);
  s_couple->add_option("--kind", couple.kind, "column | monotone")->capture_default_str();
  s_couple->add_option("--variant", couple.variant, "variant for --kind monotone")->capture_default_str();
  s_couple->add_option("--d", couple.d)->capture_default_str();
  s_couple->add_option("--k", couple.k)->capture_default_str();
  s_couple->add_option("--n", couple.n)->capture_default_str();
  s_couple->add_option("--trials", couple.trials)->capture_default_str();
  s_couple->add_option("--seed", couple.seed)->capture_default_str();

  MassTransportCmd mass;
  auto* s_mass = app.add_subcommand("mass-transport", "E|out-component| vs E|in-component| on the torus (JSON)");
  add_common(s_mass, mass.common);
  add_model(s_mass, mass.model, false);
  s_mass->add_option("--side", mass.side, "torus side L")->capture_default_str();
  s_mass->add_option("--trials", mass.trials)->capture_default_str();
  s_mass->add_option("--seed", mass.seed)->capture_default_str();

  GrowthCmd growth;
  auto* s_growth = app.add_subcommand("growth", "generation maxima for k >= d+1 (JSON)");
  add_common(s_growth, growth.common);
  add_model(s_growth, growth.model, false);
  s_growth->add_option("--generations", growth.generations)->capture_default_str();
  s_growth->add_option("--runs", growth.runs)->capture_default_str();
  s_growth->add_option("--seed", growth.seed)->capture_default_str();

  std::vector<const char*> argv{"knperc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  std::vector<std::pair<CLI::App*, std::function<void(std::ostream&)>>> table{
      {s_sample, [&](std::ostream& o) { sample.run(o); }},
      {s_estimate, [&](std::ostream& o) { estimate.run(o); }},
      {s_proportion, [&](std::ostream& o) { proportion.run(o); }},
      {s_tau, [&](std::ostream& o) { tau.run(o); }},
      {s_bounds, [&](std::ostream& o) { bounds.run(o); }},
      {s_saw, [&](std::ostream& o) { saw.run(o); }},
      {s_peierls, [&](std::ostream& o) { peierls.run(o); }},
      {s_dual, [&](std::ostream& o) { dual.run(o); }},
      {s_couple, [&](std::ostream& o) { couple.run(o); }},
      {s_mass, [&](std::ostream& o) { mass.run(o); }},
      {s_growth, [&](std::ostream& o) { growth.run(o); }},
  };
  return dispatch(app, table, out, err);
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace knperc::cli
