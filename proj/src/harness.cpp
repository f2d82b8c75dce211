#include "hdx/harness.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "hdx/combine.hpp"
#include "hdx/cover.hpp"
#include "hdx/error.hpp"
#include "hdx/group.hpp"
#include "hdx/pruning.hpp"
#include "hdx/rng.hpp"
#include "hdx/sparsify.hpp"
#include "hdx/spectral.hpp"
#include "hdx/suitability.hpp"
#include "hdx/util.hpp"

namespace hdx {

namespace {

const char* const kPipelines[] = {"prune", "cover-family", "sparsify", "combine", "scan"};

template <typename T>
T param(const Json& params, const char* key, T fallback) {
  if (!params.contains(key)) return fallback;
  try {
    return params.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("parameter '") + key + "': " + e.what());
  }
}

std::string face_id(const Face& f) {
  if (f.empty()) return "empty";
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "-" : "") + std::to_string(f[i]);
  return s;
}

struct Audits {
  Json list = Json::array();
  bool failed = false;
  void add(const std::string& name, bool pass, const Json& witness = nullptr) {
    Json a;
    a["name"] = name;
    a["pass"] = pass;
    if (!witness.is_null()) a["witness"] = witness;
    list.push_back(std::move(a));
    failed = failed || !pass;
  }
  void skip(const std::string& name, const std::string& why) {
    Json a;
    a["name"] = name;
    a["pass"] = nullptr;
    a["skipped"] = why;
    list.push_back(std::move(a));
  }
};

class StageRunner {
 public:
  explicit StageRunner(RunReport& report) : report_(report) {}
  template <typename F>
  auto run(const std::string& stage, F&& body) -> decltype(body()) {
    const auto start = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<decltype(body())>) {
        body();
        record(stage, start);
      } else {
        auto result = body();
        record(stage, start);
        return result;
      }
    } catch (const Error& e) {
      throw Error(e.code(), "stage '" + stage + "': " + e.what());
    }
  }

 private:
  void record(const std::string& stage, std::chrono::steady_clock::time_point start) {
    report_.timings[stage] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  RunReport& report_;
};

Json hdx_json(const HdxReport& h) {
  Json j;
  j["threshold"] = h.threshold;
  j["mode"] = h.mode == LambdaMode::OneSided ? "one_sided" : "two_sided";
  j["pass"] = h.pass;
  j["worst"] = h.worst;
  j["worst_face"] = h.worst_face;
  j["links"] = h.links.size();
  return j;
}

std::string spectra_rows(const std::string& scope, const HdxReport& h) {
  std::string out;
  for (const auto& l : h.links) {
    out += scope + "," + face_id(l.face) + "," + format_double(l.lambda2) + "," +
           format_double(l.lambda_min) + "," + format_double(l.two_sided) + "\n";
  }
  return out;
}

std::string lambda_plot(const HdxReport& h) {
  std::vector<double> v;
  for (const auto& l : h.links) v.push_back(l.two_sided);
  std::sort(v.begin(), v.end());
  std::string out = "# rank two_sided_lambda\n";
  for (std::size_t i = 0; i < v.size(); ++i) out += std::to_string(i) + " " + format_double(v[i]) + "\n";
  return out;
}

Json trickle_json(const TrickleReport& t) {
  Json j;
  j["entries"] = t.entries.size();
  j["applicable"] = t.applicable;
  j["failures"] = t.failures;
  Json rows = Json::array();
  for (const auto& e : t.entries) {
    rows.push_back({{"face", e.face}, {"link_lambda", e.link_lambda}, {"lambda2", e.lambda2},
                    {"bound", std::isfinite(e.bound) ? Json(e.bound) : Json("inf")},
                    {"applicable", e.applicable}, {"pass", e.pass}});
  }
  j["rows"] = std::move(rows);
  return j;
}

Json suitability_json(const SuitabilityReport& s) {
  Json j;
  j["c"] = s.c;
  j["r"] = s.r;
  j["eta"] = s.eta;
  j["hdx"] = {{"pass", s.hdx}, {"worst", s.hdx_worst}, {"witness", s.hdx_witness}};
  j["degree"] = {{"pass", s.degree}, {"Q", s.Q}, {"bound", s.degree_bound}, {"min_degree", s.min_degree},
                 {"witness", s.degree_witness ? Json(*s.degree_witness) : Json(nullptr)}};
  j["weights"] = {{"pass", s.weights}, {"worst_ratio", s.worst_weight_ratio},
                  {"witness", s.weight_witness ? Json(*s.weight_witness) : Json(nullptr)}};
  j["log_base"] = s.log_base;
  j["pass"] = s.pass();
  return j;
}

PruneConfig prune_config(const Json& params) {
  PruneConfig cfg;
  cfg.lambda = param(params, "lambda", cfg.lambda);
  cfg.r = param(params, "r", cfg.r);
  cfg.c = param(params, "c", cfg.c);
  cfg.eta = param(params, "eta", cfg.eta);
  cfg.max_resamples = param<std::size_t>(params, "max_resamples", 0);
  if (params.contains("ne_threshold")) cfg.ne_threshold = param(params, "ne_threshold", 0.0);
  if (params.contains("at_max_level")) cfg.at_max_level = param(params, "at_max_level", 0);
  if (params.contains("kinds")) {
    cfg.kinds = 0;
    for (const auto& k : params.at("kinds")) {
      const auto name = k.get<std::string>();
      if (name == "AT") cfg.kinds |= kEventAT;
      else if (name == "NE") cfg.kinds |= kEventNE;
      else if (name == "BC") cfg.kinds |= kEventBC;
      else throw Error(ErrorCode::ParseError, "unknown event kind '" + name + "'");
    }
  }
  cfg.log_scopes = param(params, "log_scopes", true);
  return cfg;
}

Json event_json(const EventRef& e) { return {{"kind", to_string(e.kind)}, {"face", e.face}}; }

// Labels of Y's edges taken from the labeling on X.
Cocycle restrict_cocycle(const PureComplex& Y, const PureComplex& X, std::span<const Element> f) {
  Cocycle out;
  for (const Face& e : Y.faces(1)) out.push_back(f[X.face_position(e)]);
  return out;
}

struct CoverCheck {
  Json json;
  bool connected = false;
  bool verified = false;
  bool count_matches = false;
  bool inherited = false;
};

// Builds and audits the cover of Y for cocycle f over G; expected component
// count is [G : H] with H the holonomy subgroup.
CoverCheck check_cover(const PureComplex& Y, const GroupTable& G, const Cocycle& f) {
  CoverCheck c;
  const VertexId root = Y.vertices()[0];
  const auto H = holonomy_subgroup(Y, G, f, root);
  const CoverComplex cover = build_cover(Y, G, f);
  const Components comps = connected_components(cover.complex);
  const auto verify = verify_cover(cover.complex, Y, [&](VertexId v) { return cover.base_vertex(v); });
  c.connected = comps.count == 1;
  c.verified = verify.pass;
  c.count_matches = comps.count == G.order() / H.size();
  // link spectra of lifted faces equal those of their images
  bool inherited = true;
  double worst_gap = 0.0;
  for (int k = 0; k <= Y.dim() - 2; ++k) {
    for (const Face& s : cover.complex.faces(k)) {
      const auto a = link_spectrum(cover.complex, s);
      const auto b = link_spectrum(Y, cover.project(s));
      worst_gap = std::max(worst_gap, std::abs(a.two_sided - b.two_sided));
      worst_gap = std::max(worst_gap, std::abs(a.lambda2 - b.lambda2));
    }
  }
  inherited = worst_gap <= 1e-9;
  c.inherited = inherited;
  c.json = {{"group_order", G.order()},
            {"holonomy_order", H.size()},
            {"vertices", cover.complex.vertices().size()},
            {"top_faces", cover.complex.top_faces().size()},
            {"components", comps.count},
            {"expected_components", G.order() / H.size()},
            {"verify_pass", verify.pass},
            {"verify_faces", verify.faces_checked},
            {"verify_violations", verify.violations.size()},
            {"link_spectrum_gap", worst_gap}};
  return c;
}

struct Inputs {
  std::optional<PureComplex> complex;
  std::optional<PureComplex> target;
  std::optional<GroupTable> group;
  std::optional<GenSet> genset;
  std::optional<WGraph> graph;
};

Inputs load_inputs(const ExperimentSpec& spec) {
  Inputs in;
  const auto& j = spec.inputs;
  const std::size_t cap = param<std::size_t>(spec.params, "group_cap", GroupTable::kDefaultCap);
  auto need = [&](const char* key) {
    if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing input '") + key + "'");
    return resolve_input(j.at(key), spec.base_dir);
  };
  const std::string& p = spec.pipeline;
  if (p == "prune" || p == "cover-family") {
    in.complex = complex_from_json(need("complex"));
    in.group = group_from_json(need("group"), cap);
    in.genset = genset_from_json(need("genset"), *in.group);
  } else if (p == "combine") {
    in.complex = complex_from_json(need("complex"));
    in.target = complex_from_json(need("target"));
  } else if (p == "sparsify") {
    in.graph = j.contains("graph") ? graph_from_json(need("graph"))
                                   : one_skeleton(complete_complex(param<std::uint32_t>(spec.params, "complete_n", 300), 1));
  } else if (p == "scan") {
    in.group = group_from_json(need("group"), cap);
  }
  return in;
}

void run_prune(const ExperimentSpec& spec, Inputs& in, RunReport& out, StageRunner& stages,
               Audits& audits) {
  const PureComplex& X = *in.complex;
  const GroupTable& G = *in.group;
  const GenSet& S = *in.genset;
  const PruneConfig cfg = prune_config(spec.params);
  const int d = X.dim();
  const std::size_t m = S.size();
  Json& rep = out.report;

  if (param(spec.params, "check_suitable", true)) {
    rep["suitability"] = stages.run("suitability", [&] {
      return suitability_json(check_suitable(X, cfg.c, cfg.r, cfg.eta));
    });
  }
  const CayleyCliqueComplex C = stages.run("cayley", [&] { return cayley_clique_complex(G, S, d); });
  const HdxReport c_hdx = stages.run("cayley-spectra", [&] { return is_hdx(C.complex, cfg.lambda / 2.0); });
  rep["cayley"] = {{"vertices", C.complex.vertices().size()},
                   {"top_faces", C.complex.top_faces().size()},
                   {"half_lambda_hdx", hdx_json(c_hdx)}};

  const PruneProblem problem(X, G, S, cfg);
  Rng rng(derive_seed(spec.seed, "prune"));
  const PruneOutcome outcome = stages.run("prune", [&] { return moser_tardos_prune(problem, rng); });
  out.budget_exhausted = outcome.status == PruneStatus::BudgetExhausted;
  Json pj;
  pj["status"] = to_string(outcome.status);
  pj["events"] = outcome.num_events;
  pj["resamples"] = outcome.resamples;
  pj["violated_at_end"] = outcome.violated_at_end;
  Json by_kind = Json::object();
  for (const auto& [k, n] : outcome.violated_by_kind) by_kind[to_string(k)] = n;
  pj["violated_by_kind"] = by_kind;
  pj["ne_threshold"] = cfg.ne();
  pj["y_top_faces"] = outcome.Y ? outcome.Y->top_faces().size() : 0;
  pj["y_empty"] = !outcome.Y.has_value();
  pj["measurable"] = outcome.Y_measured.has_value();
  if (!outcome.unmeasurable.empty()) pj["unmeasurable"] = outcome.unmeasurable;
  pj["log_truncated"] = outcome.log_truncated;
  rep["prune"] = pj;

  Json outcome_json;
  outcome_json["status"] = to_string(outcome.status);
  outcome_json["labeling"] = outcome.labels;
  outcome_json["elements"] = outcome.elements;
  outcome_json["edges"] = X.faces(1);
  if (outcome.Y) outcome_json["Y"] = complex_to_json(outcome.Y_measured ? *outcome.Y_measured : *outcome.Y);
  Json transcript = Json::array();
  for (const auto& e : outcome.log) {
    transcript.push_back({{"iteration", e.iteration}, {"event", event_json(e.event)},
                          {"scope", e.scope}, {"changed", e.changed}});
  }
  outcome_json["transcript"] = std::move(transcript);
  out.files["outcome.json"] = dump_json(outcome_json);

  // transcript: resampling touches only the chosen event's read set
  bool transcript_ok = true;
  for (const auto& e : outcome.log) {
    if (!cfg.log_scopes) break;
    for (auto x : e.changed) transcript_ok = transcript_ok && std::binary_search(e.scope.begin(), e.scope.end(), x);
  }
  if (cfg.log_scopes) audits.add("transcript_changes_within_scope", transcript_ok);
  else audits.skip("transcript_changes_within_scope", "scopes not logged");

  if (!outcome.Y) {
    audits.skip("hdx", "Y has no top faces");
    return;
  }
  const PureComplex& Y = outcome.Y_measured ? *outcome.Y_measured : *outcome.Y;
  const HdxReport y_hdx = stages.run("certify", [&] { return is_hdx(Y, cfg.lambda); });
  rep["certify"] = hdx_json(y_hdx);
  out.spectra_csv += spectra_rows("Y", y_hdx);
  out.files["plot_lambda_Y.dat"] = lambda_plot(y_hdx);
  rep["trickle_down"] = stages.run("trickle", [&] { return trickle_json(trickle_down_check(Y)); });
  rep["face_fractions"] = face_fractions(Y, X);

  const Cocycle fY = restrict_cocycle(Y, X, outcome.elements);
  std::optional<CoverCheck> cover;
  try {
    cover = stages.run("cover", [&] { return check_cover(Y, G, fY); });
    rep["cover"] = cover->json;
  } catch (const Error& e) {
    rep["cover"] = {{"error", e.what()}};
  }

  const bool clean = outcome.status == PruneStatus::Clean;
  if (clean) {
    stages.run("audit", [&] {
      std::size_t still_true = 0;
      for (std::size_t i = 0; i < problem.events().size(); ++i) still_true += problem.evaluate(i, outcome.labels);
      audits.add("clean_events_false", still_true == 0, still_true);
      audits.add("hdx_at_lambda", y_hdx.pass, {{"worst", y_hdx.worst}, {"face", y_hdx.worst_face}});
      bool frac_ok = true;
      const auto fr = face_fractions(Y, X);
      for (int l = 0; l <= d; ++l) {
        frac_ok = frac_ok && fr[l] >= std::pow(1.0 / (2.0 * std::pow(static_cast<double>(m), d)), d - l);
      }
      audits.add("face_fraction", frac_ok, fr);
      // skeletons of Y links equal satisfaction graphs
      bool skeleton_ok = true;
      Json skeleton_witness = nullptr;
      for (int k = 0; k <= d - 2 && skeleton_ok; ++k) {
        for (const Face& s : X.faces(k)) {
          if (!is_satisfied(problem.edge_index(), G, outcome.elements, s)) continue;
          const auto sat = problem.satisfaction(s, outcome.labels);
          bool same = Y.contains(s);
          if (same) {
            const PureComplex L = link(Y, s);
            std::vector<VertexId> lv(L.vertices().begin(), L.vertices().end());
            std::vector<std::pair<VertexId, VertexId>> le, se;
            for (const Face& e : L.faces(1)) le.push_back({e[0], e[1]});
            for (const auto& e : sat.edges) se.push_back({e.a, e.b});
            std::sort(se.begin(), se.end());
            same = lv == sat.vertices && le == se;
          }
          if (!same) {
            skeleton_ok = false;
            skeleton_witness = s;
            break;
          }
        }
      }
      audits.add("link_skeleton_equals_satisfaction_graph", skeleton_ok, skeleton_witness);
      if (cover) {
        audits.add("holonomy_full", cover->json["holonomy_order"] == G.order(), cover->json["holonomy_order"]);
        audits.add("cover_connected", cover->connected, cover->json["components"]);
        audits.add("cover_verified", cover->verified);
        audits.add("cover_spectra_inherited", cover->inherited, cover->json["link_spectrum_gap"]);
      } else {
        audits.add("cover_built", false);
      }
      if (outcome.Y_measured) {
        const auto pm = pruned_measure(*outcome.Y, X, problem.edge_index(), G, outcome.elements, problem.cayley());
        audits.add("pruned_measure_total", std::abs(pm.raw_total - 1.0) <= 1e-9, pm.raw_total);
        bool ratio_ok = true;
        double worst = 1.0;
        for (int k = 0; k <= d - 2; ++k) {
          for (const Face& s : Y.faces(k)) {
            if (!is_satisfied(problem.edge_index(), G, outcome.elements, s)) continue;
            const auto a = measure_ratio_audit(*outcome.Y_measured, problem, outcome.labels, s);
            worst = std::max(worst, a.max_ratio);
            ratio_ok = ratio_ok && a.pass;
          }
        }
        audits.add("measure_ratio", ratio_ok, worst);
      } else {
        audits.add("measurable", false, outcome.unmeasurable);
      }
    });
  } else {
    audits.skip("clean_events_false", "budget exhausted");
  }

  if (spec.pipeline == "cover-family") {
    const std::size_t max_index = param<std::size_t>(spec.params, "max_index", G.order());
    Json family = Json::array();
    stages.run("cover-family", [&] {
      const auto normals = normal_subgroups(G, max_index);
      const VertexId root = Y.vertices()[0];
      const auto H = holonomy_subgroup(Y, G, fY, root);
      for (const auto& N : normals) {
        const Quotient q = quotient_group(G, N);
        const Cocycle fN = push_cocycle(Y, G, fY, q);
        const CoverComplex cov = build_cover(Y, q.group, fN);
        const Components comps = connected_components(cov.complex);
        const auto ver = verify_cover(cov.complex, Y, [&](VertexId v) { return cov.base_vertex(v); });
        std::vector<Element> image;
        for (Element h : H) image.push_back(q.projection[h]);
        const auto HN = subgroup_closure(q.group, image);
        const std::size_t expected = q.group.order() / HN.size();
        const bool vertex_count_ok = cov.complex.vertices().size() == Y.vertices().size() * q.group.order();
        family.push_back({{"normal_subgroup_order", N.size()},
                          {"quotient_order", q.group.order()},
                          {"vertices", cov.complex.vertices().size()},
                          {"components", comps.count},
                          {"expected_components", expected},
                          {"connected", comps.count == 1},
                          {"verify_pass", ver.pass}});
        const std::string tag = "quotient_" + std::to_string(q.group.order());
        audits.add(tag + "_verify", ver.pass);
        audits.add(tag + "_components", comps.count == expected, comps.count);
        audits.add(tag + "_vertex_count", vertex_count_ok, cov.complex.vertices().size());
      }
    });
    rep["cover_family"] = std::move(family);
  }
}

void run_combine(const ExperimentSpec& spec, Inputs& in, RunReport& out, StageRunner& stages,
                 Audits& audits) {
  const PureComplex& X = *in.complex;
  const PureComplex& C = *in.target;
  CombineConfig cfg;
  cfg.lambda = param(spec.params, "lambda", cfg.lambda);
  cfg.max_resamples = param<std::size_t>(spec.params, "max_resamples", 0);
  const CombineProblem problem(X, C, cfg);
  Rng rng(derive_seed(spec.seed, "combine"));
  const CombineOutcome outcome = stages.run("combine", [&] { return moser_tardos_combine(problem, rng); });
  out.budget_exhausted = outcome.status == PruneStatus::BudgetExhausted;
  Json& rep = out.report;
  rep["combine"] = {{"status", to_string(outcome.status)},
                    {"events", outcome.num_events},
                    {"resamples", outcome.resamples},
                    {"violated_at_end", outcome.violated_at_end},
                    {"fail", outcome.fail},
                    {"y_top_faces", outcome.pruned.satisfied_top}};
  Json outcome_json;
  outcome_json["status"] = to_string(outcome.status);
  outcome_json["coloring"] = outcome.colors;
  outcome_json["vertices"] = std::vector<VertexId>(X.vertices().begin(), X.vertices().end());
  if (outcome.pruned.Y) outcome_json["Y"] = complex_to_json(*outcome.pruned.Y);
  Json transcript = Json::array();
  for (const auto& e : outcome.log) {
    transcript.push_back({{"iteration", e.iteration}, {"event", event_json(e.event)},
                          {"scope", e.scope}, {"changed", e.changed}});
  }
  outcome_json["transcript"] = std::move(transcript);
  out.files["outcome.json"] = dump_json(outcome_json);
  if (outcome.status != PruneStatus::Clean) {
    audits.skip("verify_combine", "budget exhausted");
    return;
  }
  const CombineVerification v = stages.run("verify", [&] { return verify_combine(outcome, X, C, cfg.lambda); });
  rep["verify"] = {{"homomorphism", v.homomorphism},
                   {"non_degenerate", v.non_degenerate},
                   {"hdx", v.hdx},
                   {"worst_lambda", v.worst_lambda},
                   {"threshold", std::isfinite(v.threshold) ? Json(v.threshold) : Json("inf")},
                   {"margin_headline", std::isfinite(v.margin_headline) ? Json(v.margin_headline) : Json("inf")},
                   {"margin_claim", std::isfinite(v.margin_claim) ? Json(v.margin_claim) : Json("inf")},
                   {"connected", v.connected},
                   {"path_argument", v.path_argument},
                   {"path_pairs", v.path_pairs},
                   {"fractions", v.fractions}};
  audits.add("homomorphism", v.homomorphism, v.homomorphism_witness ? Json(*v.homomorphism_witness) : Json(nullptr));
  audits.add("non_degenerate", v.non_degenerate, v.missing ? Json(*v.missing) : Json(nullptr));
  audits.add("hdx", v.hdx, v.worst_lambda);
  audits.add("connected", v.connected && v.path_argument);
  audits.add("face_fraction_positive", v.fraction_positive, v.fractions);
  std::size_t still_true = 0;
  for (std::size_t i = 0; i < problem.events().size(); ++i) still_true += problem.evaluate(i, outcome.colors);
  audits.add("clean_events_false", still_true == 0, still_true);
  if (outcome.pruned.Y) {
    const HdxReport h = is_hdx(*outcome.pruned.Y, v.threshold);
    out.spectra_csv += spectra_rows("Y", h);
    out.files["plot_lambda_Y.dat"] = lambda_plot(h);
    const auto t = trickle_down_check(*outcome.pruned.Y);
    rep["trickle_down"] = trickle_json(t);
    audits.add("trickle_down", t.failures == 0, t.failures);
  }
}

void run_sparsify(const ExperimentSpec& spec, Inputs& in, RunReport& out, StageRunner& stages,
                  Audits& audits) {
  const double p_split = param(spec.params, "p_split", 0.3);
  const double p_edge = param(spec.params, "p_edge", 0.5);
  const auto trials = param<std::size_t>(spec.params, "trials", 50);
  const double eps = param(spec.params, "epsilon", 0.04);
  const double common_eps = param(spec.params, "common_epsilon", 0.1);
  const TrialReport t = stages.run("sparsify", [&] {
    return sparsify_trial(*in.graph, p_split, p_edge, trials, derive_seed(spec.seed, "sparsify"), eps, common_eps);
  });
  out.report["sparsify"] = {{"trials", t.trials},
                            {"discarded", t.discarded},
                            {"p_split", t.p_split},
                            {"p_edge", t.p_edge},
                            {"lambda_G", t.lambda_G},
                            {"near_uniformity", t.near_uniformity},
                            {"min_degree", t.min_degree},
                            {"epsilon", t.epsilon},
                            {"split_bound", t.split_bound},
                            {"edge_bound", t.edge_bound},
                            {"split_failure_rate", t.split_failure_rate},
                            {"edge_failure_rate", t.edge_failure_rate},
                            {"common_epsilon", t.common_epsilon},
                            {"mass_rate", t.mass_rate},
                            {"per_vertex_rate", t.per_vertex_rate}};
  std::string csv = "trial,discarded,size_A,size_B,lambda_H,lambda_H_sub\n";
  std::string plot = "# trial lambda_H lambda_H_sub\n";
  for (const auto& r : t.records) {
    csv += std::to_string(r.trial) + "," + (r.discarded ? "1" : "0") + "," + std::to_string(r.size_A) + "," +
           std::to_string(r.size_B) + "," + format_double(r.lambda_H) + "," + format_double(r.lambda_H_sub) + "\n";
    if (!r.discarded) {
      plot += std::to_string(r.trial) + " " + format_double(r.lambda_H) + " " + format_double(r.lambda_H_sub) + "\n";
    }
  }
  out.files["trials.csv"] = csv;
  out.files["plot_sparsify.dat"] = plot;
  audits.add("rates_in_unit_interval",
             t.split_failure_rate >= 0 && t.split_failure_rate <= 1 && t.edge_failure_rate >= 0 &&
                 t.edge_failure_rate <= 1);
}

void run_scan(const ExperimentSpec& spec, Inputs& in, RunReport& out, StageRunner& stages, Audits& audits) {
  const GroupTable& G = *in.group;
  const int d = param(spec.params, "d", 2);
  ScanOptions opts;
  opts.max_size = param<std::size_t>(spec.params, "max_size", opts.max_size);
  opts.eta_target = param(spec.params, "eta", opts.eta_target);
  opts.max_candidates = param<std::size_t>(spec.params, "top", 20);
  const auto cands = stages.run("scan", [&] { return scan_gensets(G, d, opts); });
  Json list = Json::array();
  bool reproduced = true;
  for (const auto& c : cands) {
    list.push_back({{"gens", c.gens}, {"worst_lambda", c.worst_lambda}, {"identity_lambda", c.identity_lambda}});
    if (d >= 2) {
      const auto C = cayley_clique_complex(G, GenSet{c.gens}, d);
      const double again = adjacency_spectrum(one_skeleton(link_of_identity(C))).two_sided;
      reproduced = reproduced && std::abs(again - c.identity_lambda) <= 1e-9;
    }
  }
  out.report["scan"] = {{"group", G.name()}, {"order", G.order()}, {"d", d}, {"candidates", std::move(list)}};
  audits.add("candidates_reproduce", reproduced);
}

}  // namespace

ExperimentSpec ExperimentSpec::from_json(const Json& j, std::filesystem::path base_dir) {
  ExperimentSpec spec;
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "experiment spec must be an object");
  try {
    spec.pipeline = j.at("pipeline").get<std::string>();
    if (j.contains("inputs")) spec.inputs = j.at("inputs");
    if (j.contains("params")) spec.params = j.at("params");
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("experiment spec: ") + e.what());
  }
  if (std::find(std::begin(kPipelines), std::end(kPipelines), spec.pipeline) == std::end(kPipelines)) {
    throw Error(ErrorCode::ParseError, "unknown pipeline '" + spec.pipeline + "'");
  }
  spec.base_dir = std::move(base_dir);
  return spec;
}

Json ExperimentSpec::to_json() const {
  return {{"pipeline", pipeline}, {"inputs", inputs}, {"params", params}, {"seed", seed}};
}

RunReport run_experiment(const ExperimentSpec& spec) {
  RunReport out;
  out.timings = Json::object();
  StageRunner stages(out);
  Inputs in = stages.run("inputs", [&] { return load_inputs(spec); });
  out.report["spec"] = spec.to_json();
  out.spectra_csv = "scope,face,lambda2,lambda_min,two_sided\n";
  Audits audits;
  if (spec.pipeline == "prune" || spec.pipeline == "cover-family") run_prune(spec, in, out, stages, audits);
  else if (spec.pipeline == "combine") run_combine(spec, in, out, stages, audits);
  else if (spec.pipeline == "sparsify") run_sparsify(spec, in, out, stages, audits);
  else if (spec.pipeline == "scan") run_scan(spec, in, out, stages, audits);
  out.report["audits"] = audits.list;
  out.audit_failed = audits.failed;
  out.report["exit_code"] = out.exit_code();
  return out;
}

void emit_report(const RunReport& report, const std::filesystem::path& out_dir) {
  write_text(out_dir / "report.json", dump_json(report.report));
  write_text(out_dir / "spectra.csv", report.spectra_csv);
  write_text(out_dir / "timings.json", dump_json(report.timings));
  for (const auto& [name, text] : report.files) write_text(out_dir / name, text);
}

}  // namespace hdx
