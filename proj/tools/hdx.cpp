// hdx command line front end.
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hdx/cover.hpp"
#include "hdx/error.hpp"
#include "hdx/harness.hpp"
#include "hdx/io.hpp"
#include "hdx/spectral.hpp"
#include "hdx/rng.hpp"
#include "hdx/suitability.hpp"
#include "hdx/util.hpp"

namespace fs = std::filesystem;
using hdx::Json;

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::optional<double> lambda;
  std::optional<double> r;
  std::optional<double> c;
  std::optional<double> eta;
  std::optional<std::size_t> max_resamples;
  std::size_t exact_subset_limit = 14;
  std::optional<std::size_t> trials;
  std::string out_dir;
};

void add_common(CLI::App* cmd, Common& o) {
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--lambda", o.lambda);
  cmd->add_option("--r", o.r);
  cmd->add_option("--c", o.c);
  cmd->add_option("--eta", o.eta);
  cmd->add_option("--max-resamples", o.max_resamples);
  cmd->add_option("--exact-subset-limit", o.exact_subset_limit);
  cmd->add_option("--trials", o.trials);
  cmd->add_option("--out-dir", o.out_dir, "directory for report files");
}

void put_params(Json& params, const Common& o) {
  if (o.lambda) params["lambda"] = *o.lambda;
  if (o.r) params["r"] = *o.r;
  if (o.c) params["c"] = *o.c;
  if (o.eta) params["eta"] = *o.eta;
  if (o.max_resamples) params["max_resamples"] = *o.max_resamples;
  if (o.trials) params["trials"] = *o.trials;
}

Json input_ref(const std::string& path) { return Json(fs::absolute(path).string()); }

// Prints JSON to stdout and, when --out-dir is set, writes it as report.json.
int finish(const Json& j, const Common& o, int code = 0) {
  const std::string text = hdx::dump_json(j);
  if (!o.out_dir.empty()) {
    fs::create_directories(o.out_dir);
    hdx::write_text(fs::path(o.out_dir) / "report.json", text);
  }
  std::cout << text;
  return code;
}

int run_pipeline(const hdx::ExperimentSpec& spec, const Common& o) {
  const hdx::RunReport rep = hdx::run_experiment(spec);
  const fs::path dir = o.out_dir.empty() ? fs::path(".") : fs::path(o.out_dir);
  fs::create_directories(dir);
  hdx::emit_report(rep, dir);
  std::cout << hdx::dump_json({{"pipeline", spec.pipeline},
                               {"exit_code", rep.exit_code()},
                               {"out_dir", dir.string()},
                               {"audits", rep.report.at("audits")}});
  return rep.exit_code();
}

Json hdx_summary(const hdx::HdxReport& h) {
  return {{"threshold", h.threshold}, {"pass", h.pass}, {"worst", h.worst},
          {"worst_face", h.worst_face}, {"links", h.links.size()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build, prune, cover and certify high-dimensional expanders"};
  app.require_subcommand(1);
  Common o;
  std::string complex_path, group_path, genset_path, target_path, graph_path, cocycle_path, spec_path, out_path;
  std::uint32_t n = 0, t = 2;
  int d = 2;
  bool one_sided = false;
  std::size_t max_index = 0, top = 20, max_size = 8;
  double p_split = 0.3, p_edge = 0.5;

  auto* build_complete = app.add_subcommand("build-complete", "complete complex on n vertices");
  build_complete->add_option("--n", n)->required();
  build_complete->add_option("--d", d)->required();
  build_complete->add_option("--out", out_path);
  add_common(build_complete, o);

  auto* tensor = app.add_subcommand("tensor", "tensor a complex with the complete complex on t vertices");
  tensor->add_option("--complex", complex_path)->required();
  tensor->add_option("--t", t)->required();
  tensor->add_option("--out", out_path);
  add_common(tensor, o);

  auto* suitable = app.add_subcommand("check-suitable", "(c, r, eta)-suitability check");
  suitable->add_option("--complex", complex_path)->required();
  add_common(suitable, o);

  auto* prune = app.add_subcommand("prune", "prune a complex against a Cayley clique complex");
  prune->add_option("--complex", complex_path)->required();
  prune->add_option("--group", group_path)->required();
  prune->add_option("--genset", genset_path)->required();
  add_common(prune, o);

  auto* cover = app.add_subcommand("cover", "build and verify the cover of a complex by a cocycle");
  cover->add_option("--complex", complex_path)->required();
  cover->add_option("--group", group_path)->required();
  cover->add_option("--cocycle", cocycle_path, "{\"edges\": [[u,v]..], \"elements\": [..]}")->required();
  add_common(cover, o);

  auto* family = app.add_subcommand("cover-family", "prune, then cover by every quotient");
  family->add_option("--complex", complex_path)->required();
  family->add_option("--group", group_path)->required();
  family->add_option("--genset", genset_path)->required();
  family->add_option("--max-index", max_index);
  add_common(family, o);

  auto* verify = app.add_subcommand("verify-hdx", "certify all link spectra");
  verify->add_option("--complex", complex_path)->required();
  verify->add_flag("--one-sided", one_sided);
  add_common(verify, o);

  auto* sparsify = app.add_subcommand("sparsify", "vertex split and edge subsample trials");
  sparsify->add_option("--graph", graph_path);
  sparsify->add_option("--complete-n", n, "use the complete graph K_n when no graph is given");
  sparsify->add_option("--p-split", p_split);
  sparsify->add_option("--p-edge", p_edge);
  add_common(sparsify, o);

  auto* combine = app.add_subcommand("combine", "color a complex into a target complex");
  combine->add_option("--complex", complex_path)->required();
  combine->add_option("--target", target_path)->required();
  add_common(combine, o);

  auto* scan = app.add_subcommand("scan-gensets", "rank generating sets by link expansion");
  scan->add_option("--group", group_path)->required();
  scan->add_option("--d", d);
  scan->add_option("--top", top);
  scan->add_option("--max-size", max_size);
  add_common(scan, o);

  auto* eml = app.add_subcommand("eml", "mixing-lemma discrepancy of a graph");
  eml->add_option("--graph", graph_path)->required();
  add_common(eml, o);

  auto* run = app.add_subcommand("run", "run an experiment spec file");
  run->add_option("--spec", spec_path)->required();
  add_common(run, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build_complete || *tensor) {
      hdx::PureComplex X = *build_complete
                               ? hdx::complete_complex(n, d)
                               : hdx::tensor_with_complete(hdx::complex_from_json(hdx::load_json(complex_path)), t);
      const std::string text = hdx::dump_json(hdx::complex_to_json(X));
      if (out_path.empty()) std::cout << text;
      else hdx::write_text(out_path, text);
      return 0;
    }
    if (*suitable) {
      const auto X = hdx::complex_from_json(hdx::load_json(complex_path));
      const auto s = hdx::check_suitable(X, o.c.value_or(1.1), o.r.value_or(1.5), o.eta.value_or(0.25));
      return finish({{"hdx", s.hdx}, {"hdx_worst", s.hdx_worst}, {"degree", s.degree}, {"Q", s.Q},
                     {"degree_bound", s.degree_bound}, {"min_degree", s.min_degree}, {"weights", s.weights},
                     {"worst_weight_ratio", s.worst_weight_ratio}, {"pass", s.pass()}},
                    o, s.pass() ? 0 : 3);
    }
    if (*verify) {
      const auto X = hdx::complex_from_json(hdx::load_json(complex_path));
      const auto h = hdx::is_hdx(X, o.lambda.value_or(0.5),
                                 one_sided ? hdx::LambdaMode::OneSided : hdx::LambdaMode::TwoSided);
      if (!o.out_dir.empty()) {
        std::string csv = "face,lambda2,lambda_min,two_sided\n";
        for (const auto& l : h.links) {
          csv += hdx::face_to_string(l.face) + "," + hdx::format_double(l.lambda2) + "," +
                 hdx::format_double(l.lambda_min) + "," + hdx::format_double(l.two_sided) + "\n";
        }
        fs::create_directories(o.out_dir);
        hdx::write_text(fs::path(o.out_dir) / "spectra.csv", csv);
      }
      return finish(hdx_summary(h), o, h.pass ? 0 : 3);
    }
    if (*cover) {
      const auto X = hdx::complex_from_json(hdx::load_json(complex_path));
      const auto G = hdx::group_from_json(hdx::load_json(group_path));
      const Json cj = hdx::load_json(cocycle_path);
      const auto& edges = X.faces(1);
      hdx::Cocycle f(edges.size(), 0);
      const auto given = cj.at("edges").get<std::vector<std::vector<hdx::VertexId>>>();
      const auto elems = cj.at("elements").get<std::vector<hdx::Element>>();
      if (given.size() != elems.size()) throw hdx::Error(hdx::ErrorCode::ParseError, "edges and elements differ in length");
      std::vector<bool> seen(edges.size(), false);
      for (std::size_t i = 0; i < given.size(); ++i) {
        const auto e = hdx::canonical_face(given[i]);
        if (!X.contains(e) || e.size() != 2) throw hdx::Error(hdx::ErrorCode::NotAFace, hdx::face_to_string(e));
        const std::size_t pos = X.face_position(e);
        // given orientation u->v; store for the sorted orientation
        f[pos] = given[i][0] < given[i][1] ? elems[i] : G.inv(elems[i]);
        seen[pos] = true;
      }
      for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) throw hdx::Error(hdx::ErrorCode::ParseError, "no element for edge " + hdx::face_to_string(edges[i]));
      }
      const auto C = hdx::build_cover(X, G, f);
      const auto H = hdx::holonomy_subgroup(X, G, f, X.vertices()[0]);
      const auto comps = hdx::connected_components(C.complex);
      const auto v = hdx::verify_cover(C.complex, X, [&](hdx::VertexId id) { return C.base_vertex(id); });
      const bool ok = v.pass && comps.count == G.order() / H.size();
      if (!o.out_dir.empty()) {
        fs::create_directories(o.out_dir);
        hdx::write_text(fs::path(o.out_dir) / "cover.json", hdx::dump_json(hdx::complex_to_json(C.complex)));
      }
      return finish({{"vertices", C.complex.vertices().size()}, {"top_faces", C.complex.top_faces().size()},
                     {"components", comps.count}, {"holonomy_order", H.size()},
                     {"expected_components", G.order() / H.size()}, {"verify_pass", v.pass},
                     {"faces_checked", v.faces_checked}},
                    o, ok ? 0 : 3);
    }
    if (*eml) {
      const auto G = hdx::graph_from_json(hdx::load_json(graph_path));
      const auto spec = hdx::adjacency_spectrum(G);
      hdx::EmlStrategy strat;
      strat.exact_subset_limit = o.exact_subset_limit;
      strat.seed = hdx::derive_seed(o.seed, "eml");
      const auto r = hdx::eml_discrepancy(G, strat);
      Json j = {{"alpha", r.alpha}, {"alpha_full", r.alpha_full}, {"exact", r.exact}, {"pairs", r.pairs},
                {"S", r.S}, {"T", r.T}, {"lambda_two_sided", spec.two_sided}, {"lambda2", spec.one_sided}};
      if (spec.bipartite_lambda) {
        j["lambda_bipartite"] = *spec.bipartite_lambda;
        if (r.alpha > 0) j["converse_bound"] = hdx::converse_eml_bound(r.alpha);
      }
      return finish(j, o);
    }

    hdx::ExperimentSpec spec;
    if (*run) {
      spec = hdx::ExperimentSpec::from_json(hdx::load_json(spec_path), fs::absolute(spec_path).parent_path());
      if (o.seed != 0) spec.seed = o.seed;
      put_params(spec.params, o);
      return run_pipeline(spec, o);
    }
    spec.seed = o.seed;
    if (*prune || *family) {
      spec.pipeline = *prune ? "prune" : "cover-family";
      spec.inputs = {{"complex", input_ref(complex_path)}, {"group", input_ref(group_path)},
                     {"genset", input_ref(genset_path)}};
      if (max_index) spec.params["max_index"] = max_index;
    } else if (*combine) {
      spec.pipeline = "combine";
      spec.inputs = {{"complex", input_ref(complex_path)}, {"target", input_ref(target_path)}};
    } else if (*sparsify) {
      spec.pipeline = "sparsify";
      if (!graph_path.empty()) spec.inputs["graph"] = input_ref(graph_path);
      if (n) spec.params["complete_n"] = n;
      spec.params["p_split"] = p_split;
      spec.params["p_edge"] = p_edge;
    } else if (*scan) {
      spec.pipeline = "scan";
      spec.inputs["group"] = input_ref(group_path);
      spec.params["d"] = d;
      spec.params["top"] = top;
      spec.params["max_size"] = max_size;
      if (o.eta) spec.params["eta"] = *o.eta;
    }
    put_params(spec.params, o);
    return run_pipeline(spec, o);
  } catch (const hdx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
