#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hdx/complex.hpp"
#include "hdx/graph.hpp"
#include "hdx/pruning.hpp"
#include "hdx/rng.hpp"

namespace hdx {

/// Color (a vertex of C) per vertex of X, indexed by position in X.vertices().
using VertexColoring = std::vector<VertexId>;

/// Image has |face| distinct vertices forming a face of C. Throws NotAFace.
bool c_satisfied(const PureComplex& X, const PureComplex& C, const VertexColoring& f,
                 const Face& face);

struct CPruneResult {
  std::optional<PureComplex> Y;  // coloring measure when non-degenerate, else restricted X measure
  std::size_t satisfied_top = 0;
  bool degenerate = false;
  std::optional<Face> missing;   // a C top face without preimage
};

/// Keeps the satisfied top faces of X.
CPruneResult c_pruning(const PureComplex& X, const PureComplex& C, const VertexColoring& f);

struct CombineConfig {
  double lambda = 0.35;
  std::uint8_t kinds = 0x3;         // bit 0: AC, bit 1: NE
  std::size_t max_resamples = 0;    // 0: 10^4 * number of events
  bool log_scopes = true;
  std::size_t max_log_entries = 100000;
};

struct CombineLogEntry {
  std::size_t iteration = 0;
  EventRef event;
  std::vector<VertexId> scope;
  std::vector<VertexId> changed;
};

struct CombineOutcome {
  PruneStatus status = PruneStatus::BudgetExhausted;
  VertexColoring colors;
  CPruneResult pruned;
  std::vector<CombineLogEntry> log;
  bool log_truncated = false;
  std::size_t resamples = 0;
  std::size_t num_events = 0;
  std::size_t violated_at_end = 0;
  bool fail = false;  // clean but the coloring is degenerate
};

class CombineProblem {
 public:
  /// Throws InvalidArgument when the dimensions differ or d < 2.
  CombineProblem(const PureComplex& X, const PureComplex& C, CombineConfig config);

  const PureComplex& complex() const { return X_; }
  const PureComplex& target() const { return C_; }
  const CombineConfig& config() const { return config_; }
  const std::vector<EventRef>& events() const { return events_; }

  /// Throws BadKindForFace.
  bool evaluate(const EventRef& e, const VertexColoring& f) const;
  bool evaluate(std::size_t event_index, const VertexColoring& f) const;

  /// Vertex positions whose colors the event reads: tau and its link.
  const std::vector<std::uint32_t>& scope(std::size_t event_index) const;

  /// Satisfaction graph of tau colored into the link of f(tau) in C.
  SatisfactionGraph satisfaction(const Face& tau, const VertexColoring& f) const;

  /// Witness color for AC, if any.
  std::optional<VertexId> missing_color(const Face& tau, const VertexColoring& f) const;

  std::uint32_t vertex_position(VertexId v) const;

 private:
  const PureComplex& X_;
  const PureComplex& C_;
  CombineConfig config_;
  std::vector<VertexId> colors_;  // C(0)
  std::vector<EventRef> events_;
  std::vector<std::vector<std::uint32_t>> scopes_;
  std::map<Face, std::vector<VertexId>> link_vertices_;
  std::map<Face, std::vector<std::pair<VertexId, VertexId>>> link_edges_;
  std::map<Face, WGraph> target_links_;
};

CombineOutcome moser_tardos_combine(const CombineProblem& problem, Rng& rng);

struct CombineVerification {
  bool homomorphism = true;
  std::optional<Face> homomorphism_witness;
  bool non_degenerate = true;
  std::optional<Face> missing;
  bool hdx = true;
  double worst_lambda = 0.0;
  double threshold = 0.0;         // 2 lambda / (1 - 2 lambda), infinite when lambda >= 1/2
  double margin_headline = 0.0;   // threshold - worst
  double margin_claim = 0.0;      // 2 lambda / (1 - lambda) - worst
  bool connected = true;
  bool path_argument = true;
  std::size_t path_pairs = 0;
  bool fraction_positive = true;
  std::vector<double> fractions;
  bool pass() const {
    return homomorphism && non_degenerate && hdx && connected && path_argument && fraction_positive;
  }
};

CombineVerification verify_combine(const CombineOutcome& outcome, const PureComplex& X,
                                   const PureComplex& C, double lambda);

}  // namespace hdx
