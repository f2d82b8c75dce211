#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hdx/complex.hpp"
#include "hdx/graph.hpp"
#include "hdx/group.hpp"
#include "hdx/labeling.hpp"
#include "hdx/rng.hpp"

namespace hdx {

/// Generator index (into S) per edge position of X(1).
using Labeling = std::vector<std::uint32_t>;

Labeling sample_labeling(const PureComplex& X, std::size_t m, Rng& rng);

/// Group element per edge.
std::vector<Element> label_elements(const GenSet& S, const Labeling& f);

struct PrunedComplex {
  std::optional<PureComplex> complex;  // restricted top measure, renormalized
  std::size_t satisfied_top = 0;
  bool empty() const { return !complex.has_value(); }
};

/// Keeps the satisfied top faces of X; lower faces are their subfaces.
PrunedComplex f_pruning(const PureComplex& X, const GroupTable& G, std::span<const Element> f);

/// Skeletons of links of C(G,S) through the identity, keyed by face.
class TargetLinks {
 public:
  TargetLinks(const PureComplex& C, int max_level);
  /// Skeleton of the link of `a` in C, or nullptr when a is not a face of C
  /// of a cached level.
  const WGraph* find(const Face& a) const;

 private:
  std::map<Face, WGraph> graphs_;
};

struct SatisfactionGraph {
  Face base;
  std::vector<VertexId> vertices;  // satisfied link vertices, sorted
  std::vector<LabeledEdge> edges;  // satisfied link edges with link measure
  std::vector<Element> colors;     // psi(v) per vertex
  Face target;                     // identity plus labels from min(base)
  std::optional<WGraph> graph;     // carries the coloring measure
  std::string failure;             // isolated vertex, degenerate coloring, ...
  bool ok() const { return graph.has_value(); }
};

/// Throws UnsatisfiedBase when base is not satisfied, NotAFace. For the
/// empty base the graph is the 1-skeleton with its own measure.
SatisfactionGraph satisfaction_graph(const PureComplex& X, const EdgeIndex& edges,
                                     const GroupTable& G, std::span<const Element> f,
                                     const Face& base, const TargetLinks& targets);

enum class EventKind : std::uint8_t { AT = 0, NE = 1, BC = 2, AC = 3 };
const char* to_string(EventKind k);

enum EventMask : std::uint8_t {
  kEventAT = 1,
  kEventNE = 2,
  kEventBC = 4,
  kEventAll = 7,
};

struct PruneConfig {
  double lambda = 0.5;
  double r = 1.5;
  double c = 1.1;
  double eta = 0.25;
  std::optional<double> ne_threshold;  // default lambda / 2
  std::uint8_t kinds = kEventAll;
  std::optional<int> at_max_level;     // default d - 1
  std::size_t max_resamples = 0;       // 0: 10^4 * number of events
  bool log_scopes = true;
  std::size_t max_log_entries = 100000;

  double ne() const { return ne_threshold.value_or(lambda / 2.0); }
};

struct EventRef {
  EventKind kind;
  Face face;
  auto operator<=>(const EventRef&) const = default;
};

struct LogEntry {
  std::size_t iteration = 0;
  EventRef event;
  std::vector<std::uint32_t> scope;    // resampled edge positions
  std::vector<std::uint32_t> changed;  // edges whose label changed
};

enum class PruneStatus { Clean, BudgetExhausted };
const char* to_string(PruneStatus s);

struct PruneOutcome {
  PruneStatus status = PruneStatus::BudgetExhausted;
  Labeling labels;
  std::vector<Element> elements;
  std::optional<PureComplex> Y;          // f-pruning with restricted measure
  std::optional<PureComplex> Y_measured; // pruned measure, when measurable
  std::string unmeasurable;              // witness when not
  std::vector<LogEntry> log;
  bool log_truncated = false;
  std::size_t resamples = 0;
  std::size_t num_events = 0;
  std::size_t violated_at_end = 0;
  std::map<EventKind, std::size_t> violated_by_kind;
};

/// Event evaluation over a fixed complex, group and generator set.
class PruneProblem {
 public:
  PruneProblem(const PureComplex& X, const GroupTable& G, const GenSet& S, PruneConfig config);

  const PureComplex& complex() const { return X_; }
  const PureComplex& cayley() const { return C_; }
  const GroupTable& group() const { return G_; }
  const GenSet& gens() const { return S_; }
  const EdgeIndex& edge_index() const { return edges_; }
  const TargetLinks& targets() const { return targets_; }
  const PruneConfig& config() const { return config_; }

  /// Every event in selection order.
  const std::vector<EventRef>& events() const { return events_; }

  /// Throws BadKindForFace.
  bool evaluate(const EventRef& e, const Labeling& f) const;
  bool evaluate(std::size_t event_index, const Labeling& f) const;

  /// Edges the event reads; resampling an event redraws exactly these.
  const std::vector<std::uint32_t>& read_set(std::size_t event_index) const;
  std::vector<std::uint32_t> read_set(const EventRef& e) const;

  /// Directed label as a generator index.
  std::uint32_t dir_index(const Labeling& f, VertexId u, VertexId v) const;

  /// Probability of each generator tuple among the link vertices of tau.
  std::vector<double> tuple_distribution(const Face& tau, const Labeling& f) const;

  SatisfactionGraph satisfaction(const Face& base, const Labeling& f) const;

 private:
  bool eval_at(const Face& tau, const Labeling& f) const;
  bool eval_ne(const Face& tau, const Labeling& f) const;
  bool eval_bc(const Face& tau, const Labeling& f) const;
  std::size_t face_slot(const Face& tau) const;

  const PureComplex& X_;
  const GroupTable& G_;
  GenSet S_;
  PruneConfig config_;
  PureComplex C_;
  EdgeIndex edges_;
  TargetLinks targets_;
  std::vector<std::uint32_t> inverse_;
  std::vector<EventRef> events_;
  std::vector<std::vector<std::uint32_t>> read_sets_;
  // per face with any event: link vertices and their normalized link measure
  std::map<Face, std::size_t> slots_;
  std::vector<std::vector<VertexId>> link_vertices_;
  std::vector<std::vector<double>> link_vertex_measure_;
  std::vector<std::vector<std::pair<VertexId, VertexId>>> link_edges_;
  std::vector<std::vector<double>> link_edge_measure_;
};

struct ScopeReport {
  std::vector<std::uint32_t> edges;  // conservative scope
  std::size_t neighbor_faces = 0;    // event faces whose scopes meet this one
  double bound = 0.0;                // d 2^d Q (1 + R + R^2)
  bool within_bound = true;
};

/// Conservative scope of tau: edges meeting tau or with an endpoint in the
/// link of tau. Counts event faces (levels 0..d-1) with intersecting scopes.
ScopeReport dependency_scope(const PureComplex& X, const Face& tau);

PruneOutcome moser_tardos_prune(const PruneProblem& problem, Rng& rng);

struct PrunedMeasure {
  PureComplex complex;
  double raw_total = 0.0;  // mass before the final renormalization
};

/// Measure on the satisfied top faces: draw an oriented top face of the
/// identity link of C, then a top face of Y with that label pattern in
/// proportion to the X measure. Throws Unmeasurable.
PrunedMeasure pruned_measure(const PureComplex& Y, const PureComplex& X, const EdgeIndex& edges,
                           const GroupTable& G, std::span<const Element> f,
                           const PureComplex& C);

struct RatioAudit {
  Face base;
  double max_ratio = 1.0;
  double bound = 0.0;
  bool pass = true;
  std::string witness;
};

/// Compares link vertex and edge measures of Y_sigma (from the pruned
/// measure) with the satisfaction graph's coloring measure.
RatioAudit measure_ratio_audit(const PureComplex& Y_measured, const PruneProblem& problem,
                               const Labeling& f, const Face& sigma);

/// |Y(l)| / |X(l)| for l = 0..d.
std::vector<double> face_fractions(const PureComplex& Y, const PureComplex& X);

}  // namespace hdx
