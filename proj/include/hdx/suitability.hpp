#pragma once

#include <optional>
#include <string>

#include "hdx/complex.hpp"

namespace hdx {

struct SuitabilityReport {
  double c = 0.0, r = 0.0, eta = 0.0;
  // (1) eta-two-sided HDX
  bool hdx = true;
  double hdx_worst = 0.0;
  Face hdx_witness;
  // (2) link skeleton degrees >= c (1 + ln Q)
  bool degree = true;
  std::size_t Q = 0;
  double degree_bound = 0.0;
  std::size_t min_degree = 0;
  std::optional<Face> degree_witness;
  // (3) link weights within a factor r of uniform
  bool weights = true;
  double worst_weight_ratio = 1.0;
  std::optional<Face> weight_witness;
  std::string log_base = "natural";

  bool pass() const { return hdx && degree && weights; }
};

/// Throws InvalidArgument unless c > 1, r > 1, eta > 0 and d >= 2.
SuitabilityReport check_suitable(const PureComplex& X, double c, double r, double eta);

}  // namespace hdx
