#include "hdx/util.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace hdx {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

std::string face_to_string(std::span<const std::uint32_t> vertices) {
  std::string s = "{";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(vertices[i]);
  }
  return s + "}";
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace hdx
