#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hdx {

double binomial(int n, int k);
double factorial(int n);

/// Calls visit(pick) for every k-subset of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    visit(std::span<const std::size_t>(pick));
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

std::string face_to_string(std::span<const std::uint32_t> vertices);

/// Shortest round-trip decimal form; used wherever bytes must be stable.
std::string format_double(double x);

}  // namespace hdx
