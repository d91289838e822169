#include "rectpencil/matrix.hpp"

namespace rectpencil {

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::vector<std::vector<std::size_t>> lex_subsets(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  if (r > n) return out;
  std::vector<std::size_t> cur(r);
  for (std::size_t i = 0; i < r; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = r;
    while (i > 0 && cur[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < r; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace rectpencil
