#include "hohl/rng.hpp"

#include <stdexcept>

namespace hohl {

std::vector<int> Rng::sample_without_replacement(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("sample: need 0 <= k <= n");
  // partial Fisher-Yates over an index pool
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  std::vector<int> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(uniform_below(n - i));
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

std::uint64_t Rng::derive(std::uint64_t master, const std::string& tag,
                          std::uint64_t index) {
  // FNV-1a over the tag, then splitmix-fold with master and index
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  h = splitmix(h ^ splitmix(master));
  return splitmix(h ^ splitmix(index + 0x9E3779B97F4A7C15ULL));
}

}  // namespace hohl
