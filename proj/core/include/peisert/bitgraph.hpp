#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace peisert {

/// Dense undirected graph stored as one bit row per vertex.
class BitGraph {
 public:
  BitGraph() = default;
  explicit BitGraph(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }

  void add_edge(std::size_t u, std::size_t v) {
    set(u, v);
    set(v, u);
  }
  bool test(std::size_t u, std::size_t v) const {
    return (bits_[u * words_ + v / 64] >> (v % 64)) & 1u;
  }
  std::span<const std::uint64_t> row(std::size_t u) const {
    return {bits_.data() + u * words_, words_};
  }
  std::size_t degree(std::size_t u) const {
    std::size_t d = 0;
    for (auto w : row(u)) d += static_cast<std::size_t>(std::popcount(w));
    return d;
  }
  std::size_t common(std::size_t u, std::size_t v) const {
    const auto a = row(u);
    const auto b = row(v);
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_; ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return c;
  }

  friend bool operator==(const BitGraph&, const BitGraph&) = default;

 private:
  void set(std::size_t u, std::size_t v) { bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64); }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace peisert
