#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace wsn {

/// Symmetric 0/1 matrix with zero diagonal. Indices are 0-based; node ids in
/// logs and exports are index + 1.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t size() const { return n_; }

  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }

  /// Sets both (i, j) and (j, i). Self loops are ignored.
  void set(std::size_t i, std::size_t j, bool on = true) {
    if (i == j) return;
    const std::uint8_t v = on ? 1 : 0;
    bits_[i * n_ + j] = v;
    bits_[j * n_ + i] = v;
  }

  int degree(std::size_t i) const {
    int d = 0;
    for (std::size_t j = 0; j < n_; ++j) d += bits_[i * n_ + j];
    return d;
  }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (std::uint8_t b : bits_) m += b;
    return m / 2;
  }

  std::vector<int> neighbors(std::size_t i) const {
    std::vector<int> out;
    for (std::size_t j = 0; j < n_; ++j) {
      if (bits_[i * n_ + j]) out.push_back(static_cast<int>(j));
    }
    return out;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (bits_[i * n_ + i]) return false;
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (bits_[i * n_ + j] != bits_[j * n_ + i]) return false;
      }
    }
    return true;
  }

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

}  // namespace wsn
