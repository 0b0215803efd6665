#pragma once

// Packed coloring storage for exhaustive searches. Each edge stores the index
// of its color within its own list in a fixed number of bits, so single-color
// (frozen) edges cost nothing.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ecr/egraph.hpp"

namespace ecr {

class StateCodec {
 public:
  explicit StateCodec(const ColoredMultigraph& g);

  std::size_t words() const { return words_; }
  std::size_t num_edges() const { return fields_.size(); }

  void pack(std::span<const Color> f, std::uint64_t* out) const;
  void unpack(const std::uint64_t* in, Color* f) const;

 private:
  struct Field {
    std::uint32_t word;
    std::uint32_t shift;
    std::uint64_t mask;
    std::vector<Color> colors;     // list
    std::vector<std::uint8_t> index;  // color -> position in list
  };
  std::vector<Field> fields_;
  std::size_t words_ = 1;
};

/// Insert-only hash set of packed states; states are numbered in insertion order.
class StateSet {
 public:
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  explicit StateSet(std::size_t words);

  std::size_t size() const { return count_; }
  std::size_t words() const { return words_; }
  std::size_t bytes() const;

  /// Returns (index, inserted).
  std::pair<std::uint32_t, bool> insert(const std::uint64_t* state);
  std::uint32_t find(const std::uint64_t* state) const;

  const std::uint64_t* state(std::uint32_t i) const { return arena_.data() + std::size_t{i} * words_; }

 private:
  std::uint64_t hash(const std::uint64_t* s) const;
  bool equal(std::uint32_t i, const std::uint64_t* s) const;
  void grow();

  std::size_t words_;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> arena_;
  std::vector<std::uint32_t> table_;
  std::size_t mask_ = 0;
};

}  // namespace ecr
