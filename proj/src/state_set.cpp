#include "ecr/state_set.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

namespace ecr {

StateCodec::StateCodec(const ColoredMultigraph& g) {
  std::uint32_t bit = 0;
  fields_.reserve(g.num_edges());
  for (const Edge& e : g.edges()) {
    Field f;
    f.colors = e.list;
    f.index.assign(kMaxColors + 1, 0);
    for (std::size_t i = 0; i < e.list.size(); ++i) f.index[e.list[i]] = static_cast<std::uint8_t>(i);
    const std::uint32_t width =
        e.list.size() <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(e.list.size() - 1));
    if (width > 0 && (bit % 64) + width > 64) bit = (bit / 64 + 1) * 64;
    f.word = bit / 64;
    f.shift = bit % 64;
    f.mask = width == 0 ? 0 : ((std::uint64_t{1} << width) - 1);
    bit += width;
    fields_.push_back(std::move(f));
  }
  words_ = std::max<std::size_t>(1, (bit + 63) / 64);
}

void StateCodec::pack(std::span<const Color> f, std::uint64_t* out) const {
  std::memset(out, 0, words_ * sizeof(std::uint64_t));
  for (std::size_t e = 0; e < fields_.size(); ++e) {
    const Field& fd = fields_[e];
    if (fd.mask == 0) continue;
    out[fd.word] |= std::uint64_t{fd.index[f[e]]} << fd.shift;
  }
}

void StateCodec::unpack(const std::uint64_t* in, Color* f) const {
  for (std::size_t e = 0; e < fields_.size(); ++e) {
    const Field& fd = fields_[e];
    f[e] = fd.mask == 0 ? fd.colors[0] : fd.colors[(in[fd.word] >> fd.shift) & fd.mask];
  }
}

StateSet::StateSet(std::size_t words) : words_(words) {
  table_.assign(1024, kNone);
  mask_ = table_.size() - 1;
}

std::size_t StateSet::bytes() const {
  return arena_.capacity() * sizeof(std::uint64_t) + table_.size() * sizeof(std::uint32_t);
}

std::uint64_t StateSet::hash(const std::uint64_t* s) const {
  std::uint64_t h = 0x9E3779B97F4A7C15ull * (words_ + 1);
  for (std::size_t i = 0; i < words_; ++i) {
    std::uint64_t x = s[i] + h;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    h = x ^ (x >> 31);
  }
  return h;
}

bool StateSet::equal(std::uint32_t i, const std::uint64_t* s) const {
  return std::memcmp(state(i), s, words_ * sizeof(std::uint64_t)) == 0;
}

std::uint32_t StateSet::find(const std::uint64_t* s) const {
  for (std::size_t slot = hash(s) & mask_;; slot = (slot + 1) & mask_) {
    const std::uint32_t idx = table_[slot];
    if (idx == kNone) return kNone;
    if (equal(idx, s)) return idx;
  }
}

void StateSet::grow() {
  std::vector<std::uint32_t> bigger(table_.size() * 2, kNone);
  const std::size_t mask = bigger.size() - 1;
  for (std::uint32_t idx : table_) {
    if (idx == kNone) continue;
    std::size_t slot = hash(state(idx)) & mask;
    while (bigger[slot] != kNone) slot = (slot + 1) & mask;
    bigger[slot] = idx;
  }
  table_ = std::move(bigger);
  mask_ = mask;
}

std::pair<std::uint32_t, bool> StateSet::insert(const std::uint64_t* s) {
  if ((count_ + 1) * 2 > table_.size()) grow();
  std::size_t slot = hash(s) & mask_;
  for (;; slot = (slot + 1) & mask_) {
    const std::uint32_t idx = table_[slot];
    if (idx == kNone) break;
    if (equal(idx, s)) return {idx, false};
  }
  const auto idx = static_cast<std::uint32_t>(count_);
  arena_.insert(arena_.end(), s, s + words_);
  table_[slot] = idx;
  ++count_;
  return {idx, true};
}

}  // namespace ecr
