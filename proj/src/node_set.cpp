#include "rigmatch/node_set.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace rigmatch {

namespace {

inline std::uint16_t key_of(NodeId id) { return static_cast<std::uint16_t>(id >> 16); }
inline std::uint16_t off_of(NodeId id) { return static_cast<std::uint16_t>(id & 0xffff); }

inline bool bit_test(const std::vector<std::uint64_t>& bits, std::uint16_t off) {
  return (bits[off >> 6] >> (off & 63)) & 1u;
}

inline void bit_set(std::vector<std::uint64_t>& bits, std::uint16_t off) {
  bits[off >> 6] |= std::uint64_t{1} << (off & 63);
}

inline void bit_clear(std::vector<std::uint64_t>& bits, std::uint16_t off) {
  bits[off >> 6] &= ~(std::uint64_t{1} << (off & 63));
}

}  // namespace

NodeSet::NodeSet(std::initializer_list<NodeId> ids) {
  for (NodeId id : ids) add(id);
}

NodeSet NodeSet::full_range(NodeId count) {
  NodeSet s;
  NodeId next = 0;
  while (next < count) {
    const NodeId in_chunk = std::min<NodeId>(count - next, 65536u - (next & 0xffff));
    Chunk c;
    c.key = key_of(next);
    c.cardinality = in_chunk;
    if (in_chunk > kArrayMax) {
      c.is_bitmap = true;
      c.bits.assign(kWordsPerChunk, 0);
      for (NodeId i = 0; i < in_chunk; ++i) bit_set(c.bits, static_cast<std::uint16_t>(i));
    } else {
      c.array.resize(in_chunk);
      for (NodeId i = 0; i < in_chunk; ++i) c.array[i] = static_cast<std::uint16_t>(i);
    }
    s.chunks_.push_back(std::move(c));
    s.size_ += in_chunk;
    next += in_chunk;
  }
  return s;
}

const NodeSet& NodeSet::empty_set() {
  static const NodeSet empty;
  return empty;
}

std::size_t NodeSet::find_chunk(std::uint16_t key) const {
  auto it = std::lower_bound(chunks_.begin(), chunks_.end(), key,
                             [](const Chunk& c, std::uint16_t k) { return c.key < k; });
  if (it == chunks_.end() || it->key != key) return chunks_.size();
  return static_cast<std::size_t>(it - chunks_.begin());
}

NodeSet::Chunk& NodeSet::chunk_for_insert(std::uint16_t key) {
  auto it = std::lower_bound(chunks_.begin(), chunks_.end(), key,
                             [](const Chunk& c, std::uint16_t k) { return c.key < k; });
  if (it != chunks_.end() && it->key == key) return *it;
  Chunk c;
  c.key = key;
  return *chunks_.insert(it, std::move(c));
}

void NodeSet::to_bitmap(Chunk& c) {
  if (c.is_bitmap) return;
  c.bits.assign(kWordsPerChunk, 0);
  for (std::uint16_t off : c.array) bit_set(c.bits, off);
  c.array.clear();
  c.array.shrink_to_fit();
  c.is_bitmap = true;
}

void NodeSet::to_array_if_small(Chunk& c) {
  if (!c.is_bitmap || c.cardinality > kArrayMax) return;
  std::vector<std::uint16_t> arr;
  arr.reserve(c.cardinality);
  for (std::size_t w = 0; w < kWordsPerChunk; ++w) {
    std::uint64_t bits = c.bits[w];
    while (bits != 0) {
      const unsigned bit = static_cast<unsigned>(std::countr_zero(bits));
      arr.push_back(static_cast<std::uint16_t>(w * 64 + bit));
      bits &= bits - 1;
    }
  }
  c.array = std::move(arr);
  c.bits.clear();
  c.bits.shrink_to_fit();
  c.is_bitmap = false;
}

void NodeSet::add(NodeId id) {
  Chunk& c = chunk_for_insert(key_of(id));
  const std::uint16_t off = off_of(id);
  if (c.is_bitmap) {
    if (bit_test(c.bits, off)) return;
    bit_set(c.bits, off);
  } else {
    auto it = std::lower_bound(c.array.begin(), c.array.end(), off);
    if (it != c.array.end() && *it == off) return;
    c.array.insert(it, off);
    if (c.array.size() > kArrayMax) to_bitmap(c);
  }
  ++c.cardinality;
  ++size_;
}

void NodeSet::remove(NodeId id) {
  const std::size_t ci = find_chunk(key_of(id));
  if (ci == chunks_.size()) return;
  Chunk& c = chunks_[ci];
  const std::uint16_t off = off_of(id);
  if (c.is_bitmap) {
    if (!bit_test(c.bits, off)) return;
    bit_clear(c.bits, off);
    --c.cardinality;
    to_array_if_small(c);
  } else {
    auto it = std::lower_bound(c.array.begin(), c.array.end(), off);
    if (it == c.array.end() || *it != off) return;
    c.array.erase(it);
    --c.cardinality;
  }
  --size_;
  if (c.cardinality == 0) chunks_.erase(chunks_.begin() + static_cast<std::ptrdiff_t>(ci));
}

bool NodeSet::contains(NodeId id) const {
  const std::size_t ci = find_chunk(key_of(id));
  if (ci == chunks_.size()) return false;
  const Chunk& c = chunks_[ci];
  const std::uint16_t off = off_of(id);
  if (c.is_bitmap) return bit_test(c.bits, off);
  return std::binary_search(c.array.begin(), c.array.end(), off);
}

void NodeSet::clear() {
  chunks_.clear();
  size_ = 0;
}

bool NodeSet::operator==(const NodeSet& other) const {
  if (size_ != other.size_ || chunks_.size() != other.chunks_.size()) return false;
  for (std::size_t i = 0; i < chunks_.size(); ++i) {
    const Chunk& a = chunks_[i];
    const Chunk& b = other.chunks_[i];
    if (a.key != b.key || a.cardinality != b.cardinality || a.is_bitmap != b.is_bitmap)
      return false;
    if (a.is_bitmap ? (a.bits != b.bits) : (a.array != b.array)) return false;
  }
  return true;
}

NodeSet::Chunk NodeSet::intersect_chunks(const Chunk& a, const Chunk& b) {
  Chunk out;
  out.key = a.key;
  if (a.is_bitmap && b.is_bitmap) {
    out.bits.resize(kWordsPerChunk);
    std::uint32_t card = 0;
    for (std::size_t w = 0; w < kWordsPerChunk; ++w) {
      out.bits[w] = a.bits[w] & b.bits[w];
      card += static_cast<std::uint32_t>(std::popcount(out.bits[w]));
    }
    out.cardinality = card;
    out.is_bitmap = true;
    to_array_if_small(out);
    return out;
  }
  if (!a.is_bitmap && !b.is_bitmap) {
    const std::vector<std::uint16_t>& small = a.array.size() <= b.array.size() ? a.array : b.array;
    const std::vector<std::uint16_t>& large = a.array.size() <= b.array.size() ? b.array : a.array;
    // Galloping pays off only on skewed sizes.
    if (large.size() / (small.size() + 1) >= 32) {
      for (std::uint16_t v : small)
        if (std::binary_search(large.begin(), large.end(), v)) out.array.push_back(v);
    } else {
      out.array.reserve(small.size());
      std::set_intersection(small.begin(), small.end(), large.begin(), large.end(),
                            std::back_inserter(out.array));
    }
  } else {
    const Chunk& arr = a.is_bitmap ? b : a;
    const Chunk& map = a.is_bitmap ? a : b;
    for (std::uint16_t v : arr.array)
      if (bit_test(map.bits, v)) out.array.push_back(v);
  }
  out.cardinality = static_cast<std::uint32_t>(out.array.size());
  return out;
}

NodeSet& NodeSet::operator&=(const NodeSet& other) {
  *this = *this & other;
  return *this;
}

NodeSet operator&(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::size_t i = 0, j = 0;
  while (i < a.chunks_.size() && j < b.chunks_.size()) {
    const auto& ca = a.chunks_[i];
    const auto& cb = b.chunks_[j];
    if (ca.key < cb.key) {
      ++i;
    } else if (cb.key < ca.key) {
      ++j;
    } else {
      NodeSet::Chunk c = NodeSet::intersect_chunks(ca, cb);
      if (c.cardinality > 0) {
        out.size_ += c.cardinality;
        out.chunks_.push_back(std::move(c));
      }
      ++i;
      ++j;
    }
  }
  return out;
}

void NodeSet::union_into(Chunk& dst, const Chunk& src) {
  if (!dst.is_bitmap && !src.is_bitmap &&
      dst.array.size() + src.array.size() <= kArrayMax) {
    std::vector<std::uint16_t> merged;
    merged.reserve(dst.array.size() + src.array.size());
    std::set_union(dst.array.begin(), dst.array.end(), src.array.begin(), src.array.end(),
                   std::back_inserter(merged));
    dst.array = std::move(merged);
    dst.cardinality = static_cast<std::uint32_t>(dst.array.size());
    return;
  }
  to_bitmap(dst);
  std::uint32_t card = 0;
  if (src.is_bitmap) {
    for (std::size_t w = 0; w < kWordsPerChunk; ++w) {
      dst.bits[w] |= src.bits[w];
      card += static_cast<std::uint32_t>(std::popcount(dst.bits[w]));
    }
  } else {
    for (std::uint16_t v : src.array) bit_set(dst.bits, v);
    for (std::size_t w = 0; w < kWordsPerChunk; ++w)
      card += static_cast<std::uint32_t>(std::popcount(dst.bits[w]));
  }
  dst.cardinality = card;
  to_array_if_small(dst);
}

NodeSet& NodeSet::operator|=(const NodeSet& other) {
  if (this == &other) return *this;
  std::vector<Chunk> merged;
  merged.reserve(chunks_.size() + other.chunks_.size());
  std::size_t i = 0, j = 0;
  std::size_t total = 0;
  while (i < chunks_.size() || j < other.chunks_.size()) {
    if (j == other.chunks_.size() ||
        (i < chunks_.size() && chunks_[i].key < other.chunks_[j].key)) {
      total += chunks_[i].cardinality;
      merged.push_back(std::move(chunks_[i++]));
    } else if (i == chunks_.size() || other.chunks_[j].key < chunks_[i].key) {
      total += other.chunks_[j].cardinality;
      merged.push_back(other.chunks_[j++]);
    } else {
      Chunk c = std::move(chunks_[i++]);
      union_into(c, other.chunks_[j++]);
      total += c.cardinality;
      merged.push_back(std::move(c));
    }
  }
  chunks_ = std::move(merged);
  size_ = total;
  return *this;
}

void NodeSet::subtract_from(Chunk& dst, const Chunk& src) {
  if (dst.is_bitmap) {
    std::uint32_t card = 0;
    if (src.is_bitmap) {
      for (std::size_t w = 0; w < kWordsPerChunk; ++w) {
        dst.bits[w] &= ~src.bits[w];
        card += static_cast<std::uint32_t>(std::popcount(dst.bits[w]));
      }
    } else {
      for (std::uint16_t v : src.array) bit_clear(dst.bits, v);
      for (std::size_t w = 0; w < kWordsPerChunk; ++w)
        card += static_cast<std::uint32_t>(std::popcount(dst.bits[w]));
    }
    dst.cardinality = card;
    to_array_if_small(dst);
    return;
  }
  std::vector<std::uint16_t> kept;
  kept.reserve(dst.array.size());
  if (src.is_bitmap) {
    for (std::uint16_t v : dst.array)
      if (!bit_test(src.bits, v)) kept.push_back(v);
  } else {
    std::set_difference(dst.array.begin(), dst.array.end(), src.array.begin(), src.array.end(),
                        std::back_inserter(kept));
  }
  dst.array = std::move(kept);
  dst.cardinality = static_cast<std::uint32_t>(dst.array.size());
}

NodeSet& NodeSet::operator-=(const NodeSet& other) {
  std::size_t total = 0;
  std::vector<Chunk> kept;
  kept.reserve(chunks_.size());
  std::size_t j = 0;
  for (Chunk& c : chunks_) {
    while (j < other.chunks_.size() && other.chunks_[j].key < c.key) ++j;
    if (j < other.chunks_.size() && other.chunks_[j].key == c.key)
      subtract_from(c, other.chunks_[j]);
    if (c.cardinality > 0) {
      total += c.cardinality;
      kept.push_back(std::move(c));
    }
  }
  chunks_ = std::move(kept);
  size_ = total;
  return *this;
}

bool NodeSet::chunks_intersect(const Chunk& a, const Chunk& b) {
  if (a.is_bitmap && b.is_bitmap) {
    for (std::size_t w = 0; w < kWordsPerChunk; ++w)
      if ((a.bits[w] & b.bits[w]) != 0) return true;
    return false;
  }
  if (!a.is_bitmap && !b.is_bitmap) {
    std::size_t i = 0, j = 0;
    while (i < a.array.size() && j < b.array.size()) {
      if (a.array[i] < b.array[j])
        ++i;
      else if (b.array[j] < a.array[i])
        ++j;
      else
        return true;
    }
    return false;
  }
  const Chunk& arr = a.is_bitmap ? b : a;
  const Chunk& map = a.is_bitmap ? a : b;
  for (std::uint16_t v : arr.array)
    if (bit_test(map.bits, v)) return true;
  return false;
}

bool NodeSet::intersects(const NodeSet& a, const NodeSet& b) {
  std::size_t i = 0, j = 0;
  while (i < a.chunks_.size() && j < b.chunks_.size()) {
    if (a.chunks_[i].key < b.chunks_[j].key)
      ++i;
    else if (b.chunks_[j].key < a.chunks_[i].key)
      ++j;
    else if (chunks_intersect(a.chunks_[i], b.chunks_[j]))
      return true;
    else {
      ++i;
      ++j;
    }
  }
  return false;
}

std::optional<NodeId> NodeSet::first_common(const NodeSet& a, const NodeSet& b) {
  std::size_t i = 0, j = 0;
  while (i < a.chunks_.size() && j < b.chunks_.size()) {
    const Chunk& ca = a.chunks_[i];
    const Chunk& cb = b.chunks_[j];
    if (ca.key < cb.key) {
      ++i;
      continue;
    }
    if (cb.key < ca.key) {
      ++j;
      continue;
    }
    const NodeId base = static_cast<NodeId>(ca.key) << 16;
    if (ca.is_bitmap && cb.is_bitmap) {
      for (std::size_t w = 0; w < kWordsPerChunk; ++w) {
        const std::uint64_t common = ca.bits[w] & cb.bits[w];
        if (common != 0)
          return base + static_cast<NodeId>(w * 64 +
                                            static_cast<unsigned>(std::countr_zero(common)));
      }
    } else if (!ca.is_bitmap && !cb.is_bitmap) {
      std::size_t p = 0, r = 0;
      while (p < ca.array.size() && r < cb.array.size()) {
        if (ca.array[p] < cb.array[r])
          ++p;
        else if (cb.array[r] < ca.array[p])
          ++r;
        else
          return base + ca.array[p];
      }
    } else {
      const Chunk& arr = ca.is_bitmap ? cb : ca;
      const Chunk& map = ca.is_bitmap ? ca : cb;
      for (std::uint16_t v : arr.array)
        if (bit_test(map.bits, v)) return base + v;
    }
    ++i;
    ++j;
  }
  return std::nullopt;
}

bool NodeSet::chunk_subset(const Chunk& sub, const Chunk& super) {
  if (sub.cardinality > super.cardinality) return false;
  if (super.is_bitmap) {
    if (sub.is_bitmap) {
      for (std::size_t w = 0; w < kWordsPerChunk; ++w)
        if ((sub.bits[w] & ~super.bits[w]) != 0) return false;
      return true;
    }
    for (std::uint16_t v : sub.array)
      if (!bit_test(super.bits, v)) return false;
    return true;
  }
  // super is an array; canonical form means sub is an array too.
  return std::includes(super.array.begin(), super.array.end(), sub.array.begin(),
                       sub.array.end());
}

bool NodeSet::is_subset_of(const NodeSet& other) const {
  if (size_ > other.size_) return false;
  std::size_t j = 0;
  for (const Chunk& c : chunks_) {
    while (j < other.chunks_.size() && other.chunks_[j].key < c.key) ++j;
    if (j == other.chunks_.size() || other.chunks_[j].key != c.key) return false;
    if (!chunk_subset(c, other.chunks_[j])) return false;
  }
  return true;
}

NodeSet NodeSet::intersect_many(std::span<const NodeSet* const> sets) {
  if (sets.empty()) return NodeSet();
  std::vector<const NodeSet*> order(sets.begin(), sets.end());
  std::sort(order.begin(), order.end(),
            [](const NodeSet* a, const NodeSet* b) { return a->size() < b->size(); });
  NodeSet out = *order.front();
  for (std::size_t i = 1; i < order.size() && !out.empty(); ++i) out &= *order[i];
  return out;
}

std::vector<NodeId> NodeSet::to_vector() const {
  std::vector<NodeId> out;
  out.reserve(size_);
  for_each([&](NodeId id) { out.push_back(id); });
  return out;
}

NodeId NodeSet::first() const {
  assert(!empty());
  const Chunk& c = chunks_.front();
  const NodeId base = static_cast<NodeId>(c.key) << 16;
  if (!c.is_bitmap) return base + c.array.front();
  for (std::size_t w = 0; w < kWordsPerChunk; ++w)
    if (c.bits[w] != 0)
      return base + static_cast<NodeId>(w * 64 + static_cast<unsigned>(std::countr_zero(c.bits[w])));
  return base;  // unreachable for canonical chunks
}

void NodeSet::const_iterator::settle() {
  while (chunk_ < set_->chunks_.size()) {
    const Chunk& c = set_->chunks_[chunk_];
    const NodeId base = static_cast<NodeId>(c.key) << 16;
    if (!c.is_bitmap) {
      if (pos_ < c.array.size()) {
        value_ = base + c.array[pos_];
        return;
      }
    } else {
      std::uint32_t off = pos_;
      while (off < 65536) {
        const std::size_t w = off >> 6;
        std::uint64_t bits = c.bits[w] >> (off & 63);
        if (bits != 0) {
          off += static_cast<std::uint32_t>(std::countr_zero(bits));
          pos_ = off;
          value_ = base + off;
          return;
        }
        off = static_cast<std::uint32_t>((w + 1) * 64);
      }
    }
    ++chunk_;
    pos_ = 0;
  }
  pos_ = 0;  // canonical end state
}

NodeSet::const_iterator& NodeSet::const_iterator::operator++() {
  const Chunk& c = set_->chunks_[chunk_];
  if (!c.is_bitmap) {
    ++pos_;
  } else if (pos_ == 65535) {
    ++chunk_;
    pos_ = 0;
    settle();
    return *this;
  } else {
    ++pos_;
  }
  settle();
  return *this;
}

}  // namespace rigmatch
