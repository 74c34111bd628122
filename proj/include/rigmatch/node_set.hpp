#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace rigmatch {

using NodeId = std::uint32_t;

// Sorted set of node ids stored as roaring-style chunked containers: an id is
// split into a 16-bit chunk key (high bits) and a 16-bit offset. A chunk holds
// either a sorted array of offsets or a 1024-word bitmap; the representation is
// canonical (bitmap iff more than kArrayMax members), so equal sets compare
// equal structurally. Intersection skips chunks present on only one side and
// works word-wise inside bitmap chunks.
class NodeSet {
 public:
  static constexpr std::uint32_t kArrayMax = 4096;

  NodeSet() = default;
  NodeSet(std::initializer_list<NodeId> ids);

  // The set {0, 1, ..., count - 1}.
  static NodeSet full_range(NodeId count);
  static const NodeSet& empty_set();

  void add(NodeId id);
  void remove(NodeId id);
  bool contains(NodeId id) const;
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  void clear();

  bool operator==(const NodeSet& other) const;
  bool operator!=(const NodeSet& other) const { return !(*this == other); }

  NodeSet& operator&=(const NodeSet& other);
  NodeSet& operator|=(const NodeSet& other);
  NodeSet& operator-=(const NodeSet& other);
  friend NodeSet operator&(const NodeSet& a, const NodeSet& b);
  friend NodeSet operator|(NodeSet a, const NodeSet& b) {
    a |= b;
    return a;
  }
  friend NodeSet operator-(NodeSet a, const NodeSet& b) {
    a -= b;
    return a;
  }

  // True iff the sets share an element; stops at the first hit.
  static bool intersects(const NodeSet& a, const NodeSet& b);
  // Smallest element of a ∩ b, if any; stops at the first hit.
  static std::optional<NodeId> first_common(const NodeSet& a, const NodeSet& b);
  // Multi-way intersection, folding smallest operands first.
  static NodeSet intersect_many(std::span<const NodeSet* const> sets);

  bool is_subset_of(const NodeSet& other) const;

  // Ascending visit; fn receives NodeId.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const Chunk& c : chunks_) {
      const NodeId base = static_cast<NodeId>(c.key) << 16;
      if (c.is_bitmap) {
        for (std::size_t w = 0; w < kWordsPerChunk; ++w) {
          std::uint64_t bits = c.bits[w];
          while (bits != 0) {
            const unsigned bit = static_cast<unsigned>(__builtin_ctzll(bits));
            fn(base + static_cast<NodeId>(w * 64 + bit));
            bits &= bits - 1;
          }
        }
      } else {
        for (std::uint16_t off : c.array) fn(base + off);
      }
    }
  }

  std::vector<NodeId> to_vector() const;
  NodeId first() const;  // precondition: !empty()

  class const_iterator {
   public:
    using value_type = NodeId;
    using difference_type = std::ptrdiff_t;

    const_iterator() = default;
    NodeId operator*() const { return value_; }
    const_iterator& operator++();
    const_iterator operator++(int) {
      const_iterator tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(const const_iterator& o) const {
      return chunk_ == o.chunk_ && pos_ == o.pos_;
    }
    bool operator!=(const const_iterator& o) const { return !(*this == o); }

   private:
    friend class NodeSet;
    const_iterator(const NodeSet* set, std::size_t chunk, std::uint32_t pos)
        : set_(set), chunk_(chunk), pos_(pos) {
      settle();
    }
    void settle();  // position on the current element or end

    const NodeSet* set_ = nullptr;
    std::size_t chunk_ = 0;
    std::uint32_t pos_ = 0;  // array index, or bit offset within the chunk
    NodeId value_ = 0;
  };

  const_iterator begin() const { return const_iterator(this, 0, 0); }
  const_iterator end() const { return const_iterator(this, chunks_.size(), 0); }

 private:
  static constexpr std::size_t kWordsPerChunk = 1024;  // 65536 bits

  struct Chunk {
    std::uint16_t key = 0;
    bool is_bitmap = false;
    std::uint32_t cardinality = 0;
    std::vector<std::uint16_t> array;
    std::vector<std::uint64_t> bits;
  };

  static Chunk intersect_chunks(const Chunk& a, const Chunk& b);
  static void union_into(Chunk& dst, const Chunk& src);
  static void subtract_from(Chunk& dst, const Chunk& src);
  static bool chunks_intersect(const Chunk& a, const Chunk& b);
  static bool chunk_subset(const Chunk& sub, const Chunk& super);
  static void to_bitmap(Chunk& c);
  static void to_array_if_small(Chunk& c);

  std::size_t find_chunk(std::uint16_t key) const;  // index or chunks_.size()
  Chunk& chunk_for_insert(std::uint16_t key);

  std::vector<Chunk> chunks_;  // sorted by key; no empty chunks
  std::size_t size_ = 0;
};

}  // namespace rigmatch
