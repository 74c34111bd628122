#include "rigmatch/mjoin.hpp"

#include <algorithm>
#include <vector>

namespace rigmatch {

namespace {

class Enumerator {
 public:
  Enumerator(const PatternQuery& q, const RuntimeIndexGraph& rig, const SearchOrder& order,
             const EnumLimits& limits, const TupleSink* sink)
      : q_(q), rig_(rig), order_(order.sequence), limits_(limits), sink_(sink) {
    const std::size_t n = order_.size();
    tuple_.assign(n, 0);
    position_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) position_[order_[i]] = static_cast<std::uint32_t>(i);

    // Per level, the RIG rows to intersect: edges whose other endpoint is
    // already bound. dir is the row direction taken from the bound node.
    constraints_.resize(n);
    for (std::uint32_t ei = 0; ei < q.edges().size(); ++ei) {
      const QueryEdge& e = q.edges()[ei];
      const std::uint32_t pt = position_[e.tail];
      const std::uint32_t ph = position_[e.head];
      if (pt < ph)
        constraints_[ph].push_back({ei, e.tail, Direction::forward});
      else
        constraints_[pt].push_back({ei, e.head, Direction::backward});
    }
    if (limits_.max_matches && *limits_.max_matches == 0) probing_ = true;
  }

  EnumReport run() {
    const auto start = std::chrono::steady_clock::now();
    if (limits_.timeout) deadline_ = start + *limits_.timeout;
    if (!rig_.empty() && !order_.empty()) {
      check_clock();
      if (!stop_) descend(0);
    }
    EnumReport report;
    report.matches = matches_;
    report.completed = !truncated_;
    report.peak_candidate_cells = peak_cells_;
    report.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - start);
    return report;
  }

 private:
  struct Constraint {
    std::uint32_t edge_index;
    std::uint32_t bound_qid;
    Direction dir;
  };

  void check_clock() {
    if (deadline_ && std::chrono::steady_clock::now() >= *deadline_) {
      stop_ = true;
      truncated_ = true;
    }
  }

  void emit() {
    if (probing_) {
      // One more occurrence exists beyond max_matches: the answer is truncated.
      truncated_ = true;
      stop_ = true;
      return;
    }
    if (sink_ && !(*sink_)(std::span<const NodeId>(tuple_))) {
      truncated_ = true;
      stop_ = true;
      return;
    }
    ++matches_;
    if (limits_.max_matches && matches_ == *limits_.max_matches) probing_ = true;
  }

  void descend(std::size_t level) {
    if ((++entries_ & 0xfff) == 0) check_clock();
    if (stop_) return;
    if (level == order_.size()) {
      emit();
      return;
    }
    const std::uint32_t qid = order_[level];

    NodeSet cos_i;
    {
      std::vector<const NodeSet*> operands;
      operands.reserve(constraints_[level].size() + 1);
      operands.push_back(&rig_.cos(qid));
      for (const Constraint& c : constraints_[level]) {
        const NodeSet* row = rig_.row(c.edge_index, tuple_[c.bound_qid], c.dir);
        if (row == nullptr) return;
        operands.push_back(row);
      }
      cos_i = NodeSet::intersect_many(operands);
    }
    if (cos_i.empty()) return;

    live_cells_ += cos_i.size();
    peak_cells_ = std::max(peak_cells_, live_cells_);
    for (NodeId v : cos_i) {
      if (stop_) break;
      tuple_[qid] = v;
      descend(level + 1);
    }
    live_cells_ -= cos_i.size();
  }

  const PatternQuery& q_;
  const RuntimeIndexGraph& rig_;
  const std::vector<std::uint32_t>& order_;
  const EnumLimits& limits_;
  const TupleSink* sink_;

  std::vector<NodeId> tuple_;
  std::vector<std::uint32_t> position_;
  std::vector<std::vector<Constraint>> constraints_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint64_t entries_ = 0;
  std::uint64_t matches_ = 0;
  bool probing_ = false;
  bool stop_ = false;
  bool truncated_ = false;
  std::size_t live_cells_ = 0;
  std::size_t peak_cells_ = 0;
};

}  // namespace

EnumReport mjoin(const PatternQuery& q, const RuntimeIndexGraph& rig, const SearchOrder& order,
                 const EnumLimits& limits, const TupleSink& sink) {
  Enumerator e(q, rig, order, limits, &sink);
  return e.run();
}

EnumReport count_matches(const PatternQuery& q, const RuntimeIndexGraph& rig,
                         const SearchOrder& order, const EnumLimits& limits) {
  Enumerator e(q, rig, order, limits, nullptr);
  return e.run();
}

}  // namespace rigmatch
