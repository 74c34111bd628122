#include "rigmatch/pattern_query.hpp"

#include <algorithm>
#include <iostream>
#include <istream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rigmatch/errors.hpp"

namespace rigmatch {

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    return true;
  }
  return false;
}

std::uint32_t parse_qid(const std::string& tok, std::size_t line_no) {
  if (tok.empty()) throw ParseError(line_no, "missing query node id");
  std::uint64_t value = 0;
  for (char ch : tok) {
    if (ch < '0' || ch > '9')
      throw ParseError(line_no, "expected non-negative integer, got '" + tok + "'");
    value = value * 10 + static_cast<std::uint64_t>(ch - '0');
    if (value > 0xffffffffull) throw ParseError(line_no, "query node id out of range");
  }
  return static_cast<std::uint32_t>(value);
}

// BFS over edges treated as undirected arcs.
bool connected(std::size_t n, const std::vector<QueryEdge>& edges) {
  if (n <= 1) return true;
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const QueryEdge& e : edges) {
    adj[e.tail].push_back(e.head);
    adj[e.head].push_back(e.tail);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const std::uint32_t v = queue.back();
    queue.pop_back();
    for (std::uint32_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        queue.push_back(w);
      }
    }
  }
  return count == n;
}

// Reachable set of `from` via directed edges, optionally skipping one edge
// (by index into `edges`); used by closure and reduction.
std::vector<bool> reachable_from(std::size_t n, const std::vector<QueryEdge>& edges,
                                 std::uint32_t from, std::size_t skip_edge) {
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i == skip_edge) continue;
    adj[edges[i].tail].push_back(edges[i].head);
  }
  std::vector<bool> reached(n, false);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t w : adj[from]) {
    if (!reached[w]) {
      reached[w] = true;
      queue.push_back(w);
    }
  }
  while (!queue.empty()) {
    const std::uint32_t v = queue.back();
    queue.pop_back();
    for (std::uint32_t w : adj[v]) {
      if (!reached[w]) {
        reached[w] = true;
        queue.push_back(w);
      }
    }
  }
  return reached;
}

}  // namespace

PatternQuery PatternQuery::parse(std::istream& in, std::ostream* warnings) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<QueryNode> nodes;
  std::vector<QueryEdge> edges;
  bool edges_started = false;

  while (next_content_line(in, line, line_no)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "n") {
      if (edges_started) throw ParseError(line_no, "node line after edge lines");
      std::string id_tok, label, extra;
      ls >> id_tok >> label;
      if (label.empty() || (ls >> extra))
        throw ParseError(line_no, "expected 'n <qid> <label>', got '" + line + "'");
      const std::uint32_t qid = parse_qid(id_tok, line_no);
      if (qid != nodes.size())
        throw ParseError(line_no, "query node ids must be dense and ascending; expected " +
                                      std::to_string(nodes.size()) + ", got " + id_tok);
      nodes.push_back({qid, label});
    } else if (tag == "d" || tag == "r") {
      edges_started = true;
      std::string t_tok, h_tok, extra;
      ls >> t_tok >> h_tok;
      if (h_tok.empty() || (ls >> extra))
        throw ParseError(line_no, "expected '" + tag + " <tail> <head>', got '" + line + "'");
      const std::uint32_t tail = parse_qid(t_tok, line_no);
      const std::uint32_t head = parse_qid(h_tok, line_no);
      if (tail >= nodes.size() || head >= nodes.size())
        throw ParseError(line_no, "edge endpoint out of range [0, " +
                                      std::to_string(nodes.size()) + ")");
      edges.push_back({tail, head, tag == "d" ? EdgeKind::direct : EdgeKind::reachability});
    } else {
      throw ParseError(line_no, "unknown directive '" + tag + "'");
    }
  }
  if (nodes.empty()) throw ParseError(line_no, "query has no nodes");

  // Raw input allows one edge per ordered pair; the direct/reachability
  // coexistence produced by the closure is not valid input.
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const QueryEdge& e : edges) {
    if (e.tail == e.head)
      throw ValidationError("query self-loop (" + std::to_string(e.tail) + ", " +
                            std::to_string(e.head) + ") is not allowed");
    if (!pairs.emplace(e.tail, e.head).second)
      throw ValidationError("duplicate query edge for ordered pair (" +
                            std::to_string(e.tail) + ", " + std::to_string(e.head) + ")");
  }

  if (nodes.size() > kSoftNodeLimit) {
    std::ostream& w = warnings ? *warnings : std::cerr;
    w << "warning: query has " << nodes.size() << " nodes (soft limit "
      << kSoftNodeLimit << "); proceeding\n";
  }
  return make(std::move(nodes), std::move(edges));
}

PatternQuery PatternQuery::parse_text(std::string_view text, std::ostream* warnings) {
  std::istringstream in{std::string(text)};
  return parse(in, warnings);
}

PatternQuery PatternQuery::make(std::vector<QueryNode> nodes, std::vector<QueryEdge> edges) {
  for (const QueryEdge& e : edges) {
    if (e.tail >= nodes.size() || e.head >= nodes.size())
      throw ValidationError("query edge endpoint out of range");
    if (e.tail == e.head) throw ValidationError("query self-loops are not allowed");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw ValidationError("duplicate (tail, head, kind) query edge");
  if (!connected(nodes.size(), edges))
    throw ValidationError("query graph is not connected");
  return make_unchecked(std::move(nodes), std::move(edges));
}

PatternQuery PatternQuery::make_unchecked(std::vector<QueryNode> nodes,
                                          std::vector<QueryEdge> edges) {
  PatternQuery q;
  std::sort(edges.begin(), edges.end());
  q.nodes_ = std::move(nodes);
  q.edges_ = std::move(edges);
  q.build_topology();
  return q;
}

void PatternQuery::build_topology() {
  const std::size_t n = nodes_.size();
  out_off_.assign(n + 1, 0);
  in_off_.assign(n + 1, 0);
  for (const QueryEdge& e : edges_) {
    ++out_off_[e.tail + 1];
    ++in_off_[e.head + 1];
  }
  for (std::size_t i = 1; i <= n; ++i) {
    out_off_[i] += out_off_[i - 1];
    in_off_[i] += in_off_[i - 1];
  }
  out_idx_.resize(edges_.size());
  in_idx_.resize(edges_.size());
  std::vector<std::uint32_t> out_cur(out_off_.begin(), out_off_.end() - 1);
  std::vector<std::uint32_t> in_cur(in_off_.begin(), in_off_.end() - 1);
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    out_idx_[out_cur[edges_[i].tail]++] = i;
    in_idx_[in_cur[edges_[i].head]++] = i;
  }

  std::vector<std::set<std::uint32_t>> und(n);
  for (const QueryEdge& e : edges_) {
    und[e.tail].insert(e.head);
    und[e.head].insert(e.tail);
  }
  undir_off_.assign(n + 1, 0);
  undir_.clear();
  for (std::size_t v = 0; v < n; ++v) {
    undir_off_[v + 1] = undir_off_[v] + static_cast<std::uint32_t>(und[v].size());
    undir_.insert(undir_.end(), und[v].begin(), und[v].end());
  }

  // Kahn cycle check.
  std::vector<std::uint32_t> indeg(n, 0);
  for (const QueryEdge& e : edges_) ++indeg[e.head];
  std::vector<std::uint32_t> ready;
  for (std::uint32_t v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::size_t processed = 0;
  while (!ready.empty()) {
    const std::uint32_t v = ready.back();
    ready.pop_back();
    ++processed;
    for (std::uint32_t ei : out_edges(v))
      if (--indeg[edges_[ei].head] == 0) ready.push_back(edges_[ei].head);
  }
  is_dag_ = processed == n;
}

std::vector<std::uint32_t> PatternQuery::topological_order() const {
  if (!is_dag_) throw std::logic_error("query graph is cyclic");
  const std::size_t n = nodes_.size();
  std::vector<std::uint32_t> indeg(n, 0);
  for (const QueryEdge& e : edges_) ++indeg[e.head];
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
  for (std::uint32_t v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push(v);
  std::vector<std::uint32_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    const std::uint32_t v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::uint32_t ei : out_edges(v))
      if (--indeg[edges_[ei].head] == 0) ready.push(edges_[ei].head);
  }
  return order;
}

std::span<const std::uint32_t> PatternQuery::out_edges(std::uint32_t qid) const {
  return {out_idx_.data() + out_off_[qid], out_off_[qid + 1] - out_off_[qid]};
}

std::span<const std::uint32_t> PatternQuery::in_edges(std::uint32_t qid) const {
  return {in_idx_.data() + in_off_[qid], in_off_[qid + 1] - in_off_[qid]};
}

std::span<const std::uint32_t> PatternQuery::undirected_neighbors(std::uint32_t qid) const {
  return {undir_.data() + undir_off_[qid], undir_off_[qid + 1] - undir_off_[qid]};
}

PatternQuery PatternQuery::transitive_closure() const {
  const std::size_t n = nodes_.size();
  std::vector<QueryEdge> closed = edges_;
  std::set<QueryEdge> have(edges_.begin(), edges_.end());
  for (std::uint32_t x = 0; x < n; ++x) {
    const std::vector<bool> reached =
        reachable_from(n, edges_, x, edges_.size() /* skip none */);
    for (std::uint32_t y = 0; y < n; ++y) {
      if (x == y || !reached[y]) continue;
      const QueryEdge e{x, y, EdgeKind::reachability};
      if (have.insert(e).second) closed.push_back(e);
    }
  }
  return make_unchecked(nodes_, std::move(closed));
}

PatternQuery PatternQuery::transitive_reduction() const {
  std::vector<QueryEdge> kept = edges_;  // already sorted (tail, head, kind)
  for (std::size_t i = 0; i < kept.size();) {
    if (kept[i].kind != EdgeKind::reachability) {
      ++i;
      continue;
    }
    const std::vector<bool> reached =
        reachable_from(nodes_.size(), kept, kept[i].tail, i);
    if (reached[kept[i].head]) {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return make_unchecked(nodes_, std::move(kept));
}

}  // namespace rigmatch
