#include "rigmatch/data_graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rigmatch/errors.hpp"

namespace rigmatch {

namespace {

// Strips comments/blank lines; returns false at end of input.
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

std::uint64_t parse_count(const std::string& tok, std::size_t line_no, const char* what) {
  std::uint64_t value = 0;
  const auto* begin = tok.data();
  const auto* end = begin + tok.size();
  for (const auto* p = begin; p != end; ++p) {
    if (*p < '0' || *p > '9')
      throw ParseError(line_no, std::string("expected non-negative integer for ") + what +
                                    ", got '" + tok + "'");
    value = value * 10 + static_cast<std::uint64_t>(*p - '0');
    if (value > 0xffffffffull) throw ParseError(line_no, std::string(what) + " out of range");
  }
  if (tok.empty()) throw ParseError(line_no, std::string("missing ") + what);
  return value;
}

// Iterative DFS over sorted adjacency; returns discovery order. Roots and
// neighbors are taken in ascending id order.
std::vector<NodeId> dfs_discovery_order(const std::vector<std::vector<NodeId>>& adj) {
  const std::size_t n = adj.size();
  std::vector<NodeId> order;
  order.reserve(n);
  std::vector<bool> seen(n, false);
  std::vector<std::pair<NodeId, std::size_t>> stack;
  for (NodeId root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    order.push_back(root);
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i == adj[v].size()) {
        stack.pop_back();
        continue;
      }
      const NodeId w = adj[v][i++];
      if (!seen[w]) {
        seen[w] = true;
        order.push_back(w);
        stack.emplace_back(w, 0);
      }
    }
  }
  return order;
}

bool acyclic(const std::vector<std::vector<NodeId>>& adj) {
  const std::size_t n = adj.size();
  std::vector<std::uint32_t> indeg(n, 0);
  for (const auto& row : adj)
    for (NodeId w : row) ++indeg[w];
  std::vector<NodeId> queue;
  for (NodeId v = 0; v < n; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  std::size_t processed = 0;
  while (!queue.empty()) {
    const NodeId v = queue.back();
    queue.pop_back();
    ++processed;
    for (NodeId w : adj[v])
      if (--indeg[w] == 0) queue.push_back(w);
  }
  return processed == n;
}

}  // namespace

DataGraph DataGraph::load(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!next_content_line(in, line, line_no)) throw ParseError(line_no, "empty graph input");
  std::istringstream header(line);
  std::string tag, n_tok, m_tok, extra;
  header >> tag >> n_tok >> m_tok;
  if (tag != "t" || n_tok.empty() || m_tok.empty() || (header >> extra))
    throw ParseError(line_no, "expected header 't <num_nodes> <num_edges>'");
  const auto n = static_cast<std::size_t>(parse_count(n_tok, line_no, "node count"));
  const auto m = static_cast<std::size_t>(parse_count(m_tok, line_no, "edge count"));

  DataGraph g;
  g.labels_.assign(n, 0);
  std::vector<bool> labeled(n, false);

  for (std::size_t k = 0; k < n; ++k) {
    if (!next_content_line(in, line, line_no))
      throw ParseError(line_no, "unexpected end of input: node " + std::to_string(k) +
                                    " of " + std::to_string(n) + " missing");
    std::istringstream ls(line);
    std::string vtag, id_tok, label;
    ls >> vtag >> id_tok >> label;
    if (vtag != "v" || id_tok.empty())
      throw ParseError(line_no, "expected 'v <id> <label>' line, got '" + line + "'");
    if (label.empty() || (ls >> extra))
      throw ParseError(line_no, "node line must carry exactly one label");
    const auto id = parse_count(id_tok, line_no, "node id");
    if (id >= n) throw ParseError(line_no, "node id " + id_tok + " out of range [0, " +
                                               std::to_string(n) + ")");
    if (labeled[id]) throw ParseError(line_no, "duplicate node id " + id_tok);
    labeled[id] = true;
    auto [it, inserted] = g.label_ids_.try_emplace(label, static_cast<Label>(g.label_names_.size()));
    if (inserted) g.label_names_.push_back(label);
    g.labels_[id] = it->second;
  }

  std::vector<std::vector<NodeId>> adj(n);
  for (std::size_t k = 0; k < m; ++k) {
    if (!next_content_line(in, line, line_no))
      throw ParseError(line_no, "unexpected end of input: edge " + std::to_string(k) +
                                    " of " + std::to_string(m) + " missing");
    std::istringstream es(line);
    std::string etag, s_tok, d_tok;
    es >> etag >> s_tok >> d_tok;
    if (etag != "e" || s_tok.empty() || d_tok.empty() || (es >> extra))
      throw ParseError(line_no, "expected 'e <src> <dst>' line, got '" + line + "'");
    const auto s = parse_count(s_tok, line_no, "edge source");
    const auto d = parse_count(d_tok, line_no, "edge target");
    if (s >= n || d >= n)
      throw ParseError(line_no, "edge endpoint out of range [0, " + std::to_string(n) + ")");
    adj[s].push_back(static_cast<NodeId>(d));
  }
  if (next_content_line(in, line, line_no))
    throw ParseError(line_no, "trailing content after declared edges: '" + line + "'");

  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }

  g.is_dag_ = acyclic(adj);
  g.external_.resize(n);
  g.internal_.resize(n);
  std::vector<NodeId> to_internal(n);
  if (g.is_dag_) {
    const std::vector<NodeId> order = dfs_discovery_order(adj);
    for (NodeId pos = 0; pos < order.size(); ++pos) {
      g.external_[pos] = order[pos];
      to_internal[order[pos]] = pos;
    }
  } else {
    for (NodeId v = 0; v < n; ++v) {
      g.external_[v] = v;
      to_internal[v] = v;
    }
  }
  g.internal_ = to_internal;

  if (g.is_dag_) {
    std::vector<Label> relabeled(n);
    for (NodeId ext = 0; ext < n; ++ext) relabeled[to_internal[ext]] = g.labels_[ext];
    g.labels_ = std::move(relabeled);
  }

  g.fwd_.assign(n, NodeSet());
  g.bwd_.assign(n, NodeSet());
  g.inverted_.assign(g.label_names_.size(), NodeSet());
  std::size_t edge_count = 0;
  for (NodeId ext = 0; ext < n; ++ext) {
    const NodeId u = to_internal[ext];
    for (NodeId ext_w : adj[ext]) {
      const NodeId w = to_internal[ext_w];
      g.fwd_[u].add(w);
      g.bwd_[w].add(u);
      ++edge_count;
    }
  }
  g.num_edges_ = edge_count;
  for (NodeId v = 0; v < n; ++v) g.inverted_[g.labels_[v]].add(v);
  return g;
}

DataGraph DataGraph::load_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load(in);
}

void DataGraph::serialize(std::ostream& out) const {
  const std::size_t n = num_nodes();
  out << "t " << n << ' ' << num_edges_ << '\n';
  for (NodeId ext = 0; ext < n; ++ext)
    out << "v " << ext << ' ' << label_names_[labels_[internal_[ext]]] << '\n';
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(num_edges_);
  for (NodeId u = 0; u < n; ++u)
    fwd_[u].for_each([&](NodeId w) { edges.emplace_back(external_[u], external_[w]); });
  std::sort(edges.begin(), edges.end());
  for (const auto& [s, d] : edges) out << "e " << s << ' ' << d << '\n';
}

Label DataGraph::label_of(NodeId v) const {
  check_node(v);
  return labels_[v];
}

std::optional<Label> DataGraph::find_label(std::string_view name) const {
  auto it = label_ids_.find(std::string(name));
  if (it == label_ids_.end()) return std::nullopt;
  return it->second;
}

const NodeSet& DataGraph::inverted_list(std::string_view name) const {
  const auto l = find_label(name);
  return l ? inverted_[*l] : NodeSet::empty_set();
}

const NodeSet& DataGraph::adjacency(NodeId v, Direction dir) const {
  check_node(v);
  return dir == Direction::forward ? fwd_[v] : bwd_[v];
}

NodeId DataGraph::external_id(NodeId internal) const {
  check_node(internal);
  return external_[internal];
}

NodeId DataGraph::internal_id(NodeId external) const {
  if (external >= internal_.size())
    throw std::out_of_range("node id " + std::to_string(external) + " out of range");
  return internal_[external];
}

void DataGraph::check_node(NodeId v) const {
  if (v >= labels_.size())
    throw std::out_of_range("node id " + std::to_string(v) + " out of range");
}

}  // namespace rigmatch
