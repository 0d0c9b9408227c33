#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace v2im {

using node_id = std::size_t;

struct edge {
  node_id u;
  node_id v;
  double w;
};

struct neighbor {
  node_id node;
  double w;
};

class parse_error : public std::runtime_error {
public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// Undirected weighted graph on dense ids 0..n-1. Immutable once built; every
// unordered pair is stored at most once and self-loops are rejected.
class weighted_graph {
public:
  weighted_graph() = default;

  // Throws std::invalid_argument on out-of-range ids, self-loops or
  // repeated pairs.
  weighted_graph(std::size_t n, std::vector<edge> edges);

  std::size_t size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<edge>& edges() const noexcept { return edges_; }
  const std::vector<neighbor>& adjacency(node_id u) const { return adj_.at(u); }

  double weighted_degree(node_id u) const;
  double total_weight() const;

  // Weight of edge {u, v}, or 0 when absent.
  double weight(node_id u, node_id v) const;
  bool has_edge(node_id u, node_id v) const;

private:
  std::size_t n_ = 0;
  std::vector<edge> edges_;
  std::vector<std::vector<neighbor>> adj_;
};

/// Parses "u v w" lines; '#' comments and blank lines are skipped and an
/// optional "n <count>" header fixes the node count.
weighted_graph parse_edge_list(std::string_view text);
std::string format_edge_list(const weighted_graph& g);

weighted_graph complete_graph(std::size_t k, double w);

// A (x) I_K: node (i, c) -> i*K + c, same-color copies of every edge of g.
weighted_graph kronecker_identity_left(const weighted_graph& g, std::size_t k);

// I_N (x) H: N disjoint copies of h, node (i, c) -> i*|H| + c.
weighted_graph kronecker_identity_right(std::size_t n, const weighted_graph& h);

// Prepends a node (id 0) joined to every existing node with weight w; old ids
// shift by one.
weighted_graph add_apex(const weighted_graph& g, double w);

// Edge-disjoint union of two graphs on the same node set. Weights of a pair
// present in both are summed.
weighted_graph overlay(const weighted_graph& a, const weighted_graph& b, double b_scale = 1.0);

inline double total_weight(const weighted_graph& g) { return g.total_weight(); }

}  // namespace v2im
