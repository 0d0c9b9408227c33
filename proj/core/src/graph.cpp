#include "v2im/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

namespace v2im {

namespace {

std::pair<node_id, node_id> ordered(node_id u, node_id v) {
  return u < v ? std::pair{u, v} : std::pair{v, u};
}

}  // namespace

weighted_graph::weighted_graph(std::size_t n, std::vector<edge> edges)
    : n_(n), edges_(std::move(edges)), adj_(n) {
  std::set<std::pair<node_id, node_id>> seen;
  for (const auto& e : edges_) {
    if (e.u >= n_ || e.v >= n_) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop on node " + std::to_string(e.u));
    }
    if (!std::isfinite(e.w)) {
      throw std::invalid_argument("non-finite edge weight");
    }
    if (!seen.insert(ordered(e.u, e.v)).second) {
      throw std::invalid_argument("duplicate edge " + std::to_string(e.u) + "-" +
                                  std::to_string(e.v));
    }
    adj_[e.u].push_back({e.v, e.w});
    adj_[e.v].push_back({e.u, e.w});
  }
}

double weighted_graph::weighted_degree(node_id u) const {
  double d = 0.0;
  for (const auto& nb : adj_.at(u)) d += nb.w;
  return d;
}

double weighted_graph::total_weight() const {
  double w = 0.0;
  for (const auto& e : edges_) w += e.w;
  return w;
}

double weighted_graph::weight(node_id u, node_id v) const {
  for (const auto& nb : adj_.at(u)) {
    if (nb.node == v) return nb.w;
  }
  return 0.0;
}

bool weighted_graph::has_edge(node_id u, node_id v) const {
  const auto& a = adj_.at(u);
  return std::any_of(a.begin(), a.end(), [v](const neighbor& nb) { return nb.node == v; });
}

weighted_graph parse_edge_list(std::string_view text) {
  std::vector<edge> edges;
  std::set<std::pair<node_id, node_id>> seen;
  std::optional<std::size_t> declared_n;
  std::size_t max_id_plus_one = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;

    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }

    std::istringstream in(line);
    std::string a, b, c, extra;
    in >> a >> b;
    if (a == "n") {
      if (b.empty() || (in >> extra)) throw parse_error(line_no, "malformed header");
      long long count = 0;
      auto [p, ec] = std::from_chars(b.data(), b.data() + b.size(), count);
      if (ec != std::errc{} || p != b.data() + b.size() || count < 0) {
        throw parse_error(line_no, "invalid node count '" + b + "'");
      }
      if (declared_n) throw parse_error(line_no, "repeated header");
      declared_n = static_cast<std::size_t>(count);
      if (end == text.size()) break;
      continue;
    }
    in >> c;
    if (c.empty() || (in >> extra)) {
      throw parse_error(line_no, "expected 'u v w'");
    }

    auto parse_id = [&](const std::string& s) {
      long long id = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), id);
      if (ec != std::errc{} || p != s.data() + s.size()) {
        throw parse_error(line_no, "invalid node id '" + s + "'");
      }
      if (id < 0) throw parse_error(line_no, "negative node id " + s);
      return static_cast<node_id>(id);
    };
    const node_id u = parse_id(a);
    const node_id v = parse_id(b);

    double w = 0.0;
    try {
      std::size_t used = 0;
      w = std::stod(c, &used);
      if (used != c.size()) throw std::invalid_argument(c);
    } catch (const std::exception&) {
      throw parse_error(line_no, "invalid weight '" + c + "'");
    }
    if (!std::isfinite(w)) throw parse_error(line_no, "non-finite weight");
    if (u == v) throw parse_error(line_no, "self-loop on node " + a);
    if (!seen.insert(ordered(u, v)).second) {
      throw parse_error(line_no, "duplicate edge " + a + "-" + b);
    }
    max_id_plus_one = std::max({max_id_plus_one, u + 1, v + 1});
    edges.push_back({u, v, w});
    if (end == text.size()) break;
  }

  std::size_t n = max_id_plus_one;
  if (declared_n) {
    if (*declared_n < max_id_plus_one) {
      throw parse_error(line_no, "edge id exceeds declared node count");
    }
    n = *declared_n;
  }
  return weighted_graph(n, std::move(edges));
}

std::string format_edge_list(const weighted_graph& g) {
  std::ostringstream out;
  out << "n " << g.size() << '\n' << std::setprecision(17);
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
  return out.str();
}

weighted_graph complete_graph(std::size_t k, double w) {
  if (k == 0) throw std::invalid_argument("complete graph needs at least one node");
  std::vector<edge> edges;
  edges.reserve(k * (k - 1) / 2);
  for (node_id a = 0; a < k; ++a) {
    for (node_id b = a + 1; b < k; ++b) edges.push_back({a, b, w});
  }
  return weighted_graph(k, std::move(edges));
}

weighted_graph kronecker_identity_left(const weighted_graph& g, std::size_t k) {
  std::vector<edge> edges;
  edges.reserve(g.edge_count() * k);
  for (const auto& e : g.edges()) {
    for (std::size_t c = 0; c < k; ++c) edges.push_back({e.u * k + c, e.v * k + c, e.w});
  }
  return weighted_graph(g.size() * k, std::move(edges));
}

weighted_graph kronecker_identity_right(std::size_t n, const weighted_graph& h) {
  const std::size_t k = h.size();
  std::vector<edge> edges;
  edges.reserve(n * h.edge_count());
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : h.edges()) edges.push_back({i * k + e.u, i * k + e.v, e.w});
  }
  return weighted_graph(n * k, std::move(edges));
}

weighted_graph add_apex(const weighted_graph& g, double w) {
  std::vector<edge> edges;
  edges.reserve(g.edge_count() + g.size());
  for (node_id u = 0; u < g.size(); ++u) edges.push_back({0, u + 1, w});
  for (const auto& e : g.edges()) edges.push_back({e.u + 1, e.v + 1, e.w});
  return weighted_graph(g.size() + 1, std::move(edges));
}

weighted_graph overlay(const weighted_graph& a, const weighted_graph& b, double b_scale) {
  if (a.size() != b.size()) throw std::invalid_argument("overlay needs equal node counts");
  std::map<std::pair<node_id, node_id>, double> merged;
  for (const auto& e : a.edges()) merged[ordered(e.u, e.v)] += e.w;
  for (const auto& e : b.edges()) merged[ordered(e.u, e.v)] += b_scale * e.w;
  std::vector<edge> edges;
  edges.reserve(merged.size());
  for (const auto& [key, w] : merged) edges.push_back({key.first, key.second, w});
  return weighted_graph(a.size(), std::move(edges));
}

}  // namespace v2im
