#include "bcr/instance.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bcr/disjoint_sets.hpp"
#include "bcr/errors.hpp"
#include "text.hpp"

namespace bcr {

namespace {

bool valid_label(std::string_view label) {
  if (label.empty() || label == ":" || label.front() == '#') return false;
  for (char c : label) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Vertex Instance::add_vertex(std::string label) {
  if (!valid_label(label)) throw InvalidInstance("invalid vertex label '" + label + "'");
  if (index_.contains(label)) throw InvalidInstance("duplicate vertex label '" + label + "'");
  auto v = static_cast<Vertex>(labels_.size());
  index_.emplace(label, v);
  labels_.push_back(std::move(label));
  adjacency_.emplace_back();
  return v;
}

void Instance::add_edge(Vertex a, Vertex b, const Rational& cost) {
  auto n = static_cast<Vertex>(labels_.size());
  if (a < 0 || b < 0 || a >= n || b >= n) throw InvalidInstance("edge endpoint out of range");
  if (a == b) throw InvalidInstance("self-loop at '" + label(a) + "'");
  if (cost < 0) throw InvalidInstance("negative cost on edge {" + label(a) + "," + label(b) + "}");
  auto [it, inserted] = edges_.try_emplace(Edge::of(a, b), cost);
  if (!inserted) {
    if (cost < it->second) it->second = cost;
    return;
  }
  auto insert_sorted = [](std::vector<Vertex>& list, Vertex v) {
    list.insert(std::lower_bound(list.begin(), list.end(), v), v);
  };
  insert_sorted(adjacency_[static_cast<std::size_t>(a)], b);
  insert_sorted(adjacency_[static_cast<std::size_t>(b)], a);
}

void Instance::add_edge(std::string_view a, std::string_view b, const Rational& cost) {
  add_edge(vertex(a), vertex(b), cost);
}

std::size_t Instance::add_pair(Vertex s, Vertex t) {
  auto n = static_cast<Vertex>(labels_.size());
  if (s < 0 || t < 0 || s >= n || t >= n) throw InvalidInstance("pair endpoint out of range");
  if (s == t) throw InvalidInstance("pair with identical endpoints '" + label(s) + "'");
  pairs_.push_back({s, t});
  return pairs_.size() - 1;
}

std::size_t Instance::add_pair(std::string_view s, std::string_view t) {
  return add_pair(vertex(s), vertex(t));
}

std::optional<Vertex> Instance::find(std::string_view label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vertex Instance::vertex(std::string_view label) const {
  auto v = find(label);
  if (!v) throw InvalidInstance("unknown vertex '" + std::string(label) + "'");
  return *v;
}

const Rational* Instance::edge_cost(Vertex a, Vertex b) const {
  if (a == b) return nullptr;
  auto it = edges_.find(Edge::of(a, b));
  return it == edges_.end() ? nullptr : &it->second;
}

std::vector<Arc> Instance::arcs() const {
  std::vector<Arc> out;
  out.reserve(edges_.size() * 2);
  for (const auto& [e, cost] : edges_) {
    out.push_back({e.u, e.v});
    out.push_back({e.v, e.u});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Instance::operator==(const Instance& other) const {
  return labels_ == other.labels_ && edges_ == other.edges_ && pairs_ == other.pairs_;
}

std::vector<Vertex> Instance::vertices_by_label() const {
  std::vector<Vertex> order(labels_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Vertex>(i);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return label(a) < label(b); });
  return order;
}

std::vector<std::size_t> DemandGraph::nontrivial_components() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (!is_trivial(c)) out.push_back(c);
  }
  return out;
}

std::vector<Vertex> terminals(const Instance& inst) {
  auto mask = terminal_mask(inst);
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (mask[v]) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::vector<bool> terminal_mask(const Instance& inst) {
  std::vector<bool> mask(inst.num_vertices(), false);
  for (const auto& p : inst.pairs()) {
    mask[static_cast<std::size_t>(p.s)] = true;
    mask[static_cast<std::size_t>(p.t)] = true;
  }
  return mask;
}

DemandGraph demand_graph(const Instance& inst) {
  const std::size_t n = inst.num_vertices();
  DisjointSets sets(n);
  for (const auto& p : inst.pairs()) sets.unite(static_cast<std::size_t>(p.s), static_cast<std::size_t>(p.t));

  std::map<std::size_t, std::vector<Vertex>> by_root;
  for (std::size_t v = 0; v < n; ++v) by_root[sets.find(v)].push_back(static_cast<Vertex>(v));

  DemandGraph g;
  for (auto& [root, members] : by_root) {
    std::sort(members.begin(), members.end(),
              [&](Vertex a, Vertex b) { return inst.label(a) < inst.label(b); });
    g.components.push_back(std::move(members));
  }
  std::sort(g.components.begin(), g.components.end(),
            [&](const auto& a, const auto& b) { return inst.label(a.front()) < inst.label(b.front()); });
  g.component_of.assign(n, 0);
  for (std::size_t c = 0; c < g.components.size(); ++c) {
    for (Vertex v : g.components[c]) g.component_of[static_cast<std::size_t>(v)] = c;
  }
  return g;
}

bool same_representation(const Instance& a, const Instance& b) {
  if (a.labels() != b.labels() || a.edges() != b.edges()) {
    throw VertexMismatch("instances are defined over different graphs");
  }
  return demand_graph(a).components == demand_graph(b).components;
}

const Rational& MetricClosure::distance(Vertex a, Vertex b) const {
  const auto& d = dist_.at(static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b));
  if (!d) throw Disconnected("no path between '" + closure_.label(a) + "' and '" + closure_.label(b) + "'");
  return *d;
}

bool MetricClosure::reachable(Vertex a, Vertex b) const {
  return dist_.at(static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)).has_value();
}

std::vector<Vertex> MetricClosure::path(Vertex a, Vertex b) const {
  if (!reachable(a, b)) {
    throw Disconnected("no path between '" + closure_.label(a) + "' and '" + closure_.label(b) + "'");
  }
  std::vector<Vertex> out{a};
  while (a != b) {
    a = next_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)];
    out.push_back(a);
    if (out.size() > n_) throw std::logic_error("witness path does not terminate");
  }
  return out;
}

std::vector<Edge> MetricClosure::path_edges(Vertex a, Vertex b) const {
  auto p = path(a, b);
  std::vector<Edge> out;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) out.push_back(Edge::of(p[i], p[i + 1]));
  return out;
}

MetricClosure metric_closure(const Instance& inst) {
  MetricClosure mc;
  const std::size_t n = inst.num_vertices();
  mc.n_ = n;
  mc.dist_.assign(n * n, std::nullopt);
  mc.next_.assign(n * n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    mc.dist_[v * n + v] = Rational(0);
    mc.next_[v * n + v] = static_cast<Vertex>(v);
  }
  for (const auto& [e, cost] : inst.edges()) {
    auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
    mc.dist_[u * n + v] = cost;
    mc.dist_[v * n + u] = cost;
    mc.next_[u * n + v] = e.v;
    mc.next_[v * n + u] = e.u;
  }
  // Floyd-Warshall with strict improvement only, so witnesses are stable.
  Rational through;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& dik = mc.dist_[i * n + k];
      if (!dik || i == k) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const auto& dkj = mc.dist_[k * n + j];
        if (!dkj || j == k || i == j) continue;
        through = *dik + *dkj;
        auto& dij = mc.dist_[i * n + j];
        if (!dij || through < *dij) {
          dij = through;
          mc.next_[i * n + j] = mc.next_[i * n + k];
        }
      }
    }
  }

  for (const auto& p : inst.pairs()) {
    if (!mc.reachable(p.s, p.t)) {
      throw Disconnected("pair {" + inst.label(p.s) + "," + inst.label(p.t) + "} is not connected");
    }
  }

  for (const auto& l : inst.labels()) mc.closure_.add_vertex(l);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (mc.dist_[i * n + j]) {
        mc.closure_.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j), *mc.dist_[i * n + j]);
      }
    }
  }
  for (const auto& p : inst.pairs()) mc.closure_.add_pair(p.s, p.t);
  return mc;
}

Instance parse_instance(std::istream& in) {
  Instance inst;
  detail::for_each_line(in, [&](const std::vector<std::string>& tok, int line_no) {
    try {
      if (tok[0] == "vertices") {
        for (std::size_t i = 1; i < tok.size(); ++i) inst.add_vertex(tok[i]);
      } else if (tok[0] == "edge") {
        detail::expect_tokens(tok, 4, line_no);
        inst.add_edge(tok[1], tok[2], parse_rational(tok[3]));
      } else if (tok[0] == "pair") {
        detail::expect_tokens(tok, 3, line_no);
        inst.add_pair(tok[1], tok[2]);
      } else {
        detail::parse_fail(line_no, "unknown directive '" + tok[0] + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      detail::parse_fail(line_no, e.what());
    }
  });
  return inst;
}

Instance parse_instance_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
  out << "vertices";
  for (const auto& l : inst.labels()) out << ' ' << l;
  out << '\n';
  for (const auto& [e, cost] : inst.edges()) {
    out << "edge " << inst.label(e.u) << ' ' << inst.label(e.v) << ' ' << format_rational(cost) << '\n';
  }
  for (const auto& p : inst.pairs()) out << "pair " << inst.label(p.s) << ' ' << inst.label(p.t) << '\n';
}

std::string instance_to_string(const Instance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

}  // namespace bcr
