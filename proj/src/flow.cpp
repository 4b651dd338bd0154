#include "bcr/flow.hpp"

#include <deque>
#include <stdexcept>

#include "bcr/errors.hpp"

namespace bcr {

void FlowNetwork::add_arc(int tail, int head, const Rational& capacity) {
  auto n = static_cast<int>(num_nodes_);
  if (tail < 0 || head < 0 || tail >= n || head >= n) throw std::invalid_argument("arc endpoint out of range");
  if (tail == head) throw std::invalid_argument("self-loop arc");
  if (capacity < 0) throw std::invalid_argument("negative capacity");
  if (capacity == 0) return;
  arcs_[{tail, head}] += capacity;
}

namespace {

// Residual graph with antiparallel arcs merged into one edge pair, so the
// stored residuals directly encode the net flow between two nodes.
class Residual {
 public:
  Residual(const FlowNetwork& net, std::span<const int> sources, std::span<const int> sinks) {
    const auto n = static_cast<int>(net.num_nodes());
    for (int s : sources) check_node(s, n);
    for (int t : sinks) check_node(t, n);
    if (sources.empty() || sinks.empty()) throw std::invalid_argument("empty source or sink set");
    std::vector<char> is_source(static_cast<std::size_t>(n), 0);
    for (int s : sources) is_source[static_cast<std::size_t>(s)] = 1;
    for (int t : sinks) {
      if (is_source[static_cast<std::size_t>(t)]) throw std::invalid_argument("sources and sinks intersect");
    }

    num_nodes_ = n;
    source_ = n;
    sink_ = n + 1;
    adj_.resize(static_cast<std::size_t>(n) + 2);

    Rational total(0);
    std::map<std::pair<int, int>, std::size_t> slot;
    for (const auto& [uv, cap] : net.arcs()) {
      total += cap;
      auto rev = slot.find({uv.second, uv.first});
      if (rev != slot.end()) {
        // Reverse slot of the existing (v,u) edge carries (u,v) capacity.
        edges_[rev->second ^ 1].residual += cap;
        edges_[rev->second ^ 1].capacity += cap;
      } else {
        slot[uv] = add_edge(uv.first, uv.second, cap, Rational(0));
      }
    }
    Rational infinite = total + 1;
    for (int s : sources) add_edge(source_, s, infinite, Rational(0));
    for (int t : sinks) add_edge(t, sink_, infinite, Rational(0));
    original_edges_ = slot.size();
  }

  // Augments along shortest residual paths until no path remains or the
  // value reaches the limit.
  Rational run(const std::optional<Rational>& limit) {
    Rational value(0);
    if (limit && *limit <= 0) return value;
    std::vector<std::size_t> parent_edge(adj_.size());
    std::vector<char> seen(adj_.size());
    Rational bottleneck;
    while (true) {
      std::fill(seen.begin(), seen.end(), 0);
      std::deque<int> queue{source_};
      seen[static_cast<std::size_t>(source_)] = 1;
      while (!queue.empty() && !seen[static_cast<std::size_t>(sink_)]) {
        int u = queue.front();
        queue.pop_front();
        for (std::size_t e : adj_[static_cast<std::size_t>(u)]) {
          int v = edges_[e].to;
          if (seen[static_cast<std::size_t>(v)] || sgn(edges_[e].residual) <= 0) continue;
          seen[static_cast<std::size_t>(v)] = 1;
          parent_edge[static_cast<std::size_t>(v)] = e;
          queue.push_back(v);
        }
      }
      if (!seen[static_cast<std::size_t>(sink_)]) break;

      bool first = true;
      for (int v = sink_; v != source_; v = edges_[parent_edge[static_cast<std::size_t>(v)] ^ 1].to) {
        const Rational& r = edges_[parent_edge[static_cast<std::size_t>(v)]].residual;
        if (first || r < bottleneck) bottleneck = r;
        first = false;
      }
      if (limit) {
        Rational room = *limit - value;
        if (room < bottleneck) bottleneck = room;
      }
      for (int v = sink_; v != source_; v = edges_[parent_edge[static_cast<std::size_t>(v)] ^ 1].to) {
        std::size_t e = parent_edge[static_cast<std::size_t>(v)];
        edges_[e].residual -= bottleneck;
        edges_[e ^ 1].residual += bottleneck;
      }
      value += bottleneck;
      if (limit && value >= *limit) break;
    }
    return value;
  }

  std::vector<int> reachable_side() const {
    std::vector<char> seen(adj_.size(), 0);
    std::deque<int> queue{source_};
    seen[static_cast<std::size_t>(source_)] = 1;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (std::size_t e : adj_[static_cast<std::size_t>(u)]) {
        int v = edges_[e].to;
        if (seen[static_cast<std::size_t>(v)] || sgn(edges_[e].residual) <= 0) continue;
        seen[static_cast<std::size_t>(v)] = 1;
        queue.push_back(v);
      }
    }
    std::vector<int> side;
    for (int v = 0; v < num_nodes_; ++v) {
      if (seen[static_cast<std::size_t>(v)]) side.push_back(v);
    }
    return side;
  }

  std::map<std::pair<int, int>, Rational> arc_flows() const {
    std::map<std::pair<int, int>, Rational> flows;
    // The first 2 * original_edges_ slots are the network arcs.
    for (std::size_t e = 0; e < 2 * original_edges_; e += 2) {
      Rational net = edges_[e].capacity - edges_[e].residual;
      int u = edges_[e ^ 1].to, v = edges_[e].to;
      if (net > 0) {
        flows.emplace(std::make_pair(u, v), net);
      } else if (net < 0) {
        flows.emplace(std::make_pair(v, u), Rational(-net));
      }
    }
    return flows;
  }

 private:
  struct ResidualEdge {
    int to;
    Rational capacity;
    Rational residual;
  };

  static void check_node(int v, int n) {
    if (v < 0 || v >= n) throw std::invalid_argument("terminal node out of range");
  }

  std::size_t add_edge(int u, int v, const Rational& cap, const Rational& rev_cap) {
    std::size_t id = edges_.size();
    edges_.push_back({v, cap, cap});
    edges_.push_back({u, rev_cap, rev_cap});
    adj_[static_cast<std::size_t>(u)].push_back(id);
    adj_[static_cast<std::size_t>(v)].push_back(id + 1);
    return id;
  }

  int num_nodes_ = 0;
  int source_ = 0;
  int sink_ = 0;
  std::size_t original_edges_ = 0;
  std::vector<ResidualEdge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
};

}  // namespace

FlowResult max_flow(const FlowNetwork& net, std::span<const int> sources, std::span<const int> sinks,
                    const std::optional<Rational>& limit) {
  Residual res(net, sources, sinks);
  FlowResult out;
  out.value = res.run(limit);
  if (limit && out.value < *limit) {
    throw LimitInfeasible("requested flow " + format_rational(*limit) + " exceeds maximum " +
                          format_rational(out.value));
  }
  out.arc_flows = res.arc_flows();
  out.min_cut_side = res.reachable_side();
  return out;
}

MinCut min_cut(const FlowNetwork& net, std::span<const int> sources, std::span<const int> sinks) {
  Residual res(net, sources, sinks);
  MinCut out;
  out.value = res.run(std::nullopt);
  out.source_side = res.reachable_side();
  return out;
}

}  // namespace bcr
