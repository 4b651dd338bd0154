#include "bcr/solution.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "bcr/errors.hpp"
#include "text.hpp"

namespace bcr {

namespace {

const ArcValues kNoArcs;

template <typename Map, typename Key>
void set_or_erase(Map& m, const Key& key, const Rational& value) {
  if (sgn(value) == 0) {
    m.erase(key);
  } else {
    m[key] = value;
  }
}

std::string set_string(const Instance& inst, const std::vector<Vertex>& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ' ';
    out += inst.label(set[i]);
  }
  return out + "}";
}

std::string pair_string(const Instance& inst, std::size_t pair) {
  if (pair >= inst.pairs().size()) return "#" + std::to_string(pair);
  const auto& p = inst.pairs()[pair];
  return "{" + inst.label(p.s) + "," + inst.label(p.t) + "}";
}

std::string vertex_string(const Instance& inst, Vertex v) {
  if (v < 0 || static_cast<std::size_t>(v) >= inst.num_vertices()) return "#" + std::to_string(v);
  return inst.label(v);
}

bool in_range(const Instance& inst, Vertex v) {
  return v >= 0 && static_cast<std::size_t>(v) < inst.num_vertices();
}

// Checks that every stored arc is an instance edge and every value is
// nonnegative; returns the first offending entry.
std::optional<Verdict> check_arcs(const ArcValues& x, Vertex root, const Instance& inst) {
  for (const auto& [arc, value] : x) {
    if (sgn(value) < 0) {
      Verdict v{VerdictKind::Negative};
      v.root = root;
      v.arc = arc;
      v.lhs = value;
      return v;
    }
    if (!in_range(inst, arc.tail) || !in_range(inst, arc.head) || !inst.has_edge(arc.tail, arc.head)) {
      Verdict v{VerdictKind::UnknownArc};
      v.root = root;
      v.arc = arc;
      return v;
    }
  }
  return std::nullopt;
}

std::pair<Vertex, Vertex> endpoint_key(Vertex a, Vertex b) { return {std::min(a, b), std::max(a, b)}; }

// Index of the k-th pair (0-based) with endpoints {a,b}.
std::optional<std::size_t> nth_pair(const Instance& inst, Vertex a, Vertex b, int k) {
  for (std::size_t i = 0; i < inst.pairs().size(); ++i) {
    const auto& p = inst.pairs()[i];
    if ((p.s == a && p.t == b) || (p.s == b && p.t == a)) {
      if (k-- == 0) return i;
    }
  }
  return std::nullopt;
}

// Rank of pair i among the pairs with the same endpoints.
int pair_rank(const Instance& inst, std::size_t i) {
  const auto key = endpoint_key(inst.pairs()[i].s, inst.pairs()[i].t);
  int rank = 0;
  for (std::size_t j = 0; j < i; ++j) {
    if (endpoint_key(inst.pairs()[j].s, inst.pairs()[j].t) == key) ++rank;
  }
  return rank;
}

Vertex parse_vertex(const Instance& inst, const std::string& label, int line_no) {
  auto v = inst.find(label);
  if (!v) detail::parse_fail(line_no, "unknown vertex '" + label + "'");
  return *v;
}

std::size_t parse_pair_ref(const Instance& inst, const std::string& s, const std::string& t, int k, int line_no) {
  Vertex a = parse_vertex(inst, s, line_no);
  Vertex b = parse_vertex(inst, t, line_no);
  auto idx = nth_pair(inst, a, b, k);
  if (!idx) detail::parse_fail(line_no, "no matching pair {" + s + "," + t + "}");
  return *idx;
}

Arc parse_arc(const Instance& inst, const std::string& tail, const std::string& head, int line_no) {
  Arc arc{parse_vertex(inst, tail, line_no), parse_vertex(inst, head, line_no)};
  if (arc.tail == arc.head) detail::parse_fail(line_no, "arc with identical endpoints '" + tail + "'");
  return arc;
}

Rational parse_value(const std::string& text, int line_no) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    detail::parse_fail(line_no, e.what());
  }
}

// Emits one line per pair-indexed value so that the k-th line per endpoint
// set re-parses to the same pair index (zero lines pad skipped duplicates).
template <typename Emit>
void write_pair_values(const std::map<std::size_t, Rational>& values, const Instance& inst, Emit&& emit) {
  std::map<std::pair<Vertex, Vertex>, int> emitted;
  for (const auto& [i, value] : values) {
    const auto& p = inst.pairs()[i];
    int& count = emitted[endpoint_key(p.s, p.t)];
    int rank = pair_rank(inst, i);
    for (; count < rank; ++count) emit(p, Rational(0));
    emit(p, value);
    ++count;
  }
}

}  // namespace

Rational BcrSolution::x_at(Vertex root, Arc arc) const {
  auto it = x.find(root);
  if (it == x.end()) return Rational(0);
  auto jt = it->second.find(arc);
  return jt == it->second.end() ? Rational(0) : jt->second;
}

Rational BcrSolution::z_at(Vertex root, std::size_t pair) const {
  auto it = z.find(root);
  if (it == z.end()) return Rational(0);
  auto jt = it->second.find(pair);
  return jt == it->second.end() ? Rational(0) : jt->second;
}

void BcrSolution::set_x(Vertex root, Arc arc, const Rational& value) {
  auto& m = x[root];
  set_or_erase(m, arc, value);
  if (m.empty()) x.erase(root);
}

void BcrSolution::add_x(Vertex root, Arc arc, const Rational& delta) {
  set_x(root, arc, x_at(root, arc) + delta);
}

void BcrSolution::set_z(Vertex root, std::size_t pair, const Rational& value) {
  auto& m = z[root];
  set_or_erase(m, pair, value);
  if (m.empty()) z.erase(root);
}

void BcrSolution::add_z(Vertex root, std::size_t pair, const Rational& delta) {
  set_z(root, pair, z_at(root, pair) + delta);
}

std::set<Vertex> BcrSolution::roots() const {
  std::set<Vertex> out;
  for (const auto& [r, m] : x) out.insert(r);
  for (const auto& [r, m] : z) out.insert(r);
  return out;
}

const ArcValues& BcrSolution::x_of(Vertex root) const {
  auto it = x.find(root);
  return it == x.end() ? kNoArcs : it->second;
}

std::string Verdict::describe(const Instance& inst) const {
  std::ostringstream out;
  auto root_str = [&] { return root ? vertex_string(inst, *root) : std::string("-"); };
  auto arc_str = [&] {
    return arc ? "(" + vertex_string(inst, arc->tail) + "," + vertex_string(inst, arc->head) + ")" : std::string("-");
  };
  switch (kind) {
    case VerdictKind::Feasible:
      out << "feasible";
      break;
    case VerdictKind::ViolatedCut:
      out << "violated cut: root " << root_str();
      if (pair) out << " pair " << pair_string(inst, *pair);
      out << " U = " << set_string(inst, cut) << " has x(delta+(U)) = " << format_rational(lhs) << " < "
          << format_rational(rhs);
      break;
    case VerdictKind::BadZSum:
      out << "pair " << pair_string(inst, pair.value_or(0)) << " has z sum " << format_rational(lhs) << " != 1";
      break;
    case VerdictKind::Negative:
      out << "negative value " << format_rational(lhs) << " at root " << root_str();
      if (arc) out << " arc " << arc_str();
      if (pair) out << " pair " << pair_string(inst, *pair);
      break;
    case VerdictKind::UnknownArc:
      out << "arc " << arc_str() << " at root " << root_str() << " is not an instance edge";
      break;
    case VerdictKind::EdgeOverload:
      out << "edge overload: root " << root_str() << " arc " << arc_str() << " load " << format_rational(lhs)
          << " > cost " << format_rational(rhs);
      break;
    case VerdictKind::AlphaUncovered:
      out << "alpha uncovered: pair " << pair_string(inst, pair.value_or(0)) << " root " << root_str() << " alpha "
          << format_rational(lhs) << " > " << format_rational(rhs);
      break;
    case VerdictKind::InvalidEntry:
      out << "invalid entry at root " << root_str();
      if (pair) out << " pair " << pair_string(inst, *pair);
      if (!cut.empty()) out << " set " << set_string(inst, cut);
      break;
  }
  return out.str();
}

Rational cost(const ArcValues& x, const Instance& inst) {
  Rational total(0);
  for (const auto& [arc, value] : x) {
    const Rational* c = in_range(inst, arc.tail) && in_range(inst, arc.head) ? inst.edge_cost(arc.tail, arc.head)
                                                                             : nullptr;
    if (!c) {
      throw UnknownArc("arc (" + vertex_string(inst, arc.tail) + "," + vertex_string(inst, arc.head) +
                       ") is not an instance edge");
    }
    total += *c * value;
  }
  return total;
}

Rational cost(const BcrSolution& sol, const Instance& inst) {
  Rational total(0);
  for (const auto& [r, xr] : sol.x) total += cost(xr, inst);
  return total;
}

Rational cost(const TreeBcrSolution& sol, const Instance& inst) { return cost(sol.x, inst); }

FlowNetwork network_of(const ArcValues& x, std::size_t num_vertices) {
  FlowNetwork net(num_vertices);
  for (const auto& [arc, value] : x) {
    if (sgn(value) > 0) net.add_arc(arc.tail, arc.head, value);
  }
  return net;
}

MinCut arc_min_cut(const ArcValues& x, std::size_t num_vertices, std::span<const Vertex> sources,
                   std::span<const Vertex> sinks) {
  return min_cut(network_of(x, num_vertices), sources, sinks);
}

Verdict verify_primal(const BcrSolution& sol, const Instance& inst) {
  for (const auto& [r, xr] : sol.x) {
    if (!in_range(inst, r)) {
      Verdict v{VerdictKind::InvalidEntry};
      v.root = r;
      return v;
    }
    if (auto bad = check_arcs(xr, r, inst)) return *bad;
  }
  std::vector<Rational> sums(inst.pairs().size(), Rational(0));
  for (const auto& [r, zr] : sol.z) {
    for (const auto& [i, value] : zr) {
      if (!in_range(inst, r) || i >= inst.pairs().size()) {
        Verdict v{VerdictKind::InvalidEntry};
        v.root = r;
        v.pair = i;
        return v;
      }
      if (sgn(value) < 0) {
        Verdict v{VerdictKind::Negative};
        v.root = r;
        v.pair = i;
        v.lhs = value;
        return v;
      }
      sums[i] += value;
    }
  }
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (sums[i] != 1) {
      Verdict v{VerdictKind::BadZSum};
      v.pair = i;
      v.lhs = sums[i];
      v.rhs = 1;
      return v;
    }
  }

  for (const auto& [r, zr] : sol.z) {
    FlowNetwork net = network_of(sol.x_of(r), inst.num_vertices());
    const Vertex sink[] = {r};
    for (const auto& [i, value] : zr) {
      const auto& p = inst.pairs()[i];
      for (Vertex end : {p.s, p.t}) {
        if (end == r) continue;
        const Vertex source[] = {end};
        MinCut mc = min_cut(net, source, sink);
        if (mc.value < value) {
          Verdict v{VerdictKind::ViolatedCut};
          v.root = r;
          v.pair = i;
          v.cut = mc.source_side;
          v.lhs = mc.value;
          v.rhs = value;
          return v;
        }
      }
    }
  }
  return Verdict{};
}

Verdict verify_dual(const DualCertificate& cert, const Instance& inst) {
  const std::size_t n = inst.num_vertices();
  Rational total(0);
  for (const auto& [i, a] : cert.alpha) {
    if (i >= inst.pairs().size()) {
      Verdict v{VerdictKind::InvalidEntry};
      v.pair = i;
      return v;
    }
    total += a;
  }

  std::map<std::pair<Vertex, Arc>, Rational> load;
  std::map<std::pair<std::size_t, Vertex>, Rational> coverage;
  std::vector<char> member(n);
  for (const auto& e : cert.y) {
    Verdict invalid{VerdictKind::InvalidEntry};
    invalid.root = e.root;
    invalid.pair = e.pair;
    invalid.cut = e.set;
    if (!in_range(inst, e.root) || e.pair >= inst.pairs().size() || e.set.empty()) return invalid;
    std::fill(member.begin(), member.end(), 0);
    for (Vertex u : e.set) {
      if (!in_range(inst, u) || u == e.root || member[static_cast<std::size_t>(u)]) return invalid;
      member[static_cast<std::size_t>(u)] = 1;
    }
    const auto& p = inst.pairs()[e.pair];
    if (!member[static_cast<std::size_t>(p.s)] && !member[static_cast<std::size_t>(p.t)]) return invalid;
    if (sgn(e.value) < 0) {
      Verdict v{VerdictKind::Negative};
      v.root = e.root;
      v.pair = e.pair;
      v.cut = e.set;
      v.lhs = e.value;
      return v;
    }
    if (sgn(e.value) == 0) continue;
    coverage[{e.pair, e.root}] += e.value;
    for (Vertex u : e.set) {
      for (Vertex w : inst.neighbors(u)) {
        if (!member[static_cast<std::size_t>(w)]) load[{e.root, Arc{u, w}}] += e.value;
      }
    }
  }

  for (const auto& [key, value] : load) {
    const Rational& c = *inst.edge_cost(key.second.tail, key.second.head);
    if (value > c) {
      Verdict v{VerdictKind::EdgeOverload};
      v.root = key.first;
      v.arc = key.second;
      v.lhs = value;
      v.rhs = c;
      return v;
    }
  }
  for (std::size_t i = 0; i < inst.pairs().size(); ++i) {
    auto it = cert.alpha.find(i);
    if (it == cert.alpha.end() || sgn(it->second) <= 0) continue;
    for (Vertex r = 0; static_cast<std::size_t>(r) < n; ++r) {
      auto jt = coverage.find({i, r});
      Rational covered = jt == coverage.end() ? Rational(0) : jt->second;
      if (it->second > covered) {
        Verdict v{VerdictKind::AlphaUncovered};
        v.root = r;
        v.pair = i;
        v.lhs = it->second;
        v.rhs = covered;
        return v;
      }
    }
  }
  Verdict ok;
  ok.value = total;
  return ok;
}

Verdict verify_tree_bcr(const TreeBcrSolution& sol, std::span<const Vertex> terminals, const Instance& inst) {
  if (!in_range(inst, sol.root)) {
    Verdict v{VerdictKind::InvalidEntry};
    v.root = sol.root;
    return v;
  }
  if (auto bad = check_arcs(sol.x, sol.root, inst)) return *bad;
  FlowNetwork net = network_of(sol.x, inst.num_vertices());
  const Vertex sink[] = {sol.root};
  for (Vertex t : terminals) {
    if (t == sol.root) continue;
    const Vertex source[] = {t};
    MinCut mc = min_cut(net, source, sink);
    if (mc.value < 1) {
      Verdict v{VerdictKind::ViolatedCut};
      v.root = sol.root;
      v.cut = mc.source_side;
      v.lhs = mc.value;
      v.rhs = 1;
      return v;
    }
  }
  return Verdict{};
}

std::map<Edge, Rational> undirected_projection(const BcrSolution& sol) {
  std::map<Edge, Rational> out;
  for (const auto& [r, xr] : sol.x) {
    for (const auto& [arc, value] : xr) out[Edge::of(arc.tail, arc.head)] += value;
  }
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

bool is_half_integral(const BcrSolution& sol) {
  for (const auto& [r, xr] : sol.x) {
    for (const auto& [arc, value] : xr) {
      if (!is_half_integral(value)) return false;
    }
  }
  for (const auto& [r, zr] : sol.z) {
    for (const auto& [i, value] : zr) {
      if (!is_half_integral(value)) return false;
    }
  }
  return true;
}

BcrSolution parse_solution(std::istream& in, const Instance& inst) {
  BcrSolution sol;
  std::set<std::pair<Vertex, Arc>> seen_x;
  std::map<std::pair<Vertex, std::pair<Vertex, Vertex>>, int> z_count;
  detail::for_each_line(in, [&](const std::vector<std::string>& tok, int line_no) {
    if (tok[0] == "x") {
      detail::expect_tokens(tok, 5, line_no);
      Vertex r = parse_vertex(inst, tok[1], line_no);
      Arc arc = parse_arc(inst, tok[2], tok[3], line_no);
      if (!seen_x.insert({r, arc}).second) detail::parse_fail(line_no, "duplicate x entry");
      sol.set_x(r, arc, parse_value(tok[4], line_no));
    } else if (tok[0] == "z") {
      detail::expect_tokens(tok, 5, line_no);
      Vertex r = parse_vertex(inst, tok[1], line_no);
      Vertex a = parse_vertex(inst, tok[2], line_no);
      Vertex b = parse_vertex(inst, tok[3], line_no);
      int& k = z_count[{r, endpoint_key(a, b)}];
      std::size_t idx = parse_pair_ref(inst, tok[2], tok[3], k++, line_no);
      sol.set_z(r, idx, parse_value(tok[4], line_no));
    } else {
      detail::parse_fail(line_no, "unknown directive '" + tok[0] + "'");
    }
  });
  return sol;
}

BcrSolution parse_solution_string(std::string_view text, const Instance& inst) {
  std::istringstream in{std::string(text)};
  return parse_solution(in, inst);
}

void write_solution(std::ostream& out, const BcrSolution& sol, const Instance& inst) {
  for (const auto& [r, xr] : sol.x) {
    for (const auto& [arc, value] : xr) {
      out << "x " << inst.label(r) << ' ' << inst.label(arc.tail) << ' ' << inst.label(arc.head) << ' '
          << format_rational(value) << '\n';
    }
  }
  for (const auto& [r, zr] : sol.z) {
    write_pair_values(zr, inst, [&](const Pair& p, const Rational& value) {
      out << "z " << inst.label(r) << ' ' << inst.label(p.s) << ' ' << inst.label(p.t) << ' '
          << format_rational(value) << '\n';
    });
  }
}

std::string solution_to_string(const BcrSolution& sol, const Instance& inst) {
  std::ostringstream out;
  write_solution(out, sol, inst);
  return out.str();
}

TreeBcrSolution parse_tree_solution(std::istream& in, const Instance& inst) {
  TreeBcrSolution sol;
  bool has_root = false;
  detail::for_each_line(in, [&](const std::vector<std::string>& tok, int line_no) {
    if (tok[0] == "root") {
      detail::expect_tokens(tok, 2, line_no);
      if (has_root) detail::parse_fail(line_no, "duplicate root line");
      sol.root = parse_vertex(inst, tok[1], line_no);
      has_root = true;
    } else if (tok[0] == "x") {
      detail::expect_tokens(tok, 4, line_no);
      Arc arc = parse_arc(inst, tok[1], tok[2], line_no);
      if (sol.x.contains(arc)) detail::parse_fail(line_no, "duplicate x entry");
      Rational value = parse_value(tok[3], line_no);
      if (sgn(value) != 0) sol.x[arc] = value;
    } else {
      detail::parse_fail(line_no, "unknown directive '" + tok[0] + "'");
    }
  });
  if (!has_root) throw ParseError("tree solution has no root line");
  return sol;
}

void write_tree_solution(std::ostream& out, const TreeBcrSolution& sol, const Instance& inst) {
  out << "root " << inst.label(sol.root) << '\n';
  for (const auto& [arc, value] : sol.x) {
    out << "x " << inst.label(arc.tail) << ' ' << inst.label(arc.head) << ' ' << format_rational(value) << '\n';
  }
}

std::string tree_solution_to_string(const TreeBcrSolution& sol, const Instance& inst) {
  std::ostringstream out;
  write_tree_solution(out, sol, inst);
  return out.str();
}

DualCertificate parse_dual(std::istream& in, const Instance& inst) {
  DualCertificate cert;
  std::map<std::pair<Vertex, Vertex>, int> alpha_count;
  detail::for_each_line(in, [&](const std::vector<std::string>& tok, int line_no) {
    if (tok[0] == "alpha") {
      detail::expect_tokens(tok, 4, line_no);
      Vertex a = parse_vertex(inst, tok[1], line_no);
      Vertex b = parse_vertex(inst, tok[2], line_no);
      int& k = alpha_count[endpoint_key(a, b)];
      std::size_t idx = parse_pair_ref(inst, tok[1], tok[2], k++, line_no);
      cert.alpha[idx] = parse_value(tok[3], line_no);
    } else if (tok[0] == "y") {
      if (tok.size() < 7 || tok[5] != ":") detail::parse_fail(line_no, "expected 'y root s t value : members...'");
      DualEntry e;
      e.root = parse_vertex(inst, tok[1], line_no);
      e.pair = parse_pair_ref(inst, tok[2], tok[3], 0, line_no);
      e.value = parse_value(tok[4], line_no);
      for (std::size_t i = 6; i < tok.size(); ++i) e.set.push_back(parse_vertex(inst, tok[i], line_no));
      std::sort(e.set.begin(), e.set.end());
      if (std::adjacent_find(e.set.begin(), e.set.end()) != e.set.end()) {
        detail::parse_fail(line_no, "repeated member in y set");
      }
      cert.y.push_back(std::move(e));
    } else {
      detail::parse_fail(line_no, "unknown directive '" + tok[0] + "'");
    }
  });
  return cert;
}

void write_dual(std::ostream& out, const DualCertificate& cert, const Instance& inst) {
  write_pair_values(cert.alpha, inst, [&](const Pair& p, const Rational& value) {
    out << "alpha " << inst.label(p.s) << ' ' << inst.label(p.t) << ' ' << format_rational(value) << '\n';
  });
  for (const auto& e : cert.y) {
    const auto& p = inst.pairs()[e.pair];
    out << "y " << inst.label(e.root) << ' ' << inst.label(p.s) << ' ' << inst.label(p.t) << ' '
        << format_rational(e.value) << " :";
    for (Vertex u : e.set) out << ' ' << inst.label(u);
    out << '\n';
  }
}

std::string dual_to_string(const DualCertificate& cert, const Instance& inst) {
  std::ostringstream out;
  write_dual(out, cert, inst);
  return out.str();
}

}  // namespace bcr
