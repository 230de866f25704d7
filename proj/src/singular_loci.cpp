#include "hibicy/singular_loci.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace hibicy {

namespace {

// Chordless-cycle enumeration on the Hasse graph. Each induced cycle is
// produced exactly once: the start vertex is the smallest on the cycle and
// the second vertex is smaller than the last. Convexity and the bounds
// condition are checked on the completed vertex set.
struct CycleSearch {
  const BoundedPoset& ph;
  std::size_t cap;
  std::vector<std::vector<int>> found;  // vertex sequences
  std::vector<int> path;
  std::vector<bool> on_path;

  explicit CycleSearch(const BoundedPoset& p, std::size_t c)
      : ph(p), cap(c), on_path(p.vertex_count(), false) {}

  bool adjacent(int a, int b) const {
    const auto& nb = ph.neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  bool convex_subset(const std::vector<int>& vs) const {
    for (int a : vs)
      for (int b : vs) {
        if (!ph.less(a, b)) continue;
        for (int w = 0; w < ph.vertex_count(); ++w) {
          if (on_path[w]) continue;
          if (ph.less(a, w) && ph.less(w, b)) return false;
        }
      }
    return true;
  }

  void accept() {
    bool has_bottom = on_path[ph.bottom()], has_top = on_path[ph.top()];
    if (has_bottom && has_top) return;
    if (!convex_subset(path)) return;
    found.push_back(path);
    if (found.size() > cap)
      throw SizeGuardError("more than " + std::to_string(cap) +
                           " convex cycles; raise the cycle cap");
  }

  // Grows an induced path s = path[0], ..., path.back(). A new vertex may
  // touch the path only at its tip; touching the start closes a cycle (and
  // forbids further growth, since that adjacency would become a chord).
  void extend() {
    const int s = path.front();
    const int v = path.back();
    for (int w : ph.neighbors(v)) {
      if (w <= s || on_path[w]) continue;
      bool chord = false;
      for (size_t i = 1; i + 1 < path.size() && !chord; ++i)
        if (adjacent(w, path[i])) chord = true;
      if (chord) continue;
      const bool closes = adjacent(w, s);
      path.push_back(w);
      on_path[w] = true;
      if (closes) {
        if (path.size() >= 4 && path[1] < w) accept();
      } else {
        extend();
      }
      on_path[w] = false;
      path.pop_back();
    }
  }

  void run() {
    for (int s = 0; s < ph.vertex_count(); ++s) {
      std::fill(on_path.begin(), on_path.end(), false);
      on_path[s] = true;
      for (int x : ph.neighbors(s)) {
        if (x <= s) continue;
        path = {s, x};
        on_path[x] = true;
        extend();
        on_path[x] = false;
      }
    }
  }
};

int edge_between(const BoundedPoset& ph, int lower, int upper) {
  for (int e : ph.edges_up_from(lower))
    if (ph.edges()[e].upper == upper) return e;
  return -1;
}

// Applies the orientation convention and fills edge data for a vertex cycle.
ConvexCycle orient(const BoundedPoset& ph, std::vector<int> vs) {
  // vs starts at its minimal index already; pick the travel direction.
  const int s = vs[0];
  int next = vs[1], prev = vs.back();
  bool next_up = ph.less(s, next), prev_up = ph.less(s, prev);
  bool forward;
  if (next_up != prev_up) forward = next_up;
  else forward = next < prev;  // tie on orientation: smaller index first
  if (!forward) std::reverse(vs.begin() + 1, vs.end());

  ConvexCycle c;
  c.vertices = std::move(vs);
  const int k = c.size();
  for (int i = 0; i < k; ++i) {
    int a = c.vertices[i], b = c.vertices[(i + 1) % k];
    if (ph.less(a, b)) {
      c.edge_indices.push_back(edge_between(ph, a, b));
      c.directions.push_back(+1);
    } else {
      c.edge_indices.push_back(edge_between(ph, b, a));
      c.directions.push_back(-1);
    }
    assert(c.edge_indices.back() >= 0);
  }
  return c;
}

}  // namespace

std::vector<ConvexCycle> minimal_convex_cycles(const BoundedPoset& ph,
                                               int size_filter,
                                               std::size_t cap) {
  CycleSearch search(ph, cap);
  search.run();
  std::vector<ConvexCycle> out;
  for (auto& vs : search.found) {
    if (size_filter > 0 && static_cast<int>(vs.size()) != size_filter) continue;
    out.push_back(orient(ph, std::move(vs)));
  }
  std::sort(out.begin(), out.end(), [](const ConvexCycle& a, const ConvexCycle& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.vertices < b.vertices;
  });
  return out;
}

std::vector<ConvexCycle> lambda4(const BoundedPoset& ph, std::size_t cap) {
  return minimal_convex_cycles(ph, 4, cap);
}

Poset contract_cycle(const BoundedPoset& ph, const ConvexCycle& c) {
  return contract(ph, {c.vertices}).quotient;
}

std::vector<Int> relation_vector(const BoundedPoset& ph, const ConvexCycle& c) {
  std::vector<Int> rho(ph.edge_count(), 0);
  for (int i = 0; i < c.size(); ++i) rho[c.edge_indices[i]] += c.directions[i];
  return rho;
}

std::vector<std::vector<Int>> relation_vectors(const BoundedPoset& ph,
                                               std::size_t cap) {
  std::vector<std::vector<Int>> out;
  for (const ConvexCycle& c : lambda4(ph, cap))
    out.push_back(relation_vector(ph, c));
  return out;
}

long exceptional_rank(const BoundedPoset& ph, std::size_t cap) {
  return rank(relation_vectors(ph, cap));
}

void validate_cicy_degrees(const Poset& p, const std::vector<long>& degrees) {
  if (!p.is_connected())
    throw std::invalid_argument("poset must be connected");
  BoundedPoset ph(p);
  if (!ph.pure()) throw std::invalid_argument("poset must be pure");
  const long r = static_cast<long>(degrees.size());
  if (p.size() - r != 3)
    throw std::invalid_argument(
        "need |P| - r = 3: poset has " + std::to_string(p.size()) +
        " elements but " + std::to_string(r) + " degrees were given");
  long sum = 0;
  for (long d : degrees) {
    if (d <= 0) throw std::invalid_argument("degrees must be positive");
    sum += d;
  }
  if (sum != ph.height_top())
    throw std::invalid_argument(
        "degrees must sum to h_P = " + std::to_string(ph.height_top()) +
        ", got " + std::to_string(sum));
}

Int node_count(const Poset& p, const std::vector<long>& degrees,
               const EnumerationCaps& caps) {
  validate_cicy_degrees(p, degrees);
  BoundedPoset ph(p);
  Int per_cycle = 0;
  for (const ConvexCycle& c : lambda4(ph, caps.cycles))
    per_cycle += ideal_lattice(contract_cycle(ph, c), caps.ideals).chain_count;
  Int product = 1;
  for (long d : degrees) product *= d;
  return product * per_cycle;
}

SmoothabilityVerdict is_smoothable(const Poset& p,
                                   const std::vector<long>& degrees,
                                   const EnumerationCaps& caps) {
  validate_cicy_degrees(p, degrees);
  SmoothabilityVerdict v;
  Int product = 1;
  for (long d : degrees) product *= d;
  if (product > 1) {
    v.smoothable = true;
    v.reason = "product of degrees exceeds one, so a general smoothing exists";
    return v;
  }
  BoundedPoset ph(p);
  std::vector<ConvexCycle> cycles = lambda4(ph, caps.cycles);
  std::vector<RatVector> rho;
  for (const ConvexCycle& c : cycles) {
    auto r = relation_vector(ph, c);
    rho.emplace_back(r.begin(), r.end());
  }
  bool any_chain = false;
  for (size_t i = 0; i < cycles.size(); ++i) {
    Poset locus = contract_cycle(ph, cycles[i]);
    std::uint32_t all =
        locus.size() >= 32 ? ~0u : ((1u << locus.size()) - 1u);
    if (!locus.is_chain_subset(all)) continue;
    any_chain = true;
    std::vector<RatVector> others;
    for (size_t j = 0; j < cycles.size(); ++j)
      if (j != i) others.push_back(rho[j]);
    if (!in_span(rho[i], others)) {
      v.smoothable = false;
      v.reason = "a cycle contracting to a chain has a relation vector "
                 "independent of the others";
      v.witness = cycles[i];
      return v;
    }
  }
  v.smoothable = true;
  v.reason = any_chain
                 ? "every cycle contracting to a chain has a dependent "
                   "relation vector"
                 : "no cycle contracts to a chain";
  return v;
}

}  // namespace hibicy
