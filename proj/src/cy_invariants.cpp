#include "hibicy/cy_invariants.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hibicy {

CicySpec::CicySpec(Poset p, std::vector<long> d)
    : poset(std::move(p)), degrees(std::move(d)) {
  validate_cicy_degrees(poset, degrees);
  std::sort(degrees.begin(), degrees.end(), std::greater<long>());
}

long CicySpec::r1() const {
  return std::count(degrees.begin(), degrees.end(), 1L);
}

long CicySpec::height() const { return BoundedPoset(poset).height_top(); }

Int CicySpec::degree_product() const {
  Int p = 1;
  for (long d : degrees) p *= d;
  return p;
}

std::vector<std::vector<long>> ci_degree_tuples(const Poset& p) {
  if (!p.is_connected())
    throw std::invalid_argument("poset must be connected");
  BoundedPoset ph(p);
  if (!ph.pure()) throw std::invalid_argument("poset must be pure");
  const long r = p.size() - 3;
  const long h = ph.height_top();
  std::vector<std::vector<long>> out;
  if (r <= 0) return out;
  // Partitions of h into exactly r positive parts, descending within each
  // tuple and lexicographically descending across tuples.
  std::vector<long> parts;
  std::function<void(long, long)> rec = [&](long remaining, long maxpart) {
    const long k = r - static_cast<long>(parts.size());
    if (k == 0) {
      if (remaining == 0) out.push_back(parts);
      return;
    }
    for (long d = std::min(maxpart, remaining - (k - 1)); d >= 1; --d) {
      if (remaining - d < k - 1) continue;
      parts.push_back(d);
      rec(remaining - d, d);
      parts.pop_back();
    }
  };
  rec(h, h);
  return out;
}

namespace {

// Sum over subsets J of the degree multiset: callback(|J|, d_J).
void for_each_degree_subset(const std::vector<long>& degrees,
                            const std::function<void(int, long)>& fn) {
  const int r = static_cast<int>(degrees.size());
  for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
    long dj = 0;
    int size = 0;
    for (int j = 0; j < r; ++j)
      if ((mask >> j) & 1u) {
        dj += degrees[j];
        ++size;
      }
    fn(size, dj);
  }
}

}  // namespace

HodgePair hodge_small_resolution(const CicySpec& spec,
                                 const EnumerationCaps& caps) {
  const Poset& p = spec.poset;
  BoundedPoset ph(p);
  HodgePair out;
  out.h11 = ph.edge_count() - p.size();

  // Sections of the normal bundle by inclusion-exclusion over the Koszul
  // resolution of the complete intersection.
  Int sections = 0;
  for (long di : spec.degrees) {
    Int per_i = 0;
    for_each_degree_subset(spec.degrees, [&](int size, long dj) {
      Int term = count_points(p, di - dj);
      per_i += (size % 2 == 0) ? term : Int(-term);
    });
    sections += per_i;
  }

  // Automorphism corrections: interior counts of dilated facets.
  const int r = static_cast<int>(spec.degrees.size());
  Int corrections = 0;
  std::vector<Poset> facets;
  for (int e = 0; e < ph.edge_count(); ++e) facets.push_back(facet_poset(ph, e));
  for_each_degree_subset(spec.degrees, [&](int size, long dj) {
    Int inner = 0;
    for (const Poset& pe : facets) inner += count_interior(BoundedPoset(pe), dj);
    corrections += ((r - size) % 2 == 0) ? inner : Int(-inner);
  });

  out.h12 = sections - corrections - p.size();

  // Closed-form cross-check in the all-ones, no-singleton-summand regime.
  StructureSummary st = structure(p);
  if (spec.r1() == spec.r() && !st.has_singleton_summand) {
    const long h = spec.height();
    Int jp = ideal_lattice(p, caps.ideals).size();
    Int simplified = h * (jp - h) - p.size();
    for (const Poset& pe : facets)
      simplified -= count_interior(BoundedPoset(pe), h);
    if (simplified != out.h12) {
      std::ostringstream os;
      os << "deformation count disagrees with its closed form: " << out.h12
         << " vs " << simplified;
      throw GateError(os.str());
    }
  }
  return out;
}

HodgePair smoothed_hodge(const CicySpec& spec, const EnumerationCaps& caps) {
  SmoothabilityVerdict verdict = is_smoothable(spec.poset, spec.degrees, caps);
  if (!verdict.smoothable)
    throw std::invalid_argument("no smoothing exists: " + verdict.reason);
  BoundedPoset ph(spec.poset);
  HodgePair y = hodge_small_resolution(spec, caps);
  long rk = exceptional_rank(ph, caps.cycles);
  Int dp = node_count(spec.poset, spec.degrees, caps);
  HodgePair x;
  x.h11 = y.h11 - rk;
  x.h12 = y.h12 + dp - rk;
  // Structural restatement of the Picard-rank-one criterion.
  const bool rank_maximal = rk == ph.edge_count() - spec.poset.size() - 1;
  if ((x.h11 == 1) != rank_maximal)
    throw GateError("Picard rank and exceptional rank criteria disagree");
  return x;
}

std::string describe_cycle(const BoundedPoset& ph, const ConvexCycle& c) {
  std::string out = "(";
  for (int i = 0; i < c.size(); ++i) {
    if (i > 0) out += c.directions[i - 1] > 0 ? " < " : " > ";
    out += ph.vertex_name(c.vertices[i]);
  }
  out += ")";
  return out;
}

InvariantReport invariant_report(const CicySpec& spec,
                                 const EnumerationCaps& caps) {
  const Poset& p = spec.poset;
  BoundedPoset ph(p);
  IdealLattice lat = ideal_lattice(p, caps.ideals);

  InvariantReport rep;
  rep.degrees = spec.degrees;
  rep.ideal_count = lat.size();
  rep.chain_count = lat.chain_count;
  rep.edge_count = ph.edge_count();
  HodgePair y = hodge_small_resolution(spec, caps);
  rep.h11_Y = y.h11;
  rep.h12_Y = y.h12;
  rep.dp = node_count(p, spec.degrees, caps);
  rep.rk = exceptional_rank(ph, caps.cycles);
  SmoothabilityVerdict verdict = is_smoothable(p, spec.degrees, caps);
  rep.smoothable = verdict.smoothable;
  rep.smooth_reason = verdict.reason;
  if (verdict.witness) rep.witness = describe_cycle(ph, *verdict.witness);
  rep.caveat =
      "torsion in the homology of the smoothing is not computed; "
      "degree and c2.H classify these threefolds only modulo torsion";

  if (!rep.smoothable) {
    rep.partial_reason = "no smoothing: " + rep.smooth_reason;
    return rep;
  }
  HodgePair x = smoothed_hodge(spec, caps);
  rep.h11_X = x.h11;
  rep.h12_X = x.h12;
  rep.chi_X = 2 * (Int(x.h11) - x.h12);

  if (x.h11 != 1) {
    rep.partial_reason =
        "degree and c2.H formulas assume Picard rank one, but h11(X) = " +
        std::to_string(x.h11);
    return rep;
  }
  rep.deg_X = rep.chain_count * spec.degree_product();
  // chi(O(1)) = |J| - r1 reduces the second Chern class pairing to counts.
  Int chi_o1 = rep.ideal_count - spec.r1();
  rep.c2H = 12 * chi_o1 - 2 * *rep.deg_X;
  if ((*rep.c2H + 2 * *rep.deg_X) % 12 != 0)
    throw GateError("c2.H + 2 deg is not divisible by 12");
  return rep;
}

}  // namespace hibicy
