#include "hibicy/poset.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace hibicy {

namespace {

constexpr int kMaxPosetSize = 30;  // subsets of P-hat must fit in 32 bits

int popcount(std::uint32_t s) { return std::popcount(s); }

}  // namespace

Poset Poset::from_relations(std::vector<std::string> names,
                            const std::vector<std::pair<int, int>>& less) {
  const int n = static_cast<int>(names.size());
  if (n > kMaxPosetSize)
    throw SizeGuardError("poset has " + std::to_string(n) +
                         " elements; the limit is " +
                         std::to_string(kMaxPosetSize));
  {
    auto sorted = names;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end())
      throw ParseError("duplicate element name '" + *dup + "'");
  }
  std::vector<std::uint32_t> up(n, 0);
  for (auto [a, b] : less) {
    assert(a >= 0 && a < n && b >= 0 && b < n);
    if (a == b) throw ParseError("element '" + names[a] + "' related to itself");
    up[a] |= 1u << b;
  }
  // Transitive closure by reachability, then irreflexivity check.
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      if ((up[a] >> k) & 1u) up[a] |= up[k];
  for (int a = 0; a < n; ++a)
    if ((up[a] >> a) & 1u)
      throw ParseError("relation cycle through element '" + names[a] + "'");

  Poset p;
  p.names_ = std::move(names);
  p.up_ = std::move(up);
  p.down_.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((p.up_[a] >> b) & 1u) p.down_[b] |= 1u << a;
  p.upper_.assign(n, {});
  p.lower_.assign(n, {});
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (!p.less(a, b)) continue;
      // (a, b) is a cover iff nothing sits strictly between.
      if ((p.up_[a] & p.down_[b]) == 0) {
        p.covers_.emplace_back(a, b);
        p.upper_[a].push_back(b);
        p.lower_[b].push_back(a);
      }
    }
  }
  std::sort(p.covers_.begin(), p.covers_.end());
  return p;
}

bool Poset::is_connected() const {
  const int n = size();
  if (n == 0) return true;
  std::uint32_t seen = 1u;
  std::vector<int> stack = {0};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : upper_[v])
      if (!((seen >> w) & 1u)) { seen |= 1u << w; stack.push_back(w); }
    for (int w : lower_[v])
      if (!((seen >> w) & 1u)) { seen |= 1u << w; stack.push_back(w); }
  }
  return popcount(seen) == n;
}

bool Poset::is_ideal(std::uint32_t s) const {
  for (int v = 0; v < size(); ++v)
    if ((s >> v) & 1u)
      if ((down_[v] & ~s) != 0) return false;
  return true;
}

bool Poset::is_antichain(std::uint32_t s) const {
  for (int a = 0; a < size(); ++a)
    if ((s >> a) & 1u)
      if ((up_[a] & s) != 0) return false;
  return true;
}

bool Poset::is_chain_subset(std::uint32_t s) const {
  for (int a = 0; a < size(); ++a) {
    if (!((s >> a) & 1u)) continue;
    for (int b = a + 1; b < size(); ++b)
      if ((s >> b) & 1u && !comparable(a, b)) return false;
  }
  return true;
}

bool Poset::is_convex(std::uint32_t s) const {
  for (int a = 0; a < size(); ++a) {
    if (!((s >> a) & 1u)) continue;
    for (int b = 0; b < size(); ++b) {
      if (!((s >> b) & 1u) || !less(a, b)) continue;
      if ((up_[a] & down_[b] & ~s) != 0) return false;
    }
  }
  return true;
}

Poset Poset::induced(std::uint32_t s) const {
  std::vector<int> keep;
  for (int v = 0; v < size(); ++v)
    if ((s >> v) & 1u) keep.push_back(v);
  std::vector<int> pos(size(), -1);
  std::vector<std::string> sub_names;
  for (size_t i = 0; i < keep.size(); ++i) {
    pos[keep[i]] = static_cast<int>(i);
    sub_names.push_back(names_[keep[i]]);
  }
  std::vector<std::pair<int, int>> rel;
  for (int a : keep)
    for (int b : keep)
      if (less(a, b)) rel.emplace_back(pos[a], pos[b]);
  return from_relations(std::move(sub_names), rel);
}

namespace {

// Appends primes to names from `extra` until they avoid everything in `used`.
std::vector<std::string> deconflict(const std::vector<std::string>& used,
                                    std::vector<std::string> extra) {
  std::unordered_map<std::string, bool> taken;
  for (const auto& s : used) taken[s] = true;
  for (auto& s : extra) {
    while (taken.count(s)) s += "'";
    taken[s] = true;
  }
  return extra;
}

}  // namespace

Poset disjoint_union(const Poset& a, const Poset& b) {
  std::vector<std::string> names = a.names();
  auto bn = deconflict(names, b.names());
  names.insert(names.end(), bn.begin(), bn.end());
  std::vector<std::pair<int, int>> rel;
  for (auto [x, y] : a.covers()) rel.emplace_back(x, y);
  for (auto [x, y] : b.covers()) rel.emplace_back(x + a.size(), y + a.size());
  return Poset::from_relations(std::move(names), rel);
}

Poset ordinal_sum(const Poset& a, const Poset& b) {
  std::vector<std::string> names = a.names();
  auto bn = deconflict(names, b.names());
  names.insert(names.end(), bn.begin(), bn.end());
  std::vector<std::pair<int, int>> rel;
  for (auto [x, y] : a.covers()) rel.emplace_back(x, y);
  for (auto [x, y] : b.covers()) rel.emplace_back(x + a.size(), y + a.size());
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < b.size(); ++y) rel.emplace_back(x, y + a.size());
  return Poset::from_relations(std::move(names), rel);
}

StructureSummary structure(const Poset& p) {
  BoundedPoset bp(p);
  StructureSummary s;
  s.connected = p.is_connected();
  s.pure = bp.pure();
  s.height = bp.height_top();
  s.heights.resize(p.size());
  for (int v = 0; v < p.size(); ++v) s.heights[v] = bp.height(v);
  const std::uint32_t all = p.size() >= 32 ? ~0u : ((1u << p.size()) - 1u);
  for (int v = 0; v < p.size(); ++v) {
    std::uint32_t comp = p.up_mask(v) | p.down_mask(v) | (1u << v);
    if (comp == all) { s.has_singleton_summand = true; break; }
  }
  return s;
}

BoundedPoset::BoundedPoset(Poset p) : p_(std::move(p)) {
  const int n = p_.size();
  const int bot = n, top = n + 1;
  std::vector<Edge> e;
  for (auto [a, b] : p_.covers()) e.push_back({b, a});
  for (int v = 0; v < n; ++v) {
    if (p_.lower_covers(v).empty()) e.push_back({v, bot});
    if (p_.upper_covers(v).empty()) e.push_back({top, v});
  }
  if (n == 0) e.push_back({top, bot});
  std::sort(e.begin(), e.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.lower, x.upper) < std::tie(y.lower, y.upper);
  });
  edges_ = std::move(e);

  up_edges_.assign(n + 2, {});
  down_edges_.assign(n + 2, {});
  neighbors_.assign(n + 2, {});
  for (int i = 0; i < edge_count(); ++i) {
    up_edges_[edges_[i].lower].push_back(i);
    down_edges_[edges_[i].upper].push_back(i);
    neighbors_[edges_[i].lower].push_back(edges_[i].upper);
    neighbors_[edges_[i].upper].push_back(edges_[i].lower);
  }
  for (auto& nb : neighbors_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  // Longest-path heights; vertices in index order are not topological, so
  // relax along edges until stable (the Hasse diagram is tiny).
  height_.assign(n + 2, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Edge& ed : edges_)
      if (height_[ed.upper] < height_[ed.lower] + 1) {
        height_[ed.upper] = height_[ed.lower] + 1;
        changed = true;
      }
  }
  coheight_.assign(n + 2, 0);
  changed = true;
  while (changed) {
    changed = false;
    for (const Edge& ed : edges_)
      if (coheight_[ed.lower] < coheight_[ed.upper] + 1) {
        coheight_[ed.lower] = coheight_[ed.upper] + 1;
        changed = true;
      }
  }
  pure_ = true;
  for (const Edge& ed : edges_)
    if (height_[ed.upper] != height_[ed.lower] + 1) { pure_ = false; break; }
}

std::string BoundedPoset::vertex_name(int v) const {
  if (v == bottom()) return "0^";
  if (v == top()) return "1^";
  return p_.name(v);
}

bool BoundedPoset::less(int a, int b) const {
  if (a == b) return false;
  if (a == bottom()) return true;   // b != a
  if (b == top()) return true;
  if (b == bottom() || a == top()) return false;
  return p_.less(a, b);
}

bool BoundedPoset::leq(int a, int b) const { return a == b || less(a, b); }

IntMatrix BoundedPoset::delta_matrix() const {
  IntMatrix m(edge_count(), std::vector<Int>(n(), 0));
  for (int i = 0; i < edge_count(); ++i) {
    if (edges_[i].lower < n()) m[i][edges_[i].lower] += 1;
    if (edges_[i].upper < n()) m[i][edges_[i].upper] -= 1;
  }
  return m;
}

int IdealLattice::index_of(std::uint32_t mask) const {
  auto cmp = [](std::uint32_t x, std::uint32_t y) {
    return std::tuple(std::popcount(x), x) < std::tuple(std::popcount(y), y);
  };
  auto it = std::lower_bound(ideals.begin(), ideals.end(), mask, cmp);
  if (it == ideals.end() || *it != mask) return -1;
  return static_cast<int>(it - ideals.begin());
}

IdealLattice ideal_lattice(const Poset& p, std::size_t cap) {
  const int n = p.size();
  if (n > kMaxIdealPosetSize)
    throw SizeGuardError(
        "ideal enumeration limited to " + std::to_string(kMaxIdealPosetSize) +
        " elements; poset has " + std::to_string(n));
  std::vector<std::uint32_t> found;
  std::unordered_map<std::uint32_t, bool> seen;
  std::queue<std::uint32_t> work;
  seen[0] = true;
  work.push(0);
  found.push_back(0);
  while (!work.empty()) {
    std::uint32_t s = work.front();
    work.pop();
    for (int v = 0; v < n; ++v) {
      if ((s >> v) & 1u) continue;
      if ((p.down_mask(v) & ~s) != 0) continue;  // not addable yet
      std::uint32_t t = s | (1u << v);
      if (seen.emplace(t, true).second) {
        found.push_back(t);
        if (found.size() > cap)
          throw SizeGuardError("ideal lattice exceeds cap of " +
                               std::to_string(cap));
        work.push(t);
      }
    }
  }
  std::sort(found.begin(), found.end(), [](std::uint32_t x, std::uint32_t y) {
    return std::tuple(std::popcount(x), x) < std::tuple(std::popcount(y), y);
  });

  IdealLattice lat;
  lat.ideals = std::move(found);
  lat.upper.assign(lat.ideals.size(), {});
  for (int i = 0; i < lat.size(); ++i) {
    std::uint32_t s = lat.ideals[i];
    for (int v = 0; v < n; ++v) {
      if ((s >> v) & 1u) continue;
      if ((p.down_mask(v) & ~s) != 0) continue;
      int j = lat.index_of(s | (1u << v));
      assert(j >= 0);
      lat.upper[i].push_back(j);
    }
  }
  // Maximal chains of J(P): path count from the empty ideal to the full one.
  // The (popcount, mask) order is topological for the covering digraph.
  std::vector<Int> ways(lat.size(), 0);
  ways[0] = 1;
  for (int i = 0; i < lat.size(); ++i)
    for (int j : lat.upper[i]) ways[j] += ways[i];
  lat.chain_count = ways[lat.size() - 1];
  return lat;
}

namespace {

Int linear_extension_backtrack(const Poset& p, std::uint32_t placed) {
  const std::uint32_t all = p.size() >= 32 ? ~0u : ((1u << p.size()) - 1u);
  if (placed == all) return 1;
  Int total = 0;
  for (int v = 0; v < p.size(); ++v) {
    if ((placed >> v) & 1u) continue;
    if ((p.down_mask(v) & ~placed) != 0) continue;
    total += linear_extension_backtrack(p, placed | (1u << v));
  }
  return total;
}

}  // namespace

Int linear_extension_count(const Poset& p) {
  if (p.size() > 12)
    throw SizeGuardError("direct linear-extension enumeration limited to 12 "
                         "elements; poset has " + std::to_string(p.size()));
  return linear_extension_backtrack(p, 0);
}

std::vector<HibiQuadric> hibi_quadrics(const IdealLattice& lat) {
  if (lat.size() > 20000)
    throw SizeGuardError("quadric enumeration needs |J|^2 pairs; |J| = " +
                         std::to_string(lat.size()) + " is too large");
  std::vector<HibiQuadric> out;
  for (int i = 0; i < lat.size(); ++i) {
    for (int j = i + 1; j < lat.size(); ++j) {
      std::uint32_t a = lat.ideals[i], b = lat.ideals[j];
      if ((a & ~b) == 0 || (b & ~a) == 0) continue;  // comparable
      HibiQuadric q;
      q.a = i;
      q.b = j;
      q.join = lat.index_of(a | b);
      q.meet = lat.index_of(a & b);
      assert(q.join >= 0 && q.meet >= 0);
      out.push_back(q);
    }
  }
  return out;
}

// ---- Parsing --------------------------------------------------------------

namespace {

struct Token {
  std::string text;
  int line = 0, col = 0;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> tokens;
  int line = 1, col = 0;
  Token cur;
  auto flush = [&]() {
    if (!cur.text.empty()) tokens.push_back(cur);
    cur = Token{};
  };
  bool comment = false;
  for (char c : text) {
    ++col;
    if (c == '\n') {
      flush();
      comment = false;
      ++line;
      col = 0;
      continue;
    }
    if (comment) continue;
    if (c == '#') {
      flush();
      comment = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
      continue;
    }
    if (c == ';') {
      flush();
      tokens.push_back({";", line, col});
      continue;
    }
    if (cur.text.empty()) {
      cur.line = line;
      cur.col = col;
    }
    cur.text += c;
  }
  flush();
  return tokens;
}

[[noreturn]] void parse_fail(const std::string& origin, const Token& t,
                             const std::string& msg) {
  std::ostringstream os;
  os << (origin.empty() ? "input" : origin) << ":" << t.line << ":" << t.col
     << ": " << msg;
  throw ParseError(os.str());
}

}  // namespace

Poset parse_poset(const std::string& text, const std::string& origin) {
  auto tokens = tokenize(text);
  std::vector<std::string> names;
  std::unordered_map<std::string, int> index;
  size_t i = 0;
  bool terminated = false;
  for (; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.text == ";") {
      terminated = true;
      ++i;
      break;
    }
    if (t.text.find('<') != std::string::npos)
      parse_fail(origin, t, "element name '" + t.text +
                                "' before ';' must not contain '<'");
    if (index.count(t.text))
      parse_fail(origin, t, "duplicate element name '" + t.text + "'");
    index[t.text] = static_cast<int>(names.size());
    names.push_back(t.text);
  }
  if (!terminated) {
    Token end{";", 0, 0};
    if (!tokens.empty()) end = tokens.back();
    parse_fail(origin, end, "missing ';' after the element list");
  }
  std::vector<std::pair<int, int>> rel;
  for (; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    size_t lt = t.text.find('<');
    if (lt == std::string::npos || t.text.find('<', lt + 1) != std::string::npos)
      parse_fail(origin, t,
                 "expected a relation of the form a<b, got '" + t.text + "'");
    std::string a = t.text.substr(0, lt), b = t.text.substr(lt + 1);
    if (a.empty() || b.empty())
      parse_fail(origin, t, "relation '" + t.text + "' is missing a side");
    auto ia = index.find(a);
    if (ia == index.end()) parse_fail(origin, t, "unknown element '" + a + "'");
    auto ib = index.find(b);
    if (ib == index.end()) parse_fail(origin, t, "unknown element '" + b + "'");
    if (ia->second == ib->second)
      parse_fail(origin, t, "element '" + a + "' related to itself");
    rel.emplace_back(ia->second, ib->second);
  }
  try {
    return Poset::from_relations(std::move(names), rel);
  } catch (const ParseError& e) {
    throw ParseError((origin.empty() ? "input" : origin) + ": " + e.what());
  }
}

namespace {

Poset make_builtin(const std::string& key) {
  auto mk = [](std::vector<std::string> names, const char* relations) {
    std::string text;
    for (const auto& n : names) text += n + " ";
    text += "; ";
    text += relations;
    return parse_poset(text);
  };
  if (key == "p1")
    return mk({"a", "b", "c", "x", "y", "z"},
              "a<y a<z b<x b<z c<x c<y");
  if (key == "p2")
    return mk({"u10", "u30", "u01", "u21", "u12", "u32", "u03", "u23"},
              "u10<u01 u10<u21 u30<u21 u01<u12 u21<u12 u21<u32 "
              "u12<u03 u12<u23 u32<u23");
  if (key == "p3")
    return mk({"u00", "u20", "u11", "u31", "u02", "u22", "u42"},
              "u00<u11 u20<u11 u20<u31 u11<u02 u11<u22 u31<u22 u31<u42");
  if (key == "p4")
    return mk({"a", "b", "c", "x", "y", "z"}, "a<x b<x b<y c<y c<z");
  if (key == "p5")
    return mk({"p", "q", "x", "y", "z"}, "p<x p<y q<y q<z");
  if (key == "p6") return ordinal_sum(make_builtin("n"), make_builtin("n"));
  if (key == "n") return mk({"a", "b", "c", "d"}, "a<b c<b c<d");
  if (key == "v") return mk({"u", "v", "w"}, "w<u w<v");
  if (key == "unsm")
    return mk({"u02", "u11", "u13", "u22", "u31", "u33", "u42"},
              "u11<u02 u11<u22 u31<u02 u31<u22 u31<u42 "
              "u02<u13 u22<u13 u22<u33 u42<u33");
  throw ParseError("unknown poset name '" + key + "'");
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Parses "chain:<n>" / "antichain:<n>"; returns -1 when the prefix differs.
long parse_sized(const std::string& key, const std::string& prefix) {
  if (key.size() <= prefix.size() + 1 || key.compare(0, prefix.size(), prefix) != 0 ||
      key[prefix.size()] != ':')
    return -1;
  const std::string num = key.substr(prefix.size() + 1);
  for (char c : num)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("bad size in poset name '" + key + "'");
  long n = std::stol(num);
  return n;
}

}  // namespace

std::vector<std::string> builtin_poset_names() {
  return {"P1", "P2", "P3", "P4", "P5", "P6", "N", "V", "UNSM"};
}

bool is_builtin_poset_name(const std::string& name) {
  std::string key = lower(name);
  for (const auto& b : builtin_poset_names())
    if (key == lower(b)) return true;
  try {
    return parse_sized(key, "chain") >= 0 || parse_sized(key, "antichain") >= 0;
  } catch (const ParseError&) {
    return true;  // right prefix, bad number: claim it so resolution reports it
  }
}

Poset builtin_poset(const std::string& name) {
  std::string key = lower(name);
  long n = parse_sized(key, "chain");
  if (n >= 0) {
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> rel;
    for (long i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    for (long i = 0; i + 1 < n; ++i) rel.emplace_back(i, i + 1);
    return Poset::from_relations(std::move(names), rel);
  }
  n = parse_sized(key, "antichain");
  if (n >= 0) {
    std::vector<std::string> names;
    for (long i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return Poset::from_relations(std::move(names), {});
  }
  return make_builtin(key);
}

Poset resolve_poset(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    const std::string path = arg.substr(1);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read poset file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_poset(buf.str(), path);
  }
  return builtin_poset(arg);
}

}  // namespace hibicy
