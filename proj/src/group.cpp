#include "ncfa/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

#include "ncfa/errors.hpp"
#include "ncfa/rng.hpp"

namespace ncfa {

std::string GroupSpec::label() const {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i > 0) out += 'x';
    out += factors[i].family;
    out += std::to_string(factors[i].n);
  }
  return out;
}

GroupSpec parse_group_spec(std::string_view text) {
  if (text.empty()) throw ParseError("empty group specification");
  GroupSpec spec;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c)))
      throw ParseError("whitespace is not allowed in a group specification");
    const char family = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (family != 'C' && family != 'D' && family != 'S')
      throw ParseError("unsupported group family '" + std::string(1, c) +
                       "' (expected C<n>, D<n> or S<n>)");
    ++pos;
    std::size_t digits = 0;
    long n = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      n = n * 10 + (text[pos] - '0');
      if (n > 100000) throw ParseError("group parameter out of range");
      ++pos;
      ++digits;
    }
    if (digits == 0) throw ParseError("missing integer parameter after family letter");
    spec.factors.push_back({family, static_cast<int>(n)});
    if (pos < text.size()) {
      const char sep = static_cast<char>(std::tolower(static_cast<unsigned char>(text[pos])));
      if (sep != 'x') throw ParseError("expected 'x' between group factors");
      ++pos;
      if (pos == text.size()) throw ParseError("trailing 'x' in group specification");
    }
  }
  return spec;
}

namespace {

using Data = FiniteGroup::Data;

FiniteGroup finish(std::shared_ptr<Data> d) {
  d->label = d->spec.label();
  // Inverse map from the table.
  d->inverse.assign(d->order, -1);
  for (int x = 0; x < d->order; ++x) {
    for (int y = 0; y < d->order; ++y) {
      if (d->table[static_cast<std::size_t>(x) * d->order + y] == d->identity) {
        d->inverse[x] = y;
        break;
      }
    }
    if (d->inverse[x] < 0) throw VerificationError("element without inverse in Cayley table");
  }
  FiniteGroup g{std::shared_ptr<const Data>(std::move(d))};
  validate_group(g);
  return g;
}

}  // namespace

bool FiniteGroup::is_abelian() const {
  for (int x = 0; x < order(); ++x)
    for (int y = x + 1; y < order(); ++y)
      if (mul(x, y) != mul(y, x)) return false;
  return true;
}

FiniteGroup make_cyclic(int n) {
  if (n < 1) throw InvalidArgument("make_cyclic: n must be >= 1");
  auto d = std::make_shared<Data>();
  d->order = n;
  d->identity = 0;
  d->spec.factors = {{'C', n}};
  d->table.resize(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) d->table[static_cast<std::size_t>(x) * n + y] = (x + y) % n;
  return finish(std::move(d));
}

FiniteGroup make_dihedral(int n) {
  if (n < 1) throw InvalidArgument("make_dihedral: n must be >= 1");
  auto d = std::make_shared<Data>();
  const int order = 2 * n;
  d->order = order;
  d->identity = 0;
  d->spec.factors = {{'D', n}};
  d->table.resize(static_cast<std::size_t>(order) * order);
  // (s^j r^k)(s^j' r^k') = s^(j xor j') r^(k' + (-1)^j' k mod n)
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < n; ++k) {
      const int x = j * n + k;
      for (int j2 = 0; j2 < 2; ++j2) {
        for (int k2 = 0; k2 < n; ++k2) {
          const int y = j2 * n + k2;
          const int jj = j ^ j2;
          const int kk = ((j2 ? -k : k) + k2 % n + 2 * n) % n;
          d->table[static_cast<std::size_t>(x) * order + y] = jj * n + kk;
        }
      }
    }
  }
  return finish(std::move(d));
}

int perm_rank(std::span<const int> one_line) {
  const int n = static_cast<int>(one_line.size());
  int rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (one_line[j] < one_line[i]) ++smaller;
    int fact = 1;
    for (int k = 2; k <= n - 1 - i; ++k) fact *= k;
    rank += smaller * fact;
  }
  return rank;
}

std::vector<int> perm_unrank(int n, int rank) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  std::vector<int> out;
  out.reserve(n);
  int fact = 1;
  for (int k = 2; k <= n - 1; ++k) fact *= k;
  for (int i = 0; i < n; ++i) {
    const int idx = (n - 1 - i > 0) ? rank / fact : 0;
    rank = (n - 1 - i > 0) ? rank % fact : 0;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + idx);
    if (n - 1 - i > 1) fact /= (n - 1 - i);
  }
  return out;
}

FiniteGroup make_symmetric(int n) {
  if (n < 1 || n > 7) throw InvalidArgument("make_symmetric: n must be in [1, 7]");
  int order = 1;
  for (int k = 2; k <= n; ++k) order *= k;

  std::vector<std::vector<int>> perms;
  perms.reserve(order);
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));  // lexicographic order

  auto d = std::make_shared<Data>();
  d->order = order;
  d->identity = 0;
  d->spec.factors = {{'S', n}};
  d->table.resize(static_cast<std::size_t>(order) * order);
  std::vector<int> comp(n);
  for (int x = 0; x < order; ++x) {
    for (int y = 0; y < order; ++y) {
      // (x y)(i) = x(y(i))
      for (int i = 0; i < n; ++i) comp[i] = perms[x][perms[y][i]];
      d->table[static_cast<std::size_t>(x) * order + y] = perm_rank(comp);
    }
  }
  return finish(std::move(d));
}

FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2) {
  const int n1 = g1.order(), n2 = g2.order();
  auto d = std::make_shared<Data>();
  d->order = n1 * n2;
  d->identity = g1.identity() * n2 + g2.identity();
  d->spec.factors = g1.spec().factors;
  d->spec.factors.insert(d->spec.factors.end(), g2.spec().factors.begin(),
                         g2.spec().factors.end());
  d->table.resize(static_cast<std::size_t>(d->order) * d->order);
  for (int a1 = 0; a1 < n1; ++a1)
    for (int b1 = 0; b1 < n2; ++b1)
      for (int a2 = 0; a2 < n1; ++a2)
        for (int b2 = 0; b2 < n2; ++b2) {
          const int x = a1 * n2 + b1, y = a2 * n2 + b2;
          d->table[static_cast<std::size_t>(x) * d->order + y] =
              g1.mul(a1, a2) * n2 + g2.mul(b1, b2);
        }
  return finish(std::move(d));
}

FiniteGroup make_group(const GroupSpec& spec) {
  if (spec.factors.empty()) throw ParseError("empty group specification");
  auto build_atom = [](const GroupSpec::Atom& a) {
    switch (a.family) {
      case 'C': return make_cyclic(a.n);
      case 'D': return make_dihedral(a.n);
      case 'S': return make_symmetric(a.n);
      default: throw ParseError("unsupported group family");
    }
  };
  FiniteGroup g = build_atom(spec.factors[0]);
  for (std::size_t i = 1; i < spec.factors.size(); ++i)
    g = direct_product(g, build_atom(spec.factors[i]));
  return g;
}

FiniteGroup make_group(std::string_view spec_text) { return make_group(parse_group_spec(spec_text)); }

void validate_group(const FiniteGroup& g, std::uint64_t seed) {
  const int n = g.order();
  if (n < 1) throw VerificationError("group order must be positive");

  // Latin square: each row and column is a permutation of 0..n-1.
  std::vector<char> seen(n);
  for (int x = 0; x < n; ++x) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int y = 0; y < n; ++y) {
      const int z = g.mul(x, y);
      if (z < 0 || z >= n || seen[z]) throw VerificationError("Cayley table row is not a permutation");
      seen[z] = 1;
    }
  }
  for (int y = 0; y < n; ++y) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int x = 0; x < n; ++x) {
      const int z = g.mul(x, y);
      if (seen[z]) throw VerificationError("Cayley table column is not a permutation");
      seen[z] = 1;
    }
  }

  const int e = g.identity();
  for (int x = 0; x < n; ++x) {
    if (g.mul(e, x) != x || g.mul(x, e) != x) throw VerificationError("identity axiom violated");
    if (g.mul(x, g.inverse(x)) != e) throw VerificationError("inverse axiom violated");
  }

  // Associativity: O(n^3) is fine up to the subgroup-enumeration cap; beyond
  // that trust the constructor modulo a seeded random sample.
  if (n <= 48) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)))
            throw VerificationError("associativity violated");
  } else {
    Rng rng(seed);
    for (int trial = 0; trial < 10000; ++trial) {
      const int x = rng.uniform_int(0, n - 1);
      const int y = rng.uniform_int(0, n - 1);
      const int z = rng.uniform_int(0, n - 1);
      if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)))
        throw VerificationError("associativity violated (sampled)");
    }
  }
}

bool Subgroup::contains(int x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

Subgroup subgroup_from_generators(const FiniteGroup& g, const std::vector<int>& generators) {
  const int n = g.order();
  for (int x : generators)
    if (x < 0 || x >= n) throw InvalidArgument("generator index out of range");

  std::vector<char> in(n, 0);
  std::deque<int> queue;
  auto push = [&](int x) {
    if (!in[x]) {
      in[x] = 1;
      queue.push_back(x);
    }
  };
  push(g.identity());
  for (int x : generators) push(x);

  // Closure under multiplication; in a finite group this also yields
  // inverses (powers of each element cycle through the identity).
  std::vector<int> closed;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    closed.push_back(x);
    for (int y : closed) {
      push(g.mul(x, y));
      push(g.mul(y, x));
    }
  }

  Subgroup h;
  for (int x = 0; x < n; ++x)
    if (in[x]) h.members.push_back(x);
  return h;
}

bool is_subgroup(const FiniteGroup& g, const Subgroup& h) {
  if (h.members.empty()) return false;
  if (!std::is_sorted(h.members.begin(), h.members.end())) return false;
  if (!h.contains(g.identity())) return false;
  for (int x : h.members) {
    if (x < 0 || x >= g.order()) return false;
    if (!h.contains(g.inverse(x))) return false;
    for (int y : h.members)
      if (!h.contains(g.mul(x, y))) return false;
  }
  return true;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g, int max_order) {
  if (max_order > 64) throw InvalidArgument("all_subgroups: cap above 64 is not supported");
  if (g.order() > max_order)
    throw InvalidArgument("all_subgroups: group order " + std::to_string(g.order()) +
                          " exceeds the cap of " + std::to_string(max_order));

  // Grow generator sets one element at a time: close(H + {x}) for every found
  // subgroup H and element x outside it. Each extension at least doubles the
  // subgroup (Lagrange), so the search depth is bounded by log2|G| and the
  // result is the complete subgroup list.
  std::set<std::vector<int>> found;
  std::deque<std::vector<int>> frontier;
  const Subgroup trivial = subgroup_from_generators(g, {});
  found.insert(trivial.members);
  frontier.push_back(trivial.members);

  while (!frontier.empty()) {
    const std::vector<int> base = std::move(frontier.front());
    frontier.pop_front();
    for (int x = 0; x < g.order(); ++x) {
      if (std::binary_search(base.begin(), base.end(), x)) continue;
      std::vector<int> gens = base;
      gens.push_back(x);
      Subgroup h = subgroup_from_generators(g, gens);
      if (found.insert(h.members).second) frontier.push_back(h.members);
    }
  }

  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (const auto& members : found) out.push_back(Subgroup{members});
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return out;
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  if (!is_subgroup(g, h)) throw InvalidArgument("is_normal: H is not a subgroup of G");
  for (int x = 0; x < g.order(); ++x) {
    const int xi = g.inverse(x);
    for (int m : h.members)
      if (!h.contains(g.mul(g.mul(x, m), xi))) return false;
  }
  return true;
}

}  // namespace ncfa
