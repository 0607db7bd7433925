#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncfa {

// Parsed form of the group specification grammar: C<n> cyclic, D<n> dihedral
// of order 2n, S<n> symmetric, factors joined by 'x' (case-insensitive,
// whitespace rejected). Example: "C2xS3".
struct GroupSpec {
  struct Atom {
    char family;  // 'C', 'D' or 'S'
    int n;
  };
  std::vector<Atom> factors;

  std::string label() const;  // canonical upper-case form
};

GroupSpec parse_group_spec(std::string_view text);  // throws ParseError

// A finite group as an indexed Cayley table. Element indices are dense
// 0..order-1 in the constructor's canonical enumeration order, which all
// file formats rely on:
//   C<n>  residues 0..n-1, identity 0
//   D<n>  index j*n+k encodes s^j r^k with r^n = s^2 = e, s r s = r^-1
//   S<n>  permutations of {0..n-1} in lexicographic one-line order
//   products: (a, b) -> a*|G2| + b, componentwise multiplication
// Instances are immutable after construction; the handle is cheap to copy
// and safe to share across threads.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  int order() const { return d_->order; }
  int identity() const { return d_->identity; }
  int mul(int x, int y) const {
    return d_->table[static_cast<std::size_t>(x) * d_->order + y];
  }
  int inverse(int x) const { return d_->inverse[x]; }
  const std::string& label() const { return d_->label; }
  const GroupSpec& spec() const { return d_->spec; }
  bool valid() const { return static_cast<bool>(d_); }

  // Structural identity: same canonical label and order. Two independently
  // built C4's are "the same group" for every consumer in this project.
  bool same_group(const FiniteGroup& other) const {
    return d_ == other.d_ || (d_->order == other.d_->order && d_->label == other.d_->label);
  }

  bool is_abelian() const;

  struct Data {
    int order = 0;
    int identity = 0;
    std::vector<int> table;    // row-major order x order
    std::vector<int> inverse;  // per element
    GroupSpec spec;
    std::string label;
  };
  explicit FiniteGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

 private:
  std::shared_ptr<const Data> d_;
};

FiniteGroup make_cyclic(int n);
FiniteGroup make_dihedral(int n);
FiniteGroup make_symmetric(int n);  // 1 <= n <= 7
FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2);
FiniteGroup make_group(const GroupSpec& spec);
FiniteGroup make_group(std::string_view spec_text);

// Checks the Latin-square, identity, inverse and associativity axioms.
// Associativity is exhaustive for order <= 48 and sampled with at least 10^4
// seeded random triples beyond that. Throws VerificationError on violation.
void validate_group(const FiniteGroup& g, std::uint64_t seed = 0x6E636661ULL);

struct Subgroup {
  std::vector<int> members;  // sorted element indices, always contains identity
  int size() const { return static_cast<int>(members.size()); }
  bool contains(int x) const;
};

// Smallest subgroup containing the given generators (closure under the
// Cayley table; identity always included).
Subgroup subgroup_from_generators(const FiniteGroup& g, const std::vector<int>& generators);

bool is_subgroup(const FiniteGroup& g, const Subgroup& h);

// Complete duplicate-free list of subgroups, sorted by size then
// lexicographically by members. Enumeration closes generator sets grown one
// element at a time; each new generator at least doubles the subgroup, so
// this terminates after <= log2|G| extensions. Throws InvalidArgument when
// |G| exceeds max_order.
std::vector<Subgroup> all_subgroups(const FiniteGroup& g, int max_order = 48);

// True iff g h g^-1 stays in H for every g in G, h in H (exhaustive).
bool is_normal(const FiniteGroup& g, const Subgroup& h);

// Lexicographic rank of a permutation of {0..n-1} given in one-line form,
// and its inverse. These define the canonical element order of S<n>.
int perm_rank(std::span<const int> one_line);
std::vector<int> perm_unrank(int n, int rank);

}  // namespace ncfa
