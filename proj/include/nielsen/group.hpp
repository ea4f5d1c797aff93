#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace nielsen {

/// A maximal run g^k of one generator inside a freely reduced word.
struct Syllable {
  int generator = 0;  // 1-based
  std::int64_t exponent = 0;

  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// Freely reduced word, run-length encoded. Adjacent syllables never share a
/// generator and no exponent is zero.
using FreeWord = std::vector<Syllable>;

/// Signed 1-based generator indices: 2 is b, -2 is b^-1.
using RawWord = std::vector<int>;

/// Canonical form of a group element. Which alternative is active depends on
/// the group kind: free words, exponent vectors, or finite-table indices.
class GroupElement {
 public:
  using Rep = std::variant<FreeWord, std::vector<std::int64_t>, int>;

  GroupElement() = default;
  explicit GroupElement(Rep rep) : rep_(std::move(rep)) {}

  const Rep& rep() const { return rep_; }
  const FreeWord& word() const { return std::get<FreeWord>(rep_); }
  const std::vector<std::int64_t>& exponents() const { return std::get<std::vector<std::int64_t>>(rep_); }
  int index() const { return std::get<int>(rep_); }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement& a, const GroupElement& b) { return a.rep_ <=> b.rep_; }

 private:
  Rep rep_;
};

enum class GroupKind { free, free_abelian, finite };

/// Finitely generated group with computable normal forms: free of rank n,
/// free abelian of rank n, or finite given by a multiplication table.
/// Cheap to copy; the data is shared and immutable.
class Group {
 public:
  static constexpr int max_finite_order = 512;

  static Group free(int rank);
  static Group free_abelian(int rank);
  /// table[i][j] is the index of element_i * element_j. Verifies the group axioms.
  static Group finite(std::vector<std::string> names, std::vector<std::vector<int>> table);
  static Group cyclic(int order);
  /// Symmetric group on n letters (n <= 5), elements in lexicographic order of
  /// their one-line notation; composition (s*t)(i) = s(t(i)).
  static Group symmetric(int n);
  static Group trivial() { return free_abelian(0); }

  GroupKind kind() const;
  /// Number of generators. For finite groups every element is a generator.
  int rank() const;
  /// Order of a finite group.
  int order() const;
  bool is_trivial() const;
  bool is_abelian() const;

  GroupElement identity() const;
  /// 1-based.
  GroupElement generator(int index) const;
  GroupElement normal_form(std::span<const int> raw) const;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement invert(const GroupElement& a) const;
  GroupElement power(const GroupElement& a, std::int64_t k) const;
  bool is_identity(const GroupElement& a) const;

  /// Structural check that `a` is a canonical element of this group.
  bool contains(const GroupElement& a) const;
  /// Throws ModelMismatch unless contains(a).
  void require(const GroupElement& a) const;

  /// Expanded signed-index word with normal_form(to_raw(a)) == a.
  RawWord to_raw(const GroupElement& a) const;
  std::string format(const GroupElement& a) const;
  std::string generator_name(int index) const;

  /// All elements of a finite group, in index order.
  std::vector<GroupElement> elements() const;
  const std::vector<std::string>& element_names() const;
  const std::vector<std::vector<int>>& table() const;
  int identity_index() const;
  int inverse_index(int i) const;

  /// "free(2)", "free_abelian(1)", "finite(6)".
  std::string describe() const;

  friend bool operator==(const Group& a, const Group& b);

 private:
  struct Data;
  explicit Group(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// Homomorphism given by the images of the generators of its source
/// (for a finite source: the image of every element).
class GroupHomomorphism {
 public:
  /// Checks that images live in `target`; for finite sources also checks
  /// the homomorphism property against the table.
  GroupHomomorphism(Group source, Group target, std::vector<GroupElement> images);

  static GroupHomomorphism identity(const Group& g);
  /// Endomorphism of a free abelian group; column j is the image of t_j.
  static GroupHomomorphism from_matrix(const Group& g, const std::vector<std::vector<std::int64_t>>& columns_as_matrix);
  /// Images given as raw words in the target's generators.
  static GroupHomomorphism from_words(const Group& source, const Group& target, const std::vector<RawWord>& images);

  const Group& source() const { return source_; }
  const Group& target() const { return target_; }
  const std::vector<GroupElement>& images() const { return images_; }

  GroupElement operator()(const GroupElement& a) const;

  bool is_endomorphism() const { return source_ == target_; }
  bool is_identity() const;

  /// (*this) after `first`: x -> this(first(x)).
  GroupHomomorphism after(const GroupHomomorphism& first) const;

  /// Integer matrix (rows = target rank, cols = source rank) of the induced
  /// map on abelianizations; only for free / free-abelian source and target.
  std::vector<std::vector<std::int64_t>> abelian_matrix() const;

  std::string describe() const;

  friend bool operator==(const GroupHomomorphism& a, const GroupHomomorphism& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.images_ == b.images_;
  }

 private:
  Group source_;
  Group target_;
  std::vector<GroupElement> images_;
};

using GroupEndomorphism = GroupHomomorphism;

/// Index of the first relation (raw word in the source generators) whose image
/// is not the identity, or nullopt when all relations hold.
std::optional<std::size_t> first_violated_relation(const GroupHomomorphism& hom,
                                                   std::span<const RawWord> relations);

/// Throws ValidationError naming the first violated relation.
void validate_endomorphism(const GroupHomomorphism& hom, std::span<const RawWord> relations);

}  // namespace nielsen
