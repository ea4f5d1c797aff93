#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nielsen/group.hpp"
#include "nielsen/rational.hpp"
#include "nielsen/smith.hpp"

namespace nielsen {

/// K[pi] for K one of Z, Q, Z/m. Plain coefficient rings are K[trivial].
class GroupRing {
 public:
  GroupRing(CoefficientRing coefficients, Group group)
      : coefficients_(std::move(coefficients)), group_(std::move(group)) {}
  static GroupRing over(const Group& g) { return GroupRing(CoefficientRing::integers(), g); }
  static GroupRing plain(const CoefficientRing& k) { return GroupRing(k, Group::trivial()); }

  const CoefficientRing& coefficients() const { return coefficients_; }
  const Group& group() const { return group_; }
  bool is_commutative() const { return group_.is_abelian(); }

  /// "Z", "Z/6", "Z[free_abelian(2)]".
  std::string name() const;

  friend bool operator==(const GroupRing& a, const GroupRing& b) {
    return a.coefficients_ == b.coefficients_ && a.group_ == b.group_;
  }

 private:
  CoefficientRing coefficients_;
  Group group_;
};

/// Finite K-linear combination of group elements with canonical support.
class GroupRingElement {
 public:
  using Terms = std::map<GroupElement, Rational>;

  explicit GroupRingElement(GroupRing ring) : ring_(std::move(ring)) {}
  static GroupRingElement scalar(const GroupRing& ring, const Rational& c);
  static GroupRingElement basis(const GroupRing& ring, const GroupElement& g, const Rational& c = 1);
  static GroupRingElement from_terms(const GroupRing& ring, const Terms& terms);

  const GroupRing& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const GroupElement& g) const;

  /// Sum of coefficients (the augmentation K[pi] -> K).
  Rational augment() const;

  void add_term(const GroupElement& g, const Rational& c);

  GroupRingElement& operator+=(const GroupRingElement& rhs);
  GroupRingElement& operator-=(const GroupRingElement& rhs);
  GroupRingElement operator-() const;
  GroupRingElement scaled(const Rational& c) const;

  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);

  /// Apply phi to every basis element.
  GroupRingElement twisted(const GroupHomomorphism& phi) const;
  /// g -> g^-1 on basis elements.
  GroupRingElement involution() const;
  /// Push basis elements along a homomorphism into `target` (same coefficients).
  GroupRingElement pushforward(const GroupHomomorphism& hom) const;

  /// "2 - 3 t^2", "0".
  std::string format() const;

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

 private:
  void require_same(const GroupRingElement& other) const;

  GroupRing ring_;
  Terms terms_;
};

/// Classification of pi under alpha ~ beta alpha phi(beta)^-1.
class TwistedClasses {
 public:
  explicit TwistedClasses(GroupHomomorphism phi);

  const GroupHomomorphism& phi() const { return phi_; }
  /// False when no decision procedure is available for this group/phi pair.
  bool supported() const { return mode_ != Mode::formal; }
  static bool supported(const GroupHomomorphism& phi);

  /// Canonical representative. Throws UnsupportedReduction when !supported().
  GroupElement representative(const GroupElement& g) const;

  /// Number of classes when finite; nullopt when infinite or unsupported.
  std::optional<Integer> class_count() const;

 private:
  enum class Mode { abelian, finite, free_identity, formal };

  GroupHomomorphism phi_;
  Mode mode_ = Mode::formal;
  // abelian: U (I - A) V = D
  IntegerMatrix u_, u_inverse_;
  std::vector<Integer> moduli_;
  // finite: representative index per element
  std::vector<int> finite_rep_;
  int finite_classes_ = 0;
};

/// Canonical representative of the semiconjugacy class of g.
GroupElement semiconjugacy_class(const GroupElement& g, const GroupHomomorphism& phi);

/// K-linear combination of semiconjugacy classes. A formal element keeps
/// every group element as its own class because the classes are undecided.
class ShadowElement {
 public:
  using Terms = std::map<GroupElement, Rational>;

  ShadowElement(GroupRing ring, GroupHomomorphism phi);
  ShadowElement(GroupRing ring, std::shared_ptr<const TwistedClasses> classes);

  const GroupRing& ring() const { return ring_; }
  const GroupHomomorphism& phi() const { return classes_->phi(); }
  const std::shared_ptr<const TwistedClasses>& classes() const { return classes_; }
  bool reduced() const { return classes_->supported(); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient_of_class(const GroupElement& g) const;

  /// Add c * [g], reducing g to its class representative when possible.
  void add(const GroupElement& g, const Rational& c);

  Rational augment() const;
  /// Number of classes with nonzero coefficient. Throws FormalShadow unless reduced.
  std::size_t nonzero_classes() const;

  ShadowElement& operator+=(const ShadowElement& rhs);
  ShadowElement& operator-=(const ShadowElement& rhs);
  ShadowElement scaled(const Rational& c) const;
  friend ShadowElement operator+(ShadowElement a, const ShadowElement& b) { return a += b; }
  friend ShadowElement operator-(ShadowElement a, const ShadowElement& b) { return a -= b; }

  /// "-1[e] - 1[t]", "0".
  std::string format() const;

  friend bool operator==(const ShadowElement& a, const ShadowElement& b);

 private:
  void require_same(const ShadowElement& other) const;

  GroupRing ring_;
  std::shared_ptr<const TwistedClasses> classes_;
  Terms terms_;
};

/// Send each basis element of x to its class and merge coefficients.
ShadowElement shadow_project(const GroupRingElement& x, const GroupHomomorphism& phi);
ShadowElement shadow_project(const GroupRingElement& x, std::shared_ptr<const TwistedClasses> classes);

/// The endomorphism induced on a quotient q: pi -> pibar, i.e. the unique
/// phibar with q o phi = phibar o q. Throws ValidationError when q is not onto
/// or phi does not descend; Unsupported when the quotient kind is not handled
/// (quotients must be free abelian or finite).
GroupHomomorphism descend_endomorphism(const GroupHomomorphism& phi, const GroupHomomorphism& q);

/// Push a shadow along q and re-reduce in the quotient.
ShadowElement mod_k_project(const ShadowElement& s, const GroupHomomorphism& q);

}  // namespace nielsen
