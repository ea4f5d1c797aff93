#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "nielsen/bicategory.hpp"
#include "nielsen/group_ring.hpp"
#include "nielsen/matrix.hpp"

namespace nielsen {

/// The two 0-cells: the coefficient ring K and the group ring R = K[pi].
enum class Side { base, ring };

/// One tensor factor of a 1-cell. Every factor is free of finite rank:
///   scalar(n)  K^n as a K-K bimodule
///   free(n)    R^n as a K-R bimodule (right module, basis e_i)
///   dual(n)    R^n as an R-K bimodule (left module, basis e_i*)
///   twist(phi) R^n as an R-R bimodule with u_i s = phi(s) u_i
/// Basis elements may carry integer degrees (graded modules).
struct Factor {
  enum class Kind { scalar, free, dual, twist };

  Kind kind = Kind::scalar;
  int rank = 0;
  std::vector<int> degrees;  // empty means all zero
  std::shared_ptr<const GroupHomomorphism> phi;

  Side left() const { return kind == Kind::scalar || kind == Kind::free ? Side::base : Side::ring; }
  Side right() const { return kind == Kind::scalar || kind == Kind::dual ? Side::base : Side::ring; }
  int degree(int i) const { return degrees.empty() ? 0 : degrees[static_cast<std::size_t>(i)]; }
  std::string describe() const;

  friend bool operator==(const Factor& a, const Factor& b);
};

/// A 1-cell is a nonempty word of factors; composition concatenates words,
/// so associativity holds on the nose.
struct OneCell {
  std::vector<Factor> factors;

  Side left() const { return factors.front().left(); }
  Side right() const { return factors.back().right(); }
  std::size_t length() const { return factors.size(); }
  std::string describe() const;

  friend bool operator==(const OneCell& a, const OneCell& b) { return a.factors == b.factors; }
};

/// Pure tensor: one basis index per factor and one group element per slot.
/// Slot s sits between factor s-1 and factor s (slot 0 and slot L are the
/// ends); only slots over R carry nontrivial elements.
struct Tensor {
  std::vector<int> index;
  std::vector<GroupElement> slot;

  friend auto operator<=>(const Tensor&, const Tensor&) = default;
  friend bool operator==(const Tensor&, const Tensor&) = default;
};

/// Finite K-linear combination of normalized tensors.
using Vector = std::map<Tensor, Rational>;

using CellAction = std::function<Vector(const Tensor&)>;

/// Bimodule map between 1-cells, given by its values on normalized tensors.
struct ModuleTwoCell {
  OneCell source;
  OneCell target;
  std::shared_ptr<const CellAction> act;
  std::string label;
};

/// K-linear map between shadows of endo-1-cells.
struct ModuleShadowMap {
  OneCell source;
  OneCell target;
  std::shared_ptr<const CellAction> act;
  std::string label;
};

class ModuleBicategory {
 public:
  using Object = Side;
  using Cell = OneCell;
  using TwoCell = ModuleTwoCell;
  using ShadowMap = ModuleShadowMap;

  /// `samples` bounds the number of group elements used when a 2-cell must be
  /// evaluated on coefficients not reachable from the end actions.
  explicit ModuleBicategory(GroupRing ring, std::size_t samples = 4);

  const GroupRing& ring() const { return ring_; }
  const Group& group() const { return ring_.group(); }

  // 1-cells
  Cell scalar(int n, std::vector<int> degrees = {}) const;
  Cell free(int n, std::vector<int> degrees = {}) const;
  Cell dual(int n, std::vector<int> degrees = {}) const;
  Cell twist(const GroupHomomorphism& phi, int n = 1) const;
  Cell unit(Object a) const;
  Object left(const Cell& x) const { return x.left(); }
  Object right(const Cell& x) const { return x.right(); }
  Cell compose(const Cell& x, const Cell& y) const;

  // 2-cells
  const Cell& source(const TwoCell& f) const { return f.source; }
  const Cell& target(const TwoCell& f) const { return f.target; }
  TwoCell identity(const Cell& x) const;
  /// g after f.
  TwoCell vertical(const TwoCell& g, const TwoCell& f) const;
  /// f ⊙ g.
  TwoCell horizontal(const TwoCell& f, const TwoCell& g) const;
  TwoCell left_unitor(const Cell& x) const;           // U ⊙ X -> X
  TwoCell left_unitor_inverse(const Cell& x) const;   // X -> U ⊙ X
  TwoCell right_unitor(const Cell& x) const;          // X ⊙ U -> X
  TwoCell right_unitor_inverse(const Cell& x) const;  // X -> X ⊙ U
  TwoCell associator(const Cell& x, const Cell& y, const Cell& z) const;
  TwoCell scaled(const TwoCell& f, const Rational& c) const;
  TwoCell sum(const TwoCell& f, const TwoCell& g) const;

  // shadows
  ShadowMap shadow(const TwoCell& f) const;
  /// <X ⊙ Y> -> <Y ⊙ X>, with the Koszul sign (-1)^{|x||y|}.
  ShadowMap theta(const Cell& x, const Cell& y) const;
  ShadowMap shadow_compose(const ShadowMap& g, const ShadowMap& f) const;
  ShadowMap shadow_identity(const Cell& x) const;

  bool equal(const TwoCell& f, const TwoCell& g) const;
  bool equal(const ShadowMap& f, const ShadowMap& g) const;
  std::string describe(const TwoCell& f) const;
  std::string describe(const ShadowMap& f) const;

  // construction helpers
  TwoCell make_cell(Cell source, Cell target, CellAction act, std::string label) const;
  ShadowMap make_shadow_map(Cell source, Cell target, CellAction act, std::string label) const;
  /// Tensor with the given indices and trivial slots.
  Tensor basis_tensor(const Cell& x, std::vector<int> index) const;
  /// Move slot coefficients to the leftmost slot of each run of R-slots.
  Tensor normalize(const Cell& x, Tensor t) const;
  /// Normal form in the shadow <X> of an endo-1-cell.
  Tensor shadow_normalize(const Cell& x, Tensor t) const;
  Vector right_act(const Cell& x, const Vector& v, const GroupElement& b) const;
  Vector left_act(const Cell& x, const Vector& v, const GroupElement& a) const;
  /// v placed with coefficients at slot `s` taken from an element of R.
  Vector with_coefficient(const Cell& x, const Tensor& t, std::size_t s, const GroupRingElement& r) const;

  /// Cell determined by images of basis tensors, extended by the right
  /// R-action. The source's only R-slot must be its right end.
  TwoCell right_linear(Cell source, Cell target, std::function<Vector(const std::vector<int>&)> images,
                       std::string label) const;
  /// Cell determined by images of basis tensors, extended by the left
  /// R-action. Every R-slot of the source must lie in the run starting at slot 0.
  TwoCell left_linear(Cell source, Cell target, std::function<Vector(const std::vector<int>&)> images,
                      std::string label) const;

  /// Tensors on which 2-cells out of X are compared.
  std::vector<Tensor> spanning_tensors(const Cell& x) const;
  /// Tensors spanning the shadow <X>.
  std::vector<Tensor> shadow_spanning_tensors(const Cell& x) const;

  /// The semiconjugacy classes governing the shadow of an all-twist word.
  std::shared_ptr<const TwistedClasses> circle_classes(const Cell& x) const;

  /// Reads an element of <twist(phi, 1)> as a ShadowElement.
  ShadowElement to_shadow_element(const Cell& twist_cell, const Vector& v) const;
  /// Reads an element of <scalar(1)> as a coefficient.
  Rational to_scalar(const Vector& v) const;
  std::string format(const Cell& x, const Tensor& t) const;
  std::string format(const Cell& x, const Vector& v) const;

 private:
  void add(Vector& v, const Tensor& t, const Rational& c) const;
  bool is_ring_slot(const Cell& x, std::size_t s) const;
  std::vector<GroupElement> sample_elements() const;

  GroupRing ring_;
  std::size_t samples_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, std::shared_ptr<const TwistedClasses>> class_cache_;
};

static_assert(ShadowedBicategory<ModuleBicategory>);

/// 2-cell Q ⊙ free(n) -> free(m) ⊙ twist(phi) with Q = scalar(1), sending
/// e_j to sum_i e_i m_ij ⊗ u (right column convention).
ModuleTwoCell twisted_matrix_cell(const ModuleBicategory& b, const RingMatrix& m, const GroupHomomorphism& phi,
                                  std::vector<int> source_degrees = {}, std::vector<int> target_degrees = {});
/// 2-cell scalar(1) ⊙ scalar(n) -> scalar(m) ⊙ scalar(1) given by a K-matrix.
ModuleTwoCell scalar_matrix_cell(const ModuleBicategory& b, const std::vector<std::vector<Rational>>& m,
                                 std::vector<int> source_degrees = {}, std::vector<int> target_degrees = {});
/// Left-module map dual(n) -> dual(n) sending e_j* to sum_k a_jk e_k* (row convention).
ModuleTwoCell dual_matrix_cell(const ModuleBicategory& b, const RingMatrix& a);

/// Dual-basis pair (free(n), dual(n)): eta(1) = sum e_i ⊗ e_i*, epsilon(a e_i* ⊗ e_j b) = delta_ij ab.
DualPair<ModuleBicategory> free_dual_pair(const ModuleBicategory& b, int n, std::vector<int> degrees = {});
/// (scalar(n), scalar(n)) over K.
DualPair<ModuleBicategory> scalar_dual_pair(const ModuleBicategory& b, int n, std::vector<int> degrees = {});
/// (twist(id, n), twist(id, n)) over R.
DualPair<ModuleBicategory> bimodule_dual_pair(const ModuleBicategory& b, int n);
/// R as a right and as a left module over itself; eta is the unit, epsilon the multiplication.
DualPair<ModuleBicategory> monoid_dual_pair(const ModuleBicategory& b);

/// Sum of diagonal entries of a square matrix over a commutative ring.
GroupRingElement ordinary_trace(const RingMatrix& f);
/// Hattori-Stallings trace: the class of the diagonal sum in <R^phi>.
ShadowElement hattori_stallings(const RingMatrix& f, const GroupHomomorphism& phi);
/// HS trace of f restricted to the projective summand im(e); needs e^2 = e and e f e = f.
ShadowElement projective_trace(const RingMatrix& e, const RingMatrix& f, const GroupHomomorphism& phi);
/// The same trace computed through the generic bicategorical composite.
ShadowElement bicategorical_trace(const ModuleBicategory& b, const RingMatrix& f, const GroupHomomorphism& phi);

/// Random cells for the trace-law harness over a fixed group ring.
class ModuleSampler {
 public:
  struct Options {
    int max_rank = 3;
    int max_terms = 2;
    int max_coefficient = 2;
  };

  ModuleSampler(const ModuleBicategory& b, Options options);
  explicit ModuleSampler(const ModuleBicategory& b) : ModuleSampler(b, Options{}) {}

  GroupRingElement random_element(std::mt19937_64& rng) const;
  RingMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) const;
  /// An element central in R (class sums for non-abelian groups).
  GroupRingElement random_central(std::mt19937_64& rng) const;
  /// Invertible matrix and its inverse (monomial times elementary matrices).
  std::pair<RingMatrix, RingMatrix> random_invertible(std::mt19937_64& rng, std::size_t n) const;
  GroupHomomorphism random_endomorphism(std::mt19937_64& rng) const;

  IndependenceSample<ModuleBicategory> sample_independence(std::mt19937_64& rng) const;
  DualSample<ModuleBicategory> sample_dual(std::mt19937_64& rng) const;
  CyclicSample<ModuleBicategory> sample_cyclic(std::mt19937_64& rng) const;
  MultSample<ModuleBicategory> sample_mult(std::mt19937_64& rng) const;
  /// Needs rational coefficients and the trivial group.
  FunctorSample<ModuleBicategory> sample_functor(std::mt19937_64& rng) const;

 private:
  int random_rank(std::mt19937_64& rng, int low = 1) const;

  const ModuleBicategory& b_;
  Options options_;
  std::vector<GroupHomomorphism> endomorphisms_;  // finite groups: candidate pool
  std::vector<GroupRingElement> class_sums_;
};

}  // namespace nielsen
