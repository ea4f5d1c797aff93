#include <algorithm>
#include <set>

#include "nielsen/chain.hpp"
#include "nielsen/errors.hpp"
#include "nielsen/module_bicategory.hpp"

namespace nielsen {
namespace {

std::vector<int> negated(std::vector<int> d) {
  for (auto& x : d) x = -x;
  return d;
}

void require_ring(const ModuleBicategory& b, const GroupRing& ring) {
  if (!(b.ring() == ring)) throw ModelMismatch("matrix over " + ring.name() + " used in " + b.ring().name());
}

}  // namespace

// ---------------------------------------------------------------------------
// cells from matrices

ModuleTwoCell twisted_matrix_cell(const ModuleBicategory& b, const RingMatrix& m, const GroupHomomorphism& phi,
                                  std::vector<int> source_degrees, std::vector<int> target_degrees) {
  require_ring(b, m.ring());
  OneCell source = b.compose(b.scalar(1), b.free(static_cast<int>(m.cols()), std::move(source_degrees)));
  OneCell target = b.compose(b.free(static_cast<int>(m.rows()), std::move(target_degrees)), b.twist(phi));
  auto images = [&b, m, target](const std::vector<int>& idx) {
    Vector out;
    const auto j = static_cast<std::size_t>(idx[1]);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (const auto& [t, c] : b.with_coefficient(target, b.basis_tensor(target, {static_cast<int>(i), 0}), 1, m(i, j)))
        out[t] += c;
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
  };
  return b.right_linear(source, target, images, "matrix " + m.format());
}

ModuleTwoCell scalar_matrix_cell(const ModuleBicategory& b, const std::vector<std::vector<Rational>>& m,
                                 std::vector<int> source_degrees, std::vector<int> target_degrees) {
  const std::size_t rows = m.size();
  const std::size_t cols = m.empty() ? source_degrees.size() : m[0].size();
  for (const auto& row : m)
    if (row.size() != cols) throw ShapeMismatch("ragged scalar matrix");
  OneCell source = b.compose(b.scalar(1), b.scalar(static_cast<int>(cols), std::move(source_degrees)));
  OneCell target = b.compose(b.scalar(static_cast<int>(rows), std::move(target_degrees)), b.scalar(1));
  std::string label = "scalar matrix [";
  for (std::size_t i = 0; i < rows; ++i) {
    label += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols; ++j) label += (j ? ", " : "") + m[i][j].to_string();
    label += "]";
  }
  const CoefficientRing k = b.ring().coefficients();
  return b.make_cell(
      source, target,
      [&b, m, k, target, rows](const Tensor& t) {
        Vector out;
        const auto j = static_cast<std::size_t>(t.index[1]);
        for (std::size_t i = 0; i < rows; ++i) {
          Rational c = k.normalize(m[i][j]);
          if (!c.is_zero()) out.emplace(b.basis_tensor(target, {static_cast<int>(i), 0}), c);
        }
        return out;
      },
      label + "]");
}

ModuleTwoCell dual_matrix_cell(const ModuleBicategory& b, const RingMatrix& a) {
  require_ring(b, a.ring());
  if (!a.is_square()) throw ShapeMismatch("dual matrix cell needs a square matrix");
  OneCell x = b.dual(static_cast<int>(a.rows()));
  auto images = [&b, a, x](const std::vector<int>& idx) {
    Vector out;
    const auto j = static_cast<std::size_t>(idx[0]);
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (const auto& [t, c] : b.with_coefficient(x, b.basis_tensor(x, {static_cast<int>(k)}), 0, a(j, k)))
        out[t] += c;
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
  };
  return b.left_linear(x, x, images, "dual matrix " + a.format());
}

// ---------------------------------------------------------------------------
// dual pairs

DualPair<ModuleBicategory> free_dual_pair(const ModuleBicategory& b, int n, std::vector<int> degrees) {
  OneCell x = b.free(n, degrees);
  OneCell y = b.dual(n, negated(degrees));
  OneCell xy = b.compose(x, y);
  OneCell yx = b.compose(y, x);
  OneCell u = b.unit(Side::ring);
  auto eta = b.make_cell(
      b.unit(Side::base), xy,
      [&b, xy, n](const Tensor&) {
        Vector out;
        for (int i = 0; i < n; ++i) out.emplace(b.basis_tensor(xy, {i, i}), 1);
        return out;
      },
      "η");
  auto epsilon = b.make_cell(
      yx, u,
      [&b, u](const Tensor& t) {
        Vector out;
        if (t.index[0] != t.index[1]) return out;
        Tensor r = b.basis_tensor(u, {0});
        r.slot[0] = b.group().multiply(t.slot[0], t.slot[2]);
        out.emplace(std::move(r), 1);
        return out;
      },
      "ε");
  return {x, y, eta, epsilon};
}

DualPair<ModuleBicategory> scalar_dual_pair(const ModuleBicategory& b, int n, std::vector<int> degrees) {
  OneCell x = b.scalar(n, degrees);
  OneCell y = b.scalar(n, negated(degrees));
  OneCell xy = b.compose(x, y);
  OneCell u = b.unit(Side::base);
  auto eta = b.make_cell(
      u, xy,
      [&b, xy, n](const Tensor&) {
        Vector out;
        for (int i = 0; i < n; ++i) out.emplace(b.basis_tensor(xy, {i, i}), 1);
        return out;
      },
      "η");
  auto epsilon = b.make_cell(
      b.compose(y, x), u,
      [&b, u](const Tensor& t) {
        Vector out;
        if (t.index[0] == t.index[1]) out.emplace(b.basis_tensor(u, {0}), 1);
        return out;
      },
      "ε");
  return {x, y, eta, epsilon};
}

DualPair<ModuleBicategory> bimodule_dual_pair(const ModuleBicategory& b, int n) {
  const auto id = GroupHomomorphism::identity(b.group());
  OneCell x = b.twist(id, n);
  OneCell xx = b.compose(x, x);
  OneCell u = b.unit(Side::ring);
  auto eta = b.left_linear(
      u, xx,
      [&b, xx, n](const std::vector<int>&) {
        Vector out;
        for (int i = 0; i < n; ++i) out.emplace(b.basis_tensor(xx, {i, i}), 1);
        return out;
      },
      "η");
  auto epsilon = b.left_linear(
      xx, u,
      [&b, u](const std::vector<int>& idx) {
        Vector out;
        if (idx[0] == idx[1]) out.emplace(b.basis_tensor(u, {0}), 1);
        return out;
      },
      "ε");
  return {x, x, eta, epsilon};
}

DualPair<ModuleBicategory> monoid_dual_pair(const ModuleBicategory& b) {
  OneCell x = b.free(1);
  OneCell y = b.dual(1);
  OneCell xy = b.compose(x, y);
  OneCell u = b.unit(Side::ring);
  auto eta = b.make_cell(
      b.unit(Side::base), xy, [&b, xy](const Tensor&) { return Vector{{b.basis_tensor(xy, {0, 0}), 1}}; }, "unit");
  auto epsilon = b.make_cell(
      b.compose(y, x), u,
      [&b, u](const Tensor& t) {
        const auto& ring = b.ring();
        auto product = GroupRingElement::basis(ring, t.slot[0]) * GroupRingElement::basis(ring, t.slot[2]);
        return b.with_coefficient(u, b.basis_tensor(u, {0}), 0, product);
      },
      "multiplication");
  return {x, y, eta, epsilon};
}

// ---------------------------------------------------------------------------
// traces of matrices

GroupRingElement ordinary_trace(const RingMatrix& f) {
  if (!f.is_square()) throw ShapeMismatch("trace of a non-square matrix");
  if (!f.ring().is_commutative()) throw ModelMismatch("ordinary trace over the non-commutative ring " + f.ring().name());
  return f.diagonal_sum();
}

ShadowElement hattori_stallings(const RingMatrix& f, const GroupHomomorphism& phi) {
  if (!f.is_square()) throw ShapeMismatch("trace of a non-square matrix");
  if (!(phi.source() == f.ring().group()) || !phi.is_endomorphism())
    throw ModelMismatch("endomorphism does not act on " + f.ring().name());
  return shadow_project(f.diagonal_sum(), phi);
}

ShadowElement projective_trace(const RingMatrix& e, const RingMatrix& f, const GroupHomomorphism& phi) {
  if (!e.is_square() || !f.is_square() || e.rows() != f.rows()) throw ShapeMismatch("projective trace shapes");
  if (!(e * e == e)) throw ValidationError("e is not idempotent");
  if (!(e * f * e == f)) throw ValidationError("f is not an endomorphism of im(e)");
  return hattori_stallings(e * f, phi);
}

ShadowElement bicategorical_trace(const ModuleBicategory& b, const RingMatrix& f, const GroupHomomorphism& phi) {
  if (!f.is_square()) throw ShapeMismatch("trace of a non-square matrix");
  auto pair = free_dual_pair(b, static_cast<int>(f.rows()));
  OneCell q = b.scalar(1);
  OneCell p = b.twist(phi);
  auto s = trace(b, pair, q, p, twisted_matrix_cell(b, f, phi));
  return b.to_shadow_element(p, (*s.act)(b.basis_tensor(q, {0})));
}

// ---------------------------------------------------------------------------
// sampler

ModuleSampler::ModuleSampler(const ModuleBicategory& b, Options options) : b_(b), options_(options) {
  const Group& g = b.group();
  if (g.kind() != GroupKind::finite) return;
  std::set<std::vector<GroupElement>> seen;
  for (const auto& h : g.elements()) {
    std::vector<GroupElement> images;
    for (const auto& x : g.elements()) images.push_back(g.multiply(g.multiply(h, x), g.invert(h)));
    if (seen.insert(images).second) endomorphisms_.emplace_back(g, g, images);
  }
  endomorphisms_.emplace_back(g, g, std::vector<GroupElement>(g.elements().size(), g.identity()));
  if (!g.is_abelian()) {
    TwistedClasses conj(GroupHomomorphism::identity(g));
    std::map<GroupElement, GroupRingElement> sums;
    for (const auto& x : g.elements())
      sums.try_emplace(conj.representative(x), b.ring()).first->second.add_term(x, 1);
    for (auto& [rep, s] : sums) class_sums_.push_back(s);
  }
}

int ModuleSampler::random_rank(std::mt19937_64& rng, int low) const {
  return std::uniform_int_distribution<int>(low, std::max(low, options_.max_rank))(rng);
}

GroupRingElement ModuleSampler::random_element(std::mt19937_64& rng) const {
  const Group& g = b_.group();
  GroupRingElement out(b_.ring());
  const int terms = std::uniform_int_distribution<int>(0, options_.max_terms)(rng);
  std::uniform_int_distribution<int> coeff(-options_.max_coefficient, options_.max_coefficient);
  for (int k = 0; k < terms; ++k) {
    GroupElement x = g.identity();
    if (g.kind() == GroupKind::finite) {
      x = g.elements()[std::uniform_int_distribution<std::size_t>(0, g.elements().size() - 1)(rng)];
    } else if (g.rank() > 0) {
      const int length = std::uniform_int_distribution<int>(0, 3)(rng);
      RawWord w;
      for (int i = 0; i < length; ++i) {
        int letter = std::uniform_int_distribution<int>(1, g.rank())(rng);
        w.push_back(rng() % 2 ? letter : -letter);
      }
      x = g.normal_form(w);
    }
    out.add_term(x, coeff(rng));
  }
  return out;
}

RingMatrix ModuleSampler::random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) const {
  RingMatrix m(b_.ring(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_element(rng);
  return m;
}

GroupRingElement ModuleSampler::random_central(std::mt19937_64& rng) const {
  if (b_.group().is_abelian()) return random_element(rng);
  GroupRingElement out(b_.ring());
  std::uniform_int_distribution<int> coeff(-options_.max_coefficient, options_.max_coefficient);
  for (const auto& s : class_sums_)
    if (rng() % 2) out += s.scaled(coeff(rng));
  return out;
}

std::pair<RingMatrix, RingMatrix> ModuleSampler::random_invertible(std::mt19937_64& rng, std::size_t n) const {
  const GroupRing& ring = b_.ring();
  const Group& g = ring.group();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  RingMatrix a(ring, n, n), a_inv(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    GroupRingElement unit_elt = random_element(rng);
    GroupElement x = unit_elt.is_zero() ? g.identity() : unit_elt.terms().begin()->first;
    const Rational sign = rng() % 2 ? 1 : -1;
    a(i, perm[i]) = GroupRingElement::basis(ring, x, sign);
    a_inv(perm[i], i) = GroupRingElement::basis(ring, g.invert(x), sign);
  }
  if (n >= 2) {
    const int count = std::uniform_int_distribution<int>(0, 2)(rng);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int k = 0; k < count; ++k) {
      std::size_t i = pick(rng), j = pick(rng);
      if (i == j) j = (i + 1) % n;
      GroupRingElement r = random_element(rng);
      RingMatrix t = RingMatrix::identity(ring, n), t_inv = RingMatrix::identity(ring, n);
      t(i, j) = r;
      t_inv(i, j) = -r;
      a = t * a;
      a_inv = a_inv * t_inv;
    }
  }
  return {a, a_inv};
}

GroupHomomorphism ModuleSampler::random_endomorphism(std::mt19937_64& rng) const {
  const Group& g = b_.group();
  if (!endomorphisms_.empty())
    return endomorphisms_[std::uniform_int_distribution<std::size_t>(0, endomorphisms_.size() - 1)(rng)];
  if (g.kind() == GroupKind::free_abelian && g.rank() > 0) {
    std::uniform_int_distribution<std::int64_t> entry(-2, 2);
    std::vector<std::vector<std::int64_t>> m(static_cast<std::size_t>(g.rank()),
                                             std::vector<std::int64_t>(static_cast<std::size_t>(g.rank())));
    for (auto& row : m)
      for (auto& x : row) x = entry(rng);
    return GroupHomomorphism::from_matrix(g, m);
  }
  return GroupHomomorphism::identity(g);
}

IndependenceSample<ModuleBicategory> ModuleSampler::sample_independence(std::mt19937_64& rng) const {
  const auto& b = b_;
  const int n = random_rank(rng);
  auto first = free_dual_pair(b, n);
  auto [a, a_inv] = random_invertible(rng, static_cast<std::size_t>(n));
  auto alpha = dual_matrix_cell(b, a);
  auto alpha_inv = dual_matrix_cell(b, a_inv);
  DualPair<ModuleBicategory> second = first;
  second.eta = b.vertical(b.horizontal(b.identity(first.x), alpha), first.eta);
  second.epsilon = b.vertical(first.epsilon, b.horizontal(alpha_inv, b.identity(first.x)));
  auto phi = random_endomorphism(rng);
  auto f = twisted_matrix_cell(b, random_matrix(rng, n, n), phi);
  return {first, second, b.scalar(1), b.twist(phi), f};
}

DualSample<ModuleBicategory> ModuleSampler::sample_dual(std::mt19937_64& rng) const {
  const auto& b = b_;
  const int n = random_rank(rng);
  auto pair = n == 1 && rng() % 2 ? monoid_dual_pair(b) : free_dual_pair(b, n);
  auto phi = random_endomorphism(rng);
  auto f = twisted_matrix_cell(b, random_matrix(rng, n, n), phi);
  return {pair, b.scalar(1), b.twist(phi), f};
}

CyclicSample<ModuleBicategory> ModuleSampler::sample_cyclic(std::mt19937_64& rng) const {
  const auto& b = b_;
  const int n = random_rank(rng);
  const int m = random_rank(rng);
  auto phi = random_endomorphism(rng);
  auto psi = random_endomorphism(rng);
  auto f = twisted_matrix_cell(b, random_matrix(rng, m, n), phi);
  auto g = twisted_matrix_cell(b, random_matrix(rng, n, m), psi);
  return {free_dual_pair(b, n), free_dual_pair(b, m), b.scalar(1), b.scalar(1), b.twist(phi), b.twist(psi), f, g};
}

MultSample<ModuleBicategory> ModuleSampler::sample_mult(std::mt19937_64& rng) const {
  const auto& b = b_;
  const int n = random_rank(rng);
  const int m = random_rank(rng);
  auto phi = random_endomorphism(rng);
  auto f = twisted_matrix_cell(b, random_matrix(rng, n, n), phi);
  auto wz = bimodule_dual_pair(b, m);
  OneCell p = b.twist(phi);
  OneCell target = b.compose(wz.x, p);
  std::vector<std::vector<GroupRingElement>> c(static_cast<std::size_t>(m));
  for (auto& row : c)
    for (int j = 0; j < m; ++j) row.push_back(random_central(rng));
  std::string label = "central [";
  for (std::size_t i = 0; i < c.size(); ++i) {
    label += i ? ", [" : "[";
    for (std::size_t j = 0; j < c[i].size(); ++j) label += (j ? ", " : "") + c[i][j].format();
    label += "]";
  }
  auto g = b.left_linear(
      b.compose(p, wz.x), target,
      [&b, c, target](const std::vector<int>& idx) {
        Vector out;
        const auto j = static_cast<std::size_t>(idx[1]);
        for (std::size_t i = 0; i < c.size(); ++i)
          for (const auto& [t, k] : b.with_coefficient(target, b.basis_tensor(target, {static_cast<int>(i), 0}), 0, c[i][j]))
            out[t] += k;
        std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
        return out;
      },
      label + "]");
  return {free_dual_pair(b, n), wz, b.scalar(1), p, p, f, g};
}

FunctorSample<ModuleBicategory> ModuleSampler::sample_functor(std::mt19937_64& rng) const {
  const auto& b = b_;
  if (b.ring().coefficients().kind() != CoefficientKind::rationals || !b.group().is_trivial())
    throw Unsupported("functoriality samples need rational coefficients and the trivial group");
  auto sample = random_rational_complex(rng, 2, options_.max_rank);
  auto homology = homology_q(sample.ranks, sample.boundaries, sample.maps);
  // block-diagonal, transposed to the column convention of scalar_matrix_cell
  auto assemble = [](const std::vector<QMatrix>& blocks, std::vector<int>& degrees) {
    std::size_t total = 0;
    for (const auto& m : blocks) total += m.rows();
    std::vector<std::vector<Rational>> out(total, std::vector<Rational>(total, 0));
    std::size_t offset = 0;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      for (std::size_t i = 0; i < blocks[k].rows(); ++i) {
        degrees.push_back(static_cast<int>(k));
        for (std::size_t j = 0; j < blocks[k].cols(); ++j) out[offset + j][offset + i] = blocks[k](i, j);
      }
      offset += blocks[k].rows();
    }
    return out;
  };
  std::vector<int> chain_degrees, homology_degrees;
  auto chain_matrix = assemble(sample.maps, chain_degrees);
  auto homology_matrix = assemble(homology.induced, homology_degrees);
  auto chains = scalar_dual_pair(b, static_cast<int>(chain_degrees.size()), chain_degrees);
  auto hom = scalar_dual_pair(b, static_cast<int>(homology_degrees.size()), homology_degrees);
  auto f_chains = scalar_matrix_cell(b, chain_matrix, chain_degrees, chain_degrees);
  auto f_homology = scalar_matrix_cell(b, homology_matrix, homology_degrees, homology_degrees);
  return {chains, hom, b.scalar(1), b.scalar(1), f_chains, f_homology};
}

}  // namespace nielsen
