#include "nielsen/chain.hpp"

#include <memory>

#include "nielsen/errors.hpp"

namespace nielsen {
namespace {

void require_shapes(const TwistedChainComplex& c) {
  if (c.ranks.empty()) {
    if (!c.boundaries.empty()) throw ShapeMismatch("boundaries given for an empty complex");
    return;
  }
  if (c.boundaries.size() + 1 != c.ranks.size())
    throw ShapeMismatch("complex with " + std::to_string(c.ranks.size()) + " degrees needs " +
                        std::to_string(c.ranks.size() - 1) + " boundary matrices");
  for (std::size_t k = 1; k < c.ranks.size(); ++k) {
    const RingMatrix& m = c.boundaries[k - 1];
    if (!(m.ring() == c.ring)) throw ModelMismatch("boundary in degree " + std::to_string(k) + " over another ring");
    if (m.rows() != c.ranks[k] || m.cols() != c.ranks[k - 1])
      throw ShapeMismatch("boundary in degree " + std::to_string(k) + " must be " + std::to_string(c.ranks[k]) +
                          "x" + std::to_string(c.ranks[k - 1]));
  }
}

void require_map_shapes(const TwistedChainComplex& c, const TwistedChainMap& f) {
  if (!(f.phi.source() == c.ring.group()) || !f.phi.is_endomorphism())
    throw ModelMismatch("chain map endomorphism does not act on " + c.ring.name());
  if (f.matrices.size() != c.ranks.size())
    throw ShapeMismatch("chain map needs one matrix per degree (" + std::to_string(c.ranks.size()) + ")");
  for (std::size_t k = 0; k < c.ranks.size(); ++k) {
    const RingMatrix& m = f.matrices[k];
    if (!(m.ring() == c.ring)) throw ModelMismatch("chain map in degree " + std::to_string(k) + " over another ring");
    if (m.rows() != c.ranks[k] || m.cols() != c.ranks[k])
      throw ShapeMismatch("chain map in degree " + std::to_string(k) + " must be square of size " +
                          std::to_string(c.ranks[k]));
  }
}

QMatrix row_vector(const std::vector<Rational>& v) { return QMatrix::from_rows({v}, v.size()); }

std::vector<Rational> row_of(const QMatrix& m, std::size_t i) { return m.row(i); }

}  // namespace

std::optional<ComplexDefect> complex_defect(const TwistedChainComplex& c) {
  require_shapes(c);
  for (std::size_t k = 2; k < c.ranks.size(); ++k) {
    RingMatrix product = c.boundaries[k - 1] * c.boundaries[k - 2];
    if (!product.is_zero()) return ComplexDefect{k, product.format()};
  }
  return std::nullopt;
}

void validate_complex(const TwistedChainComplex& c) {
  if (auto d = complex_defect(c))
    throw ValidationError("boundary composite d" + std::to_string(d->degree) + " d" + std::to_string(d->degree - 1) +
                          " is not zero: " + d->residual);
}

std::optional<ComplexDefect> chain_map_defect(const TwistedChainComplex& c, const TwistedChainMap& f) {
  require_shapes(c);
  require_map_shapes(c, f);
  for (std::size_t k = 1; k < c.ranks.size(); ++k) {
    const RingMatrix& d = c.boundaries[k - 1];
    RingMatrix residual = f.matrices[k] * d - d.twisted(f.phi) * f.matrices[k - 1];
    if (!residual.is_zero()) return ComplexDefect{k, residual.format()};
  }
  return std::nullopt;
}

void validate_chain_map(const TwistedChainComplex& c, const TwistedChainMap& f) {
  if (auto d = chain_map_defect(c, f))
    throw ValidationError("chain map square fails in degree " + std::to_string(d->degree) +
                          "; residual " + d->residual);
}

Rational lefschetz(const TwistedChainComplex& c, const TwistedChainMap& f) {
  validate_chain_map(c, f);
  Rational total = 0;
  for (std::size_t k = 0; k < c.ranks.size(); ++k) {
    Rational t = f.matrices[k].diagonal_sum().augment();
    total += k % 2 == 0 ? t : -t;
  }
  return c.ring.coefficients().normalize(total);
}

ShadowElement reidemeister_trace(const TwistedChainComplex& c, const TwistedChainMap& f) {
  validate_chain_map(c, f);
  auto classes = std::make_shared<const TwistedClasses>(f.phi);
  ShadowElement total(c.ring, classes);
  for (std::size_t k = 0; k < c.ranks.size(); ++k) {
    ShadowElement term = shadow_project(f.matrices[k].involuted().diagonal_sum(), classes);
    if (k % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

std::size_t nielsen_number(const ShadowElement& s) { return s.nonzero_classes(); }

HomologyResult homology_q(const std::vector<std::size_t>& ranks, const std::vector<QMatrix>& boundaries,
                          const std::vector<QMatrix>& maps) {
  const std::size_t degrees = ranks.size();
  if (degrees == 0 ? !boundaries.empty() : boundaries.size() + 1 != degrees)
    throw ShapeMismatch("boundary count does not match the degree range");
  if (maps.size() != degrees) throw ShapeMismatch("chain map needs one matrix per degree");
  for (std::size_t k = 0; k < degrees; ++k) {
    if (maps[k].rows() != ranks[k] || maps[k].cols() != ranks[k])
      throw ShapeMismatch("chain map in degree " + std::to_string(k) + " has the wrong shape");
    if (k >= 1 && (boundaries[k - 1].rows() != ranks[k] || boundaries[k - 1].cols() != ranks[k - 1]))
      throw ShapeMismatch("boundary in degree " + std::to_string(k) + " has the wrong shape");
  }
  for (std::size_t k = 2; k < degrees; ++k)
    if (!(boundaries[k - 1] * boundaries[k - 2]).is_zero())
      throw ValidationError("d^2 != 0 in degree " + std::to_string(k));
  for (std::size_t k = 1; k < degrees; ++k)
    if (!(maps[k] * boundaries[k - 1] - boundaries[k - 1] * maps[k - 1]).is_zero())
      throw ValidationError("not a chain map in degree " + std::to_string(k));

  HomologyResult out;
  for (std::size_t k = 0; k < degrees; ++k) {
    const std::size_t n = ranks[k];
    QMatrix cycles = k == 0 ? QMatrix::identity(n) : left_nullspace(boundaries[k - 1]);
    QMatrix bounds = k + 1 < degrees ? row_space(boundaries[k]) : QMatrix(0, n);
    // extend a basis of the boundaries to one of the cycles
    QMatrix span = bounds;
    std::size_t span_rank = bounds.rows();
    std::vector<std::vector<Rational>> chosen;
    for (std::size_t i = 0; i < cycles.rows(); ++i) {
      QMatrix candidate = stack(span, row_vector(row_of(cycles, i)));
      const std::size_t r = rank(candidate);
      if (r == span_rank) continue;
      span = std::move(candidate);
      span_rank = r;
      chosen.push_back(row_of(cycles, i));
    }
    QMatrix basis = QMatrix::from_rows(chosen, n);
    QMatrix full = stack(basis, bounds);
    QMatrix induced(chosen.size(), chosen.size());
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      QMatrix image = row_vector(chosen[i]) * maps[k];
      auto coords = solve_left(full, image.row(0));
      if (!coords) throw ValidationError("image of a cycle is not a cycle in degree " + std::to_string(k));
      for (std::size_t j = 0; j < chosen.size(); ++j) induced(i, j) = (*coords)[j];
    }
    const Rational sign = k % 2 == 0 ? 1 : -1;
    out.chain_trace += sign * maps[k].trace();
    out.homology_trace += sign * induced.trace();
    out.dimensions.push_back(chosen.size());
    out.induced.push_back(std::move(induced));
  }
  if (out.chain_trace != out.homology_trace)
    throw ValidationError("alternating traces differ: chains " + out.chain_trace.to_string() + ", homology " +
                          out.homology_trace.to_string());
  return out;
}

HomologyResult homology_q(const TwistedChainComplex& c, const TwistedChainMap& f) {
  if (c.ring.coefficients().kind() != CoefficientKind::rationals || !c.ring.group().is_trivial())
    throw ModelMismatch("rational homology needs a complex over Q");
  require_shapes(c);
  require_map_shapes(c, f);
  const GroupElement e = c.ring.group().identity();
  auto convert = [&e](const RingMatrix& m) {
    QMatrix q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j).coefficient(e);
    return q;
  };
  std::vector<QMatrix> boundaries, maps;
  for (const auto& m : c.boundaries) boundaries.push_back(convert(m));
  for (const auto& m : f.matrices) maps.push_back(convert(m));
  return homology_q(c.ranks, boundaries, maps);
}

RationalChainSample random_rational_complex(std::mt19937_64& rng, int max_degree, int max_rank) {
  std::uniform_int_distribution<int> entry(-2, 2);
  const int top = std::uniform_int_distribution<int>(0, max_degree)(rng);
  RationalChainSample s;
  for (int k = 0; k <= top; ++k)
    s.ranks.push_back(static_cast<std::size_t>(std::uniform_int_distribution<int>(0, max_rank)(rng)));
  for (std::size_t k = 1; k < s.ranks.size(); ++k) {
    // rows of d_k are drawn from the cycles of d_{k-1}
    QMatrix allowed = k == 1 ? QMatrix::identity(s.ranks[0]) : left_nullspace(s.boundaries[k - 2]);
    QMatrix mix(s.ranks[k], allowed.rows());
    for (std::size_t i = 0; i < mix.rows(); ++i)
      for (std::size_t j = 0; j < mix.cols(); ++j) mix(i, j) = entry(rng);
    s.boundaries.push_back(allowed.rows() ? mix * allowed : QMatrix(s.ranks[k], s.ranks[k - 1]));
  }
  // chain maps: nullspace of the linear conditions F_k d_k - d_k F_{k-1} = 0
  std::vector<std::size_t> offset;
  std::size_t unknowns = 0;
  for (auto n : s.ranks) {
    offset.push_back(unknowns);
    unknowns += n * n;
  }
  std::vector<std::vector<Rational>> rows;
  for (std::size_t k = 1; k < s.ranks.size(); ++k) {
    const QMatrix& d = s.boundaries[k - 1];
    const std::size_t nk = s.ranks[k], nl = s.ranks[k - 1];
    for (std::size_t i = 0; i < nk; ++i)
      for (std::size_t j = 0; j < nl; ++j) {
        std::vector<Rational> row(unknowns, 0);
        for (std::size_t l = 0; l < nk; ++l) row[offset[k] + i * nk + l] += d(l, j);
        for (std::size_t l = 0; l < nl; ++l) row[offset[k - 1] + l * nl + j] -= d(i, l);
        rows.push_back(std::move(row));
      }
  }
  QMatrix solutions = nullspace(QMatrix::from_rows(rows, unknowns));
  std::vector<Rational> x(unknowns, 0);
  for (std::size_t r = 0; r < solutions.rows(); ++r) {
    const Rational c = entry(rng);
    for (std::size_t v = 0; v < unknowns; ++v) x[v] += c * solutions(r, v);
  }
  for (std::size_t k = 0; k < s.ranks.size(); ++k) {
    const std::size_t n = s.ranks[k];
    QMatrix f(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) f(i, j) = x[offset[k] + i * n + j];
    s.maps.push_back(std::move(f));
  }
  return s;
}

}  // namespace nielsen
