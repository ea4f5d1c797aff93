#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nielsen/group_ring.hpp"
#include "nielsen/linalg.hpp"
#include "nielsen/matrix.hpp"

namespace nielsen {

/// Bounded complex of finitely generated free modules over K[pi], in degrees
/// 0..d. Elements are row vectors; boundaries[k-1] is the matrix of d_k with
/// ranks[k] rows and ranks[k-1] columns, and d_k d_{k-1} = 0 reads
/// boundaries[k-1] * boundaries[k-2] == 0.
struct TwistedChainComplex {
  GroupRing ring;
  std::vector<std::size_t> ranks;
  std::vector<RingMatrix> boundaries;

  std::size_t top_degree() const { return ranks.empty() ? 0 : ranks.size() - 1; }
};

/// phi-semilinear self-map: matrices[k] is square of size ranks[k] and
/// F_k d_k = d_k^phi F_{k-1}.
struct TwistedChainMap {
  GroupHomomorphism phi;
  std::vector<RingMatrix> matrices;
};

struct ComplexDefect {
  std::size_t degree = 0;
  std::string residual;
};

/// Shape and d^2 = 0 check; nullopt when the complex is valid.
std::optional<ComplexDefect> complex_defect(const TwistedChainComplex& c);
/// Throws ShapeMismatch or ValidationError naming the offending degree.
void validate_complex(const TwistedChainComplex& c);

std::optional<ComplexDefect> chain_map_defect(const TwistedChainComplex& c, const TwistedChainMap& f);
void validate_chain_map(const TwistedChainComplex& c, const TwistedChainMap& f);

/// Alternating sum of the augmented diagonal sums.
Rational lefschetz(const TwistedChainComplex& c, const TwistedChainMap& f);
/// Alternating sum of Hattori-Stallings traces of the involuted matrices.
ShadowElement reidemeister_trace(const TwistedChainComplex& c, const TwistedChainMap& f);
/// Number of classes with nonzero coefficient. Throws FormalShadow on formal input.
std::size_t nielsen_number(const ShadowElement& s);

struct HomologyResult {
  std::vector<std::size_t> dimensions;
  /// Induced map on the chosen homology basis, row convention.
  std::vector<QMatrix> induced;
  Rational chain_trace;
  Rational homology_trace;
};

/// Rational homology of a complex given by boundary matrices (row convention,
/// boundaries[k-1] is ranks[k] x ranks[k-1]) together with the map induced by
/// the chain map `maps`. Throws ValidationError when d^2 != 0, when `maps` is
/// not a chain map, or when the two alternating traces differ.
HomologyResult homology_q(const std::vector<std::size_t>& ranks, const std::vector<QMatrix>& boundaries,
                          const std::vector<QMatrix>& maps);
/// Same, for a complex over Q[trivial].
HomologyResult homology_q(const TwistedChainComplex& c, const TwistedChainMap& f);

struct RationalChainSample {
  std::vector<std::size_t> ranks;
  std::vector<QMatrix> boundaries;
  std::vector<QMatrix> maps;
};

/// Random bounded rational complex (degrees 0..max_degree, ranks <= max_rank,
/// small integer entries) with a random chain self-map.
RationalChainSample random_rational_complex(std::mt19937_64& rng, int max_degree = 2, int max_rank = 3);

}  // namespace nielsen
