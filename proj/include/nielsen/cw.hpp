#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nielsen/chain.hpp"
#include "nielsen/group.hpp"
#include "nielsen/group_ring.hpp"
#include "nielsen/matrix.hpp"

namespace nielsen {

/// Edge paths are lists of signed 1-based edge indices: k traverses edge k-1
/// forwards, -k backwards.
using EdgePath = std::vector<int>;

/// Finite connected CW complex of dimension <= 2 with a base vertex.
struct CWComplex2 {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<EdgePath> two_cells;
  std::size_t base = 0;
};

/// Endpoints must be in range, 2-cells closed paths, the 1-skeleton connected.
void validate_cw(const CWComplex2& x);

/// Start and end vertex of a nonempty path; throws ValidationError when the
/// path is not contiguous.
std::pair<std::size_t, std::size_t> path_endpoints(const CWComplex2& x, const EdgePath& p);

/// Edge-path presentation: one generator per non-tree edge (input order).
struct Presentation {
  std::vector<std::size_t> tree;             // 0-based edge indices
  std::vector<std::size_t> generator_edges;  // generator i+1 is edge generator_edges[i]
  std::vector<RawWord> relators;             // freely reduced
  std::vector<EdgePath> to_base;             // tree path from each vertex to the base

  int rank() const { return static_cast<int>(generator_edges.size()); }
  /// Generator word of an edge path (tree edges vanish).
  RawWord rewrite(const EdgePath& p) const;
};

/// Breadth-first spanning tree from the base vertex when `tree` is empty.
Presentation fundamental_group(const CWComplex2& x, const std::optional<std::vector<std::size_t>>& tree = {});

/// A group together with a label for every edge, such that every 2-cell
/// boundary multiplies to the identity. Edge labels make the target
/// independent of the choice of tree and base vertex.
struct GroupTarget {
  Group group;
  std::vector<GroupElement> edge_labels;
};

void validate_target(const CWComplex2& x, const GroupTarget& t);
/// Homomorphism from the free group on the presentation generators to the target.
GroupHomomorphism target_map(const CWComplex2& x, const Presentation& p, const GroupTarget& t);

/// Left Fox derivative of w with respect to generator `generator`, pushed
/// into Z[pi] through `rho`.
GroupRingElement fox_derivative(const RawWord& w, int generator, const GroupHomomorphism& rho);

/// Cellular chains of the universal cover (over the target): degrees 0, 1 and,
/// when there are 2-cells, 2.
TwistedChainComplex twisted_chains(const CWComplex2& x, const Presentation& p, const GroupTarget& t);

/// Cellular self-map: vertex images, an image path per edge and a base path
/// zeta from the base vertex to its image (the tree path when absent).
/// Optional degree-2 lift entries.
struct CWSelfMap {
  std::vector<std::size_t> vertex_images;
  std::vector<EdgePath> edge_images;
  std::optional<EdgePath> zeta;
  std::optional<RingMatrix> two_cell_lift;
};

void validate_self_map(const CWComplex2& x, const CWSelfMap& f);

/// Tree path from the base vertex to its image.
EdgePath default_zeta(const CWSelfMap& f, const Presentation& p, std::size_t base);

struct Lift {
  EdgePath zeta;
  GroupHomomorphism phi;
  /// phi on the free group of presentation generators.
  std::vector<RawWord> generator_images;
  TwistedChainMap map;
  bool solved_top = false;  // degree-2 entries found by the solver
};

/// Lift of f to the universal cover: phi(g) = [zeta f(g) zeta^-1] and Fox
/// derivatives in degree 1. Degree 2 is taken from the map or solved; throws
/// UnderdeterminedLift when it is neither supplied nor unique.
Lift lift_self_map(const CWComplex2& x, const CWSelfMap& f, const Presentation& p, const GroupTarget& t);

struct AnalysisOptions {
  std::optional<std::vector<std::size_t>> tree;
  std::optional<EdgePath> zeta;  // overrides the map's base path
};

struct Analysis {
  Presentation presentation;
  TwistedChainComplex complex;
  Lift lift;
  Rational lefschetz;
  ShadowElement reidemeister;
  std::optional<std::size_t> nielsen;  // empty when the trace is formal
};

Analysis analyze(const CWComplex2& x, const CWSelfMap& f, const GroupTarget& t, const AnalysisOptions& options = {});

}  // namespace nielsen
