#pragma once

#include <cstddef>
#include <vector>

#include "nielsen/group_ring.hpp"
#include "nielsen/matrix.hpp"

namespace nielsen {

/// Finite connected groupoid with vertex group pi, in skeleton coordinates:
/// base paths p_x : 0 -> x are fixed, and the morphism p_y g p_x^-1 : x -> y
/// carries the label g. Composition multiplies labels, (y->z; h) o (x->y; g) = (x->z; hg).
/// connecting[x][y] is the label of the chosen connecting element x -> y.
struct FiniteLinearGroupoid {
  GroupRing ring;
  std::vector<std::vector<GroupElement>> connecting;

  std::size_t objects() const { return connecting.size(); }
};

/// Square table, identity on the diagonal, labels in the vertex group.
void validate_groupoid(const FiniteLinearGroupoid& g);

/// Label of c(x,z)^-1 c(y,z) c(x,y), a loop at x; the identity when the chosen
/// connecting elements compose on the nose.
GroupElement composition_correction(const FiniteLinearGroupoid& g, std::size_t x, std::size_t y, std::size_t z);

/// Free module with one generator b_i located at object location[i].
struct GroupoidModule {
  std::vector<std::size_t> location;

  std::size_t rank() const { return location.size(); }
};

/// Endofunctor: phi on labels at object 0, correction theta[x] with
/// F(p_x) = p_x theta[x], and a map on objects.
struct GroupoidEndofunctor {
  GroupHomomorphism phi;
  std::vector<GroupElement> theta;
  std::vector<std::size_t> objects;
};

/// Module map twisted by F: f(b_j) = sum_k m(j,k) o b_k, where m(j,k) is a
/// combination of labels of morphisms location[k] -> location[j].
struct GroupoidModuleMap {
  GroupoidEndofunctor functor;
  RingMatrix matrix;
};

/// Vertex-group endomorphism of F at object x: h -> theta[x] phi(h) theta[x]^-1.
GroupHomomorphism vertex_endomorphism(const GroupoidEndofunctor& f, std::size_t x);

/// Matrix over K[pi] of the action of c(x,y): M(x) -> M(y), in the bases
/// c(location[j], x) o b_j of M(x) and M(y).
RingMatrix action_matrix(const FiniteLinearGroupoid& g, const GroupoidModule& m, std::size_t x, std::size_t y);

/// M(x) as a free module of rank m.rank() over the vertex group at x.
std::size_t restrict_to_object(const FiniteLinearGroupoid& g, const GroupoidModule& m, std::size_t x);

/// Matrix of f at the fixed object x in the bases of action_matrix.
/// Throws Unsupported when F moves x (or any object).
RingMatrix restrict_map(const FiniteLinearGroupoid& g, const GroupoidModule& m, const GroupoidModuleMap& f,
                        std::size_t x);

/// Trace of f computed on the whole groupoid: each diagonal loop is carried
/// to x along a path through a second object and the classes are summed.
ShadowElement groupoid_trace(const FiniteLinearGroupoid& g, const GroupoidModule& m, const GroupoidModuleMap& f,
                             std::size_t x);

}  // namespace nielsen
