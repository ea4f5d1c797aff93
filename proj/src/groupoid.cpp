#include "nielsen/groupoid.hpp"

#include "nielsen/errors.hpp"

namespace nielsen {
namespace {

void require_object(const FiniteLinearGroupoid& g, std::size_t x) {
  if (x >= g.objects()) throw ValidationError("unknown object " + std::to_string(x));
}

void require_functor(const FiniteLinearGroupoid& g, const GroupoidEndofunctor& f) {
  if (!(f.phi.source() == g.ring.group()) || !f.phi.is_endomorphism())
    throw ModelMismatch("endofunctor does not act on the vertex group");
  if (f.theta.size() != g.objects() || f.objects.size() != g.objects())
    throw ShapeMismatch("endofunctor needs one entry per object");
  for (const auto& t : f.theta) g.ring.group().require(t);
  for (std::size_t x = 0; x < g.objects(); ++x)
    if (f.objects[x] != x) throw Unsupported("endofunctors that move objects are not supported");
}

void require_map(const FiniteLinearGroupoid& g, const GroupoidModule& m, const GroupoidModuleMap& f) {
  require_functor(g, f.functor);
  for (auto x : m.location) require_object(g, x);
  if (!(f.matrix.ring() == g.ring)) throw ModelMismatch("module map over another ring");
  if (f.matrix.rows() != m.rank() || f.matrix.cols() != m.rank())
    throw ShapeMismatch("module map must be square of size " + std::to_string(m.rank()));
}

// Label of F(a) for a morphism a : x -> y with label h.
GroupElement apply_functor(const Group& grp, const GroupoidEndofunctor& f, std::size_t x, std::size_t y,
                           const GroupElement& h) {
  return grp.multiply(grp.multiply(f.theta[y], f.phi(h)), grp.invert(f.theta[x]));
}

}  // namespace

void validate_groupoid(const FiniteLinearGroupoid& g) {
  const Group& grp = g.ring.group();
  if (g.objects() == 0) throw ValidationError("groupoid without objects");
  for (std::size_t x = 0; x < g.objects(); ++x) {
    if (g.connecting[x].size() != g.objects()) throw ShapeMismatch("connecting table is not square");
    for (const auto& h : g.connecting[x]) grp.require(h);
    if (!grp.is_identity(g.connecting[x][x]))
      throw ValidationError("connecting element at object " + std::to_string(x) + " is not an identity");
  }
}

GroupElement composition_correction(const FiniteLinearGroupoid& g, std::size_t x, std::size_t y, std::size_t z) {
  require_object(g, x);
  require_object(g, y);
  require_object(g, z);
  const Group& grp = g.ring.group();
  return grp.multiply(grp.invert(g.connecting[x][z]), grp.multiply(g.connecting[y][z], g.connecting[x][y]));
}

GroupHomomorphism vertex_endomorphism(const GroupoidEndofunctor& f, std::size_t x) {
  const Group& grp = f.phi.source();
  if (x >= f.theta.size()) throw ValidationError("unknown object " + std::to_string(x));
  std::vector<GroupElement> images;
  const std::size_t n = grp.kind() == GroupKind::finite ? static_cast<std::size_t>(grp.order())
                                                        : static_cast<std::size_t>(grp.rank());
  for (std::size_t i = 0; i < n; ++i) {
    GroupElement gen = grp.kind() == GroupKind::finite ? GroupElement(static_cast<int>(i))
                                                       : grp.generator(static_cast<int>(i) + 1);
    images.push_back(apply_functor(grp, f, x, x, gen));
  }
  return GroupHomomorphism(grp, grp, images);
}

RingMatrix action_matrix(const FiniteLinearGroupoid& g, const GroupoidModule& m, std::size_t x, std::size_t y) {
  validate_groupoid(g);
  require_object(g, x);
  require_object(g, y);
  const Group& grp = g.ring.group();
  RingMatrix a(g.ring, m.rank(), m.rank());
  for (std::size_t j = 0; j < m.rank(); ++j) {
    const std::size_t o = m.location[j];
    require_object(g, o);
    // c(x,y) c(o,x) = [c(x,y) c(o,x) c(o,y)^-1] c(o,y)
    GroupElement h = grp.multiply(grp.multiply(g.connecting[x][y], g.connecting[o][x]), grp.invert(g.connecting[o][y]));
    a(j, j) = GroupRingElement::basis(g.ring, h);
  }
  return a;
}

std::size_t restrict_to_object(const FiniteLinearGroupoid& g, const GroupoidModule& m, std::size_t x) {
  validate_groupoid(g);
  require_object(g, x);
  for (auto o : m.location) require_object(g, o);
  return m.rank();
}

RingMatrix restrict_map(const FiniteLinearGroupoid& g, const GroupoidModule& m, const GroupoidModuleMap& f,
                        std::size_t x) {
  validate_groupoid(g);
  require_object(g, x);
  require_map(g, m, f);
  const Group& grp = g.ring.group();
  RingMatrix out(g.ring, m.rank(), m.rank());
  for (std::size_t j = 0; j < m.rank(); ++j)
    for (std::size_t k = 0; k < m.rank(); ++k) {
      const GroupElement& cj = g.connecting[m.location[j]][x];
      const GroupElement& ck = g.connecting[m.location[k]][x];
      // F(c_j) o m(j,k) o c_k^-1
      GroupElement left = apply_functor(grp, f.functor, m.location[j], x, cj);
      for (const auto& [h, c] : f.matrix(j, k).terms())
        out(j, k).add_term(grp.multiply(grp.multiply(left, h), grp.invert(ck)), c);
    }
  return out;
}

ShadowElement groupoid_trace(const FiniteLinearGroupoid& g, const GroupoidModule& m, const GroupoidModuleMap& f,
                             std::size_t x) {
  validate_groupoid(g);
  require_object(g, x);
  require_map(g, m, f);
  const Group& grp = g.ring.group();
  ShadowElement total(g.ring, vertex_endomorphism(f.functor, x));
  for (std::size_t i = 0; i < m.rank(); ++i) {
    const std::size_t o = m.location[i];
    const std::size_t via = (o + 1) % g.objects();
    GroupElement path = grp.multiply(g.connecting[via][x], g.connecting[o][via]);
    GroupElement left = apply_functor(grp, f.functor, o, x, path);
    for (const auto& [h, c] : f.matrix(i, i).terms()) {
      GroupElement loop = grp.multiply(grp.multiply(left, h), grp.invert(path));
      total.add(grp.invert(loop), c);
    }
  }
  return total;
}

}  // namespace nielsen
