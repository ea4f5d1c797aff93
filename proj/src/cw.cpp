#include "nielsen/cw.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "nielsen/errors.hpp"
#include "nielsen/linalg.hpp"

namespace nielsen {
namespace {

std::size_t edge_of(int letter) { return static_cast<std::size_t>(std::abs(letter)) - 1; }

void require_letter(const CWComplex2& x, int letter) {
  if (letter == 0 || static_cast<std::size_t>(std::abs(letter)) > x.edges.size())
    throw ValidationError("unknown edge " + std::to_string(letter));
}

std::size_t letter_source(const CWComplex2& x, int letter) {
  const auto& e = x.edges[edge_of(letter)];
  return letter > 0 ? e.first : e.second;
}

std::size_t letter_target(const CWComplex2& x, int letter) {
  const auto& e = x.edges[edge_of(letter)];
  return letter > 0 ? e.second : e.first;
}

EdgePath reversed(const EdgePath& p) {
  EdgePath out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back(-*it);
  return out;
}

RawWord freely_reduced(const RawWord& w) {
  RawWord out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

void append(EdgePath& a, const EdgePath& b) { a.insert(a.end(), b.begin(), b.end()); }

// Image of a path under the cellular map.
EdgePath image_path(const CWSelfMap& f, const EdgePath& p) {
  EdgePath out;
  for (int l : p) append(out, l > 0 ? f.edge_images[edge_of(l)] : reversed(f.edge_images[edge_of(l)]));
  return out;
}

// Endpoint check that accepts the empty path at a fixed vertex.
void require_path(const CWComplex2& x, const EdgePath& p, std::size_t from, std::size_t to, const std::string& what) {
  if (p.empty()) {
    if (from != to) throw ValidationError(what + " is empty but must run from vertex " + std::to_string(from) +
                                          " to vertex " + std::to_string(to));
    return;
  }
  auto [s, t] = path_endpoints(x, p);
  if (s != from || t != to)
    throw ValidationError(what + " runs from vertex " + std::to_string(s) + " to " + std::to_string(t) +
                          ", expected " + std::to_string(from) + " to " + std::to_string(to));
}

GroupElement path_label(const GroupTarget& t, const EdgePath& p) {
  const Group& g = t.group;
  GroupElement out = g.identity();
  for (int l : p) {
    const GroupElement& e = t.edge_labels[edge_of(l)];
    out = g.multiply(out, l > 0 ? e : g.invert(e));
  }
  return out;
}

// phi on the target from its action on presentation generators.
GroupHomomorphism induced_endomorphism(const GroupHomomorphism& phi_free, const GroupHomomorphism& rho) {
  const Group& target = rho.target();
  if (target.kind() != GroupKind::free || target.rank() == 0) return descend_endomorphism(phi_free, rho);
  // free targets: every target generator must be hit by a presentation generator
  std::vector<GroupElement> images;
  for (int k = 1; k <= target.rank(); ++k) {
    const GroupElement t = target.generator(k);
    std::optional<GroupElement> image;
    for (int i = 1; i <= rho.source().rank() && !image; ++i) {
      const GroupElement g = rho.source().generator(i);
      if (rho(g) == t) image = rho(phi_free(g));
      else if (rho(g) == target.invert(t)) image = target.invert(rho(phi_free(g)));
    }
    if (!image) throw Unsupported("free target generator " + target.generator_name(k) + " is not an edge generator");
    images.push_back(*image);
  }
  GroupHomomorphism phi(target, target, images);
  for (int i = 1; i <= rho.source().rank(); ++i) {
    const GroupElement g = rho.source().generator(i);
    if (phi(rho(g)) != rho(phi_free(g))) throw ValidationError("self-map does not induce an endomorphism of the target");
  }
  return phi;
}

QMatrix evaluate(const RingMatrix& m, const std::vector<Rational>& point) {
  QMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (const auto& [g, c] : m(i, j).terms()) {
        Rational v = c;
        for (std::size_t k = 0; k < point.size(); ++k) {
          const auto e = g.exponents()[k];
          for (std::int64_t n = 0; n < std::abs(e); ++n) v = e > 0 ? v * point[k] : v / point[k];
        }
        out(i, j) = out(i, j) + v;
      }
  return out;
}

// F d2 = d2 has only the zero solution over a Laurent ring iff d2 has full row
// rank over the fraction field; a full-rank evaluation certifies it.
bool injective_over_laurent(const RingMatrix& d2, std::size_t rank) {
  const std::vector<std::vector<Rational>> points{
      {Rational(2), Rational(3), Rational(5), Rational(7), Rational(11), Rational(13)},
      {Rational(3, 2), Rational(5, 3), Rational(7, 5), Rational(11, 7), Rational(13, 11), Rational(17, 13)}};
  for (const auto& base : points) {
    std::vector<Rational> point;
    for (std::size_t k = 0; k < rank; ++k) point.push_back(base[k % base.size()] + Rational(static_cast<std::int64_t>(k / base.size())));
    if (nielsen::rank(evaluate(d2, point)) == d2.rows()) return true;
  }
  return false;
}

// Candidate supports for one row of F2.
std::vector<GroupElement> candidate_support(const Group& g, const RingMatrix& d2, const RingMatrix& rhs, std::size_t r) {
  if (g.kind() == GroupKind::finite) return g.elements();
  if (g.rank() == 0) return {g.identity()};
  const auto n = static_cast<std::size_t>(g.rank());
  std::vector<std::int64_t> lo(n, 0), hi(n, 0);
  bool any = false;
  for (std::size_t j = 0; j < d2.cols(); ++j)
    for (const auto& [x, cx] : rhs(r, j).terms())
      for (std::size_t s = 0; s < d2.rows(); ++s)
        for (const auto& [y, cy] : d2(s, j).terms()) {
          for (std::size_t k = 0; k < n; ++k) {
            const auto v = x.exponents()[k] - y.exponents()[k];
            lo[k] = any ? std::min(lo[k], v) : v;
            hi[k] = any ? std::max(hi[k], v) : v;
          }
          any = true;
        }
  if (!any) return {};
  std::size_t volume = 1;
  for (std::size_t k = 0; k < n; ++k) {
    --lo[k];
    ++hi[k];
    volume *= static_cast<std::size_t>(hi[k] - lo[k] + 1);
    if (volume > 4096) throw UnderdeterminedLift("degree-2 lift search region too large; supply two_cell_lifts");
  }
  std::vector<GroupElement> out;
  std::vector<std::int64_t> e = lo;
  while (true) {
    out.emplace_back(GroupElement::Rep(e));
    std::size_t k = 0;
    while (k < n && ++e[k] > hi[k]) e[k] = lo[k], ++k;
    if (k == n) break;
  }
  return out;
}

// Unique F2 with F2 d2 = rhs, or UnderdeterminedLift.
RingMatrix solve_top(const RingMatrix& d2, const RingMatrix& rhs) {
  const GroupRing& ring = d2.ring();
  const Group& g = ring.group();
  if (g.kind() == GroupKind::free)
    throw UnderdeterminedLift("degree-2 lift over " + g.describe() + " must be supplied as two_cell_lifts");
  if (g.kind() == GroupKind::free_abelian && !injective_over_laurent(d2, static_cast<std::size_t>(g.rank())))
    throw UnderdeterminedLift("degree-2 boundary is not injective; supply two_cell_lifts");
  const std::size_t c = d2.rows();
  RingMatrix out(ring, c, c);
  for (std::size_t r = 0; r < c; ++r) {
    const auto support = candidate_support(g, d2, rhs, r);
    std::map<std::pair<std::size_t, GroupElement>, std::size_t> column;
    auto col = [&](std::size_t j, const GroupElement& z) {
      auto [it, fresh] = column.try_emplace({j, z}, column.size());
      return it->second;
    };
    struct Entry {
      std::size_t row, col;
      Rational value;
    };
    std::vector<Entry> entries;
    for (std::size_t s = 0; s < c; ++s)
      for (std::size_t h = 0; h < support.size(); ++h)
        for (std::size_t j = 0; j < d2.cols(); ++j)
          for (const auto& [y, cy] : d2(s, j).terms())
            entries.push_back({s * support.size() + h, col(j, g.multiply(support[h], y)), cy});
    std::vector<std::pair<std::size_t, Rational>> target;
    for (std::size_t j = 0; j < d2.cols(); ++j)
      for (const auto& [z, cz] : rhs(r, j).terms()) target.emplace_back(col(j, z), cz);
    QMatrix system(c * support.size(), column.size());
    for (const auto& e : entries) system(e.row, e.col) = system(e.row, e.col) + e.value;
    std::vector<Rational> v(column.size());
    for (const auto& [k, value] : target) v[k] = value;
    if (nielsen::rank(system) != system.rows())
      throw UnderdeterminedLift("degree-2 lift is not unique; supply two_cell_lifts");
    auto x = solve_left(system, v);
    if (!x) throw UnderdeterminedLift("no degree-2 lift found; supply two_cell_lifts");
    for (std::size_t s = 0; s < c; ++s)
      for (std::size_t h = 0; h < support.size(); ++h) {
        const Rational& a = (*x)[s * support.size() + h];
        if (a.is_zero()) continue;
        if (!a.is_integer()) throw ValidationError("degree-2 lift has non-integral coefficients");
        out(r, s).add_term(support[h], a);
      }
  }
  return out;
}

}  // namespace

std::pair<std::size_t, std::size_t> path_endpoints(const CWComplex2& x, const EdgePath& p) {
  if (p.empty()) throw ValidationError("empty edge path");
  for (int l : p) require_letter(x, l);
  for (std::size_t i = 1; i < p.size(); ++i)
    if (letter_target(x, p[i - 1]) != letter_source(x, p[i]))
      throw ValidationError("edge path breaks between positions " + std::to_string(i - 1) + " and " + std::to_string(i));
  return {letter_source(x, p.front()), letter_target(x, p.back())};
}

void validate_cw(const CWComplex2& x) {
  if (x.vertices == 0) throw ValidationError("complex without vertices");
  if (x.base >= x.vertices) throw ValidationError("base vertex out of range");
  for (std::size_t i = 0; i < x.edges.size(); ++i)
    if (x.edges[i].first >= x.vertices || x.edges[i].second >= x.vertices)
      throw ValidationError("edge " + std::to_string(i + 1) + " has an endpoint out of range");
  for (std::size_t i = 0; i < x.two_cells.size(); ++i) {
    const auto& cell = x.two_cells[i];
    auto [s, t] = path_endpoints(x, cell);
    if (s != t) throw ValidationError("boundary of 2-cell " + std::to_string(i + 1) + " is not closed");
  }
  std::vector<bool> seen(x.vertices, false);
  std::deque<std::size_t> queue{x.base};
  seen[x.base] = true;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (const auto& [s, t] : x.edges) {
      if (s == v && !seen[t]) seen[t] = true, queue.push_back(t);
      if (t == v && !seen[s]) seen[s] = true, queue.push_back(s);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw ValidationError("complex is not connected");
}

RawWord Presentation::rewrite(const EdgePath& p) const {
  RawWord out;
  for (int l : p) {
    if (l == 0 || static_cast<std::size_t>(std::abs(l)) > tree.size() + generator_edges.size())
      throw ValidationError("unknown edge " + std::to_string(l));
    auto it = std::find(generator_edges.begin(), generator_edges.end(), edge_of(l));
    if (it == generator_edges.end()) continue;
    const int g = static_cast<int>(it - generator_edges.begin()) + 1;
    out.push_back(l > 0 ? g : -g);
  }
  return out;
}

Presentation fundamental_group(const CWComplex2& x, const std::optional<std::vector<std::size_t>>& tree) {
  validate_cw(x);
  Presentation p;
  std::vector<bool> in_tree(x.edges.size(), false);
  if (tree) {
    if (tree->size() + 1 != x.vertices) throw ValidationError("spanning tree needs exactly vertices - 1 edges");
    for (auto e : *tree) {
      if (e >= x.edges.size()) throw ValidationError("tree edge " + std::to_string(e + 1) + " out of range");
      if (in_tree[e]) throw ValidationError("tree edge " + std::to_string(e + 1) + " repeated");
      in_tree[e] = true;
    }
  }
  // parent letter from each vertex towards the base
  std::vector<std::optional<int>> up(x.vertices);
  std::vector<bool> seen(x.vertices, false);
  std::deque<std::size_t> queue{x.base};
  seen[x.base] = true;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < x.edges.size(); ++i) {
      if (tree && !in_tree[i]) continue;
      const auto [s, t] = x.edges[i];
      const int e = static_cast<int>(i) + 1;
      if (s == v && !seen[t]) {
        seen[t] = true, up[t] = -e, queue.push_back(t);
        if (!tree) in_tree[i] = true;
      } else if (t == v && !seen[s]) {
        seen[s] = true, up[s] = e, queue.push_back(s);
        if (!tree) in_tree[i] = true;
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw ValidationError("tree does not span the complex");
  for (std::size_t i = 0; i < x.edges.size(); ++i) (in_tree[i] ? p.tree : p.generator_edges).push_back(i);
  p.to_base.resize(x.vertices);
  for (std::size_t v = 0; v < x.vertices; ++v)
    for (std::size_t w = v; up[w]; w = letter_target(x, *up[w])) p.to_base[v].push_back(*up[w]);
  for (const auto& cell : x.two_cells) p.relators.push_back(freely_reduced(p.rewrite(cell)));
  return p;
}

void validate_target(const CWComplex2& x, const GroupTarget& t) {
  if (t.edge_labels.size() != x.edges.size())
    throw ShapeMismatch("target needs one label per edge (" + std::to_string(x.edges.size()) + ")");
  for (const auto& l : t.edge_labels) t.group.require(l);
  for (std::size_t i = 0; i < x.two_cells.size(); ++i)
    if (!t.group.is_identity(path_label(t, x.two_cells[i])))
      throw ValidationError("boundary of 2-cell " + std::to_string(i + 1) + " is not trivial in the target");
}

GroupHomomorphism target_map(const CWComplex2& x, const Presentation& p, const GroupTarget& t) {
  validate_target(x, t);
  std::vector<GroupElement> images;
  for (auto e : p.generator_edges) {
    const auto [s, v] = x.edges[e];
    EdgePath loop = reversed(p.to_base[s]);
    loop.push_back(static_cast<int>(e) + 1);
    append(loop, p.to_base[v]);
    images.push_back(path_label(t, loop));
  }
  return GroupHomomorphism(Group::free(p.rank()), t.group, images);
}

GroupRingElement fox_derivative(const RawWord& w, int generator, const GroupHomomorphism& rho) {
  const Group& pi = rho.target();
  const int rank = rho.source().rank();
  if (generator < 1 || generator > rank) throw ValidationError("unknown generator " + std::to_string(generator));
  GroupRing ring = GroupRing::over(pi);
  GroupRingElement out(ring);
  GroupElement prefix = pi.identity();
  for (int l : w) {
    if (l == 0 || std::abs(l) > rank) throw ValidationError("unknown generator " + std::to_string(l));
    const GroupElement letter = rho(rho.source().generator(std::abs(l)));
    if (l == generator) out.add_term(prefix, 1);
    if (l == -generator) out.add_term(pi.multiply(prefix, pi.invert(letter)), -1);
    prefix = pi.multiply(prefix, l > 0 ? letter : pi.invert(letter));
  }
  return out;
}

TwistedChainComplex twisted_chains(const CWComplex2& x, const Presentation& p, const GroupTarget& t) {
  GroupHomomorphism rho = target_map(x, p, t);
  GroupRing ring = GroupRing::over(t.group);
  const auto n = static_cast<std::size_t>(p.rank());
  TwistedChainComplex c{ring, {1, n}, {}};
  RingMatrix d1(ring, n, 1);
  for (std::size_t i = 0; i < n; ++i)
    d1(i, 0) = GroupRingElement::basis(ring, rho.images()[i]) - GroupRingElement::scalar(ring, 1);
  c.boundaries.push_back(d1);
  if (!x.two_cells.empty()) {
    RingMatrix d2(ring, p.relators.size(), n);
    for (std::size_t r = 0; r < p.relators.size(); ++r)
      for (std::size_t j = 0; j < n; ++j) d2(r, j) = fox_derivative(p.relators[r], static_cast<int>(j) + 1, rho);
    c.ranks.push_back(p.relators.size());
    c.boundaries.push_back(d2);
  }
  return c;
}

void validate_self_map(const CWComplex2& x, const CWSelfMap& f) {
  if (f.vertex_images.size() != x.vertices) throw ShapeMismatch("self-map needs one image per vertex");
  if (f.edge_images.size() != x.edges.size()) throw ShapeMismatch("self-map needs one image path per edge");
  for (auto v : f.vertex_images)
    if (v >= x.vertices) throw ValidationError("vertex image out of range");
  for (std::size_t i = 0; i < x.edges.size(); ++i)
    require_path(x, f.edge_images[i], f.vertex_images[x.edges[i].first], f.vertex_images[x.edges[i].second],
                 "image of edge " + std::to_string(i + 1));
  if (f.zeta) require_path(x, *f.zeta, x.base, f.vertex_images[x.base], "base path zeta");
}

EdgePath default_zeta(const CWSelfMap& f, const Presentation& p, std::size_t base) {
  if (base >= p.to_base.size() || base >= f.vertex_images.size()) throw ValidationError("base vertex out of range");
  return reversed(p.to_base.at(f.vertex_images[base]));
}

Lift lift_self_map(const CWComplex2& x, const CWSelfMap& f, const Presentation& p, const GroupTarget& t) {
  validate_self_map(x, f);
  GroupHomomorphism rho = target_map(x, p, t);
  const EdgePath zeta = f.zeta ? *f.zeta : default_zeta(f, p, x.base);
  std::vector<RawWord> words;
  for (auto e : p.generator_edges) {
    const auto [s, v] = x.edges[e];
    EdgePath loop = zeta;
    append(loop, image_path(f, reversed(p.to_base[s])));
    append(loop, f.edge_images[e]);
    append(loop, image_path(f, p.to_base[v]));
    append(loop, reversed(zeta));
    words.push_back(freely_reduced(p.rewrite(loop)));
  }
  Group free = rho.source();
  GroupHomomorphism phi = induced_endomorphism(GroupHomomorphism::from_words(free, free, words), rho);

  TwistedChainComplex c = twisted_chains(x, p, t);
  const GroupRing& ring = c.ring;
  const auto n = static_cast<std::size_t>(p.rank());
  RingMatrix f1(ring, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f1(i, j) = fox_derivative(words[i], static_cast<int>(j) + 1, rho);
  Lift lift{zeta, phi, words, TwistedChainMap{phi, {RingMatrix::identity(ring, 1), f1}}, false};
  if (c.ranks.size() > 2) {
    const RingMatrix& d2 = c.boundaries[1];
    if (f.two_cell_lift) {
      if (!(f.two_cell_lift->ring() == ring)) throw ModelMismatch("degree-2 lift over another ring");
      if (f.two_cell_lift->rows() != d2.rows() || f.two_cell_lift->cols() != d2.rows())
        throw ShapeMismatch("degree-2 lift must be square of size " + std::to_string(d2.rows()));
      lift.map.matrices.push_back(*f.two_cell_lift);
    } else {
      lift.map.matrices.push_back(solve_top(d2, d2.twisted(phi) * f1));
      lift.solved_top = true;
    }
  }
  validate_chain_map(c, lift.map);
  return lift;
}

Analysis analyze(const CWComplex2& x, const CWSelfMap& f, const GroupTarget& t, const AnalysisOptions& options) {
  Presentation p = fundamental_group(x, options.tree);
  TwistedChainComplex c = twisted_chains(x, p, t);
  CWSelfMap g = f;
  if (options.zeta) g.zeta = options.zeta;
  Lift lift = lift_self_map(x, g, p, t);
  Rational l = lefschetz(c, lift.map);
  ShadowElement r = reidemeister_trace(c, lift.map);
  std::optional<std::size_t> n;
  if (r.reduced()) n = nielsen_number(r);
  return Analysis{std::move(p), std::move(c), std::move(lift), l, std::move(r), n};
}

}  // namespace nielsen
