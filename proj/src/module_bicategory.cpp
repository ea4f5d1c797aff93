#include "nielsen/module_bicategory.hpp"

#include <set>

#include "nielsen/errors.hpp"

namespace nielsen {
namespace {

GroupElement apply_twist(const Factor& f, const GroupElement& g) { return f.phi ? (*f.phi)(g) : g; }

bool same_degrees(const Factor& a, const Factor& b) {
  for (int i = 0; i < a.rank; ++i)
    if (a.degree(i) != b.degree(i)) return false;
  return true;
}

const char* symbol(Factor::Kind k) {
  switch (k) {
    case Factor::Kind::scalar:
      return "s";
    case Factor::Kind::free:
      return "e";
    case Factor::Kind::dual:
      return "e*";
    case Factor::Kind::twist:
      return "u";
  }
  return "?";
}

std::vector<int> checked_degrees(int n, std::vector<int> degrees) {
  if (n < 0) throw ShapeMismatch("negative rank");
  if (!degrees.empty() && degrees.size() != static_cast<std::size_t>(n))
    throw ShapeMismatch("degree list does not match the rank");
  return degrees;
}

// Odometer over the index tuples of a word; calls visit for each tuple.
template <class Visit>
void for_each_index(const OneCell& x, Visit visit) {
  std::vector<int> idx(x.length(), 0);
  for (const auto& f : x.factors)
    if (f.rank == 0) return;
  for (;;) {
    visit(idx);
    std::size_t k = idx.size();
    while (k > 0) {
      --k;
      if (++idx[k] < x.factors[k].rank) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (idx.empty()) return;
  }
}

}  // namespace

std::string Factor::describe() const {
  std::string out;
  switch (kind) {
    case Kind::scalar:
      out = "scalar(" + std::to_string(rank);
      break;
    case Kind::free:
      out = "free(" + std::to_string(rank);
      break;
    case Kind::dual:
      out = "dual(" + std::to_string(rank);
      break;
    case Kind::twist:
      out = "twist(" + std::to_string(rank);
      if (phi && !phi->is_identity()) out += "; " + phi->describe();
      break;
  }
  bool graded = false;
  for (int i = 0; i < rank; ++i) graded = graded || degree(i) != 0;
  if (graded) {
    out += "; deg";
    for (int i = 0; i < rank; ++i) out += (i ? "," : " ") + std::to_string(degree(i));
  }
  return out + ")";
}

bool operator==(const Factor& a, const Factor& b) {
  if (a.kind != b.kind || a.rank != b.rank || !same_degrees(a, b)) return false;
  const bool a_id = !a.phi || a.phi->is_identity();
  const bool b_id = !b.phi || b.phi->is_identity();
  if (a_id || b_id) return a_id == b_id;
  return *a.phi == *b.phi;
}

std::string OneCell::describe() const {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? " ⊙ " : "") + factors[i].describe();
  return out;
}

ModuleBicategory::ModuleBicategory(GroupRing ring, std::size_t samples) : ring_(std::move(ring)), samples_(samples) {}

// ---------------------------------------------------------------------------
// 1-cells

OneCell ModuleBicategory::scalar(int n, std::vector<int> degrees) const {
  return {{Factor{Factor::Kind::scalar, n, checked_degrees(n, std::move(degrees)), nullptr}}};
}

OneCell ModuleBicategory::free(int n, std::vector<int> degrees) const {
  return {{Factor{Factor::Kind::free, n, checked_degrees(n, std::move(degrees)), nullptr}}};
}

OneCell ModuleBicategory::dual(int n, std::vector<int> degrees) const {
  return {{Factor{Factor::Kind::dual, n, checked_degrees(n, std::move(degrees)), nullptr}}};
}

OneCell ModuleBicategory::twist(const GroupHomomorphism& phi, int n) const {
  if (!(phi.source() == group()) || !(phi.target() == group()))
    throw ModelMismatch("twist endomorphism does not act on " + group().describe());
  checked_degrees(n, {});
  return {{Factor{Factor::Kind::twist, n, {}, std::make_shared<const GroupHomomorphism>(phi)}}};
}

OneCell ModuleBicategory::unit(Side a) const {
  return a == Side::base ? scalar(1) : twist(GroupHomomorphism::identity(group()), 1);
}

OneCell ModuleBicategory::compose(const OneCell& x, const OneCell& y) const {
  if (x.right() != y.left()) throw ShapeMismatch("cannot compose " + x.describe() + " with " + y.describe());
  OneCell out = x;
  out.factors.insert(out.factors.end(), y.factors.begin(), y.factors.end());
  return out;
}

// ---------------------------------------------------------------------------
// tensors

bool ModuleBicategory::is_ring_slot(const OneCell& x, std::size_t s) const {
  return s == 0 ? x.left() == Side::ring : x.factors[s - 1].right() == Side::ring;
}

Tensor ModuleBicategory::basis_tensor(const OneCell& x, std::vector<int> index) const {
  if (index.size() != x.length()) throw ShapeMismatch("index tuple does not match " + x.describe());
  for (std::size_t i = 0; i < index.size(); ++i)
    if (index[i] < 0 || index[i] >= x.factors[i].rank) throw ShapeMismatch("basis index out of range");
  return {std::move(index), std::vector<GroupElement>(x.length() + 1, group().identity())};
}

Tensor ModuleBicategory::normalize(const OneCell& x, Tensor t) const {
  const Group& g = group();
  for (std::size_t s = x.length(); s >= 1; --s) {
    if (x.factors[s - 1].kind != Factor::Kind::twist || g.is_identity(t.slot[s])) continue;
    t.slot[s - 1] = g.multiply(t.slot[s - 1], apply_twist(x.factors[s - 1], t.slot[s]));
    t.slot[s] = g.identity();
  }
  return t;
}

std::shared_ptr<const TwistedClasses> ModuleBicategory::circle_classes(const OneCell& x) const {
  const std::string key = x.describe();
  {
    std::lock_guard lock(cache_mutex_);
    auto it = class_cache_.find(key);
    if (it != class_cache_.end()) return it->second;
  }
  GroupHomomorphism total = GroupHomomorphism::identity(group());
  for (const auto& f : x.factors)
    if (f.phi) total = total.after(*f.phi);
  auto classes = std::make_shared<const TwistedClasses>(total);
  std::lock_guard lock(cache_mutex_);
  return class_cache_.emplace(key, classes).first->second;
}

Tensor ModuleBicategory::shadow_normalize(const OneCell& x, Tensor t) const {
  if (x.left() != x.right()) throw ShapeMismatch("shadow of a non-endo 1-cell " + x.describe());
  t = normalize(x, std::move(t));
  if (x.left() == Side::base) return t;
  const Group& g = group();
  const std::size_t L = x.length();
  std::size_t lb = L;
  while (lb > 0 && x.factors[lb - 1].kind == Factor::Kind::twist) --lb;
  if (lb == 0) {
    auto classes = circle_classes(x);
    if (classes->supported()) t.slot[0] = classes->representative(t.slot[0]);
    return t;
  }
  if (g.is_identity(t.slot[0])) return t;
  GroupElement moved = t.slot[0];
  for (std::size_t s = L; s > lb; --s) moved = apply_twist(x.factors[s - 1], moved);
  t.slot[lb] = g.multiply(t.slot[lb], moved);
  t.slot[0] = g.identity();
  return t;
}

void ModuleBicategory::add(Vector& v, const Tensor& t, const Rational& c) const {
  if (c.is_zero()) return;
  auto [it, inserted] = v.try_emplace(t, 0);
  it->second = ring_.coefficients().normalize(it->second + c);
  if (it->second.is_zero()) v.erase(it);
}

Vector ModuleBicategory::right_act(const OneCell& x, const Vector& v, const GroupElement& b) const {
  if (x.right() != Side::ring) throw ShapeMismatch("right R-action on " + x.describe());
  Vector out;
  for (const auto& [t, c] : v) {
    Tensor u = t;
    u.slot.back() = group().multiply(u.slot.back(), b);
    add(out, normalize(x, std::move(u)), c);
  }
  return out;
}

Vector ModuleBicategory::left_act(const OneCell& x, const Vector& v, const GroupElement& a) const {
  if (x.left() != Side::ring) throw ShapeMismatch("left R-action on " + x.describe());
  Vector out;
  for (const auto& [t, c] : v) {
    Tensor u = t;
    u.slot.front() = group().multiply(a, u.slot.front());
    add(out, u, c);
  }
  return out;
}

Vector ModuleBicategory::with_coefficient(const OneCell& x, const Tensor& t, std::size_t s,
                                          const GroupRingElement& r) const {
  if (!(r.ring() == ring_)) throw ModelMismatch("coefficient from " + r.ring().name() + " in " + ring_.name());
  if (s > x.length()) throw ShapeMismatch("slot out of range");
  Vector out;
  if (!is_ring_slot(x, s)) {
    if (r.terms().size() > 1 || (!r.is_zero() && !group().is_identity(r.terms().begin()->first)))
      throw ShapeMismatch("group element placed in a K-slot of " + x.describe());
    if (!r.is_zero()) add(out, t, r.terms().begin()->second);
    return out;
  }
  for (const auto& [g, c] : r.terms()) {
    Tensor u = t;
    u.slot[s] = group().multiply(u.slot[s], g);
    add(out, normalize(x, std::move(u)), c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 2-cells

ModuleTwoCell ModuleBicategory::make_cell(OneCell source, OneCell target, CellAction act, std::string label) const {
  if (source.left() != target.left() || source.right() != target.right())
    throw ShapeMismatch("2-cell between 1-cells with different ends: " + source.describe() + " => " +
                        target.describe());
  return {std::move(source), std::move(target), std::make_shared<const CellAction>(std::move(act)), std::move(label)};
}

ModuleShadowMap ModuleBicategory::make_shadow_map(OneCell source, OneCell target, CellAction act,
                                                  std::string label) const {
  if (source.left() != source.right() || target.left() != target.right())
    throw ShapeMismatch("shadow of a non-endo 1-cell");
  return {std::move(source), std::move(target), std::make_shared<const CellAction>(std::move(act)), std::move(label)};
}

ModuleTwoCell ModuleBicategory::identity(const OneCell& x) const {
  return make_cell(x, x, [](const Tensor& t) { return Vector{{t, 1}}; }, "id");
}

ModuleTwoCell ModuleBicategory::vertical(const ModuleTwoCell& g, const ModuleTwoCell& f) const {
  if (!(f.target == g.source))
    throw ShapeMismatch("vertical composite: " + f.target.describe() + " vs " + g.source.describe());
  auto fa = f.act, ga = g.act;
  return make_cell(
      f.source, g.target,
      [this, fa, ga](const Tensor& t) {
        Vector out;
        for (const auto& [u, c] : (*fa)(t))
          for (const auto& [w, d] : (*ga)(u)) add(out, w, c * d);
        return out;
      },
      "(" + g.label + ") ∘ (" + f.label + ")");
}

ModuleTwoCell ModuleBicategory::horizontal(const ModuleTwoCell& f, const ModuleTwoCell& g) const {
  OneCell source = compose(f.source, g.source);
  OneCell target = compose(f.target, g.target);
  const std::size_t n = f.source.length();
  const std::size_t n_target = f.target.length();
  auto fa = f.act, ga = g.act;
  OneCell fs = f.source, gs = g.source;
  return make_cell(
      source, target,
      [this, fa, ga, fs, gs, target, n, n_target](const Tensor& t) {
        const Group& grp = group();
        Tensor xt{{t.index.begin(), t.index.begin() + static_cast<std::ptrdiff_t>(n)},
                  {t.slot.begin(), t.slot.begin() + static_cast<std::ptrdiff_t>(n + 1)}};
        Tensor yt{{t.index.begin() + static_cast<std::ptrdiff_t>(n), t.index.end()},
                  {t.slot.begin() + static_cast<std::ptrdiff_t>(n), t.slot.end()}};
        yt.slot[0] = grp.identity();
        const Vector fx = (*fa)(normalize(fs, std::move(xt)));
        if (fx.empty()) return Vector{};
        const Vector gy = (*ga)(normalize(gs, std::move(yt)));
        Vector out;
        for (const auto& [x2, c] : fx)
          for (const auto& [y2, d] : gy) {
            Tensor w;
            w.index = x2.index;
            w.index.insert(w.index.end(), y2.index.begin(), y2.index.end());
            w.slot.assign(x2.slot.begin(), x2.slot.begin() + static_cast<std::ptrdiff_t>(n_target));
            w.slot.push_back(grp.multiply(x2.slot[n_target], y2.slot[0]));
            w.slot.insert(w.slot.end(), y2.slot.begin() + 1, y2.slot.end());
            add(out, normalize(target, std::move(w)), c * d);
          }
        return out;
      },
      "(" + f.label + ") ⊙ (" + g.label + ")");
}

ModuleTwoCell ModuleBicategory::left_unitor(const OneCell& x) const {
  OneCell source = compose(unit(x.left()), x);
  return make_cell(
      source, x,
      [this, x](const Tensor& t) {
        Tensor u{{t.index.begin() + 1, t.index.end()}, t.slot};
        u.slot.erase(u.slot.begin() + 1);
        return Vector{{normalize(x, std::move(u)), 1}};
      },
      "λ");
}

ModuleTwoCell ModuleBicategory::left_unitor_inverse(const OneCell& x) const {
  OneCell target = compose(unit(x.left()), x);
  return make_cell(
      x, target,
      [this, target](const Tensor& t) {
        Tensor u = t;
        u.index.insert(u.index.begin(), 0);
        u.slot.insert(u.slot.begin() + 1, group().identity());
        return Vector{{normalize(target, std::move(u)), 1}};
      },
      "λ⁻¹");
}

ModuleTwoCell ModuleBicategory::right_unitor(const OneCell& x) const {
  OneCell source = compose(x, unit(x.right()));
  return make_cell(
      source, x,
      [this, x](const Tensor& t) {
        Tensor u = t;
        u.index.pop_back();
        u.slot.pop_back();
        return Vector{{normalize(x, std::move(u)), 1}};
      },
      "ρ");
}

ModuleTwoCell ModuleBicategory::right_unitor_inverse(const OneCell& x) const {
  OneCell target = compose(x, unit(x.right()));
  return make_cell(
      x, target,
      [this, target](const Tensor& t) {
        Tensor u = t;
        u.index.push_back(0);
        u.slot.push_back(group().identity());
        return Vector{{normalize(target, std::move(u)), 1}};
      },
      "ρ⁻¹");
}

ModuleTwoCell ModuleBicategory::associator(const OneCell& x, const OneCell& y, const OneCell& z) const {
  auto cell = identity(compose(compose(x, y), z));
  cell.label = "a";
  return cell;
}

ModuleTwoCell ModuleBicategory::scaled(const ModuleTwoCell& f, const Rational& c) const {
  auto fa = f.act;
  return make_cell(
      f.source, f.target,
      [this, fa, c](const Tensor& t) {
        Vector out;
        for (const auto& [u, d] : (*fa)(t)) add(out, u, c * d);
        return out;
      },
      c.to_string() + " (" + f.label + ")");
}

ModuleTwoCell ModuleBicategory::sum(const ModuleTwoCell& f, const ModuleTwoCell& g) const {
  if (!(f.source == g.source) || !(f.target == g.target)) throw ShapeMismatch("sum of 2-cells with different shapes");
  auto fa = f.act, ga = g.act;
  return make_cell(
      f.source, f.target,
      [this, fa, ga](const Tensor& t) {
        Vector out = (*fa)(t);
        for (const auto& [u, d] : (*ga)(t)) add(out, u, d);
        return out;
      },
      "(" + f.label + ") + (" + g.label + ")");
}

// ---------------------------------------------------------------------------
// shadows

ModuleShadowMap ModuleBicategory::shadow(const ModuleTwoCell& f) const {
  auto fa = f.act;
  OneCell target = f.target;
  return make_shadow_map(
      f.source, f.target,
      [this, fa, target](const Tensor& t) {
        Vector out;
        for (const auto& [u, c] : (*fa)(t)) add(out, shadow_normalize(target, u), c);
        return out;
      },
      "<" + f.label + ">");
}

ModuleShadowMap ModuleBicategory::theta(const OneCell& x, const OneCell& y) const {
  OneCell source = compose(x, y);
  OneCell target = compose(y, x);
  const std::size_t n = x.length();
  const std::size_t m = y.length();
  return make_shadow_map(
      source, target,
      [this, source, target, n, m](const Tensor& t) {
        const Group& g = group();
        const std::size_t L = n + m;
        int deg_x = 0, deg_y = 0;
        for (std::size_t i = 0; i < L; ++i) (i < n ? deg_x : deg_y) += source.factors[i].degree(t.index[i]);
        Tensor u;
        u.index.assign(t.index.begin() + static_cast<std::ptrdiff_t>(n), t.index.end());
        u.index.insert(u.index.end(), t.index.begin(), t.index.begin() + static_cast<std::ptrdiff_t>(n));
        u.slot.resize(L + 1, g.identity());
        u.slot[0] = t.slot[n];
        for (std::size_t k = 1; k < m; ++k) u.slot[k] = t.slot[n + k];
        u.slot[m] = g.multiply(t.slot[L], t.slot[0]);
        for (std::size_t k = 1; k < n; ++k) u.slot[m + k] = t.slot[k];
        const Rational sign = (deg_x * deg_y) % 2 == 0 ? 1 : -1;
        Vector out;
        add(out, shadow_normalize(target, std::move(u)), sign);
        return out;
      },
      "θ");
}

ModuleShadowMap ModuleBicategory::shadow_compose(const ModuleShadowMap& g, const ModuleShadowMap& f) const {
  if (!(f.target == g.source))
    throw ShapeMismatch("shadow composite: " + f.target.describe() + " vs " + g.source.describe());
  auto fa = f.act, ga = g.act;
  return make_shadow_map(
      f.source, g.target,
      [this, fa, ga](const Tensor& t) {
        Vector out;
        for (const auto& [u, c] : (*fa)(t))
          for (const auto& [w, d] : (*ga)(u)) add(out, w, c * d);
        return out;
      },
      g.label + " ∘ " + f.label);
}

ModuleShadowMap ModuleBicategory::shadow_identity(const OneCell& x) const {
  return make_shadow_map(x, x, [](const Tensor& t) { return Vector{{t, 1}}; }, "id");
}

// ---------------------------------------------------------------------------
// comparison

std::vector<GroupElement> ModuleBicategory::sample_elements() const {
  const Group& g = group();
  if (g.kind() == GroupKind::finite) return g.elements();
  std::vector<GroupElement> out{g.identity()};
  const std::size_t cap = std::max<std::size_t>(samples_, 1);
  for (int i = 1; i <= g.rank() && out.size() < cap; ++i) {
    out.push_back(g.generator(i));
    if (out.size() < cap) out.push_back(g.invert(g.generator(i)));
  }
  for (int i = 1; i < g.rank() && out.size() < cap; ++i)
    out.push_back(g.multiply(g.generator(i), g.generator(i + 1)));
  for (int i = 1; i <= g.rank() && out.size() < cap; ++i) out.push_back(g.power(g.generator(i), 2));
  return out;
}

namespace {

// Cartesian product of per-slot choices, written into copies of `base`.
void expand_slots(std::vector<Tensor>& out, const Tensor& base,
                  const std::vector<std::pair<std::size_t, std::vector<GroupElement>>>& choices) {
  std::vector<std::size_t> pos(choices.size(), 0);
  for (const auto& c : choices)
    if (c.second.empty()) return;
  for (;;) {
    Tensor t = base;
    for (std::size_t k = 0; k < choices.size(); ++k) t.slot[choices[k].first] = choices[k].second[pos[k]];
    out.push_back(std::move(t));
    std::size_t k = choices.size();
    while (k > 0) {
      --k;
      if (++pos[k] < choices[k].second.size()) break;
      pos[k] = 0;
      if (k == 0) return;
    }
    if (choices.empty()) return;
  }
}

}  // namespace

std::vector<Tensor> ModuleBicategory::spanning_tensors(const OneCell& x) const {
  const std::size_t L = x.length();
  const std::vector<GroupElement> samples = sample_elements();
  std::vector<std::pair<std::size_t, std::vector<GroupElement>>> choices;
  for (std::size_t s = 1; s <= L; ++s) {
    if (!is_ring_slot(x, s) || x.factors[s - 1].kind == Factor::Kind::twist) continue;
    // chain starting at s; reachable from the right end through identity twists?
    std::size_t end = s;
    bool identity_twists = true;
    while (end < L && x.factors[end].kind == Factor::Kind::twist) {
      identity_twists = identity_twists && (!x.factors[end].phi || x.factors[end].phi->is_identity());
      ++end;
    }
    if (end == L && identity_twists) continue;
    choices.push_back({s, samples});
  }
  std::vector<Tensor> out;
  for_each_index(x, [&](const std::vector<int>& idx) { expand_slots(out, basis_tensor(x, idx), choices); });
  return out;
}

std::vector<Tensor> ModuleBicategory::shadow_spanning_tensors(const OneCell& x) const {
  if (x.left() != x.right()) throw ShapeMismatch("shadow of a non-endo 1-cell " + x.describe());
  if (x.left() == Side::base) return spanning_tensors(x);
  const std::size_t L = x.length();
  const std::vector<GroupElement> samples = sample_elements();
  std::vector<std::pair<std::size_t, std::vector<GroupElement>>> choices;
  bool all_twist = true;
  for (const auto& f : x.factors) all_twist = all_twist && f.kind == Factor::Kind::twist;
  if (all_twist) {
    choices.push_back({0, samples});
  } else {
    for (std::size_t s = 1; s <= L; ++s)
      if (is_ring_slot(x, s) && x.factors[s - 1].kind != Factor::Kind::twist) choices.push_back({s, samples});
  }
  std::vector<Tensor> raw;
  for_each_index(x, [&](const std::vector<int>& idx) { expand_slots(raw, basis_tensor(x, idx), choices); });
  std::set<Tensor> seen;
  std::vector<Tensor> out;
  for (auto& t : raw) {
    Tensor n = shadow_normalize(x, std::move(t));
    if (seen.insert(n).second) out.push_back(std::move(n));
  }
  return out;
}

bool ModuleBicategory::equal(const ModuleTwoCell& f, const ModuleTwoCell& g) const {
  if (!(f.source == g.source) || !(f.target == g.target)) return false;
  for (const auto& t : spanning_tensors(f.source))
    if ((*f.act)(t) != (*g.act)(t)) return false;
  return true;
}

bool ModuleBicategory::equal(const ModuleShadowMap& f, const ModuleShadowMap& g) const {
  if (!(f.source == g.source) || !(f.target == g.target)) return false;
  for (const auto& t : shadow_spanning_tensors(f.source))
    if ((*f.act)(t) != (*g.act)(t)) return false;
  return true;
}

std::string ModuleBicategory::format(const OneCell& x, const Tensor& t) const {
  const Group& g = group();
  std::string out;
  for (std::size_t s = 0; s < x.length(); ++s) {
    if (s) out += " ⊗ ";
    if (!g.is_identity(t.slot[s])) out += "(" + g.format(t.slot[s]) + ") ";
    out += symbol(x.factors[s].kind) + std::to_string(t.index[s]);
  }
  if (!g.is_identity(t.slot.back())) out += " (" + g.format(t.slot.back()) + ")";
  return out;
}

std::string ModuleBicategory::format(const OneCell& x, const Vector& v) const {
  if (v.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [t, c] : v) {
    const Rational a = c < Rational(0) ? -c : c;
    if (first)
      out += c < Rational(0) ? "-" : "";
    else
      out += c < Rational(0) ? " - " : " + ";
    first = false;
    out += (a == Rational(1) ? "" : a.to_string() + " ") + format(x, t);
  }
  return out;
}

namespace {

template <class Map>
std::string describe_map(const ModuleBicategory& b, const Map& f, const std::vector<Tensor>& span) {
  constexpr std::size_t shown = 6;
  std::string out = f.label + " : " + f.source.describe() + " => " + f.target.describe() + " {";
  for (std::size_t i = 0; i < span.size() && i < shown; ++i)
    out += (i ? "; " : "") + b.format(f.source, span[i]) + " ↦ " + b.format(f.target, (*f.act)(span[i]));
  if (span.size() > shown) out += "; ...";
  return out + "}";
}

}  // namespace

std::string ModuleBicategory::describe(const ModuleTwoCell& f) const {
  return describe_map(*this, f, spanning_tensors(f.source));
}

std::string ModuleBicategory::describe(const ModuleShadowMap& f) const {
  return describe_map(*this, f, shadow_spanning_tensors(f.source));
}

// ---------------------------------------------------------------------------
// linear extensions

ModuleTwoCell ModuleBicategory::right_linear(OneCell source, OneCell target,
                                             std::function<Vector(const std::vector<int>&)> images,
                                             std::string label) const {
  const std::size_t L = source.length();
  for (std::size_t s = 0; s < L; ++s)
    if (is_ring_slot(source, s)) throw ShapeMismatch("right-linear cell needs R only at the right end of " +
                                                     source.describe());
  if (!is_ring_slot(source, L)) throw ShapeMismatch("right-linear cell out of " + source.describe());
  auto img = std::make_shared<const std::function<Vector(const std::vector<int>&)>>(std::move(images));
  OneCell tgt = target;
  return make_cell(
      std::move(source), std::move(target),
      [this, img, tgt, L](const Tensor& t) {
        Vector v = (*img)(t.index);
        if (group().is_identity(t.slot[L])) return v;
        return right_act(tgt, v, t.slot[L]);
      },
      std::move(label));
}

ModuleTwoCell ModuleBicategory::left_linear(OneCell source, OneCell target,
                                            std::function<Vector(const std::vector<int>&)> images,
                                            std::string label) const {
  const std::size_t L = source.length();
  if (!is_ring_slot(source, 0)) throw ShapeMismatch("left-linear cell out of " + source.describe());
  for (std::size_t s = 1; s <= L; ++s)
    if (is_ring_slot(source, s) && source.factors[s - 1].kind != Factor::Kind::twist)
      throw ShapeMismatch("left-linear cell needs every R-slot joined to the left end of " + source.describe());
  auto img = std::make_shared<const std::function<Vector(const std::vector<int>&)>>(std::move(images));
  OneCell tgt = target;
  return make_cell(
      std::move(source), std::move(target),
      [this, img, tgt](const Tensor& t) {
        Vector v = (*img)(t.index);
        if (group().is_identity(t.slot[0])) return v;
        return left_act(tgt, v, t.slot[0]);
      },
      std::move(label));
}

// ---------------------------------------------------------------------------
// read-out

ShadowElement ModuleBicategory::to_shadow_element(const OneCell& twist_cell, const Vector& v) const {
  if (twist_cell.length() != 1 || twist_cell.factors[0].kind != Factor::Kind::twist ||
      twist_cell.factors[0].rank != 1)
    throw ShapeMismatch("expected a rank one twist, got " + twist_cell.describe());
  ShadowElement s(ring_, circle_classes(twist_cell));
  for (const auto& [t, c] : v) s.add(t.slot[0], c);
  return s;
}

Rational ModuleBicategory::to_scalar(const Vector& v) const {
  Rational total = 0;
  for (const auto& [t, c] : v) total += c;
  return ring_.coefficients().normalize(total);
}

}  // namespace nielsen
