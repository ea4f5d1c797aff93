#include "nielsen/group_ring.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "nielsen/errors.hpp"

namespace nielsen {

namespace {

std::string term_string(const Group& g, const GroupElement& x, const Rational& c, bool first) {
  std::string sign = c < Rational(0) ? (first ? "-" : " - ") : (first ? "" : " + ");
  Rational a = c < Rational(0) ? -c : c;
  std::string name = g.format(x);
  if (name == "e") return sign + a.to_string();
  if (a == Rational(1)) return sign + name;
  return sign + a.to_string() + "*" + name;
}

}  // namespace

std::string GroupRing::name() const {
  std::string k = coefficients_.name();
  if (group_.is_trivial() && group_.kind() != GroupKind::finite) return k;
  return k + "[" + group_.describe() + "]";
}

// ---------------------------------------------------------------------------

GroupRingElement GroupRingElement::scalar(const GroupRing& ring, const Rational& c) {
  return basis(ring, ring.group().identity(), c);
}

GroupRingElement GroupRingElement::basis(const GroupRing& ring, const GroupElement& g, const Rational& c) {
  GroupRingElement x(ring);
  x.add_term(g, c);
  return x;
}

GroupRingElement GroupRingElement::from_terms(const GroupRing& ring, const Terms& terms) {
  GroupRingElement x(ring);
  for (const auto& [g, c] : terms) x.add_term(g, c);
  return x;
}

Rational GroupRingElement::coefficient(const GroupElement& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational GroupRingElement::augment() const {
  Rational s = 0;
  for (const auto& [g, c] : terms_) s += c;
  return ring_.coefficients().normalize(s);
}

void GroupRingElement::add_term(const GroupElement& g, const Rational& c) {
  ring_.group().require(g);
  const auto& k = ring_.coefficients();
  Rational v = k.normalize(c);
  if (v.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(g, v);
  if (inserted) return;
  it->second = k.normalize(it->second + v);
  if (it->second.is_zero()) terms_.erase(it);
}

void GroupRingElement::require_same(const GroupRingElement& other) const {
  if (!(ring_ == other.ring_))
    throw ModelMismatch("group ring elements over " + ring_.name() + " and " + other.ring_.name());
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& rhs) {
  require_same(rhs);
  for (const auto& [g, c] : rhs.terms_) add_term(g, c);
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& rhs) {
  require_same(rhs);
  for (const auto& [g, c] : rhs.terms_) add_term(g, -c);
  return *this;
}

GroupRingElement GroupRingElement::operator-() const { return scaled(-1); }

GroupRingElement GroupRingElement::scaled(const Rational& c) const {
  GroupRingElement out(ring_);
  for (const auto& [g, a] : terms_) out.add_term(g, a * c);
  return out;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  a.require_same(b);
  GroupRingElement out(a.ring_);
  const Group& g = a.ring_.group();
  for (const auto& [x, c] : a.terms_)
    for (const auto& [y, d] : b.terms_) out.add_term(g.multiply(x, y), c * d);
  return out;
}

GroupRingElement GroupRingElement::twisted(const GroupHomomorphism& phi) const {
  if (!(phi.source() == ring_.group()) || !phi.is_endomorphism())
    throw ModelMismatch("twisting endomorphism does not act on " + ring_.name());
  GroupRingElement out(ring_);
  for (const auto& [g, c] : terms_) out.add_term(phi(g), c);
  return out;
}

GroupRingElement GroupRingElement::involution() const {
  GroupRingElement out(ring_);
  for (const auto& [g, c] : terms_) out.add_term(ring_.group().invert(g), c);
  return out;
}

GroupRingElement GroupRingElement::pushforward(const GroupHomomorphism& hom) const {
  if (!(hom.source() == ring_.group())) throw ModelMismatch("pushforward along a map from another group");
  GroupRingElement out(GroupRing(ring_.coefficients(), hom.target()));
  for (const auto& [g, c] : terms_) out.add_term(hom(g), c);
  return out;
}

std::string GroupRingElement::format() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [g, c] : terms_) {
    out += term_string(ring_.group(), g, c, first);
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------

TwistedClasses::TwistedClasses(GroupHomomorphism phi) : phi_(std::move(phi)) {
  if (!phi_.is_endomorphism()) throw ModelMismatch("semiconjugacy needs an endomorphism");
  const Group& g = phi_.source();
  switch (g.kind()) {
    case GroupKind::free_abelian: {
      const auto n = static_cast<std::size_t>(g.rank());
      auto a = phi_.abelian_matrix();
      IntegerMatrix m(n, std::vector<Integer>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Integer(i == j ? 1 : 0) - a[i][j];
      SmithForm snf = smith_normal_form(m);
      u_ = std::move(snf.left);
      u_inverse_ = std::move(snf.left_inverse);
      moduli_ = snf.invariant_factors();
      moduli_.resize(n, 0);
      mode_ = Mode::abelian;
      break;
    }
    case GroupKind::finite: {
      const int n = g.order();
      const auto& t = g.table();
      std::vector<int> phi_inv(n);
      for (int b = 0; b < n; ++b) phi_inv[b] = g.inverse_index(phi_(GroupElement(b)).index());
      finite_rep_.assign(n, -1);
      for (int start = 0; start < n; ++start) {
        if (finite_rep_[start] >= 0) continue;
        ++finite_classes_;
        std::vector<int> orbit{start};
        finite_rep_[start] = start;
        for (std::size_t k = 0; k < orbit.size(); ++k) {
          const int a = orbit[k];
          for (int b = 0; b < n; ++b) {
            const int next = t[t[b][a]][phi_inv[b]];
            if (finite_rep_[next] < 0) {
              finite_rep_[next] = start;
              orbit.push_back(next);
            }
          }
        }
      }
      mode_ = Mode::finite;
      break;
    }
    case GroupKind::free:
      mode_ = phi_.is_identity() ? Mode::free_identity : Mode::formal;
      break;
  }
}

bool TwistedClasses::supported(const GroupHomomorphism& phi) {
  return phi.source().kind() != GroupKind::free || phi.is_identity();
}

GroupElement TwistedClasses::representative(const GroupElement& x) const {
  const Group& g = phi_.source();
  g.require(x);
  switch (mode_) {
    case Mode::abelian: {
      const std::size_t n = moduli_.size();
      std::vector<Integer> y(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) y[i] += u_[i][j] * x.exponents()[j];
      for (std::size_t i = 0; i < n; ++i)
        if (moduli_[i] != 0) y[i] = nonnegative_mod(y[i], moduli_[i]);
      std::vector<std::int64_t> v(n);
      for (std::size_t i = 0; i < n; ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < n; ++j) s += u_inverse_[i][j] * y[j];
        v[i] = to_int64(s);
      }
      return GroupElement(std::move(v));
    }
    case Mode::finite:
      return GroupElement(finite_rep_[x.index()]);
    case Mode::free_identity: {
      FreeWord w = x.word();
      // cyclic reduction
      while (w.size() >= 2 && w.front().generator == w.back().generator) {
        std::int64_t e = w.front().exponent + w.back().exponent;
        int gen = w.front().generator;
        w.pop_back();
        w.erase(w.begin());
        if (e != 0) {
          w.insert(w.begin(), Syllable{gen, e});
          break;
        }
      }
      RawWord letters = g.to_raw(GroupElement(w));
      const std::size_t len = letters.size();
      RawWord best = letters;
      RawWord rotated(len);
      for (std::size_t r = 1; r < len; ++r) {
        for (std::size_t i = 0; i < len; ++i) rotated[i] = letters[(i + r) % len];
        if (rotated < best) best = rotated;
      }
      return g.normal_form(best);
    }
    case Mode::formal:
      break;
  }
  throw UnsupportedReduction("semiconjugacy classes of " + g.describe() + " under " + phi_.describe() +
                             " are not decidable here; project to a quotient with mod-K");
}

std::optional<Integer> TwistedClasses::class_count() const {
  switch (mode_) {
    case Mode::abelian: {
      Integer count = 1;
      for (const auto& d : moduli_) {
        if (d == 0) return std::nullopt;
        count *= d;
      }
      return count;
    }
    case Mode::finite:
      return Integer(finite_classes_);
    case Mode::free_identity:
      if (phi_.source().rank() == 0) return Integer(1);
      return std::nullopt;
    case Mode::formal:
      break;
  }
  return std::nullopt;
}

GroupElement semiconjugacy_class(const GroupElement& g, const GroupHomomorphism& phi) {
  return TwistedClasses(phi).representative(g);
}

// ---------------------------------------------------------------------------

ShadowElement::ShadowElement(GroupRing ring, GroupHomomorphism phi)
    : ShadowElement(std::move(ring), std::make_shared<const TwistedClasses>(std::move(phi))) {}

ShadowElement::ShadowElement(GroupRing ring, std::shared_ptr<const TwistedClasses> classes)
    : ring_(std::move(ring)), classes_(std::move(classes)) {
  if (!(classes_->phi().source() == ring_.group()))
    throw ModelMismatch("twisting endomorphism does not act on " + ring_.name());
}

Rational ShadowElement::coefficient_of_class(const GroupElement& g) const {
  GroupElement rep = reduced() ? classes_->representative(g) : g;
  auto it = terms_.find(rep);
  return it == terms_.end() ? Rational(0) : it->second;
}

void ShadowElement::add(const GroupElement& g, const Rational& c) {
  const auto& k = ring_.coefficients();
  Rational v = k.normalize(c);
  if (v.is_zero()) return;
  GroupElement rep = reduced() ? classes_->representative(g) : (ring_.group().require(g), g);
  auto [it, inserted] = terms_.try_emplace(std::move(rep), v);
  if (inserted) return;
  it->second = k.normalize(it->second + v);
  if (it->second.is_zero()) terms_.erase(it);
}

Rational ShadowElement::augment() const {
  Rational s = 0;
  for (const auto& [g, c] : terms_) s += c;
  return ring_.coefficients().normalize(s);
}

std::size_t ShadowElement::nonzero_classes() const {
  if (!reduced())
    throw FormalShadow("shadow holds formal classes; the Nielsen number needs a reduced trace (try mod-K)");
  return terms_.size();
}

void ShadowElement::require_same(const ShadowElement& other) const {
  if (!(ring_ == other.ring_) || !(phi() == other.phi()))
    throw ModelMismatch("shadow elements live in different shadows");
}

ShadowElement& ShadowElement::operator+=(const ShadowElement& rhs) {
  require_same(rhs);
  for (const auto& [g, c] : rhs.terms_) add(g, c);
  return *this;
}

ShadowElement& ShadowElement::operator-=(const ShadowElement& rhs) {
  require_same(rhs);
  for (const auto& [g, c] : rhs.terms_) add(g, -c);
  return *this;
}

ShadowElement ShadowElement::scaled(const Rational& c) const {
  ShadowElement out(ring_, classes_);
  for (const auto& [g, a] : terms_) out.add(g, a * c);
  return out;
}

std::string ShadowElement::format() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : terms_) {
    const bool negative = c < Rational(0);
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    os << (negative ? -c : c) << '[' << ring_.group().format(g) << ']';
    first = false;
  }
  return os.str();
}

bool operator==(const ShadowElement& a, const ShadowElement& b) {
  return a.ring_ == b.ring_ && a.phi() == b.phi() && a.reduced() == b.reduced() && a.terms_ == b.terms_;
}

ShadowElement shadow_project(const GroupRingElement& x, const GroupHomomorphism& phi) {
  return shadow_project(x, std::make_shared<const TwistedClasses>(phi));
}

ShadowElement shadow_project(const GroupRingElement& x, std::shared_ptr<const TwistedClasses> classes) {
  ShadowElement s(x.ring(), std::move(classes));
  for (const auto& [g, c] : x.terms()) s.add(g, c);
  return s;
}

// ---------------------------------------------------------------------------

namespace {

GroupHomomorphism descend_abelian(const GroupHomomorphism& phi, const GroupHomomorphism& q) {
  const Group& bar = q.target();
  const auto m = static_cast<std::size_t>(bar.rank());
  if (m == 0) return GroupHomomorphism::identity(bar);
  if (q.source().kind() == GroupKind::finite) throw ValidationError("a finite group has no free abelian quotient");
  IntegerMatrix qm = to_integer_matrix(q.abelian_matrix());
  IntegerMatrix am = to_integer_matrix(phi.abelian_matrix());
  SmithForm snf = smith_normal_form(qm);
  auto factors = snf.invariant_factors();
  if (factors.size() < m || std::any_of(factors.begin(), factors.end(), [](const Integer& d) { return d != 1; }))
    throw ValidationError("quotient map is not onto " + bar.describe());
  const std::size_t n = qm[0].size();
  IntegerMatrix dt(n, std::vector<Integer>(m, 0));
  for (std::size_t i = 0; i < m; ++i) dt[i][i] = 1;
  IntegerMatrix right_inverse = integer_product(integer_product(snf.right, dt), snf.left);
  IntegerMatrix qa = integer_product(qm, am);
  IntegerMatrix b = integer_product(qa, right_inverse);
  if (integer_product(b, qm) != qa) throw ValidationError("endomorphism does not descend to the quotient");
  std::vector<std::vector<std::int64_t>> b64(m, std::vector<std::int64_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) b64[i][j] = to_int64(b[i][j]);
  return GroupHomomorphism::from_matrix(bar, b64);
}

GroupHomomorphism descend_finite(const GroupHomomorphism& phi, const GroupHomomorphism& q) {
  const Group& src = q.source();
  const Group& bar = q.target();
  const int n = bar.order();
  std::vector<std::optional<GroupElement>> pre(n);
  pre[bar.identity_index()] = src.identity();
  std::deque<int> queue{bar.identity_index()};
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int i = 1; i <= src.rank(); ++i) {
      GroupElement gen = src.generator(i);
      const int y = bar.table()[x][q(gen).index()];
      if (!pre[y]) {
        pre[y] = src.multiply(*pre[x], gen);
        queue.push_back(y);
      }
    }
  }
  if (std::any_of(pre.begin(), pre.end(), [](const auto& p) { return !p; }))
    throw ValidationError("quotient map is not onto " + bar.describe());
  std::vector<GroupElement> images;
  images.reserve(n);
  for (int k = 0; k < n; ++k) images.push_back(q(phi(*pre[k])));
  GroupHomomorphism bar_phi = [&] {
    try {
      return GroupHomomorphism(bar, bar, std::move(images));
    } catch (const ValidationError&) {
      throw ValidationError("endomorphism does not descend to the quotient");
    }
  }();
  for (int i = 1; i <= src.rank(); ++i) {
    GroupElement gen = src.generator(i);
    if (q(phi(gen)) != bar_phi(q(gen))) throw ValidationError("endomorphism does not descend to the quotient");
  }
  return bar_phi;
}

}  // namespace

GroupHomomorphism descend_endomorphism(const GroupHomomorphism& phi, const GroupHomomorphism& q) {
  if (!phi.is_endomorphism() || !(phi.source() == q.source()))
    throw ModelMismatch("quotient map and endomorphism act on different groups");
  switch (q.target().kind()) {
    case GroupKind::free_abelian:
      return descend_abelian(phi, q);
    case GroupKind::finite:
      return descend_finite(phi, q);
    case GroupKind::free:
      if (q.target().rank() == 0) return GroupHomomorphism::identity(q.target());
      break;
  }
  throw Unsupported("mod-K quotients must be free abelian or finite");
}

ShadowElement mod_k_project(const ShadowElement& s, const GroupHomomorphism& q) {
  GroupHomomorphism bar_phi = descend_endomorphism(s.phi(), q);
  ShadowElement out(GroupRing(s.ring().coefficients(), q.target()), bar_phi);
  for (const auto& [g, c] : s.terms()) out.add(q(g), c);
  return out;
}

}  // namespace nielsen
