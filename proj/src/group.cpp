#include "nielsen/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "nielsen/errors.hpp"

namespace nielsen {

struct Group::Data {
  GroupKind kind = GroupKind::free;
  int rank = 0;
  // finite only
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;
  std::vector<int> inverse;
  int identity = 0;
  bool abelian = true;
};

namespace {

void push_syllable(FreeWord& w, Syllable s) {
  if (s.exponent == 0) return;
  if (!w.empty() && w.back().generator == s.generator) {
    w.back().exponent += s.exponent;
    if (w.back().exponent == 0) w.pop_back();
    return;
  }
  w.push_back(s);
}

std::string letter_name(int index) {
  if (index >= 1 && index <= 26) return std::string(1, static_cast<char>('a' + index - 1));
  return "x" + std::to_string(index);
}

std::string cycle_name(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::string out;
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start] || perm[start] == static_cast<int>(start)) continue;
    out += "(";
    std::size_t i = start;
    bool first = true;
    while (!seen[i]) {
      seen[i] = true;
      if (!first) out += " ";
      out += std::to_string(i + 1);
      first = false;
      i = static_cast<std::size_t>(perm[i]);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

}  // namespace

Group Group::free(int rank) {
  if (rank < 0) throw ValidationError("negative group rank");
  auto d = std::make_shared<Data>();
  d->kind = GroupKind::free;
  d->rank = rank;
  d->abelian = rank <= 1;
  return Group(std::move(d));
}

Group Group::free_abelian(int rank) {
  if (rank < 0) throw ValidationError("negative group rank");
  auto d = std::make_shared<Data>();
  d->kind = GroupKind::free_abelian;
  d->rank = rank;
  return Group(std::move(d));
}

Group Group::finite(std::vector<std::string> names, std::vector<std::vector<int>> table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw ValidationError("finite group table is empty");
  if (n > max_finite_order)
    throw ValidationError("finite group of order " + std::to_string(n) + " exceeds the cap of " +
                          std::to_string(max_finite_order));
  if (names.empty()) {
    for (int i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
  }
  if (static_cast<int>(names.size()) != n) throw ValidationError("element name count does not match table size");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw ValidationError("multiplication table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw ValidationError("table entry out of range");
  }
  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = table[e][i] == i && table[i][e] == i;
    if (ok) identity = e;
  }
  if (identity < 0) throw ValidationError("multiplication table has no identity");
  std::vector<int> inverse(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (table[i][j] == identity && table[j][i] == identity) {
        inverse[i] = j;
        break;
      }
    if (inverse[i] < 0) throw ValidationError("element " + names[i] + " has no inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = table[a][b];
      const auto& row_ab = table[ab];
      const auto& row_b = table[b];
      for (int c = 0; c < n; ++c)
        if (row_ab[c] != table[a][row_b[c]])
          throw ValidationError("multiplication table is not associative at (" + names[a] + "," + names[b] + "," +
                                names[c] + ")");
    }
  bool abelian = true;
  for (int a = 0; a < n && abelian; ++a)
    for (int b = 0; b < n && abelian; ++b) abelian = table[a][b] == table[b][a];

  auto d = std::make_shared<Data>();
  d->kind = GroupKind::finite;
  d->rank = n;
  d->names = std::move(names);
  d->table = std::move(table);
  d->inverse = std::move(inverse);
  d->identity = identity;
  d->abelian = abelian;
  return Group(std::move(d));
}

Group Group::cyclic(int order) {
  if (order < 1) throw ValidationError("cyclic group order must be positive");
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int i = 0; i < order; ++i) {
    names.push_back(i == 0 ? "e" : (i == 1 ? "s" : "s^" + std::to_string(i)));
    for (int j = 0; j < order; ++j) table[i][j] = (i + j) % order;
  }
  return finite(std::move(names), std::move(table));
}

Group Group::symmetric(int n) {
  if (n < 1 || n > 5) throw ValidationError("symmetric(n) supports 1 <= n <= 5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int order = static_cast<int>(perms.size());
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int i = 0; i < order; ++i) {
    names.push_back(cycle_name(perms[i]));
    for (int j = 0; j < order; ++j) {
      std::vector<int> c(n);
      for (int k = 0; k < n; ++k) c[k] = perms[i][perms[j][k]];
      table[i][j] = static_cast<int>(std::lower_bound(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return finite(std::move(names), std::move(table));
}

GroupKind Group::kind() const { return d_->kind; }
int Group::rank() const { return d_->rank; }

int Group::order() const {
  if (d_->kind != GroupKind::finite) throw Unsupported("order() of an infinite group");
  return d_->rank;
}

bool Group::is_trivial() const {
  return d_->kind == GroupKind::finite ? d_->rank == 1 : d_->rank == 0;
}

bool Group::is_abelian() const { return d_->abelian; }

GroupElement Group::identity() const {
  switch (d_->kind) {
    case GroupKind::free:
      return GroupElement(FreeWord{});
    case GroupKind::free_abelian:
      return GroupElement(std::vector<std::int64_t>(d_->rank, 0));
    case GroupKind::finite:
      return GroupElement(d_->identity);
  }
  return {};
}

GroupElement Group::generator(int index) const {
  if (index < 1 || index > d_->rank)
    throw ParseError("generator index " + std::to_string(index) + " out of range 1.." + std::to_string(d_->rank));
  switch (d_->kind) {
    case GroupKind::free:
      return GroupElement(FreeWord{Syllable{index, 1}});
    case GroupKind::free_abelian: {
      std::vector<std::int64_t> v(d_->rank, 0);
      v[index - 1] = 1;
      return GroupElement(std::move(v));
    }
    case GroupKind::finite:
      return GroupElement(index - 1);
  }
  return {};
}

GroupElement Group::normal_form(std::span<const int> raw) const {
  for (int letter : raw)
    if (letter == 0 || letter > d_->rank || letter < -d_->rank)
      throw ParseError("generator index " + std::to_string(letter) + " out of range for " + describe());
  switch (d_->kind) {
    case GroupKind::free: {
      FreeWord w;
      for (int letter : raw) push_syllable(w, Syllable{std::abs(letter), letter > 0 ? 1 : -1});
      return GroupElement(std::move(w));
    }
    case GroupKind::free_abelian: {
      std::vector<std::int64_t> v(d_->rank, 0);
      for (int letter : raw) v[std::abs(letter) - 1] += letter > 0 ? 1 : -1;
      return GroupElement(std::move(v));
    }
    case GroupKind::finite: {
      int acc = d_->identity;
      for (int letter : raw) {
        int g = std::abs(letter) - 1;
        acc = d_->table[acc][letter > 0 ? g : d_->inverse[g]];
      }
      return GroupElement(acc);
    }
  }
  return {};
}

bool Group::contains(const GroupElement& a) const {
  switch (d_->kind) {
    case GroupKind::free: {
      if (!std::holds_alternative<FreeWord>(a.rep())) return false;
      const auto& w = a.word();
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].generator < 1 || w[i].generator > d_->rank || w[i].exponent == 0) return false;
        if (i > 0 && w[i - 1].generator == w[i].generator) return false;
      }
      return true;
    }
    case GroupKind::free_abelian:
      return std::holds_alternative<std::vector<std::int64_t>>(a.rep()) &&
             static_cast<int>(a.exponents().size()) == d_->rank;
    case GroupKind::finite:
      return std::holds_alternative<int>(a.rep()) && a.index() >= 0 && a.index() < d_->rank;
  }
  return false;
}

void Group::require(const GroupElement& a) const {
  if (!contains(a)) throw ModelMismatch("element is not a canonical element of " + describe());
}

GroupElement Group::multiply(const GroupElement& a, const GroupElement& b) const {
  require(a);
  require(b);
  switch (d_->kind) {
    case GroupKind::free: {
      FreeWord w = a.word();
      for (const auto& s : b.word()) push_syllable(w, s);
      return GroupElement(std::move(w));
    }
    case GroupKind::free_abelian: {
      std::vector<std::int64_t> v = a.exponents();
      for (std::size_t i = 0; i < v.size(); ++i)
        if (__builtin_add_overflow(v[i], b.exponents()[i], &v[i])) throw std::overflow_error("exponent overflow");
      return GroupElement(std::move(v));
    }
    case GroupKind::finite:
      return GroupElement(d_->table[a.index()][b.index()]);
  }
  return {};
}

GroupElement Group::invert(const GroupElement& a) const {
  require(a);
  switch (d_->kind) {
    case GroupKind::free: {
      FreeWord w(a.word().rbegin(), a.word().rend());
      for (auto& s : w) s.exponent = -s.exponent;
      return GroupElement(std::move(w));
    }
    case GroupKind::free_abelian: {
      std::vector<std::int64_t> v = a.exponents();
      for (auto& x : v) x = -x;
      return GroupElement(std::move(v));
    }
    case GroupKind::finite:
      return GroupElement(d_->inverse[a.index()]);
  }
  return {};
}

GroupElement Group::power(const GroupElement& a, std::int64_t k) const {
  require(a);
  if (d_->kind == GroupKind::free_abelian) {
    std::vector<std::int64_t> v = a.exponents();
    for (auto& x : v)
      if (__builtin_mul_overflow(x, k, &x)) throw std::overflow_error("exponent overflow");
    return GroupElement(std::move(v));
  }
  if (d_->kind == GroupKind::free && a.word().size() == 1) {
    Syllable s = a.word()[0];
    if (__builtin_mul_overflow(s.exponent, k, &s.exponent)) throw std::overflow_error("exponent overflow");
    return GroupElement(s.exponent == 0 ? FreeWord{} : FreeWord{s});
  }
  GroupElement base = k < 0 ? invert(a) : a;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  if (d_->kind == GroupKind::finite) e %= static_cast<std::uint64_t>(d_->rank);
  GroupElement acc = identity();
  while (e > 0) {
    if (e & 1U) acc = multiply(acc, base);
    e >>= 1U;
    if (e > 0) base = multiply(base, base);
  }
  return acc;
}

bool Group::is_identity(const GroupElement& a) const { return a == identity(); }

RawWord Group::to_raw(const GroupElement& a) const {
  require(a);
  RawWord out;
  switch (d_->kind) {
    case GroupKind::free:
      for (const auto& s : a.word())
        for (std::int64_t i = 0; i < std::abs(s.exponent); ++i)
          out.push_back(s.exponent > 0 ? s.generator : -s.generator);
      break;
    case GroupKind::free_abelian:
      for (std::size_t g = 0; g < a.exponents().size(); ++g)
        for (std::int64_t i = 0; i < std::abs(a.exponents()[g]); ++i)
          out.push_back(a.exponents()[g] > 0 ? static_cast<int>(g + 1) : -static_cast<int>(g + 1));
      break;
    case GroupKind::finite:
      if (a.index() != d_->identity) out.push_back(a.index() + 1);
      break;
  }
  return out;
}

std::string Group::generator_name(int index) const {
  switch (d_->kind) {
    case GroupKind::free:
      return letter_name(index);
    case GroupKind::free_abelian:
      return d_->rank == 1 ? "t" : "t" + std::to_string(index);
    case GroupKind::finite:
      return d_->names.at(index - 1);
  }
  return "?";
}

std::string Group::format(const GroupElement& a) const {
  require(a);
  if (d_->kind == GroupKind::finite) return d_->names[a.index()];
  std::ostringstream os;
  bool first = true;
  auto emit = [&](int g, std::int64_t e) {
    if (e == 0) return;
    if (!first) os << ' ';
    first = false;
    os << generator_name(g);
    if (e != 1) os << '^' << e;
  };
  if (d_->kind == GroupKind::free) {
    for (const auto& s : a.word()) emit(s.generator, s.exponent);
  } else {
    for (std::size_t g = 0; g < a.exponents().size(); ++g) emit(static_cast<int>(g + 1), a.exponents()[g]);
  }
  return first ? "e" : os.str();
}

std::vector<GroupElement> Group::elements() const {
  if (d_->kind != GroupKind::finite) throw Unsupported("elements() of an infinite group");
  std::vector<GroupElement> out;
  for (int i = 0; i < d_->rank; ++i) out.emplace_back(i);
  return out;
}

const std::vector<std::string>& Group::element_names() const { return d_->names; }
const std::vector<std::vector<int>>& Group::table() const { return d_->table; }
int Group::identity_index() const { return d_->identity; }
int Group::inverse_index(int i) const { return d_->inverse.at(i); }

std::string Group::describe() const {
  switch (d_->kind) {
    case GroupKind::free:
      return "free(" + std::to_string(d_->rank) + ")";
    case GroupKind::free_abelian:
      return "free_abelian(" + std::to_string(d_->rank) + ")";
    case GroupKind::finite:
      return "finite(" + std::to_string(d_->rank) + ")";
  }
  return "?";
}

bool operator==(const Group& a, const Group& b) {
  if (a.d_ == b.d_) return true;
  if (a.d_->kind != b.d_->kind || a.d_->rank != b.d_->rank) return false;
  return a.d_->kind != GroupKind::finite || a.d_->table == b.d_->table;
}

// ---------------------------------------------------------------------------

GroupHomomorphism::GroupHomomorphism(Group source, Group target, std::vector<GroupElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != source_.rank())
    throw ValidationError("homomorphism needs " + std::to_string(source_.rank()) + " generator images, got " +
                          std::to_string(images_.size()));
  for (const auto& img : images_) target_.require(img);
  if (source_.kind() == GroupKind::finite) {
    const auto& t = source_.table();
    const int n = source_.rank();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (images_[t[a][b]] != target_.multiply(images_[a], images_[b]))
          throw ValidationError("element map is not a homomorphism at (" + source_.element_names()[a] + "," +
                                source_.element_names()[b] + ")");
  } else if (source_.kind() == GroupKind::free_abelian && !target_.is_abelian()) {
    for (std::size_t i = 0; i < images_.size(); ++i)
      for (std::size_t j = i + 1; j < images_.size(); ++j)
        if (target_.multiply(images_[i], images_[j]) != target_.multiply(images_[j], images_[i]))
          throw ValidationError("images of commuting generators do not commute");
  }
}

GroupHomomorphism GroupHomomorphism::identity(const Group& g) {
  std::vector<GroupElement> images;
  for (int i = 1; i <= g.rank(); ++i) images.push_back(g.generator(i));
  return GroupHomomorphism(g, g, std::move(images));
}

GroupHomomorphism GroupHomomorphism::from_matrix(const Group& g, const std::vector<std::vector<std::int64_t>>& m) {
  if (g.kind() != GroupKind::free_abelian) throw ModelMismatch("from_matrix needs a free abelian group");
  const auto n = static_cast<std::size_t>(g.rank());
  if (m.size() != n) throw ValidationError("endomorphism matrix has wrong row count");
  std::vector<GroupElement> images;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::int64_t> col(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i].size() != n) throw ValidationError("endomorphism matrix is not square");
      col[i] = m[i][j];
    }
    images.emplace_back(std::move(col));
  }
  return GroupHomomorphism(g, g, std::move(images));
}

GroupHomomorphism GroupHomomorphism::from_words(const Group& source, const Group& target,
                                                const std::vector<RawWord>& images) {
  std::vector<GroupElement> out;
  out.reserve(images.size());
  for (const auto& w : images) out.push_back(target.normal_form(w));
  return GroupHomomorphism(source, target, std::move(out));
}

GroupElement GroupHomomorphism::operator()(const GroupElement& a) const {
  source_.require(a);
  switch (source_.kind()) {
    case GroupKind::free: {
      GroupElement acc = target_.identity();
      for (const auto& s : a.word()) acc = target_.multiply(acc, target_.power(images_[s.generator - 1], s.exponent));
      return acc;
    }
    case GroupKind::free_abelian: {
      GroupElement acc = target_.identity();
      for (std::size_t g = 0; g < a.exponents().size(); ++g)
        if (a.exponents()[g] != 0) acc = target_.multiply(acc, target_.power(images_[g], a.exponents()[g]));
      return acc;
    }
    case GroupKind::finite:
      return images_[a.index()];
  }
  return {};
}

bool GroupHomomorphism::is_identity() const {
  if (!(source_ == target_)) return false;
  for (int i = 1; i <= source_.rank(); ++i)
    if (images_[i - 1] != source_.generator(i)) return false;
  return true;
}

GroupHomomorphism GroupHomomorphism::after(const GroupHomomorphism& first) const {
  if (!(first.target_ == source_)) throw ModelMismatch("composing homomorphisms with mismatched groups");
  std::vector<GroupElement> images;
  images.reserve(first.images_.size());
  for (const auto& img : first.images_) images.push_back((*this)(img));
  return GroupHomomorphism(first.source_, target_, std::move(images));
}

std::vector<std::vector<std::int64_t>> GroupHomomorphism::abelian_matrix() const {
  if (source_.kind() == GroupKind::finite || target_.kind() == GroupKind::finite)
    throw Unsupported("abelian_matrix needs free or free abelian groups");
  const auto rows = static_cast<std::size_t>(target_.rank());
  const auto cols = static_cast<std::size_t>(source_.rank());
  std::vector<std::vector<std::int64_t>> m(rows, std::vector<std::int64_t>(cols, 0));
  for (std::size_t j = 0; j < cols; ++j) {
    const auto& img = images_[j];
    if (target_.kind() == GroupKind::free_abelian) {
      for (std::size_t i = 0; i < rows; ++i) m[i][j] = img.exponents()[i];
    } else {
      for (const auto& s : img.word()) m[s.generator - 1][j] += s.exponent;
    }
  }
  return m;
}

std::string GroupHomomorphism::describe() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i > 0) os << ", ";
    os << source_.generator_name(static_cast<int>(i + 1)) << " -> " << target_.format(images_[i]);
  }
  os << '}';
  return os.str();
}

std::optional<std::size_t> first_violated_relation(const GroupHomomorphism& hom, std::span<const RawWord> relations) {
  for (std::size_t i = 0; i < relations.size(); ++i) {
    GroupElement acc = hom.target().identity();
    for (int letter : relations[i]) {
      if (letter == 0 || std::abs(letter) > static_cast<int>(hom.images().size()))
        throw ParseError("relation letter " + std::to_string(letter) + " out of range");
      const auto& img = hom.images()[std::abs(letter) - 1];
      acc = hom.target().multiply(acc, letter > 0 ? img : hom.target().invert(img));
    }
    if (!hom.target().is_identity(acc)) return i;
  }
  return std::nullopt;
}

void validate_endomorphism(const GroupHomomorphism& hom, std::span<const RawWord> relations) {
  if (auto bad = first_violated_relation(hom, relations)) {
    std::ostringstream os;
    os << "relation #" << *bad << " [";
    for (std::size_t i = 0; i < relations[*bad].size(); ++i) os << (i ? "," : "") << relations[*bad][i];
    os << "] does not map to the identity";
    throw ValidationError(os.str());
  }
}

}  // namespace nielsen
