#pragma once

#include <algorithm>
#include <atomic>
#include <concepts>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "nielsen/errors.hpp"

namespace nielsen {

/// A bicategory with shadows whose 2-cells and shadow maps can be compared.
/// Composition of 1-cells is written left to right: compose(X, Y) = X ⊙ Y,
/// defined when right(X) == left(Y).
template <class B>
concept ShadowedBicategory = requires(const B& b, const typename B::Object& a, const typename B::Cell& x,
                                      const typename B::TwoCell& f, const typename B::ShadowMap& s) {
  { b.unit(a) } -> std::same_as<typename B::Cell>;
  { b.left(x) } -> std::same_as<typename B::Object>;
  { b.right(x) } -> std::same_as<typename B::Object>;
  { b.compose(x, x) } -> std::same_as<typename B::Cell>;
  { b.source(f) } -> std::convertible_to<typename B::Cell>;
  { b.target(f) } -> std::convertible_to<typename B::Cell>;
  { b.identity(x) } -> std::same_as<typename B::TwoCell>;
  { b.vertical(f, f) } -> std::same_as<typename B::TwoCell>;
  { b.horizontal(f, f) } -> std::same_as<typename B::TwoCell>;
  { b.left_unitor(x) } -> std::same_as<typename B::TwoCell>;
  { b.left_unitor_inverse(x) } -> std::same_as<typename B::TwoCell>;
  { b.right_unitor(x) } -> std::same_as<typename B::TwoCell>;
  { b.right_unitor_inverse(x) } -> std::same_as<typename B::TwoCell>;
  { b.associator(x, x, x) } -> std::same_as<typename B::TwoCell>;
  { b.shadow(f) } -> std::same_as<typename B::ShadowMap>;
  { b.theta(x, x) } -> std::same_as<typename B::ShadowMap>;
  { b.shadow_compose(s, s) } -> std::same_as<typename B::ShadowMap>;
  { b.equal(f, f) } -> std::same_as<bool>;
  { b.equal(s, s) } -> std::same_as<bool>;
  { b.describe(f) } -> std::convertible_to<std::string>;
  { b.describe(s) } -> std::convertible_to<std::string>;
};

/// X with right dual Y: eta: U_{left X} -> X ⊙ Y, epsilon: Y ⊙ X -> U_{right X}.
template <class B>
struct DualPair {
  typename B::Cell x;
  typename B::Cell y;
  typename B::TwoCell eta;
  typename B::TwoCell epsilon;
};

struct DualPairCheck {
  bool x_side = true;  // X -> U⊙X -> X⊙Y⊙X -> X⊙U -> X is the identity
  bool y_side = true;  // Y -> Y⊙U -> Y⊙X⊙Y -> U⊙Y -> Y is the identity

  bool ok() const { return x_side && y_side; }
  /// "ok", "Y-side", "X-side", "X-side and Y-side".
  std::string failed() const {
    if (ok()) return "ok";
    if (!x_side && !y_side) return "X-side and Y-side";
    return x_side ? "Y-side" : "X-side";
  }
};

namespace detail {

template <ShadowedBicategory B>
void require_cell(const B& b, const typename B::Cell& actual, const typename B::Cell& expected, const char* what) {
  if (!(actual == expected)) throw ShapeMismatch(std::string(what) + " has the wrong shape");
  (void)b;
}

template <ShadowedBicategory B>
void require_shapes(const B& b, const DualPair<B>& d) {
  if (!(b.right(d.x) == b.left(d.y)) || !(b.right(d.y) == b.left(d.x)))
    throw ShapeMismatch("dual pair 1-cells do not chain");
  require_cell(b, b.source(d.eta), b.unit(b.left(d.x)), "coevaluation source");
  require_cell(b, b.target(d.eta), b.compose(d.x, d.y), "coevaluation target");
  require_cell(b, b.source(d.epsilon), b.compose(d.y, d.x), "evaluation source");
  require_cell(b, b.target(d.epsilon), b.unit(b.right(d.x)), "evaluation target");
}

}  // namespace detail

template <ShadowedBicategory B>
DualPairCheck check_dual_pair(const B& b, const DualPair<B>& d) {
  detail::require_shapes(b, d);
  DualPairCheck out;
  auto x_side = b.vertical(
      b.right_unitor(d.x),
      b.vertical(b.horizontal(b.identity(d.x), d.epsilon),
                 b.vertical(b.horizontal(d.eta, b.identity(d.x)), b.left_unitor_inverse(d.x))));
  out.x_side = b.equal(x_side, b.identity(d.x));
  auto y_side = b.vertical(
      b.left_unitor(d.y),
      b.vertical(b.horizontal(d.epsilon, b.identity(d.y)),
                 b.vertical(b.horizontal(b.identity(d.y), d.eta), b.right_unitor_inverse(d.y))));
  out.y_side = b.equal(y_side, b.identity(d.y));
  return out;
}

/// tr(f): <Q> -> <P> for f: Q ⊙ X -> X ⊙ P.
template <ShadowedBicategory B>
typename B::ShadowMap trace(const B& b, const DualPair<B>& d, const typename B::Cell& q, const typename B::Cell& p,
                            const typename B::TwoCell& f) {
  detail::require_cell(b, b.source(f), b.compose(q, d.x), "traced 2-cell source");
  detail::require_cell(b, b.target(f), b.compose(d.x, p), "traced 2-cell target");
  auto s = b.shadow(b.right_unitor_inverse(q));
  s = b.shadow_compose(b.shadow(b.horizontal(b.identity(q), d.eta)), s);
  s = b.shadow_compose(b.shadow(b.associator(q, d.x, d.y)), s);
  s = b.shadow_compose(b.shadow(b.horizontal(f, b.identity(d.y))), s);
  s = b.shadow_compose(b.theta(b.compose(d.x, p), d.y), s);
  s = b.shadow_compose(b.shadow(b.horizontal(d.epsilon, b.identity(p))), s);
  return b.shadow_compose(b.shadow(b.left_unitor(p)), s);
}

/// tr(g): <Q> -> <P> for g: Y ⊙ Q -> P ⊙ Y.
template <ShadowedBicategory B>
typename B::ShadowMap mirror_trace(const B& b, const DualPair<B>& d, const typename B::Cell& q,
                                   const typename B::Cell& p, const typename B::TwoCell& g) {
  detail::require_cell(b, b.source(g), b.compose(d.y, q), "traced 2-cell source");
  detail::require_cell(b, b.target(g), b.compose(p, d.y), "traced 2-cell target");
  auto s = b.shadow(b.left_unitor_inverse(q));
  s = b.shadow_compose(b.shadow(b.horizontal(d.eta, b.identity(q))), s);
  s = b.shadow_compose(b.shadow(b.horizontal(b.identity(d.x), g)), s);
  s = b.shadow_compose(b.theta(d.x, b.compose(p, d.y)), s);
  s = b.shadow_compose(b.shadow(b.horizontal(b.identity(p), d.epsilon)), s);
  return b.shadow_compose(b.shadow(b.right_unitor(p)), s);
}

/// The dual f': Y ⊙ Q -> P ⊙ Y of f: Q ⊙ X -> X ⊙ P.
template <ShadowedBicategory B>
typename B::TwoCell dual_of(const B& b, const DualPair<B>& d, const typename B::Cell& q, const typename B::Cell& p,
                            const typename B::TwoCell& f) {
  auto yq = b.compose(d.y, q);
  auto step = b.horizontal(b.identity(yq), d.eta);
  step = b.vertical(step, b.right_unitor_inverse(yq));
  step = b.vertical(b.horizontal(b.identity(d.y), b.horizontal(f, b.identity(d.y))), step);
  step = b.vertical(b.horizontal(d.epsilon, b.identity(b.compose(p, d.y))), step);
  return b.vertical(b.left_unitor(b.compose(p, d.y)), step);
}

/// (X ⊙ W, Z ⊙ Y) from (X, Y) and (W, Z).
template <ShadowedBicategory B>
DualPair<B> compose_dual_pairs(const B& b, const DualPair<B>& first, const DualPair<B>& second) {
  detail::require_shapes(b, first);
  detail::require_shapes(b, second);
  if (!(b.right(first.x) == b.left(second.x))) throw ShapeMismatch("dual pairs do not chain");
  DualPair<B> out{b.compose(first.x, second.x), b.compose(second.y, first.y), first.eta, second.epsilon};
  auto eta = b.vertical(b.horizontal(b.right_unitor_inverse(first.x), b.identity(first.y)), first.eta);
  out.eta = b.vertical(b.horizontal(b.identity(first.x), b.horizontal(second.eta, b.identity(first.y))), eta);
  auto eps = b.horizontal(b.identity(second.y), b.horizontal(first.epsilon, b.identity(second.x)));
  eps = b.vertical(b.horizontal(b.right_unitor(second.y), b.identity(second.x)), eps);
  out.epsilon = b.vertical(second.epsilon, eps);
  return out;
}

// ---------------------------------------------------------------------------
// Law harness

enum class TraceLaw { independence, dual, cyclic, mult, functor };

inline std::string law_name(TraceLaw law) {
  switch (law) {
    case TraceLaw::independence:
      return "independence";
    case TraceLaw::dual:
      return "dual";
    case TraceLaw::cyclic:
      return "cyclic";
    case TraceLaw::mult:
      return "mult";
    case TraceLaw::functor:
      return "functor";
  }
  return "?";
}

inline std::optional<TraceLaw> parse_law(const std::string& name) {
  for (auto law : {TraceLaw::independence, TraceLaw::dual, TraceLaw::cyclic, TraceLaw::mult, TraceLaw::functor})
    if (law_name(law) == name) return law;
  return std::nullopt;
}

template <class B>
struct IndependenceSample {
  DualPair<B> first, second;  // two duals of the same X
  typename B::Cell q, p;
  typename B::TwoCell f;
};

template <class B>
struct DualSample {
  DualPair<B> pair;
  typename B::Cell q, p;
  typename B::TwoCell f;
};

/// f: Q ⊙ X -> Z ⊙ P and g: R ⊙ Z -> X ⊙ S.
template <class B>
struct CyclicSample {
  DualPair<B> xy, zw;
  typename B::Cell q, r, p, s;
  typename B::TwoCell f, g;
};

/// f: Q ⊙ X -> X ⊙ P and g: P ⊙ W -> W ⊙ S.
template <class B>
struct MultSample {
  DualPair<B> xy, wz;
  typename B::Cell q, p, s;
  typename B::TwoCell f, g;
};

/// A self-map of a chain complex and the induced map on homology.
template <class B>
struct FunctorSample {
  DualPair<B> chains, homology;
  typename B::Cell q, p;
  typename B::TwoCell f_chains, f_homology;
};

struct LawFailure {
  std::uint64_t seed = 0;
  std::string cells;
};

struct LawReport {
  std::string law;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<LawFailure> failures;
};

/// Per-trial seed derived from the run seed (splitmix64 finalizer).
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Returns nullopt when the sampled instance satisfies the law, otherwise a
/// description of the offending cells.
template <ShadowedBicategory B, class Sampler>
std::optional<std::string> check_law_once(const B& b, const Sampler& sampler, TraceLaw law, std::mt19937_64& rng) {
  switch (law) {
    case TraceLaw::independence: {
      auto s = sampler.sample_independence(rng);
      if (b.equal(trace(b, s.first, s.q, s.p, s.f), trace(b, s.second, s.q, s.p, s.f))) return std::nullopt;
      return "f = " + b.describe(s.f) + "; eta' = " + b.describe(s.second.eta);
    }
    case TraceLaw::dual: {
      auto s = sampler.sample_dual(rng);
      auto lhs = trace(b, s.pair, s.q, s.p, s.f);
      auto rhs = mirror_trace(b, s.pair, s.q, s.p, dual_of(b, s.pair, s.q, s.p, s.f));
      if (b.equal(lhs, rhs)) return std::nullopt;
      return "f = " + b.describe(s.f) + "; tr(f) = " + b.describe(lhs) + "; tr(f') = " + b.describe(rhs);
    }
    case TraceLaw::cyclic: {
      auto s = sampler.sample_cyclic(rng);
      auto fg = b.vertical(b.horizontal(s.f, b.identity(s.s)), b.horizontal(b.identity(s.q), s.g));
      auto gf = b.vertical(b.horizontal(s.g, b.identity(s.p)), b.horizontal(b.identity(s.r), s.f));
      auto t1 = trace(b, s.zw, b.compose(s.q, s.r), b.compose(s.p, s.s), fg);
      auto t2 = trace(b, s.xy, b.compose(s.r, s.q), b.compose(s.s, s.p), gf);
      auto lhs = b.shadow_compose(b.theta(s.p, s.s), t1);
      auto rhs = b.shadow_compose(t2, b.theta(s.q, s.r));
      if (b.equal(lhs, rhs)) return std::nullopt;
      return "f = " + b.describe(s.f) + "; g = " + b.describe(s.g) + "; lhs = " + b.describe(lhs) +
             "; rhs = " + b.describe(rhs);
    }
    case TraceLaw::mult: {
      auto s = sampler.sample_mult(rng);
      auto composite = compose_dual_pairs(b, s.xy, s.wz);
      auto h = b.vertical(b.horizontal(b.identity(s.xy.x), s.g), b.horizontal(s.f, b.identity(s.wz.x)));
      auto lhs = trace(b, composite, s.q, s.s, h);
      auto rhs = b.shadow_compose(trace(b, s.wz, s.p, s.s, s.g), trace(b, s.xy, s.q, s.p, s.f));
      if (b.equal(lhs, rhs)) return std::nullopt;
      return "f = " + b.describe(s.f) + "; g = " + b.describe(s.g) + "; lhs = " + b.describe(lhs) +
             "; rhs = " + b.describe(rhs);
    }
    case TraceLaw::functor: {
      auto s = sampler.sample_functor(rng);
      auto lhs = trace(b, s.chains, s.q, s.p, s.f_chains);
      auto rhs = trace(b, s.homology, s.q, s.p, s.f_homology);
      if (b.equal(lhs, rhs)) return std::nullopt;
      return "f = " + b.describe(s.f_chains) + "; H(f) = " + b.describe(s.f_homology) +
             "; chains = " + b.describe(lhs) + "; homology = " + b.describe(rhs);
    }
  }
  return "unknown law";
}

/// Runs `trials` independent trials of each law. Trial t uses its own
/// generator seeded by trial_seed(seed, t), so the report does not depend on
/// the thread count.
template <ShadowedBicategory B, class Sampler>
std::vector<LawReport> verify_trace_laws(const B& b, const Sampler& sampler, const std::vector<TraceLaw>& laws,
                                         std::size_t trials, std::uint64_t seed, unsigned threads = 0) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  std::vector<LawReport> reports;
  for (TraceLaw law : laws) {
    LawReport report{law_name(law), trials, seed, {}};
    std::vector<std::optional<std::string>> outcome(trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t t = next++; t < trials; t = next++) {
        std::mt19937_64 rng(trial_seed(seed, t));
        try {
          outcome[t] = check_law_once(b, sampler, law, rng);
        } catch (const std::exception& e) {
          outcome[t] = std::string("exception: ") + e.what();
        }
      }
    };
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(trials, 1)));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (std::size_t t = 0; t < trials; ++t)
      if (outcome[t]) report.failures.push_back({trial_seed(seed, t), *outcome[t]});
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace nielsen
