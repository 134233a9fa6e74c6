#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rbforge/cochain.hpp"
#include "rbforge/prelie.hpp"
#include "rbforge/rb_system.hpp"

namespace rbforge {

// ---------------------------------------------------------------------------
// Predicate flags evaluated on every valid candidate system.
// ---------------------------------------------------------------------------

enum SearchPredicate : unsigned {
  kValidSystem = 1u << 0,
  kBalanced = 1u << 1,
  kBimodule = 1u << 2,
  kSymmetricCurvature = 1u << 3,
  kCocycle = 1u << 4,
  kPrelie = 1u << 5,
  kEqualRS = 1u << 6,
};

inline const std::vector<std::pair<unsigned, const char*>>&
search_predicate_names() {
  static const std::vector<std::pair<unsigned, const char*>> names = {
      {kValidSystem, "validSystem"},   {kBalanced, "balanced"},
      {kBimodule, "bimodule"},         {kSymmetricCurvature,
                                        "symmetricCurvature"},
      {kCocycle, "cocycle"},           {kPrelie, "prelie"},
      {kEqualRS, "equalRS"},
  };
  return names;
}

struct SearchMode {
  bool exhaustive = true;
  std::uint64_t count = 0;  // random-sample size when !exhaustive
  std::uint64_t seed = 0;
};

struct SearchSpec {
  Algebra<FpField> algebra;
  SearchMode mode;
  unsigned filter_mask = 0;  // candidates must satisfy all selected flags
  std::uint64_t budget = 10'000'000;
  unsigned workers = 1;
};

// ---------------------------------------------------------------------------
// Deterministic candidate space. Exhaustive order is lexicographic over
// matrix entries (row-major, R before S, first entry most significant);
// random samples are a pure function of (seed, sample index), so the stream
// is identical no matter how many workers consume it.
// ---------------------------------------------------------------------------

class PairEnumeration {
 public:
  explicit PairEnumeration(const SearchSpec& spec)
      : algebra_(&spec.algebra), mode_(spec.mode) {
    const std::uint64_t p = spec.algebra.field().order();
    const std::size_t cells = spec.algebra.dim() * spec.algebra.dim();
    double approx = 1;
    per_operator_ = 1;
    for (std::size_t i = 0; i < cells; ++i) {
      approx *= static_cast<double>(p);
      if (approx <= 1e18) per_operator_ *= p;
    }
    if (mode_.exhaustive) {
      const double pairs = approx * approx;
      if (pairs > static_cast<double>(spec.budget))
        throw Error("exhaustive pair count p^(2 n^2) exceeds budget " +
                    std::to_string(spec.budget));
      total_ = per_operator_ * per_operator_;
    } else {
      if (mode_.count > spec.budget)
        throw Error("sample count exceeds budget");
      total_ = mode_.count;
    }
  }

  std::uint64_t total() const { return total_; }

  std::pair<LinearOperator<FpField>, LinearOperator<FpField>> at(
      std::uint64_t index) const {
    if (mode_.exhaustive)
      return {decode(index / per_operator_), decode(index % per_operator_)};
    auto rng = SplitMix64::for_index(mode_.seed, index);
    return {random_matrix(rng), random_matrix(rng)};
  }

 private:
  LinearOperator<FpField> decode(std::uint64_t code) const {
    const auto& A = *algebra_;
    const std::uint64_t p = A.field().order();
    const std::size_t n = A.dim();
    auto op = zero_operator(A);
    // row-major digits, first entry most significant
    for (std::size_t r = n; r-- > 0;)
      for (std::size_t c = n + 1; c-- > 1;) {
        op.coeff.at(r, c - 1) = A.field().nth(code % p);
        code /= p;
      }
    return op;
  }

  LinearOperator<FpField> random_matrix(SplitMix64& rng) const {
    const auto& A = *algebra_;
    auto op = zero_operator(A);
    for (std::size_t r = 0; r < A.dim(); ++r)
      for (std::size_t c = 0; c < A.dim(); ++c)
        op.coeff.at(r, c) = A.field().sample(rng);
    return op;
  }

  const Algebra<FpField>* algebra_;
  SearchMode mode_;
  std::uint64_t per_operator_ = 0;
  std::uint64_t total_ = 0;
};

/// Convenience stream wrapper matching the spec surface: the deterministic
/// sequence of operator pairs, materialized range by range.
inline std::vector<std::pair<LinearOperator<FpField>, LinearOperator<FpField>>>
enumerate_pairs(const SearchSpec& spec, std::uint64_t begin,
                std::uint64_t end) {
  PairEnumeration en(spec);
  detail::require(begin <= end && end <= en.total(),
                  "enumeration range out of bounds");
  std::vector<std::pair<LinearOperator<FpField>, LinearOperator<FpField>>> out;
  out.reserve(end - begin);
  for (std::uint64_t t = begin; t < end; ++t) out.push_back(en.at(t));
  return out;
}

// ---------------------------------------------------------------------------
// Classification of the whole candidate space: every valid system is scored
// against every predicate flag, counts are tallied per flag combination and
// the first (enumeration-order) witness of each combination is kept.
// ---------------------------------------------------------------------------

struct SearchWitness {
  std::uint64_t index = 0;
  Mat<Fp> r_matrix;
  Mat<Fp> s_matrix;
  Tensor3<Fp> omega;  // derived curvature (meaningful when valid)
  unsigned mask = 0;
};

struct ClassificationReport {
  std::uint64_t examined = 0;
  std::map<unsigned, std::uint64_t> counts;      // flag mask -> candidates
  std::map<unsigned, SearchWitness> witnesses;   // flag mask -> first seen
  double elapsed_seconds = 0;  // diagnostic only; never serialized
};

/// Predicate mask of one candidate. Invalid candidates score mask 0.
/// check_prelie re-asserts the pre-Lie characterization on every valid
/// system, so a classification run doubles as an oracle sweep.
inline unsigned classify_candidate(const Algebra<FpField>& A,
                                   const LinearOperator<FpField>& R,
                                   const LinearOperator<FpField>& S,
                                   Tensor3<Fp>* omega_out = nullptr) {
  auto defect = derive_curvature(A, R, S);
  if (omega_out) *omega_out = defect.omega_r.coeff;
  if (!defect.consistent()) return 0;
  CurvedRBSystem<FpField> sys(A, R, S, defect.omega_r);
  detail::internal_check(sys.verified(),
                         "derived curvature must yield a valid system");
  unsigned mask = kValidSystem;
  if (check_curvature_balance(A, sys.omega()).ok) mask |= kBalanced;
  if (is_bimodule_map(A, sys.omega()).ok) mask |= kBimodule;
  if (is_symmetric(sys.omega())) mask |= kSymmetricCurvature;
  if (is_cocycle(A, sys.omega()).ok) mask |= kCocycle;
  if (check_prelie(sys).prelie) mask |= kPrelie;
  if (R == S) mask |= kEqualRS;
  return mask;
}

inline ClassificationReport classify(const SearchSpec& spec) {
  PairEnumeration en(spec);
  const std::uint64_t total = en.total();
  const unsigned workers =
      std::max(1u, std::min<unsigned>(spec.workers, 256));
  const auto t0 = std::chrono::steady_clock::now();

  struct Partial {
    std::map<unsigned, std::uint64_t> counts;
    std::map<unsigned, SearchWitness> witnesses;
  };
  std::vector<Partial> parts(workers);

  auto run_range = [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
    Partial& part = parts[w];
    for (std::uint64_t t = lo; t < hi; ++t) {
      auto [R, S] = en.at(t);
      Tensor3<Fp> omega;
      unsigned mask = classify_candidate(spec.algebra, R, S, &omega);
      ++part.counts[mask];
      auto it = part.witnesses.find(mask);
      if (it == part.witnesses.end())
        part.witnesses.emplace(
            mask, SearchWitness{t, R.coeff, S.coeff, omega, mask});
    }
  };

  if (workers == 1) {
    run_range(0, 0, total);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = std::min<std::uint64_t>(w * chunk, total);
      const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, total);
      pool.emplace_back(run_range, w, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  // deterministic merge: counts sum, earliest-index witness wins
  ClassificationReport rep;
  rep.examined = total;
  for (const auto& part : parts) {
    for (const auto& [mask, cnt] : part.counts) rep.counts[mask] += cnt;
    for (const auto& [mask, wit] : part.witnesses) {
      auto it = rep.witnesses.find(mask);
      if (it == rep.witnesses.end() || wit.index < it->second.index)
        rep.witnesses.insert_or_assign(mask, wit);
    }
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

// ---------------------------------------------------------------------------
// Counterexample mining: first valid system (in enumeration order, subject
// to the spec's restriction filters) that violates one of the claims below.
// Every returned witness is re-verified before it is returned.
// ---------------------------------------------------------------------------

enum class Claim {
  StarNonAssociative,
  PrelieFails,
  LeibnizFailsWhenRneqS,
  LiteralDsquaredFails,
};

inline const char* to_string(Claim c) {
  switch (c) {
    case Claim::StarNonAssociative: return "starNonAssociative";
    case Claim::PrelieFails: return "prelieFails";
    case Claim::LeibnizFailsWhenRneqS: return "leibnizFailsWhenRneqS";
    case Claim::LiteralDsquaredFails: return "literalDsquaredFails";
  }
  return "?";
}

struct CounterexampleResult {
  SearchWitness witness;
  std::string detail;  // human-readable description of the violation
};

namespace detail {

inline bool claim_violated(const CurvedRBSystem<FpField>& sys, Claim claim,
                           std::string* why) {
  const auto& A = sys.algebra();
  switch (claim) {
    case Claim::StarNonAssociative: {
      auto chk = check_star_associativity(sys);
      if (!chk.ok && why) {
        auto [a, b, c] = *chk.witness;
        *why = "star associator nonzero at basis triple (" +
               std::to_string(a) + ", " + std::to_string(b) + ", " +
               std::to_string(c) + ")";
      }
      return !chk.ok;
    }
    case Claim::PrelieFails: {
      auto rep = check_prelie(sys);
      if (!rep.prelie && why) {
        auto [a, b, c] = *rep.defect_witness;
        *why = "pre-Lie defect nonzero at basis triple (" +
               std::to_string(a) + ", " + std::to_string(b) + ", " +
               std::to_string(c) + ")";
      }
      return !rep.prelie;
    }
    case Claim::LeibnizFailsWhenRneqS: {
      if (sys.R() == sys.S()) return false;
      for (std::size_t df = 0; df <= 1; ++df)
        for (std::size_t dg = 0; dg <= 1; ++dg)
          for (const auto& f : all_cochains(A, df, 4096))
            for (const auto& g : all_cochains(A, dg, 4096))
              if (!check_leibniz(sys, f, g).is_zero()) {
                if (why)
                  *why = "Leibniz residual nonzero for a degree-(" +
                         std::to_string(df) + ", " + std::to_string(dg) +
                         ") pair";
                return true;
              }
      return false;
    }
    case Claim::LiteralDsquaredFails: {
      for (const auto& f : all_cochains(A, 0, 4096))
        if (!check_d_squared(sys, f, DiffConvention::Literal).is_zero()) {
          if (why)
            *why = "literal-convention d^2 - [w, -] nonzero on the degree-0 "
                   "cochain " +
                   f.eval_basis({}).str();
          return true;
        }
      return false;
    }
  }
  return false;
}

}  // namespace detail

inline std::optional<CounterexampleResult> find_counterexample(
    const SearchSpec& spec, Claim claim) {
  PairEnumeration en(spec);
  for (std::uint64_t t = 0; t < en.total(); ++t) {
    auto [R, S] = en.at(t);
    Tensor3<Fp> omega;
    unsigned mask = classify_candidate(spec.algebra, R, S, &omega);
    if (!(mask & kValidSystem)) continue;
    if ((mask & spec.filter_mask) != spec.filter_mask) continue;
    CurvedRBSystem<FpField> sys(spec.algebra, R, S,
                                BilinearMap<FpField>{omega});
    std::string why;
    if (detail::claim_violated(sys, claim, &why)) {
      // witnesses must re-verify: rebuild from raw parts and recheck
      CurvedRBSystem<FpField> again(spec.algebra, R, S,
                                    BilinearMap<FpField>{omega});
      detail::internal_check(again.verified() &&
                                 detail::claim_violated(again, claim, nullptr),
                             "counterexample witness failed re-verification");
      return CounterexampleResult{
          SearchWitness{t, R.coeff, S.coeff, omega, mask}, why};
    }
  }
  return std::nullopt;
}

}  // namespace rbforge
