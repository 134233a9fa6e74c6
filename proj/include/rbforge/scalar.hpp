#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "rbforge/error.hpp"
#include "rbforge/rng.hpp"

namespace rbforge {

// ---------------------------------------------------------------------------
// Field specification
// ---------------------------------------------------------------------------

enum class FieldKind { Rationals, PrimeField };

struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  std::uint64_t p = 0;  // prime modulus, meaningful iff kind == PrimeField

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

  std::string str() const {
    return kind == FieldKind::Rationals ? "Q" : "F" + std::to_string(p);
  }
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // This base set is a proven witness set for all n < 2^64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Scalar text grammar used in every interchange file: `[-]digits[/digits]`.
struct ScalarText {
  bool negative = false;
  std::string_view numerator;
  std::string_view denominator;  // empty when no '/' present
};

inline ScalarText split_scalar_text(std::string_view text) {
  ScalarText out;
  std::string_view rest = text;
  if (!rest.empty() && rest.front() == '-') {
    out.negative = true;
    rest.remove_prefix(1);
  }
  auto slash = rest.find('/');
  out.numerator = slash == std::string_view::npos ? rest : rest.substr(0, slash);
  if (slash != std::string_view::npos)
    out.denominator = rest.substr(slash + 1);
  auto all_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  if (!all_digits(out.numerator) ||
      (slash != std::string_view::npos && !all_digits(out.denominator)))
    throw LoadError("malformed scalar '" + std::string(text) +
                    "': expected [-]digits[/digits]");
  return out;
}

inline std::uint64_t digits_mod(std::string_view digits, std::uint64_t p) {
  std::uint64_t r = 0;
  for (char c : digits)
    r = (mulmod(r, 10, p) + static_cast<std::uint64_t>(c - '0')) % p;
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Rational: exact arbitrary-precision fraction, canonical form maintained
// (lowest terms, positive denominator). Wraps GMP's mpq_class so that
// arithmetic never leaks expression templates into generic code.
// ---------------------------------------------------------------------------

class Rational {
 public:
  Rational() : v_(0) {}
  explicit Rational(long n) : v_(n) {}
  Rational(long num, unsigned long den) : v_(num, den) { v_.canonicalize(); }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  bool is_zero() const { return sgn(v_) == 0; }

  Rational operator+(const Rational& o) const { return wrap(v_ + o.v_); }
  Rational operator-(const Rational& o) const { return wrap(v_ - o.v_); }
  Rational operator*(const Rational& o) const { return wrap(v_ * o.v_); }
  Rational operator-() const { return wrap(-v_); }

  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }

  Rational inverse() const {
    if (is_zero()) throw Error("division by zero: inverse of 0 in Q");
    return wrap(1 / v_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) == 0;
  }

  std::string str() const { return v_.get_str(); }

  /// |.| as a comparable magnitude for defect reports.
  Rational abs() const { return wrap(::abs(v_)); }
  bool less_than(const Rational& o) const { return cmp(v_, o.v_) < 0; }

 private:
  static Rational wrap(mpq_class v) {
    Rational r;
    r.v_ = std::move(v);
    // mpq arithmetic keeps values canonical; construction from raw parts
    // canonicalizes in the ctor.
    return r;
  }
  mpq_class v_;
};

// ---------------------------------------------------------------------------
// Fp: canonical residue in [0, p) over a prime modulus carried by the value.
// Mixing residues of different moduli is a hard error.
// ---------------------------------------------------------------------------

class Fp {
 public:
  Fp() : v_(0), p_(0) {}  // detached zero; only valid as a placeholder
  Fp(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}

  std::uint64_t residue() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Fp operator+(const Fp& o) const {
    check(o);
    std::uint64_t s = v_ + o.v_;  // p < 2^63 so no overflow
    return Fp(s >= p_ ? s - p_ : s, p_, raw_tag{});
  }
  Fp operator-(const Fp& o) const {
    check(o);
    return Fp(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_, p_, raw_tag{});
  }
  Fp operator*(const Fp& o) const {
    check(o);
    return Fp(detail::mulmod(v_, o.v_, p_), p_, raw_tag{});
  }
  Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_, raw_tag{}); }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  Fp inverse() const {
    if (v_ == 0)
      throw Error("division by zero: inverse of 0 in F" + std::to_string(p_));
    return Fp(detail::powmod(v_, p_ - 2, p_), p_, raw_tag{});
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    a.check(b);
    return a.v_ == b.v_;
  }

  std::string str() const { return std::to_string(v_); }

  /// Magnitude order for defect reports: canonical residue order.
  Fp abs() const { return *this; }
  bool less_than(const Fp& o) const {
    check(o);
    return v_ < o.v_;
  }

 private:
  struct raw_tag {};
  Fp(std::uint64_t v, std::uint64_t p, raw_tag) : v_(v), p_(p) {}
  void check(const Fp& o) const {
    if (p_ != o.p_)
      throw Error("field mismatch: F" + std::to_string(p_) + " vs F" +
                  std::to_string(o.p_));
  }
  std::uint64_t v_;
  std::uint64_t p_;
};

// ---------------------------------------------------------------------------
// Field handles: mint constants, parse the scalar grammar, sample.
// ---------------------------------------------------------------------------

class QField {
 public:
  using Scalar = Rational;
  static constexpr bool finite = false;

  FieldSpec spec() const { return {FieldKind::Rationals, 0}; }
  Rational zero() const { return Rational(); }
  Rational one() const { return Rational(1); }
  Rational from_int(long n) const { return Rational(n); }

  /// Parse `[-]digits[/digits]`; the result is canonical.
  Rational parse(std::string_view text) const {
    auto st = detail::split_scalar_text(text);
    mpz_class num(std::string(st.numerator), 10);
    mpz_class den = 1;
    if (!st.denominator.empty()) {
      den = mpz_class(std::string(st.denominator), 10);
      if (sgn(den) == 0)
        throw LoadError("zero denominator in scalar '" + std::string(text) +
                        "'");
    }
    if (st.negative) num = -num;
    return Rational(mpq_class(num, den));
  }

  /// Small random fraction; deterministic function of the generator state.
  Rational sample(SplitMix64& rng) const {
    long num = static_cast<long>(rng.below(9)) - 4;  // -4..4
    unsigned long den = static_cast<unsigned long>(rng.below(4)) + 1;
    return Rational(num, den);
  }

  friend bool operator==(const QField&, const QField&) { return true; }
};

class FpField {
 public:
  using Scalar = Fp;
  static constexpr bool finite = true;

  explicit FpField(std::uint64_t p) : p_(p) {
    if (p >= (1ULL << 62) || !detail::is_prime_u64(p))
      throw LoadError("modulus " + std::to_string(p) +
                      " is not a supported prime");
  }

  FieldSpec spec() const { return {FieldKind::PrimeField, p_}; }
  std::uint64_t order() const { return p_; }
  Fp zero() const { return Fp(0, p_); }
  Fp one() const { return Fp(1, p_); }
  Fp from_int(long n) const {
    if (n >= 0) return Fp(static_cast<std::uint64_t>(n), p_);
    std::uint64_t m = static_cast<std::uint64_t>(-(n + 1)) + 1;  // |n|
    return -Fp(m, p_);
  }
  /// The i-th element in the canonical enumeration 0, 1, ..., p-1.
  Fp nth(std::uint64_t i) const { return Fp(i, p_); }

  Fp parse(std::string_view text) const {
    auto st = detail::split_scalar_text(text);
    std::uint64_t num = detail::digits_mod(st.numerator, p_);
    if (!st.denominator.empty()) {
      std::uint64_t den = detail::digits_mod(st.denominator, p_);
      if (den == 0)
        throw LoadError("denominator of '" + std::string(text) +
                        "' is not invertible mod " + std::to_string(p_));
      num = detail::mulmod(num, Fp(den, p_).inverse().residue(), p_);
    }
    Fp r(num, p_);
    return st.negative ? -r : r;
  }

  Fp sample(SplitMix64& rng) const { return Fp(rng.below(p_), p_); }

  friend bool operator==(const FpField& a, const FpField& b) {
    return a.p_ == b.p_;
  }

 private:
  std::uint64_t p_;
};

template <class F>
concept Field = requires(const F f, const typename F::Scalar a,
                         const typename F::Scalar b, std::string_view text,
                         SplitMix64& rng) {
  { f.spec() } -> std::same_as<FieldSpec>;
  { f.zero() } -> std::same_as<typename F::Scalar>;
  { f.one() } -> std::same_as<typename F::Scalar>;
  { f.from_int(long{}) } -> std::same_as<typename F::Scalar>;
  { f.parse(text) } -> std::same_as<typename F::Scalar>;
  { f.sample(rng) } -> std::same_as<typename F::Scalar>;
  { a + b } -> std::same_as<typename F::Scalar>;
  { a - b } -> std::same_as<typename F::Scalar>;
  { a* b } -> std::same_as<typename F::Scalar>;
  { -a } -> std::same_as<typename F::Scalar>;
  { a.inverse() } -> std::same_as<typename F::Scalar>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
  { a.str() } -> std::same_as<std::string>;
};

static_assert(Field<QField>);
static_assert(Field<FpField>);

}  // namespace rbforge
