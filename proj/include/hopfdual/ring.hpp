#pragma once

// Exact coefficient rings: Z, Z/n, Q and F_p. Every element is carried as an
// mpq_class and kept in the ring's canonical representative (integers for Z,
// residues 0..n-1 for the modular rings, reduced fractions for Q).

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace hopfdual {

using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

enum class ErrorKind {
  UnsupportedRing,
  ShapeMismatch,
  RingMismatch,
  NotAUnit,
  NotAssociative,
  UnitLawFails,
  NotAGroup,
  InvalidIdeal,
  NotMonic,
  NotReversible,
  NotAutomorphism,
  NotAction,
  NotCofinite,
  NotInjective,
  HypothesisFailed,
  NotACoideal,
  NotContained,
  OwnerMismatch,
  PrefixTooShort,
  NoBialgebraFlavor,
  NoAntipode,
  ProbeInsufficient,
  NotRational,
  InvariantFailure,
  AntipodeNotBijective,
  NoIsomorphismFound,
  ParseError,
  UnknownReference,
  InvalidArgument,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::UnitLawFails: return "UnitLawFails";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::InvalidIdeal: return "InvalidIdeal";
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::NotReversible: return "NotReversible";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::NotAction: return "NotAction";
    case ErrorKind::NotCofinite: return "NotCofinite";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::NotACoideal: return "NotACoideal";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::OwnerMismatch: return "OwnerMismatch";
    case ErrorKind::PrefixTooShort: return "PrefixTooShort";
    case ErrorKind::NoBialgebraFlavor: return "NoBialgebraFlavor";
    case ErrorKind::NoAntipode: return "NoAntipode";
    case ErrorKind::ProbeInsufficient: return "ProbeInsufficient";
    case ErrorKind::NotRational: return "NotRational";
    case ErrorKind::InvariantFailure: return "InvariantFailure";
    case ErrorKind::AntipodeNotBijective: return "AntipodeNotBijective";
    case ErrorKind::NoIsomorphismFound: return "NoIsomorphismFound";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownReference: return "UnknownReference";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Library error. `kind()` identifies the failure class; the message carries
/// the witness in human-readable form.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string to_string(const Scalar& s) { return s.get_str(); }

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

inline bool is_integral(const Scalar& s) { return s.get_den() == 1; }

inline mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline mpz_class mod_nonneg(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool is_probable_prime(const mpz_class& p) {
  return mpz_probab_prime_p(p.get_mpz_t(), 30) > 0;
}

enum class RingKind { Integers, IntegersMod, Rationals, PrimeField };

class CoeffRing {
 public:
  CoeffRing() = default;

  static CoeffRing integers() { return CoeffRing(RingKind::Integers, 0); }
  static CoeffRing rationals() { return CoeffRing(RingKind::Rationals, 0); }

  static CoeffRing integers_mod(const mpz_class& n) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "Zmod requires n >= 2, got " + n.get_str());
    return CoeffRing(RingKind::IntegersMod, n);
  }

  static CoeffRing prime_field(const mpz_class& p) {
    if (p < 2 || !is_probable_prime(p))
      throw Error(ErrorKind::InvalidArgument, "Fp requires a prime, got " + p.get_str());
    return CoeffRing(RingKind::PrimeField, p);
  }

  RingKind kind() const { return kind_; }
  const mpz_class& modulus() const { return modulus_; }

  /// Additive characteristic (0 for Z and Q).
  mpz_class characteristic() const { return modulus_; }

  bool is_field() const { return kind_ == RingKind::Rationals || kind_ == RingKind::PrimeField; }
  bool is_pid() const { return kind_ != RingKind::IntegersMod; }
  bool is_modular() const { return kind_ == RingKind::IntegersMod || kind_ == RingKind::PrimeField; }

  std::string name() const {
    switch (kind_) {
      case RingKind::Integers: return "Z";
      case RingKind::Rationals: return "Q";
      case RingKind::IntegersMod: return "Zmod " + modulus_.get_str();
      case RingKind::PrimeField: return "Fp " + modulus_.get_str();
    }
    return "?";
  }

  bool operator==(const CoeffRing& o) const { return kind_ == o.kind_ && modulus_ == o.modulus_; }
  bool operator!=(const CoeffRing& o) const { return !(*this == o); }

  Scalar canon(const Scalar& a) const {
    switch (kind_) {
      case RingKind::Rationals: {
        Scalar r = a;
        r.canonicalize();
        return r;
      }
      case RingKind::Integers:
        if (!is_integral(a)) throw Error(ErrorKind::InvalidArgument, a.get_str() + " is not an integer");
        return a;
      case RingKind::IntegersMod:
      case RingKind::PrimeField: {
        if (is_integral(a)) return Scalar(mod_nonneg(a.get_num(), modulus_));
        // a fraction u/v is admissible when v is invertible modulo n
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), a.get_den_mpz_t(), modulus_.get_mpz_t()) == 0)
          throw Error(ErrorKind::NotAUnit, a.get_str() + " has a non-invertible denominator");
        return Scalar(mod_nonneg(a.get_num() * inv, modulus_));
      }
    }
    return a;
  }

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return canon(Scalar(1)); }
  Scalar from_int(long v) const { return canon(Scalar(v)); }

  Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
  Scalar neg(const Scalar& a) const { return reduce(-a); }

  bool is_unit(const Scalar& a) const {
    switch (kind_) {
      case RingKind::Integers: return a == 1 || a == -1;
      case RingKind::Rationals: return !is_zero(a);
      case RingKind::IntegersMod:
      case RingKind::PrimeField: {
        mpz_class g;
        mpz_class num = a.get_num();
        mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), modulus_.get_mpz_t());
        return g == 1;
      }
    }
    return false;
  }

  Scalar inverse(const Scalar& a) const {
    if (!is_unit(a)) throw Error(ErrorKind::NotAUnit, a.get_str() + " is not a unit in " + name());
    switch (kind_) {
      case RingKind::Integers: return a;
      case RingKind::Rationals: return Scalar(1) / a;
      default: {
        mpz_class inv;
        mpz_class num = a.get_num();
        mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), modulus_.get_mpz_t());
        return Scalar(inv);
      }
    }
  }

  // --- PID operations (Z, Q, F_p) ---------------------------------------

  /// Returns (g, s, t) with s*a + t*b = g, g the normalized gcd.
  std::tuple<Scalar, Scalar, Scalar> gcdext(const Scalar& a, const Scalar& b) const {
    require_pid("gcdext");
    if (kind_ == RingKind::Integers) {
      mpz_class g, s, t;
      mpz_class an = a.get_num(), bn = b.get_num();
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), an.get_mpz_t(), bn.get_mpz_t());
      return {Scalar(g), Scalar(s), Scalar(t)};
    }
    if (!is_zero(a)) return {one(), inverse(a), zero()};
    if (!is_zero(b)) return {one(), zero(), inverse(b)};
    return {zero(), one(), zero()};
  }

  /// Does a divide b?
  bool divides(const Scalar& a, const Scalar& b) const {
    if (is_zero(b)) return true;
    if (is_zero(a)) return false;
    switch (kind_) {
      case RingKind::Integers: return mpz_divisible_p(b.get_num_mpz_t(), a.get_num_mpz_t()) != 0;
      case RingKind::Rationals:
      case RingKind::PrimeField: return true;
      case RingKind::IntegersMod: {
        // a | b in Z/n iff gcd(a, n) | b
        mpz_class g;
        mpz_class an = a.get_num();
        mpz_gcd(g.get_mpz_t(), an.get_mpz_t(), modulus_.get_mpz_t());
        return mpz_divisible_p(b.get_num_mpz_t(), g.get_mpz_t()) != 0;
      }
    }
    return false;
  }

  /// b / a, assuming a | b in a PID.
  Scalar exact_div(const Scalar& b, const Scalar& a) const {
    require_pid("exact_div");
    if (is_zero(a)) throw Error(ErrorKind::InvalidArgument, "division by zero");
    if (kind_ == RingKind::Integers) {
      if (!divides(a, b)) throw Error(ErrorKind::InvalidArgument, a.get_str() + " does not divide " + b.get_str());
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), b.get_num_mpz_t(), a.get_num_mpz_t());
      return Scalar(q);
    }
    return mul(b, inverse(a));
  }

  /// Unit u such that u*a is the normalized associate of a.
  Scalar normalizing_unit(const Scalar& a) const {
    if (is_zero(a)) return one();
    switch (kind_) {
      case RingKind::Integers: return sgn(a) < 0 ? Scalar(-1) : Scalar(1);
      case RingKind::Rationals:
      case RingKind::PrimeField: return inverse(a);
      case RingKind::IntegersMod: {
        // normalize to gcd(a, n): find unit u with u*a = gcd(a, n) mod n
        mpz_class g;
        mpz_class an = a.get_num();
        mpz_gcd(g.get_mpz_t(), an.get_mpz_t(), modulus_.get_mpz_t());
        mpz_class m = modulus_ / g;
        mpz_class ag = an / g, u;
        mpz_invert(u.get_mpz_t(), ag.get_mpz_t(), m.get_mpz_t());
        // lift u to a unit modulo n
        while (true) {
          mpz_class gg;
          mpz_gcd(gg.get_mpz_t(), u.get_mpz_t(), modulus_.get_mpz_t());
          if (gg == 1) break;
          u += m;
        }
        return Scalar(mod_nonneg(u, modulus_));
      }
    }
    return one();
  }

  /// Canonical remainder of a modulo the normalized pivot p (PIDs).
  Scalar rem(const Scalar& a, const Scalar& p) const {
    if (is_zero(p)) return a;
    if (kind_ == RingKind::Integers) return Scalar(mod_nonneg(a.get_num(), p.get_num()));
    return zero();
  }

  /// Euclidean size used for pivot selection.
  mpz_class size(const Scalar& a) const {
    if (is_zero(a)) return 0;
    if (kind_ == RingKind::Integers) return abs(a.get_num());
    return 1;
  }

  std::string format(const Scalar& a) const { return a.get_str(); }

 private:
  CoeffRing(RingKind k, mpz_class m) : kind_(k), modulus_(std::move(m)) {}

  Scalar reduce(Scalar v) const {
    switch (kind_) {
      case RingKind::Rationals: v.canonicalize(); return v;
      case RingKind::Integers: return v;
      default: return canon(v);
    }
  }

  void require_pid(const char* op) const {
    if (!is_pid()) throw Error(ErrorKind::UnsupportedRing, std::string(op) + " needs a PID, got " + name());
  }

  RingKind kind_ = RingKind::Integers;
  mpz_class modulus_ = 0;
};

inline void require_same_ring(const CoeffRing& a, const CoeffRing& b, const char* where) {
  if (a != b) throw Error(ErrorKind::RingMismatch, std::string(where) + ": " + a.name() + " vs " + b.name());
}

/// Parses "Z", "Q", "Zmod n", "Fp p" and the shorthands "Zn" / "Fp" (e.g. Z4, F5).
inline CoeffRing parse_ring(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ' && c != '\t') t += c;
  if (t == "Z") return CoeffRing::integers();
  if (t == "Q") return CoeffRing::rationals();
  auto number_after = [&](std::size_t pos) {
    std::string digits = t.substr(pos);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::ParseError, "bad ring '" + text + "'");
    return mpz_class(digits);
  };
  if (t.rfind("Zmod", 0) == 0) return CoeffRing::integers_mod(number_after(4));
  if (t.rfind("Fp", 0) == 0) return CoeffRing::prime_field(number_after(2));
  if (t.size() > 1 && t[0] == 'Z') return CoeffRing::integers_mod(number_after(1));
  if (t.size() > 1 && t[0] == 'F') return CoeffRing::prime_field(number_after(1));
  throw Error(ErrorKind::ParseError, "unknown ring '" + text + "'");
}

}  // namespace hopfdual
