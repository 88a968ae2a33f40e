#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hopfdual/matrix.hpp"

namespace hopfdual {

/// Dense univariate polynomial, coefficients from degree 0 upwards, no
/// trailing zeros.
class UPoly {
 public:
  explicit UPoly(const CoeffRing& ring) : ring_(ring) {}
  UPoly(const CoeffRing& ring, Vector coeffs) : ring_(ring), c_(std::move(coeffs)) { normalize(); }
  UPoly(const CoeffRing& ring, std::initializer_list<long> coeffs) : ring_(ring) {
    for (long v : coeffs) c_.push_back(Scalar(v));
    normalize();
  }

  static UPoly x(const CoeffRing& R) { return monomial(R, R.one(), 1); }
  static UPoly constant(const CoeffRing& R, const Scalar& a) { return UPoly(R, Vector{a}); }
  static UPoly monomial(const CoeffRing& R, const Scalar& a, std::size_t deg) {
    Vector c(deg + 1, R.zero());
    c[deg] = a;
    return UPoly(R, c);
  }

  const CoeffRing& ring() const { return ring_; }
  const Vector& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : ring_.zero(); }
  Scalar leading() const { return c_.empty() ? ring_.zero() : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == ring_.one(); }

  UPoly operator+(const UPoly& o) const {
    Vector r(std::max(c_.size(), o.c_.size()), ring_.zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = ring_.add(coeff(i), o.coeff(i));
    return UPoly(ring_, r);
  }
  UPoly operator-() const { return scale(ring_.neg(ring_.one())); }
  UPoly operator-(const UPoly& o) const { return *this + (-o); }
  UPoly operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly(ring_);
    Vector r(c_.size() + o.c_.size() - 1, ring_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = ring_.add(r[i + j], ring_.mul(c_[i], o.c_[j]));
    return UPoly(ring_, r);
  }
  UPoly scale(const Scalar& a) const {
    Vector r(c_);
    for (auto& v : r) v = ring_.mul(a, v);
    return UPoly(ring_, r);
  }
  bool operator==(const UPoly& o) const { return ring_ == o.ring_ && c_ == o.c_; }
  bool operator!=(const UPoly& o) const { return !(*this == o); }

  Scalar eval(const Scalar& t) const {
    Scalar acc = ring_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = ring_.add(ring_.mul(acc, t), c_[i]);
    return acc;
  }

  /// Quotient and remainder by a polynomial with unit leading coefficient.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero() || !ring_.is_unit(d.leading()))
      throw Error(ErrorKind::NotMonic, "division needs a unit leading coefficient, divisor " + d.str());
    const Scalar inv = ring_.inverse(d.leading());
    Vector r(c_);
    const long dd = d.degree();
    Vector q(std::max<long>(degree() - dd + 1, 0), ring_.zero());
    for (long i = degree(); i >= dd; --i) {
      const Scalar t = ring_.mul(r[i], inv);
      if (hopfdual::is_zero(t)) continue;
      q[i - dd] = t;
      for (long j = 0; j <= dd; ++j) r[i - dd + j] = ring_.sub(r[i - dd + j], ring_.mul(t, d.c_[j]));
    }
    return {UPoly(ring_, q), UPoly(ring_, r)};
  }
  UPoly mod(const UPoly& d) const { return divmod(d).second; }

  /// Coefficients padded or checked to exactly n entries (for degree < n).
  Vector padded(std::size_t n) const {
    if (c_.size() > n) throw Error(ErrorKind::ShapeMismatch, "polynomial " + str() + " does not fit in " + std::to_string(n) + " coefficients");
    Vector r(c_);
    r.resize(n, ring_.zero());
    return r;
  }

  std::string str(const std::string& var = "x") const;

 private:
  void normalize() {
    for (auto& v : c_) v = ring_.canon(v);
    while (!c_.empty() && hopfdual::is_zero(c_.back())) c_.pop_back();
  }
  CoeffRing ring_;
  Vector c_;
};

using Exponent = std::vector<long>;

inline std::string monomial_str(const Exponent& e, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[i];
    if (e[i] != 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

/// Appends "c*m" with sign handling to a sum being printed.
inline void append_term(std::string& out, const Scalar& c, const std::string& mono) {
  Scalar a = c;
  const bool neg = sgn(a) < 0;
  if (neg) a = -a;
  if (out.empty())
    out = neg ? "-" : "";
  else
    out += neg ? " - " : " + ";
  if (mono.empty())
    out += a.get_str();
  else if (a == 1)
    out += mono;
  else
    out += a.get_str() + "*" + mono;
}

inline std::string UPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (hopfdual::is_zero(c_[i])) continue;
    append_term(out, c_[i], monomial_str(Exponent{static_cast<long>(i)}, {var}));
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const UPoly& p) { return os << p.str(); }

/// Sparse Laurent polynomial in a fixed number of variables. Polynomials
/// are the Laurent polynomials with no negative exponents.
class LaurentPoly {
 public:
  LaurentPoly(const CoeffRing& ring, std::size_t nvars) : ring_(ring), nvars_(nvars) {}

  static LaurentPoly constant(const CoeffRing& R, std::size_t nvars, const Scalar& a) {
    LaurentPoly p(R, nvars);
    p.add_term(Exponent(nvars, 0), a);
    return p;
  }
  static LaurentPoly monomial(const CoeffRing& R, const Exponent& e, const Scalar& a) {
    LaurentPoly p(R, e.size());
    p.add_term(e, a);
    return p;
  }
  static LaurentPoly variable(const CoeffRing& R, std::size_t nvars, std::size_t i, long power = 1) {
    Exponent e(nvars, 0);
    e[i] = power;
    return monomial(R, e, R.one());
  }
  static LaurentPoly from_upoly(const UPoly& p, std::size_t nvars, std::size_t var) {
    LaurentPoly out(p.ring(), nvars);
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
      Exponent e(nvars, 0);
      e[var] = static_cast<long>(k);
      out.add_term(e, p.coeffs()[k]);
    }
    return out;
  }

  const CoeffRing& ring() const { return ring_; }
  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const Scalar& a) {
    if (e.size() != nvars_) throw Error(ErrorKind::ShapeMismatch, "exponent length differs from variable count");
    Scalar& slot = terms_[e];
    slot = ring_.add(slot, a);
    if (hopfdual::is_zero(slot)) terms_.erase(e);
  }

  LaurentPoly operator+(const LaurentPoly& o) const {
    check(o);
    LaurentPoly r(*this);
    for (const auto& [e, a] : o.terms_) r.add_term(e, a);
    return r;
  }
  LaurentPoly operator-() const { return scale(ring_.neg(ring_.one())); }
  LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }
  LaurentPoly operator*(const LaurentPoly& o) const {
    check(o);
    LaurentPoly r(ring_, nvars_);
    for (const auto& [e1, a1] : terms_)
      for (const auto& [e2, a2] : o.terms_) {
        Exponent e(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
        r.add_term(e, ring_.mul(a1, a2));
      }
    return r;
  }
  LaurentPoly scale(const Scalar& a) const {
    LaurentPoly r(ring_, nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, ring_.mul(a, c));
    return r;
  }
  LaurentPoly pow(unsigned k) const {
    LaurentPoly r = constant(ring_, nvars_, ring_.one());
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }
  bool operator==(const LaurentPoly& o) const { return ring_ == o.ring_ && nvars_ == o.nvars_ && terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  bool is_polynomial() const {
    for (const auto& [e, a] : terms_)
      for (long v : e)
        if (v < 0) return false;
    return true;
  }

  /// Smallest exponent of variable i (0 for the zero polynomial).
  long min_exponent(std::size_t i) const {
    long m = 0;
    bool first = true;
    for (const auto& [e, a] : terms_) {
      if (first || e[i] < m) m = e[i];
      first = false;
    }
    return m;
  }

  /// Does only variable i occur?
  bool is_univariate_in(std::size_t i) const {
    for (const auto& [e, a] : terms_)
      for (std::size_t j = 0; j < nvars_; ++j)
        if (j != i && e[j] != 0) return false;
    return true;
  }

  /// x^{-k} * p with p a polynomial and k minimal, for the univariate case:
  /// returns (k, p).
  std::pair<long, UPoly> normalized_univariate(std::size_t i) const {
    if (!is_univariate_in(i)) throw Error(ErrorKind::InvalidArgument, "not univariate in variable " + std::to_string(i));
    const long k = std::min<long>(0, min_exponent(i));
    Vector c;
    for (const auto& [e, a] : terms_) {
      const std::size_t d = static_cast<std::size_t>(e[i] - k);
      if (c.size() <= d) c.resize(d + 1, ring_.zero());
      c[d] = a;
    }
    return {-k, UPoly(ring_, c)};
  }

  /// x_i -> x_i^{-1} for every variable.
  LaurentPoly inverted() const {
    LaurentPoly r(ring_, nvars_);
    for (const auto& [e, a] : terms_) {
      Exponent f(e);
      for (auto& v : f) v = -v;
      r.add_term(f, a);
    }
    return r;
  }

  std::string str(const std::vector<std::string>& vars) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) append_term(out, it->second, monomial_str(it->first, vars));
    return out;
  }

 private:
  void check(const LaurentPoly& o) const {
    require_same_ring(ring_, o.ring_, "LaurentPoly");
    if (nvars_ != o.nvars_) throw Error(ErrorKind::ShapeMismatch, "Laurent polynomials in different variable counts");
  }
  CoeffRing ring_;
  std::size_t nvars_;
  std::map<Exponent, Scalar> terms_;
};

/// det(t I - m) by Berkowitz's division-free recursion, valid over any
/// commutative coefficient ring.
inline UPoly characteristic_polynomial(const RMatrix& m) {
  const CoeffRing& R = m.ring();
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorKind::ShapeMismatch, "characteristic polynomial of a non-square matrix");
  if (n == 0) return UPoly::constant(R, R.one());
  // v holds the coefficients of the leading r x r block, highest degree first
  Vector v{R.one(), R.neg(m(0, 0))};
  for (std::size_t r = 1; r < n; ++r) {
    Vector t{R.one(), R.neg(m(r, r))};
    Vector x(r);
    for (std::size_t i = 0; i < r; ++i) x[i] = m(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      Scalar s = R.zero();
      for (std::size_t i = 0; i < r; ++i) s = R.add(s, R.mul(m(r, i), x[i]));
      t.push_back(R.neg(s));
      Vector y(r, R.zero());
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) y[i] = R.add(y[i], R.mul(m(i, j), x[j]));
      x = std::move(y);
    }
    Vector w(r + 2, R.zero());
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < v.size(); ++j) w[i] = R.add(w[i], R.mul(t[i - j], v[j]));
    v = std::move(w);
  }
  return UPoly(R, Vector(v.rbegin(), v.rend()));
}

}  // namespace hopfdual
