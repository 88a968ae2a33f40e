#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfdual/polynomial.hpp"
#include "hopfdual/sc_algebra.hpp"

namespace hopfdual {

enum class FamilyKind { Polynomial, Laurent, Finite, Tensor };

inline constexpr std::size_t kDefaultSearchBound = 64;

/// An algebra that is either infinite but filtered by cofinite ideals with
/// free quotients (polynomial and Laurent rings), finite free, or a tensor
/// product of two such.
class FilteredAlgebra {
 public:
  static FilteredAlgebra polynomial(const CoeffRing& R, std::vector<std::string> vars) {
    return monomial_family(FamilyKind::Polynomial, R, std::move(vars));
  }
  static FilteredAlgebra laurent(const CoeffRing& R, std::vector<std::string> vars) {
    return monomial_family(FamilyKind::Laurent, R, std::move(vars));
  }
  static FilteredAlgebra finite(const SCAlgebra& a) {
    FilteredAlgebra f(FamilyKind::Finite, a.ring());
    f.finite_ = std::make_shared<SCAlgebra>(a);
    return f;
  }
  static FilteredAlgebra tensor(const FilteredAlgebra& a, const FilteredAlgebra& b) {
    require_same_ring(a.ring(), b.ring(), "tensor family");
    FilteredAlgebra f(FamilyKind::Tensor, a.ring());
    f.left_ = std::make_shared<FilteredAlgebra>(a);
    f.right_ = std::make_shared<FilteredAlgebra>(b);
    return f;
  }

  FamilyKind kind() const { return kind_; }
  const CoeffRing& ring() const { return ring_; }
  bool is_monomial() const { return kind_ == FamilyKind::Polynomial || kind_ == FamilyKind::Laurent; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const SCAlgebra& finite_algebra() const { return *finite_; }
  const FilteredAlgebra& left() const { return *left_; }
  const FilteredAlgebra& right() const { return *right_; }

  std::string describe() const {
    std::string vs;
    for (std::size_t i = 0; i < vars_.size(); ++i) vs += (i ? "," : "") + vars_[i];
    switch (kind_) {
      case FamilyKind::Polynomial: return ring_.name() + "[" + vs + "]";
      case FamilyKind::Laurent: {
        std::string inv;
        for (std::size_t i = 0; i < vars_.size(); ++i) inv += (i ? "," : "") + vars_[i] + "," + vars_[i] + "^-1";
        return ring_.name() + "[" + inv + "]";
      }
      case FamilyKind::Finite: return "finite rank " + std::to_string(finite_->rank()) + " over " + ring_.name();
      case FamilyKind::Tensor: return "(" + left_->describe() + ") (x) (" + right_->describe() + ")";
    }
    return "";
  }

  bool operator==(const FilteredAlgebra& o) const {
    if (kind_ != o.kind_ || !(ring_ == o.ring_)) return false;
    switch (kind_) {
      case FamilyKind::Polynomial:
      case FamilyKind::Laurent: return vars_ == o.vars_;
      case FamilyKind::Finite: return *finite_ == *o.finite_;
      case FamilyKind::Tensor: return *left_ == *o.left_ && *right_ == *o.right_;
    }
    return false;
  }
  bool operator!=(const FilteredAlgebra& o) const { return !(*this == o); }

 private:
  FilteredAlgebra(FamilyKind k, const CoeffRing& R) : kind_(k), ring_(R) {}
  static FilteredAlgebra monomial_family(FamilyKind k, const CoeffRing& R, std::vector<std::string> vars) {
    if (vars.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one variable");
    FilteredAlgebra f(k, R);
    f.vars_ = std::move(vars);
    return f;
  }

  FamilyKind kind_;
  CoeffRing ring_;
  std::vector<std::string> vars_;
  std::shared_ptr<SCAlgebra> finite_;
  std::shared_ptr<FilteredAlgebra> left_, right_;
};

/// Element of a FilteredAlgebra: a Laurent polynomial, a coordinate vector,
/// or a finite sum of pure tensors left[k] (x) right[k].
struct AlgElement {
  FamilyKind kind = FamilyKind::Finite;
  std::optional<LaurentPoly> poly;
  Vector coords;
  std::vector<AlgElement> left, right;

  static AlgElement of_poly(LaurentPoly p, FamilyKind k = FamilyKind::Polynomial) {
    AlgElement e;
    e.kind = k;
    e.poly = std::move(p);
    return e;
  }
  static AlgElement of_coords(Vector v) {
    AlgElement e;
    e.coords = std::move(v);
    return e;
  }
  static AlgElement pure_tensor(const AlgElement& a, const AlgElement& b) {
    AlgElement e;
    e.kind = FamilyKind::Tensor;
    e.left.push_back(a);
    e.right.push_back(b);
    return e;
  }
};

inline AlgElement alg_one(const FilteredAlgebra& A) {
  switch (A.kind()) {
    case FamilyKind::Polynomial:
    case FamilyKind::Laurent: return AlgElement::of_poly(LaurentPoly::constant(A.ring(), A.nvars(), A.ring().one()), A.kind());
    case FamilyKind::Finite: return AlgElement::of_coords(A.finite_algebra().unit());
    case FamilyKind::Tensor: return AlgElement::pure_tensor(alg_one(A.left()), alg_one(A.right()));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family");
}

inline AlgElement alg_zero(const FilteredAlgebra& A) {
  switch (A.kind()) {
    case FamilyKind::Polynomial:
    case FamilyKind::Laurent: return AlgElement::of_poly(LaurentPoly(A.ring(), A.nvars()), A.kind());
    case FamilyKind::Finite: return AlgElement::of_coords(A.finite_algebra().zero());
    case FamilyKind::Tensor: {
      AlgElement e;
      e.kind = FamilyKind::Tensor;
      return e;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family");
}

inline AlgElement alg_poly(const FilteredAlgebra& A, const LaurentPoly& p) {
  if (!A.is_monomial()) throw Error(ErrorKind::InvalidArgument, "polynomial element for a non-polynomial family");
  if (p.nvars() != A.nvars()) throw Error(ErrorKind::ShapeMismatch, "polynomial has the wrong variable count");
  if (A.kind() == FamilyKind::Polynomial && !p.is_polynomial())
    throw Error(ErrorKind::InvalidArgument, "negative exponent in a polynomial ring");
  return AlgElement::of_poly(p, A.kind());
}

/// x_i^k in a monomial family.
inline AlgElement alg_monomial(const FilteredAlgebra& A, std::size_t var, long k) {
  return alg_poly(A, LaurentPoly::variable(A.ring(), A.nvars(), var, k));
}

inline AlgElement alg_univariate(const FilteredAlgebra& A, const UPoly& p, std::size_t var = 0) {
  return alg_poly(A, LaurentPoly::from_upoly(p, A.nvars(), var));
}

inline AlgElement alg_add(const FilteredAlgebra& A, const AlgElement& a, const AlgElement& b) {
  switch (A.kind()) {
    case FamilyKind::Polynomial:
    case FamilyKind::Laurent: return AlgElement::of_poly(*a.poly + *b.poly, A.kind());
    case FamilyKind::Finite: return AlgElement::of_coords(vec_add(a.coords, b.coords, A.ring()));
    case FamilyKind::Tensor: {
      AlgElement e = a;
      e.left.insert(e.left.end(), b.left.begin(), b.left.end());
      e.right.insert(e.right.end(), b.right.begin(), b.right.end());
      return e;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family");
}

inline AlgElement alg_scale(const FilteredAlgebra& A, const AlgElement& a, const Scalar& c) {
  switch (A.kind()) {
    case FamilyKind::Polynomial:
    case FamilyKind::Laurent: return AlgElement::of_poly(a.poly->scale(c), A.kind());
    case FamilyKind::Finite: return AlgElement::of_coords(vec_scale(a.coords, c, A.ring()));
    case FamilyKind::Tensor: {
      AlgElement e = a;
      for (auto& l : e.left) l = alg_scale(A.left(), l, c);
      return e;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family");
}

inline AlgElement alg_mul(const FilteredAlgebra& A, const AlgElement& a, const AlgElement& b) {
  switch (A.kind()) {
    case FamilyKind::Polynomial:
    case FamilyKind::Laurent: return AlgElement::of_poly(*a.poly * *b.poly, A.kind());
    case FamilyKind::Finite: return AlgElement::of_coords(A.finite_algebra().mul(a.coords, b.coords));
    case FamilyKind::Tensor: {
      AlgElement e;
      e.kind = FamilyKind::Tensor;
      for (std::size_t i = 0; i < a.left.size(); ++i)
        for (std::size_t j = 0; j < b.left.size(); ++j) {
          e.left.push_back(alg_mul(A.left(), a.left[i], b.left[j]));
          e.right.push_back(alg_mul(A.right(), a.right[i], b.right[j]));
        }
      return e;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family");
}

inline std::string alg_str(const FilteredAlgebra& A, const AlgElement& a) {
  switch (A.kind()) {
    case FamilyKind::Polynomial:
    case FamilyKind::Laurent: return a.poly->str(A.vars());
    case FamilyKind::Finite: return vec_str(a.coords);
    case FamilyKind::Tensor: {
      if (a.left.empty()) return "0";
      std::string out;
      for (std::size_t i = 0; i < a.left.size(); ++i)
        out += (i ? " + " : "") + std::string("(") + alg_str(A.left(), a.left[i]) + ")(x)(" + alg_str(A.right(), a.right[i]) + ")";
      return out;
    }
  }
  return "";
}

/// A cofinite ideal from the canonical family: one monic (Polynomial) or
/// reversible (Laurent) generator per variable, the zero ideal of a finite
/// algebra, or I (x) B + A (x) J for a tensor family.
struct IdealSpec {
  FamilyKind kind = FamilyKind::Finite;
  std::vector<UPoly> generators;
  std::shared_ptr<IdealSpec> left, right;

  static IdealSpec per_variable(FamilyKind k, std::vector<UPoly> gens) {
    IdealSpec s;
    s.kind = k;
    s.generators = std::move(gens);
    return s;
  }
  static IdealSpec zero() { return IdealSpec{}; }
  static IdealSpec tensor(const IdealSpec& l, const IdealSpec& r) {
    IdealSpec s;
    s.kind = FamilyKind::Tensor;
    s.left = std::make_shared<IdealSpec>(l);
    s.right = std::make_shared<IdealSpec>(r);
    return s;
  }

  bool operator==(const IdealSpec& o) const {
    if (kind != o.kind) return false;
    if (kind == FamilyKind::Tensor) return *left == *o.left && *right == *o.right;
    return generators == o.generators;
  }
  bool operator!=(const IdealSpec& o) const { return !(*this == o); }
};

inline std::string ideal_str(const FilteredAlgebra& A, const IdealSpec& I) {
  switch (A.kind()) {
    case FamilyKind::Polynomial:
    case FamilyKind::Laurent: {
      std::string out = "(";
      for (std::size_t i = 0; i < I.generators.size(); ++i) out += (i ? ", " : "") + I.generators[i].str(A.vars()[i]);
      return out + ")";
    }
    case FamilyKind::Finite: return "(0)";
    case FamilyKind::Tensor: return ideal_str(A.left(), *I.left) + "(x)B + A(x)" + ideal_str(A.right(), *I.right);
  }
  return "";
}

/// Is q monic with a unit constant term?
inline bool is_reversible(const UPoly& q) {
  if (!q.is_monic()) throw Error(ErrorKind::NotMonic, q.str() + " is not monic");
  return q.ring().is_unit(q.coeff(0));
}

inline void validate_ideal(const FilteredAlgebra& A, const IdealSpec& I) {
  if (I.kind != A.kind()) throw Error(ErrorKind::InvalidIdeal, "ideal does not belong to the algebra family");
  switch (A.kind()) {
    case FamilyKind::Polynomial:
    case FamilyKind::Laurent:
      if (I.generators.size() != A.nvars())
        throw Error(ErrorKind::InvalidIdeal, "need one generator per variable, got " + std::to_string(I.generators.size()));
      for (const auto& g : I.generators) {
        require_same_ring(A.ring(), g.ring(), "ideal generator");
        if (!g.is_monic()) throw Error(ErrorKind::InvalidIdeal, "generator " + g.str() + " is not monic");
        if (g.degree() < 1) throw Error(ErrorKind::InvalidIdeal, "generator " + g.str() + " has degree 0");
        if (A.kind() == FamilyKind::Laurent && !is_reversible(g))
          throw Error(ErrorKind::InvalidIdeal, "generator " + g.str() + " is not reversible");
      }
      return;
    case FamilyKind::Finite: return;
    case FamilyKind::Tensor:
      validate_ideal(A.left(), *I.left);
      validate_ideal(A.right(), *I.right);
      return;
  }
}

/// R[x]/(q) on the basis 1, x, ..., x^{n-1}.
inline SCAlgebra univariate_quotient(const UPoly& q, const std::string& var = "x") {
  const CoeffRing& R = q.ring();
  if (!q.is_monic() || q.degree() < 1) throw Error(ErrorKind::NotMonic, "quotient needs a monic generator of degree >= 1");
  const std::size_t n = static_cast<std::size_t>(q.degree());
  Vector c(n * n * n, R.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vector r = UPoly::monomial(R, R.one(), i + j).mod(q).padded(n);
      for (std::size_t k = 0; k < n; ++k) c[(i * n + j) * n + k] = r[k];
    }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(i == 0 ? "1" : monomial_str({static_cast<long>(i)}, {var}));
  return SCAlgebra::make(R, labels, c, unit_vector(R, n, 0));
}

/// x^{-1} mod q by y = -a_0^{-1} [x^{n-1} + a_{n-1} x^{n-2} + ... + a_1].
inline UPoly inverse_of_x(const UPoly& q) {
  if (!is_reversible(q)) throw Error(ErrorKind::NotReversible, q.str() + " has a non-unit constant term");
  const CoeffRing& R = q.ring();
  const long n = q.degree();
  const Scalar f = R.neg(R.inverse(q.coeff(0)));
  Vector y(static_cast<std::size_t>(n), R.zero());
  for (long j = 0; j < n; ++j) y[j] = R.mul(f, q.coeff(static_cast<std::size_t>(j + 1)));
  return UPoly(R, y);
}

inline UPoly power_mod(const UPoly& base, unsigned long e, const UPoly& q) {
  const CoeffRing& R = q.ring();
  UPoly result = UPoly::constant(R, R.one()).mod(q), b = base.mod(q);
  while (e > 0) {
    if (e & 1) result = (result * b).mod(q);
    b = (b * b).mod(q);
    e >>= 1;
  }
  return result;
}

/// q(x) = x^m (f1(x) + f2(x^{-1})) with m = deg f2; reversible whenever f1
/// and f2 are monic.
inline UPoly find_reversible_generator(const UPoly& f1, const UPoly& f2) {
  if (!f1.is_monic()) throw Error(ErrorKind::NotMonic, f1.str() + " is not monic");
  if (!f2.is_monic()) throw Error(ErrorKind::NotMonic, f2.str() + " is not monic");
  const CoeffRing& R = f1.ring();
  const std::size_t m = static_cast<std::size_t>(f2.degree());
  Vector rev(m + 1, R.zero());
  for (std::size_t j = 0; j <= m; ++j) rev[m - j] = f2.coeff(j);
  return UPoly::monomial(R, R.one(), m) * f1 + UPoly(R, rev);
}

/// The isomorphism R[x]/(q) -> R[x,x^{-1}]/(q); the Laurent side uses the
/// basis 1, x^{-1}, ..., x^{-(n-1)}.
struct LaurentIso {
  UPoly q;
  UPoly y_image;        // x^{-1} as a polynomial of degree < n
  SCAlgebra polynomial_side;
  SCAlgebra laurent_side;
  RMatrix map;          // row j: x^j in the Laurent basis
};

inline LaurentIso laurent_poly_iso(const UPoly& q) {
  if (!is_reversible(q)) throw Error(ErrorKind::NotReversible, q.str() + " has a non-unit constant term");
  const CoeffRing& R = q.ring();
  const std::size_t n = static_cast<std::size_t>(q.degree());
  const UPoly y = inverse_of_x(q);
  if ((UPoly::x(R) * y).mod(q) != UPoly::constant(R, R.one()))
    throw Error(ErrorKind::InvariantFailure, "x * y is not 1 modulo " + q.str());
  // in the variable t = x^{-1} the quotient is R[t]/(r), r(t) = a_0^{-1} t^n q(1/t)
  const Scalar a0inv = R.inverse(q.coeff(0));
  Vector rc(n + 1, R.zero());
  for (std::size_t j = 0; j <= n; ++j) rc[j] = R.mul(a0inv, q.coeff(n - j));
  const UPoly r(R, rc);
  SCAlgebra lside = univariate_quotient(r, "x^-1");
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < n; ++j) labels.push_back(j == 0 ? "1" : "x^-" + std::to_string(j));
  lside = SCAlgebra::unchecked(R, labels, lside.structure(), lside.unit());
  const UPoly x_in_t = inverse_of_x(r);
  RMatrix map(R, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vector row = power_mod(x_in_t, j, r).padded(n);
    for (std::size_t k = 0; k < n; ++k) map.set(j, k, row[k]);
  }
  SCAlgebra pside = univariate_quotient(q);
  const AxiomReport rep = algebra_map_failures(pside, lside, map);
  if (!rep.empty()) throw Error(ErrorKind::InvariantFailure, "Laurent isomorphism fails: " + report_str(rep));
  if (!is_invertible(map)) throw Error(ErrorKind::InvariantFailure, "Laurent isomorphism is not bijective");
  return {q, y, pside, lside, map};
}

/// Free quotient A/I with its reduction map.
class Truncation {
 public:
  Truncation(FilteredAlgebra owner, IdealSpec ideal) : owner_(std::move(owner)), ideal_(std::move(ideal)) {
    validate_ideal(owner_, ideal_);
    const CoeffRing& R = owner_.ring();
    switch (owner_.kind()) {
      case FamilyKind::Polynomial:
      case FamilyKind::Laurent: {
        std::optional<SCAlgebra> q;
        for (std::size_t i = 0; i < owner_.nvars(); ++i) {
          const UPoly& g = ideal_.generators[i];
          degrees_.push_back(static_cast<std::size_t>(g.degree()));
          if (owner_.kind() == FamilyKind::Laurent) inverses_.push_back(inverse_of_x(g));
          SCAlgebra qi = univariate_quotient(g, owner_.vars()[i]);
          q = q ? tensor_algebra(*q, qi) : qi;
        }
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < q->rank(); ++k) {
          const std::string m = monomial_str(exponent_of(k), owner_.vars());
          labels.push_back(m.empty() ? "1" : m);
        }
        quotient_ = std::make_shared<SCAlgebra>(SCAlgebra::unchecked(R, labels, q->structure(), q->unit()));
        break;
      }
      case FamilyKind::Finite: quotient_ = std::make_shared<SCAlgebra>(owner_.finite_algebra()); break;
      case FamilyKind::Tensor:
        left_ = std::make_shared<Truncation>(owner_.left(), *ideal_.left);
        right_ = std::make_shared<Truncation>(owner_.right(), *ideal_.right);
        quotient_ = std::make_shared<SCAlgebra>(tensor_algebra(left_->quotient(), right_->quotient()));
        break;
    }
  }

  const FilteredAlgebra& owner() const { return owner_; }
  const IdealSpec& ideal() const { return ideal_; }
  const SCAlgebra& quotient() const { return *quotient_; }
  std::size_t rank() const { return quotient_->rank(); }
  const Truncation& left() const { return *left_; }
  const Truncation& right() const { return *right_; }

  /// Exponent vector of the basis monomial with index k (first variable major).
  Exponent exponent_of(std::size_t k) const {
    Exponent e(degrees_.size(), 0);
    for (std::size_t i = degrees_.size(); i-- > 0;) {
      e[i] = static_cast<long>(k % degrees_[i]);
      k /= degrees_[i];
    }
    return e;
  }

  /// Coordinates of the class of a in A/I.
  Vector project(const AlgElement& a) const {
    const CoeffRing& R = owner_.ring();
    switch (owner_.kind()) {
      case FamilyKind::Polynomial:
      case FamilyKind::Laurent: {
        if (!a.poly) throw Error(ErrorKind::InvalidArgument, "expected a polynomial element");
        if (owner_.kind() == FamilyKind::Polynomial && !a.poly->is_polynomial())
          throw Error(ErrorKind::InvalidArgument, "negative exponent in a polynomial ring");
        Vector out(rank(), R.zero());
        for (const auto& [e, c] : a.poly->terms()) vec_axpy(out, c, monomial_coords(e), R);
        return out;
      }
      case FamilyKind::Finite:
        if (a.coords.size() != rank()) throw Error(ErrorKind::ShapeMismatch, "element has the wrong rank");
        return canon_vector(R, a.coords);
      case FamilyKind::Tensor: {
        Vector out(rank(), R.zero());
        for (std::size_t k = 0; k < a.left.size(); ++k)
          vec_axpy(out, R.one(), kron(left_->project(a.left[k]), right_->project(a.right[k]), R), R);
        return out;
      }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown family");
  }

  /// A representative in A of the k-th basis element of A/I.
  AlgElement lift(std::size_t k) const {
    const CoeffRing& R = owner_.ring();
    switch (owner_.kind()) {
      case FamilyKind::Polynomial:
      case FamilyKind::Laurent: return AlgElement::of_poly(LaurentPoly::monomial(R, exponent_of(k), R.one()), owner_.kind());
      case FamilyKind::Finite: return AlgElement::of_coords(unit_vector(R, rank(), k));
      case FamilyKind::Tensor: {
        const std::size_t nr = right_->rank();
        return AlgElement::pure_tensor(left_->lift(k / nr), right_->lift(k % nr));
      }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown family");
  }

  /// Representative of a coordinate vector.
  AlgElement lift_vector(const Vector& v) const {
    AlgElement out = alg_zero(owner_);
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!is_zero(v[k])) out = alg_add(owner_, out, alg_scale(owner_, lift(k), v[k]));
    return out;
  }

  bool contains(const AlgElement& a) const { return vec_is_zero(project(a)); }

 private:
  Vector monomial_coords(const Exponent& e) const {
    const CoeffRing& R = owner_.ring();
    Vector out{R.one()};
    for (std::size_t i = 0; i < e.size(); ++i) {
      const UPoly& q = ideal_.generators[i];
      UPoly p = e[i] >= 0 ? power_mod(UPoly::x(R), static_cast<unsigned long>(e[i]), q)
                          : power_mod(inverses_[i], static_cast<unsigned long>(-e[i]), q);
      out = kron(out, p.padded(degrees_[i]), R);
    }
    return out;
  }

  FilteredAlgebra owner_;
  IdealSpec ideal_;
  std::shared_ptr<SCAlgebra> quotient_;
  std::vector<std::size_t> degrees_;
  std::vector<UPoly> inverses_;
  std::shared_ptr<Truncation> left_, right_;
};

inline Truncation truncate(const FilteredAlgebra& A, const IdealSpec& I) { return Truncation(A, I); }

/// Is the ideal j contained in the ideal i (both from the canonical family)?
inline bool ideal_contained(const FilteredAlgebra& A, const IdealSpec& j, const IdealSpec& i) {
  validate_ideal(A, j);
  validate_ideal(A, i);
  switch (A.kind()) {
    case FamilyKind::Polynomial:
    case FamilyKind::Laurent:
      for (std::size_t v = 0; v < A.nvars(); ++v)
        if (!j.generators[v].mod(i.generators[v]).is_zero()) return false;
      return true;
    case FamilyKind::Finite: return true;
    case FamilyKind::Tensor:
      return ideal_contained(A.left(), *j.left, *i.left) && ideal_contained(A.right(), *j.right, *i.right);
  }
  return false;
}

/// An ideal contained in both: per-variable products of the generators.
inline IdealSpec product_ideal(const FilteredAlgebra& A, const IdealSpec& a, const IdealSpec& b) {
  switch (A.kind()) {
    case FamilyKind::Polynomial:
    case FamilyKind::Laurent: {
      std::vector<UPoly> g;
      for (std::size_t v = 0; v < A.nvars(); ++v) g.push_back(a.generators[v] * b.generators[v]);
      return IdealSpec::per_variable(A.kind(), g);
    }
    case FamilyKind::Finite: return IdealSpec::zero();
    case FamilyKind::Tensor:
      return IdealSpec::tensor(product_ideal(A.left(), *a.left, *b.left), product_ideal(A.right(), *a.right, *b.right));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family");
}

/// Least-degree monic element of the R[x]-ideal generated by gens, searching
/// the spans of {x^j g : deg <= D} for D up to bound.
inline std::optional<UPoly> monic_in_ideal(const CoeffRing& R, const std::vector<UPoly>& gens, std::size_t bound) {
  long start = 0;
  for (const auto& g : gens) start = std::max(start, g.degree());
  for (long D = std::max<long>(start, 0); D <= static_cast<long>(bound); ++D) {
    std::optional<UPoly> given;
    for (const auto& g : gens)
      if (!g.is_zero() && R.is_unit(g.leading()) && (!given || g.degree() < given->degree()))
        given = g.scale(R.inverse(g.leading()));
    std::vector<Vector> rows;
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      for (long j = 0; j + g.degree() <= D; ++j) {
        Vector row(static_cast<std::size_t>(D + 1), R.zero());
        for (long k = 0; k <= g.degree(); ++k) row[static_cast<std::size_t>(D - (j + k))] = g.coeff(static_cast<std::size_t>(k));
        rows.push_back(row);
      }
    }
    if (rows.empty()) return std::nullopt;
    // columns run from x^D down to 1, so each echelon row starts at its degree
    Echelon e = echelon_form(RMatrix::from_rows(R, static_cast<std::size_t>(D + 1), rows));
    std::optional<UPoly> best;
    for (std::size_t k = 0; k < e.rows.rows(); ++k) {
      const std::size_t col = e.pivots[k];
      const Scalar lead = e.rows(k, col);
      if (!R.is_unit(lead)) continue;
      Vector c(static_cast<std::size_t>(D + 1) - col, R.zero());
      for (std::size_t t = col; t <= static_cast<std::size_t>(D); ++t) c[static_cast<std::size_t>(D) - t] = e.rows(k, t);
      UPoly p = UPoly(R, c).scale(R.inverse(lead));
      if (!best || p.degree() < best->degree()) best = p;
    }
    // a supplied generator is preferred over an echelon row of the same degree
    if (given && (!best || given->degree() <= best->degree())) return given;
    if (best) return best;
  }
  return std::nullopt;
}

/// Polynomial generators x^k g of the univariate Laurent elements in variable v.
inline std::vector<UPoly> cleared_generators(const std::vector<AlgElement>& gens, std::size_t v, bool invert) {
  std::vector<UPoly> out;
  for (const auto& g : gens) {
    if (!g.poly) throw Error(ErrorKind::InvalidArgument, "ideal generators must be polynomials");
    if (!g.poly->is_univariate_in(v) || g.poly->is_zero()) continue;
    out.push_back((invert ? g.poly->inverted() : *g.poly).normalized_univariate(v).second);
  }
  return out;
}

/// An ideal I0 inside the ideal generated by gens with free quotient A/I0.
/// Only generators in a single variable are used for that variable.
inline IdealSpec p_ell_witness(const FilteredAlgebra& A, const std::vector<AlgElement>& gens,
                               std::size_t bound = kDefaultSearchBound) {
  const CoeffRing& R = A.ring();
  switch (A.kind()) {
    case FamilyKind::Finite: return IdealSpec::zero();
    case FamilyKind::Polynomial: {
      std::vector<UPoly> out;
      for (std::size_t v = 0; v < A.nvars(); ++v) {
        auto f = monic_in_ideal(R, cleared_generators(gens, v, false), bound);
        if (!f)
          throw Error(ErrorKind::NotCofinite, "no monic element in " + A.vars()[v] + " up to degree " + std::to_string(bound));
        // a unit in the ideal: any free quotient will do
        out.push_back(f->degree() < 1 ? UPoly::x(R) : *f);
      }
      return IdealSpec::per_variable(FamilyKind::Polynomial, out);
    }
    case FamilyKind::Laurent: {
      std::vector<UPoly> out;
      for (std::size_t v = 0; v < A.nvars(); ++v) {
        auto f1 = monic_in_ideal(R, cleared_generators(gens, v, false), bound);
        auto f2 = monic_in_ideal(R, cleared_generators(gens, v, true), bound);
        if (!f1 || !f2)
          throw Error(ErrorKind::NotCofinite, "no monic element in " + A.vars()[v] + " up to degree " + std::to_string(bound));
        if (f1->degree() < 1 || f2->degree() < 1)
          out.push_back(UPoly::x(R) - UPoly::constant(R, R.one()));
        else
          out.push_back(find_reversible_generator(*f1, *f2));
      }
      return IdealSpec::per_variable(FamilyKind::Laurent, out);
    }
    case FamilyKind::Tensor:
      throw Error(ErrorKind::InvalidArgument, "p_ell_witness on a tensor family: give the factor ideals");
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family");
}

}  // namespace hopfdual
