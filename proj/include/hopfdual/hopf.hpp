#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hopfdual/filtered_algebra.hpp"

namespace hopfdual {

/// Coalgebra on a free module of rank n: Delta e_i = sum d[i][j][k] e_j (x) e_k
/// stored flat at (i * n + j) * n + k, counit eps[i] = eps(e_i).
class CoalgebraData {
 public:
  CoalgebraData(const CoeffRing& R, std::vector<std::string> labels, Vector comult, Vector counit)
      : ring_(R), labels_(std::move(labels)), d_(canon_vector(R, comult)), eps_(canon_vector(R, counit)) {
    const std::size_t n = labels_.size();
    if (d_.size() != n * n * n) throw Error(ErrorKind::ShapeMismatch, "comultiplication tensor must have rank^3 entries");
    if (eps_.size() != n) throw Error(ErrorKind::ShapeMismatch, "counit must have rank entries");
  }

  /// Row i of the n x n^2 matrix is Delta(e_i).
  static CoalgebraData from_matrix(const RMatrix& delta, const Vector& counit, std::vector<std::string> labels) {
    return CoalgebraData(delta.ring(), std::move(labels), delta.entries(), counit);
  }

  const CoeffRing& ring() const { return ring_; }
  std::size_t rank() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vector& structure() const { return d_; }
  const Vector& counit() const { return eps_; }
  const Scalar& d(std::size_t i, std::size_t j, std::size_t k) const { return d_[(i * rank() + j) * rank() + k]; }

  RMatrix delta_matrix() const { return RMatrix(ring_, rank(), rank() * rank(), d_); }
  RMatrix counit_column() const { return RMatrix(ring_, rank(), 1, eps_); }
  Vector comultiply(const Vector& v) const { return vec_mul(v, delta_matrix()); }
  Scalar counit_of(const Vector& v) const { return dot(v, eps_, ring_); }

  bool operator==(const CoalgebraData& o) const { return ring_ == o.ring_ && d_ == o.d_ && eps_ == o.eps_; }

 private:
  CoeffRing ring_;
  std::vector<std::string> labels_;
  Vector d_;
  Vector eps_;
};

inline AxiomReport check_coalgebra(const CoalgebraData& c) {
  const CoeffRing& R = c.ring();
  const std::size_t n = c.rank();
  const RMatrix D = c.delta_matrix();
  const RMatrix I = RMatrix::identity(R, n);
  const RMatrix left = D * kronecker(D, I);   // (Delta (x) id) Delta
  const RMatrix right = D * kronecker(I, D);  // (id (x) Delta) Delta
  const RMatrix cl = D * kronecker(c.counit_column(), I);
  const RMatrix cr = D * kronecker(I, c.counit_column());
  AxiomReport r;
  for (std::size_t i = 0; i < n; ++i)
    if (left.row(i) != right.row(i)) {
      r.push_back({"coassociativity", {i}, "(Delta (x) id) Delta != (id (x) Delta) Delta on " + c.labels()[i]});
      break;
    }
  for (std::size_t i = 0; i < n; ++i)
    if (cl.row(i) != I.row(i) || cr.row(i) != I.row(i)) {
      r.push_back({"counit", {i}, "(eps (x) id) Delta or (id (x) eps) Delta differs from id on " + c.labels()[i]});
      break;
    }
  return r;
}

/// Product in A (x) A, index i * n + j, without building the tensor algebra
/// (which would validate A).
inline Vector tensor_square_mul(const SCAlgebra& a, const Vector& x, const Vector& y) {
  const CoeffRing& R = a.ring();
  const std::size_t n = a.rank();
  Vector out(n * n, R.zero());
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t j1 = 0; j1 < n; ++j1) {
      const Scalar& s = x[i1 * n + j1];
      if (is_zero(s)) continue;
      for (std::size_t i2 = 0; i2 < n; ++i2)
        for (std::size_t j2 = 0; j2 < n; ++j2) {
          const Scalar& t = y[i2 * n + j2];
          if (is_zero(t)) continue;
          vec_axpy(out, R.mul(s, t), kron(a.basis_product(i1, i2), a.basis_product(j1, j2), R), R);
        }
    }
  return out;
}

/// Multiplication as an n^2 x n matrix: row i * n + j is e_i e_j.
inline RMatrix multiplication_matrix(const SCAlgebra& a) {
  const std::size_t n = a.rank();
  return RMatrix(a.ring(), n * n, n, a.structure());
}

struct HopfData {
  SCAlgebra alg;
  CoalgebraData coalg;
  std::optional<RMatrix> antipode;  // row i = S(e_i)

  HopfData(SCAlgebra a, CoalgebraData c, std::optional<RMatrix> s = std::nullopt)
      : alg(std::move(a)), coalg(std::move(c)), antipode(std::move(s)) {
    require_same_ring(alg.ring(), coalg.ring(), "HopfData");
    if (alg.rank() != coalg.rank()) throw Error(ErrorKind::ShapeMismatch, "algebra and coalgebra ranks differ");
    if (antipode && (antipode->rows() != alg.rank() || antipode->cols() != alg.rank()))
      throw Error(ErrorKind::ShapeMismatch, "antipode must be rank x rank");
  }
  const CoeffRing& ring() const { return alg.ring(); }
  std::size_t rank() const { return alg.rank(); }
};

/// Failures of Delta and eps to be unital algebra maps.
inline AxiomReport check_bialgebra(const HopfData& h) {
  const SCAlgebra& a = h.alg;
  const CoeffRing& R = a.ring();
  const std::size_t n = a.rank();
  AxiomReport r;
  for (std::size_t i = 0; i < n && r.empty(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vector lhs = h.coalg.comultiply(a.basis_product(i, j));
      const Vector rhs = tensor_square_mul(a, h.coalg.comultiply(a.basis(i)), h.coalg.comultiply(a.basis(j)));
      if (lhs != rhs) {
        r.push_back({"comultiplication multiplicative", {i, j}, "Delta(e_i e_j) != Delta(e_i) Delta(e_j)"});
        break;
      }
    }
  if (h.coalg.comultiply(a.unit()) != kron(a.unit(), a.unit(), R)) r.push_back({"comultiplication unital", {}, "Delta(1) != 1 (x) 1"});
  for (std::size_t i = 0; i < n; ++i) {
    bool bad = false;
    for (std::size_t j = 0; j < n && !bad; ++j)
      if (h.coalg.counit_of(a.basis_product(i, j)) != R.mul(h.coalg.counit()[i], h.coalg.counit()[j])) {
        r.push_back({"counit multiplicative", {i, j}, "eps(e_i e_j) != eps(e_i) eps(e_j)"});
        bad = true;
      }
    if (bad) break;
  }
  if (h.coalg.counit_of(a.unit()) != R.one()) r.push_back({"counit unital", {}, "eps(1) != 1"});
  return r;
}

/// m (S (x) id) Delta = u eps = m (id (x) S) Delta on every basis element.
inline AxiomReport check_antipode(const HopfData& h, const RMatrix& s) {
  const SCAlgebra& a = h.alg;
  const CoeffRing& R = a.ring();
  const std::size_t n = a.rank();
  const RMatrix D = h.coalg.delta_matrix();
  const RMatrix M = multiplication_matrix(a);
  const RMatrix I = RMatrix::identity(R, n);
  const RMatrix left = D * kronecker(s, I) * M;
  const RMatrix right = D * kronecker(I, s) * M;
  AxiomReport r;
  for (std::size_t i = 0; i < n; ++i) {
    const Vector expect = vec_scale(a.unit(), h.coalg.counit()[i], R);
    if (left.row(i) != expect || right.row(i) != expect) {
      r.push_back({"antipode", {i}, "S(e_(1)) e_(2) or e_(1) S(e_(2)) differs from eps(e_i) 1 on " + a.labels()[i]});
      break;
    }
  }
  return r;
}

/// Full report: algebra, coalgebra, compatibility and antipode (when present).
inline AxiomReport check_hopf(const HopfData& h) {
  AxiomReport r = h.alg.check();
  for (auto& f : check_coalgebra(h.coalg)) r.push_back(std::move(f));
  for (auto& f : check_bialgebra(h)) r.push_back(std::move(f));
  if (h.antipode)
    for (auto& f : check_antipode(h, *h.antipode)) r.push_back(std::move(f));
  return r;
}

/// f * g = m_A (f (x) g) Delta_C for maps C -> A (row i = image of e_i).
inline RMatrix convolution_product(const CoalgebraData& c, const SCAlgebra& a, const RMatrix& f, const RMatrix& g) {
  require_same_ring(c.ring(), a.ring(), "convolution_product");
  if (f.rows() != c.rank() || g.rows() != c.rank() || f.cols() != a.rank() || g.cols() != a.rank())
    throw Error(ErrorKind::ShapeMismatch, "convolution needs two rank(C) x rank(A) maps");
  return c.delta_matrix() * kronecker(f, g) * multiplication_matrix(a);
}

/// u eps as a map C -> A.
inline RMatrix convolution_unit(const CoalgebraData& c, const SCAlgebra& a) {
  return c.counit_column() * RMatrix::row_vector(a.ring(), a.unit());
}

/// An antipode found by solving S * id = u eps linearly (unique when it exists).
inline std::optional<RMatrix> solve_antipode(const HopfData& h) {
  const CoeffRing& R = h.ring();
  const std::size_t n = h.rank();
  // the map S -> S * id is linear in the n^2 entries of S: column (p, q)
  // holds the image of the elementary matrix E_pq
  RMatrix sys(R, n * n, n * n);
  const RMatrix I = RMatrix::identity(R, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      RMatrix e(R, n, n);
      e.set(p, q, R.one());
      const RMatrix img = convolution_product(h.coalg, h.alg, e, I);
      for (std::size_t k = 0; k < n * n; ++k) sys.set(p * n + q, k, img.entries()[k]);
    }
  const auto sol = solve(sys, convolution_unit(h.coalg, h.alg).entries());
  if (!sol) return std::nullopt;
  RMatrix s(R, n, n, *sol);
  if (!check_antipode(h, s).empty()) return std::nullopt;
  return s;
}

inline std::vector<std::string> dual_labels(const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels) out.push_back(l + "*");
  return out;
}

/// The dual Hopf algebra on the dual basis: product = transpose of Delta,
/// coproduct = transpose of m, unit = eps, counit = evaluation at 1,
/// antipode = transpose of S.
inline HopfData convolution_dual(const HopfData& h) {
  const CoeffRing& R = h.ring();
  const std::size_t n = h.rank();
  Vector mult(n * n * n), comult(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        mult[(i * n + j) * n + k] = h.coalg.d(k, i, j);
        comult[(k * n + i) * n + j] = h.alg.c(i, j, k);
      }
  const auto labels = dual_labels(h.alg.labels());
  SCAlgebra a = SCAlgebra::unchecked(R, labels, mult, h.coalg.counit());
  CoalgebraData c(R, labels, comult, h.alg.unit());
  std::optional<RMatrix> s;
  if (h.antipode) s = h.antipode->transpose();
  return HopfData(a, c, s);
}

/// Coaction rho : M -> M (x) C, row i = rho(m_i) at index j * rank(C) + k.
struct Comodule {
  CoalgebraData coalg;
  RMatrix coaction;
  std::size_t rank() const { return coaction.rows(); }
};

inline AxiomReport check_comodule(const Comodule& m) {
  const CoeffRing& R = m.coalg.ring();
  const std::size_t k = m.rank(), n = m.coalg.rank();
  if (m.coaction.cols() != k * n) throw Error(ErrorKind::ShapeMismatch, "coaction must be rank(M) x rank(M) rank(C)");
  const RMatrix& rho = m.coaction;
  const RMatrix a = rho * kronecker(RMatrix::identity(R, k), m.coalg.delta_matrix());
  const RMatrix b = rho * kronecker(rho, RMatrix::identity(R, n));
  const RMatrix c = rho * kronecker(RMatrix::identity(R, k), m.coalg.counit_column());
  AxiomReport r;
  for (std::size_t i = 0; i < k; ++i)
    if (a.row(i) != b.row(i)) {
      r.push_back({"coaction coassociativity", {i}, "(id (x) Delta) rho != (rho (x) id) rho"});
      break;
    }
  for (std::size_t i = 0; i < k; ++i)
    if (c.row(i) != unit_vector(R, k, i)) {
      r.push_back({"coaction counit", {i}, "(id (x) eps) rho != id"});
      break;
    }
  return r;
}

/// Group algebra with g group-like and S(g) = g^{-1}.
inline HopfData group_hopf(const CoeffRing& R, const GroupTable& g) {
  const std::size_t n = g.order();
  SCAlgebra a = group_algebra(R, g);
  Vector d(n * n * n, R.zero());
  RMatrix s(R, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    d[(i * n + i) * n + i] = R.one();
    s.set(i, g.inverse(i), R.one());
  }
  return HopfData(a, CoalgebraData(R, a.labels(), d, Vector(n, R.one())), s);
}

enum class Flavor { GroupLike, Primitive };

inline const char* to_string(Flavor f) { return f == Flavor::GroupLike ? "group_like" : "primitive"; }

/// One term c * x^left (x) x^right of a coproduct.
struct CoproductTerm {
  Scalar coeff;
  Exponent left, right;
};

/// Delta(x^e) for x_i group-like (x^e (x) x^e) or primitive (binomial sum).
inline std::vector<CoproductTerm> monomial_coproduct(Flavor flavor, const Exponent& e) {
  if (flavor == Flavor::GroupLike) return {{Scalar(1), e, e}};
  std::vector<CoproductTerm> out{{Scalar(1), Exponent{}, Exponent{}}};
  for (long ei : e) {
    if (ei < 0) throw Error(ErrorKind::InvalidArgument, "primitive flavor is defined on polynomials only");
    std::vector<CoproductTerm> next;
    for (const auto& t : out)
      for (long k = 0; k <= ei; ++k) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(ei), static_cast<unsigned long>(k));
        CoproductTerm u = t;
        u.coeff *= Scalar(b);
        u.left.push_back(k);
        u.right.push_back(ei - k);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

inline Scalar monomial_counit(Flavor flavor, const Exponent& e) {
  if (flavor == Flavor::GroupLike) return Scalar(1);
  for (long v : e)
    if (v != 0) return Scalar(0);
  return Scalar(1);
}

/// S(x^e) as a Laurent polynomial: x^{-e} or (-1)^{|e|} x^e.
inline LaurentPoly monomial_antipode(const CoeffRing& R, Flavor flavor, const Exponent& e) {
  if (flavor == Flavor::GroupLike) {
    Exponent f(e);
    for (auto& v : f) v = -v;
    return LaurentPoly::monomial(R, f, R.one());
  }
  long total = 0;
  for (long v : e) total += v;
  return LaurentPoly::monomial(R, e, total % 2 ? R.neg(R.one()) : R.one());
}

/// Delta(p) projected to (A/I) (x) (A/J).
inline Vector project_coproduct(Flavor flavor, const LaurentPoly& p, const Truncation& ti, const Truncation& tj) {
  const CoeffRing& R = p.ring();
  const FilteredAlgebra& A = ti.owner();
  Vector out(ti.rank() * tj.rank(), R.zero());
  for (const auto& [e, c] : p.terms())
    for (const auto& t : monomial_coproduct(flavor, e)) {
      const Vector l = ti.project(alg_poly(A, LaurentPoly::monomial(R, t.left, R.one())));
      const Vector r = tj.project(alg_poly(A, LaurentPoly::monomial(R, t.right, R.one())));
      vec_axpy(out, R.mul(c, R.canon(t.coeff)), kron(l, r, R), R);
    }
  return out;
}

inline Scalar polynomial_counit(Flavor flavor, const LaurentPoly& p) {
  const CoeffRing& R = p.ring();
  Scalar out = R.zero();
  for (const auto& [e, c] : p.terms()) out = R.add(out, R.mul(c, monomial_counit(flavor, e)));
  return out;
}

/// Hopf (or bialgebra-only) structure on R[x_1..]/trunc with every x_i
/// group-like or primitive. Throws NotACoideal when trunc does not descend.
inline HopfData polynomial_bialgebras(const FilteredAlgebra& A, Flavor flavor, const IdealSpec& trunc) {
  if (!A.is_monomial()) throw Error(ErrorKind::InvalidArgument, "polynomial_bialgebras needs a polynomial or Laurent family");
  if (flavor == Flavor::Primitive && A.kind() == FamilyKind::Laurent)
    throw Error(ErrorKind::InvalidArgument, "the primitive flavor is not defined on Laurent polynomials");
  const CoeffRing& R = A.ring();
  Truncation t = truncate(A, trunc);
  const std::size_t n = t.rank();
  for (std::size_t v = 0; v < A.nvars(); ++v) {
    const LaurentPoly g = LaurentPoly::from_upoly(trunc.generators[v], A.nvars(), v);
    if (!vec_is_zero(project_coproduct(flavor, g, t, t)))
      throw Error(ErrorKind::NotACoideal, "Delta(" + g.str(A.vars()) + ") does not reduce to 0 modulo the induced ideal");
    if (!is_zero(polynomial_counit(flavor, g)))
      throw Error(ErrorKind::NotACoideal, "eps(" + g.str(A.vars()) + ") != 0");
  }
  RMatrix delta(R, n, n * n);
  Vector eps(n);
  for (std::size_t k = 0; k < n; ++k) {
    const LaurentPoly m = LaurentPoly::monomial(R, t.exponent_of(k), R.one());
    const Vector row = project_coproduct(flavor, m, t, t);
    for (std::size_t c = 0; c < n * n; ++c) delta.set(k, c, row[c]);
    eps[k] = polynomial_counit(flavor, m);
  }
  std::optional<RMatrix> s;
  bool invertible = true;
  for (const auto& g : trunc.generators) invertible = invertible && R.is_unit(g.coeff(0));
  if (flavor == Flavor::Primitive || invertible) {
    // x^{-1} is projected through the Laurent truncation with the same
    // generators, which has the same basis
    const FilteredAlgebra L = FilteredAlgebra::laurent(R, A.vars());
    const Truncation tl = flavor == Flavor::Primitive ? t : truncate(L, IdealSpec::per_variable(FamilyKind::Laurent, trunc.generators));
    RMatrix sm(R, n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const Vector row = tl.project(alg_poly(tl.owner(), monomial_antipode(R, flavor, t.exponent_of(k))));
      for (std::size_t c = 0; c < n; ++c) sm.set(k, c, row[c]);
    }
    s = sm;
  }
  return HopfData(t.quotient(), CoalgebraData::from_matrix(delta, eps, t.quotient().labels()), s);
}

/// A single-entry perturbation of a Hopf fixture.
struct HopfMutant {
  std::string tensor;  // "m", "u", "Delta", "eps" or "S"
  std::size_t index;
  HopfData data;
};

/// Every entry of every structure tensor shifted by +1, one at a time.
inline std::vector<HopfMutant> single_entry_mutants(const HopfData& h) {
  const CoeffRing& R = h.ring();
  const auto bump = [&](Vector v, std::size_t i) {
    v[i] = R.add(v[i], R.one());
    return v;
  };
  std::vector<HopfMutant> out;
  const auto& labels = h.alg.labels();
  for (std::size_t i = 0; i < h.alg.structure().size(); ++i)
    out.push_back({"m", i, HopfData(SCAlgebra::unchecked(R, labels, bump(h.alg.structure(), i), h.alg.unit()), h.coalg, h.antipode)});
  for (std::size_t i = 0; i < h.alg.unit().size(); ++i)
    out.push_back({"u", i, HopfData(SCAlgebra::unchecked(R, labels, h.alg.structure(), bump(h.alg.unit(), i)), h.coalg, h.antipode)});
  for (std::size_t i = 0; i < h.coalg.structure().size(); ++i)
    out.push_back({"Delta", i, HopfData(h.alg, CoalgebraData(R, labels, bump(h.coalg.structure(), i), h.coalg.counit()), h.antipode)});
  for (std::size_t i = 0; i < h.coalg.counit().size(); ++i)
    out.push_back({"eps", i, HopfData(h.alg, CoalgebraData(R, labels, h.coalg.structure(), bump(h.coalg.counit(), i)), h.antipode)});
  if (h.antipode)
    for (std::size_t i = 0; i < h.antipode->entries().size(); ++i) {
      const std::size_t n = h.rank();
      out.push_back({"S", i, HopfData(h.alg, h.coalg, RMatrix(R, n, n, bump(h.antipode->entries(), i)))});
    }
  return out;
}

struct NamedHopf {
  std::string name;
  HopfData data;
};

/// Group algebras of C2, C3, C2 x C2 and S3 over Z, Z/4, F_3 and F_5, and
/// the primitive truncation F_2[x]/(x^2).
inline std::vector<NamedHopf> shipped_hopf_fixtures() {
  std::vector<NamedHopf> out;
  const std::vector<std::pair<std::string, GroupTable>> groups{
      {"C2", cyclic_group(2)}, {"C3", cyclic_group(3)}, {"C2xC2", klein_group()}, {"S3", symmetric_group_s3()}};
  for (const CoeffRing& R : {CoeffRing::integers(), CoeffRing::integers_mod(4), CoeffRing::prime_field(3), CoeffRing::prime_field(5)})
    for (const auto& [name, g] : groups) out.push_back({R.name() + "[" + name + "]", group_hopf(R, g)});
  const CoeffRing F2 = CoeffRing::prime_field(2);
  out.push_back({"F2[x]/(x^2) primitive",
                 polynomial_bialgebras(FilteredAlgebra::polynomial(F2, {"x"}), Flavor::Primitive,
                                       IdealSpec::per_variable(FamilyKind::Polynomial, {UPoly(F2, {0, 0, 1})}))});
  return out;
}

}  // namespace hopfdual
