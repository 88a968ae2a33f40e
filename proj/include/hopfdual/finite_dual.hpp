#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hopfdual/fp_module.hpp"
#include "hopfdual/hopf.hpp"

namespace hopfdual {

/// Element of the finite dual: a functional on the free quotient A/I, given
/// by its values on the truncation basis.
class DualElement {
 public:
  DualElement(const FilteredAlgebra& owner, const IdealSpec& ideal, Vector functional)
      : trunc_(std::make_shared<Truncation>(owner, ideal)), f_(std::move(functional)) {
    if (f_.size() != trunc_->rank())
      throw Error(ErrorKind::ShapeMismatch, "functional needs " + std::to_string(trunc_->rank()) + " values");
    f_ = canon_vector(owner.ring(), f_);
  }

  const FilteredAlgebra& owner() const { return trunc_->owner(); }
  const IdealSpec& ideal() const { return trunc_->ideal(); }
  const Vector& functional() const { return f_; }
  const Truncation& truncation() const { return *trunc_; }
  const CoeffRing& ring() const { return owner().ring(); }

  Scalar operator()(const AlgElement& a) const { return dot(trunc_->project(a), f_, ring()); }
  /// Value on the class of a coordinate vector of A/I.
  Scalar on_coords(const Vector& v) const { return dot(v, f_, ring()); }

  std::string str() const {
    std::ostringstream os;
    os << "[" << ideal_str(owner(), ideal()) << "] " << vec_str(f_);
    return os.str();
  }

 private:
  std::shared_ptr<const Truncation> trunc_;
  Vector f_;
};

inline DualElement dual_element(const FilteredAlgebra& A, const IdealSpec& I, const Vector& functional) {
  return DualElement(A, I, functional);
}

/// Evaluation at a point: ideal (x_v - alpha_v) per variable, value 1.
inline DualElement evaluation_functional(const FilteredAlgebra& A, const Vector& point) {
  if (!A.is_monomial() || point.size() != A.nvars())
    throw Error(ErrorKind::InvalidArgument, "evaluation needs one value per variable of a polynomial or Laurent family");
  const CoeffRing& R = A.ring();
  std::vector<UPoly> gens;
  for (const auto& a : point) gens.push_back(UPoly::x(R) - UPoly::constant(R, a));
  return DualElement(A, IdealSpec::per_variable(A.kind(), gens), {R.one()});
}

/// The same functional on the finer quotient A/J, J contained in f's ideal.
inline DualElement refine(const DualElement& f, const IdealSpec& finer) {
  if (!ideal_contained(f.owner(), finer, f.ideal()))
    throw Error(ErrorKind::NotContained, ideal_str(f.owner(), finer) + " is not contained in " + ideal_str(f.owner(), f.ideal()));
  const Truncation t(f.owner(), finer);
  Vector out(t.rank());
  for (std::size_t k = 0; k < t.rank(); ++k) out[k] = f(t.lift(k));
  return DualElement(f.owner(), finer, out);
}

inline void require_same_owner(const DualElement& f, const DualElement& g) {
  if (f.owner() != g.owner()) throw Error(ErrorKind::OwnerMismatch, "dual elements of different algebras");
}

inline bool dual_equal(const DualElement& f, const DualElement& g) {
  require_same_owner(f, g);
  if (f.ideal() == g.ideal()) return f.functional() == g.functional();
  const IdealSpec common = product_ideal(f.owner(), f.ideal(), g.ideal());
  return refine(f, common).functional() == refine(g, common).functional();
}

inline DualElement dual_add(const DualElement& f, const DualElement& g) {
  require_same_owner(f, g);
  const IdealSpec common = f.ideal() == g.ideal() ? f.ideal() : product_ideal(f.owner(), f.ideal(), g.ideal());
  return DualElement(f.owner(), common, vec_add(refine(f, common).functional(), refine(g, common).functional(), f.ring()));
}

inline DualElement dual_scale(const DualElement& f, const Scalar& c) {
  return DualElement(f.owner(), f.ideal(), vec_scale(f.functional(), c, f.ring()));
}

/// Prefix s_0..s_N of k -> f(x^k) for a one-variable functional.
struct SequenceFunctional {
  CoeffRing ring;
  Vector prefix;
};

inline SequenceFunctional sequence_of(const DualElement& f, std::size_t length) {
  const FilteredAlgebra& A = f.owner();
  if (!A.is_monomial() || A.nvars() != 1) throw Error(ErrorKind::InvalidArgument, "sequences need a one-variable family");
  SequenceFunctional s{A.ring(), {}};
  for (std::size_t k = 0; k < length; ++k) s.prefix.push_back(f(alg_monomial(A, 0, static_cast<long>(k))));
  return s;
}

/// Least-degree monic q with sum_j q_j s_{k+j} = 0 on every window of the
/// prefix, from the kernel of the Hankel system; absent up to bound.
inline std::optional<UPoly> membership_annihilator(const SequenceFunctional& s, std::size_t bound) {
  const CoeffRing& R = s.ring;
  const std::size_t n = s.prefix.size();
  if (n < 2 * bound)
    throw Error(ErrorKind::PrefixTooShort, "prefix of length " + std::to_string(n) + " needs at least " + std::to_string(2 * bound));
  for (std::size_t d = 0; d <= bound; ++d) {
    // rows k: s_k .. s_{k+d-1} against the target -s_{k+d}
    const std::size_t windows = n - d;
    RMatrix h(R, d, windows);
    Vector rhs(windows);
    for (std::size_t k = 0; k < windows; ++k) {
      for (std::size_t j = 0; j < d; ++j) h.set(j, k, s.prefix[k + j]);
      rhs[k] = R.neg(s.prefix[k + d]);
    }
    if (auto c = solve(h, rhs)) {
      Vector q(*c);
      q.push_back(R.one());
      return UPoly(R, q);
    }
  }
  return std::nullopt;
}

/// The functional on A/(q) with f(x^j) = s_j for j < deg q.
inline DualElement functional_from_sequence(const FilteredAlgebra& A, const UPoly& q, const Vector& initial) {
  if (initial.size() < static_cast<std::size_t>(q.degree())) throw Error(ErrorKind::PrefixTooShort, "need deg q initial values");
  return DualElement(A, IdealSpec::per_variable(A.kind(), {q}), Vector(initial.begin(), initial.begin() + q.degree()));
}

/// Delta°(f) = sum_{i,j} f(e_i e_j) e_i* (x) e_j*, grouped as pairs
/// (e_i*, sum_j f(e_i e_j) e_j*) with zero second factors dropped.
inline std::vector<std::pair<DualElement, DualElement>> dual_comultiply(const DualElement& f) {
  const Truncation& t = f.truncation();
  const SCAlgebra& q = t.quotient();
  const CoeffRing& R = f.ring();
  std::vector<std::pair<DualElement, DualElement>> out;
  for (std::size_t i = 0; i < q.rank(); ++i) {
    Vector h(q.rank());
    for (std::size_t j = 0; j < q.rank(); ++j) h[j] = f.on_coords(q.basis_product(i, j));
    if (vec_is_zero(h)) continue;
    out.emplace_back(DualElement(f.owner(), f.ideal(), unit_vector(R, q.rank(), i)), DualElement(f.owner(), f.ideal(), h));
  }
  return out;
}

/// Evaluation of sum g_i (x) h_i at a (x) b.
inline Scalar eval_tensor(const std::vector<std::pair<DualElement, DualElement>>& t, const AlgElement& a, const AlgElement& b) {
  if (t.empty()) return Scalar(0);
  const CoeffRing& R = t.front().first.ring();
  Scalar s = R.zero();
  for (const auto& [g, h] : t) s = R.add(s, R.mul(g(a), h(b)));
  return s;
}

enum class Side { Left, Right };

/// (a -> f)(b) = f(b a) on the left, (f <- a)(b) = f(a b) on the right. The
/// shipped families have two-sided ideals, so the ideal is kept.
inline DualElement bimodule_action(Side side, const AlgElement& a, const DualElement& f) {
  const Truncation& t = f.truncation();
  const SCAlgebra& q = t.quotient();
  const Vector pa = t.project(a);
  Vector out(q.rank());
  for (std::size_t k = 0; k < q.rank(); ++k)
    out[k] = f.on_coords(side == Side::Left ? q.mul(q.basis(k), pa) : q.mul(pa, q.basis(k)));
  return DualElement(f.owner(), f.ideal(), out);
}

/// The bialgebra (or Hopf) structure of a family and the dual maps on A°.
class DualBialgebra {
 public:
  DualBialgebra(FilteredAlgebra a, Flavor flavor) : a_(std::move(a)), flavor_(flavor) {
    if (!a_.is_monomial()) throw Error(ErrorKind::NoBialgebraFlavor, a_.describe() + " carries no polynomial flavor");
    if (flavor == Flavor::Primitive && a_.kind() == FamilyKind::Laurent)
      throw Error(ErrorKind::NoBialgebraFlavor, "primitive flavor on a Laurent family");
  }
  /// A finite family with a Hopf structure on its algebra.
  DualBialgebra(FilteredAlgebra a, HopfData h) : a_(std::move(a)), hopf_(std::move(h)) {
    if (a_.kind() != FamilyKind::Finite || a_.finite_algebra() != hopf_->alg)
      throw Error(ErrorKind::NoBialgebraFlavor, "Hopf data must live on the finite family's algebra");
  }

  const FilteredAlgebra& algebra() const { return a_; }
  bool has_antipode() const {
    if (hopf_) return hopf_->antipode.has_value();
    return flavor_ == Flavor::Primitive || a_.kind() == FamilyKind::Laurent;
  }

  /// u° = eps as an element of A°.
  DualElement unit() const {
    const CoeffRing& R = a_.ring();
    if (hopf_) return DualElement(a_, IdealSpec::zero(), hopf_->coalg.counit());
    return evaluation_functional(a_, Vector(a_.nvars(), flavor_ == Flavor::GroupLike ? R.one() : R.zero()));
  }

  /// eps°(f) = f(1).
  Scalar counit(const DualElement& f) const { return f(alg_one(a_)); }

  /// Delta(a) projected to (A/I) (x) (A/J).
  Vector coproduct_coords(const AlgElement& a, const Truncation& ti, const Truncation& tj) const {
    if (hopf_) return hopf_->coalg.comultiply(ti.project(a));
    return project_coproduct(flavor_, *a.poly, ti, tj);
  }

  /// (f g)(a) = sum f(a_1) g(a_2), carried on the ideal whose generator in
  /// each variable is the characteristic polynomial of Delta(x_v) acting on
  /// (A/I) (x) (A/J).
  DualElement product(const DualElement& f, const DualElement& g) const {
    check_owner(f);
    check_owner(g);
    const CoeffRing& R = a_.ring();
    const Truncation& ti = f.truncation();
    const Truncation& tj = g.truncation();
    const Vector fg = kron(f.functional(), g.functional(), R);
    if (hopf_) {
      const std::size_t n = hopf_->rank();
      Vector out(n);
      for (std::size_t k = 0; k < n; ++k) out[k] = dot(hopf_->coalg.comultiply(unit_vector(R, n, k)), fg, R);
      return DualElement(a_, IdealSpec::zero(), out);
    }
    const SCAlgebra q = tensor_algebra(ti.quotient(), tj.quotient());
    std::vector<UPoly> gens;
    for (std::size_t v = 0; v < a_.nvars(); ++v)
      gens.push_back(characteristic_polynomial(q.left_mult(coproduct_coords(alg_monomial(a_, v, 1), ti, tj))));
    const Truncation tk(a_, IdealSpec::per_variable(a_.kind(), gens));
    Vector out(tk.rank());
    for (std::size_t k = 0; k < tk.rank(); ++k) out[k] = dot(coproduct_coords(tk.lift(k), ti, tj), fg, R);
    return DualElement(a_, tk.ideal(), out);
  }

  /// Delta° = transpose of the multiplication.
  std::vector<std::pair<DualElement, DualElement>> coproduct(const DualElement& f) const {
    check_owner(f);
    return dual_comultiply(f);
  }

  /// S(a) projected to A/I.
  Vector antipode_coords(const AlgElement& a, const Truncation& t) const {
    if (!has_antipode()) throw Error(ErrorKind::NoAntipode, "the group-like polynomial bialgebra has no antipode");
    if (hopf_) return vec_mul(t.project(a), *hopf_->antipode);
    const CoeffRing& R = a_.ring();
    LaurentPoly s(R, a_.nvars());
    for (const auto& [e, c] : a.poly->terms()) s = s + monomial_antipode(R, flavor_, e).scale(c);
    return t.project(alg_poly(a_, s));
  }

  /// S°(f) = f o S on the ideal generated by the characteristic polynomials
  /// of S(x_v) acting on A/I.
  DualElement antipode(const DualElement& f) const {
    check_owner(f);
    const Truncation& t = f.truncation();
    if (hopf_) return DualElement(a_, IdealSpec::zero(), vec_mul(f.functional(), hopf_->antipode.value_or(RMatrix()).transpose()));
    std::vector<UPoly> gens;
    for (std::size_t v = 0; v < a_.nvars(); ++v)
      gens.push_back(characteristic_polynomial(t.quotient().left_mult(antipode_coords(alg_monomial(a_, v, 1), t))));
    const Truncation tk(a_, IdealSpec::per_variable(a_.kind(), gens));
    Vector out(tk.rank());
    for (std::size_t k = 0; k < tk.rank(); ++k) out[k] = f.on_coords(antipode_coords(tk.lift(k), t));
    return DualElement(a_, tk.ideal(), out);
  }

 private:
  void check_owner(const DualElement& f) const {
    if (f.owner() != a_) throw Error(ErrorKind::OwnerMismatch, "dual element of another algebra");
  }
  FilteredAlgebra a_;
  Flavor flavor_ = Flavor::GroupLike;
  std::optional<HopfData> hopf_;
};

/// pi(f (x) g)(a (x) b) = f(a) g(b), on the ideal I (x) B + A (x) J.
inline DualElement tensor_dual_forward(const DualElement& f, const DualElement& g) {
  const FilteredAlgebra ab = FilteredAlgebra::tensor(f.owner(), g.owner());
  return DualElement(ab, IdealSpec::tensor(f.ideal(), g.ideal()), kron(f.functional(), g.functional(), f.ring()));
}

/// Inverse of pi on a functional of (A (x) B)/(I0 (x) B + A (x) J0): the rows
/// of its coefficient matrix give h = sum e_i* (x) h_i.
inline std::vector<std::pair<DualElement, DualElement>> tensor_dual_inverse(const DualElement& h) {
  const FilteredAlgebra& ab = h.owner();
  if (ab.kind() != FamilyKind::Tensor) throw Error(ErrorKind::InvalidArgument, "tensor_dual_inverse needs a tensor family");
  const Truncation& t = h.truncation();
  const std::size_t nl = t.left().rank(), nr = t.right().rank();
  const CoeffRing& R = h.ring();
  std::vector<std::pair<DualElement, DualElement>> out;
  for (std::size_t i = 0; i < nl; ++i) {
    Vector row(h.functional().begin() + static_cast<long>(i * nr), h.functional().begin() + static_cast<long>((i + 1) * nr));
    if (vec_is_zero(row)) continue;
    out.emplace_back(DualElement(ab.left(), *h.ideal().left, unit_vector(R, nl, i)), DualElement(ab.right(), *h.ideal().right, row));
  }
  return out;
}

/// Inverse of pi for a functional h on (A (x) B)/K where K is generated by
/// arbitrary elements: I0 and J0 with I0 (x) B + A (x) J0 inside K are
/// found by p_ell_witness from the single-factor generators of K, and h is
/// pulled back to A/I0 (x) B/J0 before splitting.
inline std::vector<std::pair<DualElement, DualElement>> tensor_dual_inverse(const FilteredAlgebra& a, const FilteredAlgebra& b,
                                                                            const std::vector<AlgElement>& k_left,
                                                                            const std::vector<AlgElement>& k_right,
                                                                            const std::function<Scalar(const AlgElement&)>& h) {
  const IdealSpec i0 = p_ell_witness(a, k_left), j0 = p_ell_witness(b, k_right);
  const FilteredAlgebra ab = FilteredAlgebra::tensor(a, b);
  const Truncation t(ab, IdealSpec::tensor(i0, j0));
  Vector values(t.rank());
  for (std::size_t k = 0; k < t.rank(); ++k) values[k] = h(t.lift(k));
  return tensor_dual_inverse(DualElement(ab, t.ideal(), values));
}

/// Sum of pi over a list of pairs.
inline DualElement tensor_dual_forward(const std::vector<std::pair<DualElement, DualElement>>& pairs, const FilteredAlgebra& a,
                                       const FilteredAlgebra& b, const IdealSpec& i, const IdealSpec& j) {
  const FilteredAlgebra ab = FilteredAlgebra::tensor(a, b);
  const Truncation t(ab, IdealSpec::tensor(i, j));
  Vector out(t.rank(), a.ring().zero());
  for (const auto& [f, g] : pairs)
    vec_axpy(out, a.ring().one(), kron(refine(f, i).functional(), refine(g, j).functional(), a.ring()), a.ring());
  return DualElement(ab, t.ideal(), out);
}

/// R[x]/(gens, x^k) as an R-module on the basis 1, x, ..., x^{k-1}.
inline FPModule polynomial_quotient_module(const CoeffRing& R, const std::vector<UPoly>& gens, std::size_t k) {
  std::vector<Vector> rows;
  for (const auto& g : gens)
    for (std::size_t j = 0; j < k; ++j) {
      Vector row(k, R.zero());
      for (std::size_t d = 0; d <= static_cast<std::size_t>(std::max<long>(g.degree(), 0)) && d + j < k; ++d) row[d + j] = g.coeff(d);
      if (!vec_is_zero(row)) rows.push_back(row);
    }
  return FPModule(R, k, RMatrix::from_rows(R, k, rows));
}

/// Injectivity of M* (x) X -> Hom(M, X), the target seen inside X^g through
/// the values on the generators of M.
struct ProbeReport {
  bool injective = true;
  FPModule dual;
  FPModule source;  // M* (x) X
  RMatrix dual_basis;
  Vector kernel_witness;
  std::string describe() const;
};

inline ProbeReport purity_probe(const FPModule& m, const FPModule& x) {
  require_same_ring(m.ring(), x.ring(), "purity_probe");
  const CoeffRing& R = m.ring();
  const RMatrix basis = dual_module_basis(m);
  const FPModule d = dual_module(m);
  const FPModule src = tensor_module(d, x);
  FPModule tgt = FPModule::zero(R);
  for (std::size_t t = 0; t < m.generator_count(); ++t) tgt = direct_sum(tgt, x);
  const std::size_t g = m.generator_count(), nx = x.generator_count();
  RMatrix mat(R, src.generator_count(), tgt.generator_count());
  for (std::size_t i = 0; i < d.generator_count(); ++i)
    for (std::size_t j = 0; j < nx; ++j)
      for (std::size_t t = 0; t < g; ++t) mat.set(i * nx + j, t * nx + j, basis(i, t));
  const InjectivityReport inj = ModuleMap(src, tgt, mat).injectivity();
  return ProbeReport{inj.injective, d, src, basis, inj.witness};
}

/// Probe on the free truncation A/I.
inline ProbeReport purity_probe(const FilteredAlgebra& a, const IdealSpec& i, const FPModule& x) {
  return purity_probe(FPModule::free(a.ring(), Truncation(a, i).rank()), x);
}

inline std::string ProbeReport::describe() const {
  std::ostringstream os;
  os << "dual " << dual.describe() << ", (dual)(x)X " << source.describe() << ", map "
     << (injective ? "injective" : "not injective, kernel element " + vec_str(kernel_witness));
  return os.str();
}

/// Every element of M* = Hom(M, R) for finite R, with its additive order.
struct DualOrderEntry {
  Vector values;  // values on the generators of M
  mpz_class order;
};

inline std::vector<DualOrderEntry> enumerate_dual_orders(const FPModule& m) {
  const CoeffRing& R = m.ring();
  if (!R.is_modular()) throw Error(ErrorKind::UnsupportedRing, "enumeration needs a finite coefficient ring");
  const RMatrix basis = dual_module_basis(m);
  const FPModule d = dual_module(m);
  const long n = R.modulus().get_si();
  std::set<Vector> seen;
  std::vector<DualOrderEntry> out;
  std::vector<long> c(basis.rows(), 0);
  while (true) {
    Vector v(m.generator_count(), R.zero()), coords(basis.rows());
    for (std::size_t i = 0; i < basis.rows(); ++i) {
      coords[i] = Scalar(c[i]);
      vec_axpy(v, Scalar(c[i]), basis.row(i), R);
    }
    if (seen.insert(v).second) out.push_back({v, *element_order(d, coords)});
    std::size_t k = 0;
    while (k < c.size() && ++c[k] == n) c[k++] = 0;
    if (k == c.size()) break;
  }
  std::sort(out.begin(), out.end(), [](const DualOrderEntry& a, const DualOrderEntry& b) { return a.values < b.values; });
  return out;
}

/// Text report of the truncation duals (H/(x^k))* of H = R[x]/(gens) for
/// k = 1..max_k, and the purity probe against X.
inline std::string explore_truncation_duals(const CoeffRing& R, const std::vector<UPoly>& gens, std::size_t max_k, const FPModule& x) {
  std::ostringstream os;
  std::string hs;
  for (const auto& g : gens) hs += (hs.empty() ? "" : ", ") + g.str();
  os << "H = " << R.name() << "[x]/(" << hs << ")\n";
  os << "X = " << x.describe() << "\n";
  for (std::size_t k = 1; k <= max_k; ++k) {
    const FPModule m = polynomial_quotient_module(R, gens, k);
    os << "I = (x^" << k << ")\n";
    os << "  H/I = " << m.describe() << "\n";
    const auto entries = enumerate_dual_orders(m);
    os << "  (H/I)* has " << entries.size() << " elements\n";
    for (const auto& e : entries) os << "    f = " << vec_str(e.values) << " order " << e.order.get_str() << "\n";
    os << "  probe: " << purity_probe(m, x).describe() << "\n";
  }
  return os.str();
}

}  // namespace hopfdual
