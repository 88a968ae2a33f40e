#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfdual/finite_dual.hpp"

namespace hopfdual {

/// C* for a coalgebra C: e_i* e_j* = sum_k d[k][i][j] e_k*, unit eps.
inline SCAlgebra dual_algebra(const CoalgebraData& c) {
  const std::size_t n = c.rank();
  Vector m(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) m[(i * n + j) * n + k] = c.d(k, i, j);
  return SCAlgebra::make(c.ring(), dual_labels(c.labels()), m, c.counit());
}

/// A* for a finite algebra A: Delta e_k* = sum c[i][j][k] e_i* (x) e_j*, counit = unit.
inline CoalgebraData dual_coalgebra(const SCAlgebra& a) {
  const std::size_t n = a.rank();
  Vector d(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) d[(k * n + i) * n + j] = a.c(i, j, k);
  return CoalgebraData(a.ring(), dual_labels(a.labels()), d, a.unit());
}

/// C (x) D on the basis c_i (x) d_k, index i * rank(D) + k.
inline CoalgebraData tensor_coalgebra(const CoalgebraData& c, const CoalgebraData& d) {
  require_same_ring(c.ring(), d.ring(), "tensor_coalgebra");
  const CoeffRing& R = c.ring();
  const std::size_t p = c.rank(), q = d.rank(), n = p * q;
  Vector delta(n * n * n, R.zero()), eps(n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k < q; ++k) {
      labels.push_back(tensor_label(c.labels()[i], d.labels()[k]));
      eps[i * q + k] = R.mul(c.counit()[i], d.counit()[k]);
      for (std::size_t j = 0; j < p; ++j)
        for (std::size_t l = 0; l < p; ++l) {
          if (is_zero(c.d(i, j, l))) continue;
          for (std::size_t m = 0; m < q; ++m)
            for (std::size_t o = 0; o < q; ++o)
              delta[((i * q + k) * n + j * q + m) * n + l * q + o] = R.mul(c.d(i, j, l), d.d(k, m, o));
        }
    }
  return CoalgebraData(R, labels, delta, eps);
}

/// Bilinear form <c | a> between a free coalgebra C and an algebra A that
/// factors through the free quotient A/I: gram(i, k) = <c_i | lift of e_k>.
class Pairing {
 public:
  Pairing(CoalgebraData c, const FilteredAlgebra& a, const IdealSpec& ideal, const RMatrix& gram)
      : c_(std::move(c)), t_(std::make_shared<Truncation>(a, ideal)), gram_(change_ring(gram, c_.ring())) {
    require_same_ring(c_.ring(), a.ring(), "Pairing");
    if (gram.rows() != c_.rank() || gram.cols() != t_->rank())
      throw Error(ErrorKind::ShapeMismatch, "gram matrix must be rank(C) x rank(A/I)");
  }

  const CoalgebraData& coalg() const { return c_; }
  const FilteredAlgebra& alg() const { return t_->owner(); }
  const IdealSpec& ideal() const { return t_->ideal(); }
  const Truncation& truncation() const { return *t_; }
  const RMatrix& gram() const { return gram_; }
  const CoeffRing& ring() const { return c_.ring(); }

  /// <c | a> for c in coordinates.
  Scalar eval(const Vector& c, const AlgElement& a) const { return dot(vec_mul(c, gram_), t_->project(a), ring()); }
  /// c_i as an element of the finite dual of a polynomial or Laurent family.
  DualElement as_dual_element(std::size_t i) const { return DualElement(alg(), ideal(), gram_.row(i)); }

 private:
  CoalgebraData c_;
  std::shared_ptr<const Truncation> t_;
  RMatrix gram_;
};

/// (C, C*) with the evaluation form.
inline Pairing canonical_pairing(const CoalgebraData& c) {
  return Pairing(c, FilteredAlgebra::finite(dual_algebra(c)), IdealSpec::zero(), RMatrix::identity(c.ring(), c.rank()));
}

/// ((A/I)*, A): the truncation of A° at I paired with A.
inline Pairing finite_dual_pairing(const FilteredAlgebra& a, const IdealSpec& i) {
  const Truncation t(a, i);
  return Pairing(dual_coalgebra(t.quotient()), a, i, RMatrix::identity(a.ring(), t.rank()));
}

struct AlphaReport {
  ModuleMap map;
  bool injective;
  Vector witness;  // element of M (x) P, index t * rank(P) + i
};

/// alpha_M : M (x) P -> Hom(A/I, M) = M^q, m (x) p_i -> (e_k -> gram(i, k) m).
inline AlphaReport alpha_map(const FPModule& m, const RMatrix& gram) {
  require_same_ring(m.ring(), gram.ring(), "alpha_map");
  const CoeffRing& R = m.ring();
  const std::size_t g = m.generator_count(), p = gram.rows(), q = gram.cols();
  const FPModule src = tensor_module(m, FPModule::free(R, p));
  FPModule tgt = FPModule::zero(R);
  for (std::size_t k = 0; k < q; ++k) tgt = direct_sum(tgt, m);
  RMatrix mat(R, g * p, q * g);
  for (std::size_t t = 0; t < g; ++t)
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t k = 0; k < q; ++k) mat.set(t * p + i, k * g + t, gram(i, k));
  ModuleMap map(src, tgt, mat);
  const InjectivityReport inj = map.injectivity();
  return AlphaReport{map, inj.injective, inj.witness};
}

inline AlphaReport alpha_map(const FPModule& m, const Pairing& p) { return alpha_map(m, p.gram()); }

struct NamedModule {
  std::string name;
  FPModule module;
};

/// Test modules for suite-level injectivity claims: R, Z/2, Z/4, Z/2 + Z/3
/// over Z; R and R/(d) for the proper divisors d of n over Z/n; R otherwise.
inline std::vector<NamedModule> test_module_battery(const CoeffRing& R) {
  std::vector<NamedModule> out{{R.name(), FPModule::free(R, 1)}};
  if (R.kind() == RingKind::Integers) {
    out.push_back({"Z/2", FPModule::cyclic(R, Scalar(2))});
    out.push_back({"Z/4", FPModule::cyclic(R, Scalar(4))});
    out.push_back({"Z/2 + Z/3", direct_sum(FPModule::cyclic(R, Scalar(2)), FPModule::cyclic(R, Scalar(3)))});
  } else if (R.kind() == RingKind::IntegersMod) {
    for (const auto& d : divisors_above_one(R.modulus()))
      if (d != R.modulus()) out.push_back({R.name() + "/(" + d.get_str() + ")", FPModule::cyclic(R, Scalar(d))});
  }
  return out;
}

struct PairingReport {
  AxiomReport axioms;
  std::vector<std::pair<std::string, bool>> battery;  // alpha_M injective per test module
  bool valid() const {
    if (!axioms.empty()) return false;
    for (const auto& b : battery)
      if (!b.second) return false;
    return true;
  }
  std::string describe() const;
};

/// <c | ab> = sum <c_1 | a><c_2 | b> and <c | 1> = eps(c) on basis tuples,
/// plus alpha_M injectivity over the test battery.
inline PairingReport check_rational_pairing(const Pairing& p) {
  const CoeffRing& R = p.ring();
  const SCAlgebra& q = p.truncation().quotient();
  const std::size_t n = q.rank();
  const RMatrix& G = p.gram();
  const RMatrix left = G * multiplication_matrix(q).transpose();
  const RMatrix right = p.coalg().delta_matrix() * kronecker(G, G);
  PairingReport r;
  for (std::size_t i = 0; i < p.coalg().rank() && r.axioms.empty(); ++i)
    for (std::size_t j = 0; j < n * n; ++j)
      if (left(i, j) != right(i, j)) {
        r.axioms.push_back({"pairing multiplicative", {i, j / n, j % n}, "<c | ab> != sum <c1 | a><c2 | b>"});
        break;
      }
  const Vector ones = vec_mul(q.unit(), G.transpose());
  for (std::size_t i = 0; i < p.coalg().rank(); ++i)
    if (ones[i] != p.coalg().counit()[i]) {
      r.axioms.push_back({"pairing unital", {i}, "<c | 1> != eps(c)"});
      break;
    }
  for (const auto& [name, m] : test_module_battery(R)) r.battery.emplace_back(name, alpha_map(m, G).injective);
  return r;
}

inline std::string PairingReport::describe() const {
  std::string s = valid() ? "rational pairing" : "not a rational pairing";
  if (!axioms.empty()) s += "; " + report_str(axioms);
  for (const auto& [name, ok] : battery)
    if (!ok) s += "; alpha not injective for " + name;
  return s;
}

/// [sum p_i (x) q_i, sum a_j (x) b_j] = sum <p_i | a_j><q_i | b_j>.
inline Pairing induced_tensor_pairing(const Pairing& p, const Pairing& q) {
  require_same_ring(p.ring(), q.ring(), "induced_tensor_pairing");
  return Pairing(tensor_coalgebra(p.coalg(), q.coalg()), FilteredAlgebra::tensor(p.alg(), q.alg()),
                 IdealSpec::tensor(p.ideal(), q.ideal()), kronecker(p.gram(), q.gram()));
}

struct MockWitness {
  std::vector<std::size_t> chosen;  // indices a_l into the probe
  RMatrix values;                   // values(i, s) = p_i(probe s)
  RMatrix g;                        // g(l, s) = g_l(probe s)
};

/// p_i = sum_l p_i(a_l) g_l on the probe: the value tuples (p_1(s), ..., p_n(s))
/// span a module generated by those of a_1..a_m, and g_l(s) are the
/// coefficients of s's tuple in those generators.
inline MockWitness mock_projective_witness(const CoeffRing& R, const std::vector<std::function<Scalar(const AlgElement&)>>& p,
                                           const std::vector<AlgElement>& probe) {
  const std::size_t n = p.size(), s = probe.size();
  MockWitness w{{}, RMatrix(R, n, s), RMatrix(R, 0, s)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < s; ++k) w.values.set(i, k, p[i](probe[k]));
  const RMatrix cols = w.values.transpose();
  std::vector<Vector> gens;
  for (std::size_t k = 0; k < s; ++k) {
    if (vec_is_zero(cols.row(k))) continue;
    if (!gens.empty() && in_span(cols.row(k), RMatrix::from_rows(R, n, gens))) continue;
    gens.push_back(cols.row(k));
    w.chosen.push_back(k);
  }
  const RMatrix gm = RMatrix::from_rows(R, n, gens);
  if (s > 0 && !w.chosen.empty() && w.chosen.back() == s - 1 && rank(gm) < n)
    throw Error(ErrorKind::ProbeInsufficient, "the value module still grows at the last probe element");
  w.g = RMatrix(R, gens.size(), s);
  for (std::size_t k = 0; k < s; ++k) {
    if (gens.empty()) break;
    const auto x = solve(gm, cols.row(k));
    if (!x) throw Error(ErrorKind::InvariantFailure, "probe value outside the selected generators");
    for (std::size_t l = 0; l < gens.size(); ++l) w.g.set(l, k, (*x)[l]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < s; ++k) {
      Scalar acc = R.zero();
      for (std::size_t l = 0; l < gens.size(); ++l) acc = R.add(acc, R.mul(w.values(i, w.chosen[l]), w.g(l, k)));
      if (acc != w.values(i, k)) throw Error(ErrorKind::InvariantFailure, "mock-projective identity fails on the probe");
    }
  return w;
}

/// Left A-module structure on a finitely presented R-module: a acts by
/// m -> m X_a. Finite families give X for each basis element, polynomial
/// and Laurent families X for each variable.
struct AModule {
  FPModule module;
  FilteredAlgebra alg;
  std::vector<RMatrix> act;

  std::size_t generator_count() const { return module.generator_count(); }

  RMatrix action(const AlgElement& a) const {
    const CoeffRing& R = module.ring();
    const std::size_t g = module.generator_count();
    switch (alg.kind()) {
      case FamilyKind::Finite: {
        RMatrix out(R, g, g);
        for (std::size_t k = 0; k < act.size(); ++k)
          if (!is_zero(a.coords[k])) out = out + scaled(act[k], a.coords[k]);
        return out;
      }
      case FamilyKind::Polynomial:
      case FamilyKind::Laurent: {
        RMatrix out(R, g, g);
        for (const auto& [e, c] : a.poly->terms()) {
          RMatrix mono = RMatrix::identity(R, g);
          for (std::size_t v = 0; v < e.size(); ++v) {
            const RMatrix base = e[v] < 0 ? inverse(act[v]) : act[v];
            for (long k = 0; k < std::abs(e[v]); ++k) mono = mono * base;
          }
          out = out + scaled(mono, c);
        }
        return out;
      }
      case FamilyKind::Tensor: break;
    }
    throw Error(ErrorKind::InvalidArgument, "modules over tensor families are not supported");
  }
};

/// Rows of a and b agree modulo the relations of m.
inline bool same_action(const FPModule& m, const RMatrix& a, const RMatrix& b) {
  for (std::size_t t = 0; t < a.rows(); ++t)
    if (!m.is_zero_element(vec_sub(a.row(t), b.row(t), m.ring()))) return false;
  return true;
}

inline AxiomReport check_module(const AModule& mod) {
  const FPModule& m = mod.module;
  const CoeffRing& R = m.ring();
  const std::size_t g = m.generator_count();
  AxiomReport r;
  const std::size_t need = mod.alg.kind() == FamilyKind::Finite ? mod.alg.finite_algebra().rank() : mod.alg.nvars();
  if (mod.act.size() != need) throw Error(ErrorKind::ShapeMismatch, "module needs " + std::to_string(need) + " action matrices");
  for (std::size_t v = 0; v < mod.act.size(); ++v) {
    if (mod.act[v].rows() != g || mod.act[v].cols() != g) throw Error(ErrorKind::ShapeMismatch, "action matrices must be gens x gens");
    const RMatrix image = m.relations() * mod.act[v];
    for (std::size_t j = 0; j < image.rows(); ++j)
      if (!m.is_zero_element(image.row(j))) {
        r.push_back({"action well defined", {v, j}, "a relation is not mapped into the relations"});
        break;
      }
  }
  if (mod.alg.kind() == FamilyKind::Finite) {
    const SCAlgebra& a = mod.alg.finite_algebra();
    if (!same_action(m, mod.action(AlgElement::of_coords(a.unit())), RMatrix::identity(R, g)))
      r.push_back({"unit acts as identity", {}, "1 m != m"});
    for (std::size_t i = 0; i < a.rank(); ++i)
      for (std::size_t j = 0; j < a.rank(); ++j)
        if (!same_action(m, mod.action(AlgElement::of_coords(a.basis_product(i, j))), mod.act[j] * mod.act[i])) {
          r.push_back({"action associative", {i, j}, "(e_i e_j) m != e_i (e_j m)"});
          return r;
        }
  } else {
    for (std::size_t u = 0; u < mod.act.size(); ++u)
      for (std::size_t v = u + 1; v < mod.act.size(); ++v)
        if (!same_action(m, mod.act[u] * mod.act[v], mod.act[v] * mod.act[u])) r.push_back({"variables commute", {u, v}, ""});
    if (mod.alg.kind() == FamilyKind::Laurent)
      for (std::size_t v = 0; v < mod.act.size(); ++v)
        if (!is_invertible(mod.act[v])) r.push_back({"variable acts invertibly", {v}, ""});
  }
  return r;
}

namespace detail {

/// Action matrices of the basis lifts of A/I and of the ideal generators.
struct RationalSystem {
  std::vector<RMatrix> lifts;
  std::vector<RMatrix> ideal;
  AlphaReport alpha;
  RMatrix target_relations;  // q copies of the relations of M
};

inline RationalSystem rational_system(const AModule& mod, const Pairing& p) {
  if (mod.alg != p.alg()) throw Error(ErrorKind::OwnerMismatch, "module and pairing act through different algebras");
  const Truncation& t = p.truncation();
  RationalSystem s{{}, {}, alpha_map(mod.module, p.gram()), RMatrix()};
  for (std::size_t k = 0; k < t.rank(); ++k) s.lifts.push_back(mod.action(t.lift(k)));
  if (mod.alg.is_monomial())
    for (std::size_t v = 0; v < mod.alg.nvars(); ++v)
      s.ideal.push_back(mod.action(alg_univariate(mod.alg, p.ideal().generators[v], v)));
  s.target_relations = s.alpha.map.target().relations();
  return s;
}

inline Vector first(const Vector& v, std::size_t n) { return Vector(v.begin(), v.begin() + static_cast<long>(n)); }

}  // namespace detail

/// a m = sum m_i <c_i | a> for every a. The tensor element in M (x) C is
/// canonical: reduced modulo the relations of M (x) C and ker alpha_M.
struct RationalParameters {
  Vector element;
  Vector tensor;  // index t * rank(C) + i
  std::vector<std::pair<Vector, std::size_t>> pairs;  // (m_i, index of c_i), zero m_i dropped
};

/// Generators of ker alpha_M inside M (x) C, together with the relations of M (x) C.
inline RMatrix alpha_kernel_module(const AlphaReport& a) {
  const std::size_t n = a.map.source().generator_count();
  const RMatrix k = kernel(vstack(a.map.matrix(), a.map.target().relations()));
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < k.rows(); ++i) rows.push_back(detail::first(k.row(i), n));
  for (std::size_t i = 0; i < a.map.source().relations().rows(); ++i) rows.push_back(a.map.source().relations().row(i));
  return RMatrix::from_rows(a.map.source().ring(), n, rows);
}

inline std::optional<RationalParameters> rational_parameters(const AModule& mod, const Vector& m, const Pairing& p) {
  mod.module.check_element(m);
  const detail::RationalSystem s = detail::rational_system(mod, p);
  for (const auto& z : s.ideal)
    if (!mod.module.is_zero_element(vec_mul(m, z))) return std::nullopt;
  Vector rhs;
  for (const auto& x : s.lifts) {
    const Vector img = vec_mul(m, x);
    rhs.insert(rhs.end(), img.begin(), img.end());
  }
  const RMatrix system = vstack(s.alpha.map.matrix(), s.target_relations);
  const auto sol = solve(system, rhs);
  if (!sol) return std::nullopt;
  const std::size_t g = mod.generator_count(), pc = p.coalg().rank();
  const Vector t = reduce_modulo(detail::first(*sol, g * pc), echelon_form(alpha_kernel_module(s.alpha)));
  RationalParameters out{m, t, {}};
  for (std::size_t i = 0; i < pc; ++i) {
    Vector mi(g);
    for (std::size_t u = 0; u < g; ++u) mi[u] = t[u * pc + i];
    mi = mod.module.reduce(mi);
    if (!vec_is_zero(mi)) out.pairs.emplace_back(mi, i);
  }
  return out;
}

/// Submodule of a finitely presented module given by generator rows.
struct Submodule {
  FPModule ambient;
  RMatrix generators;
};

inline bool submodule_contains(const Submodule& big, const RMatrix& rows) {
  const Echelon e = echelon_form(vstack(big.generators, big.ambient.relations()));
  for (std::size_t i = 0; i < rows.rows(); ++i)
    if (!in_span(rows.row(i), e)) return false;
  return true;
}

inline bool submodule_equal(const Submodule& a, const Submodule& b) {
  return submodule_contains(a, b.generators) && submodule_contains(b, a.generators);
}

inline bool is_whole(const Submodule& s) {
  return submodule_contains(s, RMatrix::identity(s.ambient.ring(), s.ambient.generator_count()));
}

inline bool is_zero_submodule(const Submodule& s) {
  for (std::size_t i = 0; i < s.generators.rows(); ++i)
    if (!s.ambient.is_zero_element(s.generators.row(i))) return false;
  return true;
}

inline Submodule submodule_intersection(const Submodule& a, const Submodule& b) {
  const std::size_t na = a.generators.rows();
  const RMatrix k = kernel(vstack(vstack(a.generators, b.generators), a.ambient.relations()));
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < k.rows(); ++i) {
    const Vector v = vec_mul(detail::first(k.row(i), na), a.generators);
    if (!a.ambient.is_zero_element(v)) rows.push_back(a.ambient.reduce(v));
  }
  return Submodule{a.ambient, RMatrix::from_rows(a.ambient.ring(), a.ambient.generator_count(), rows)};
}

/// Rat(M): the m admitting rational parameters, as the projection of the
/// solution module of the joint system in (m, tensor, relation multipliers).
inline Submodule rat_submodule(const AModule& mod, const Pairing& p) {
  const CoeffRing& R = p.ring();
  const detail::RationalSystem s = detail::rational_system(mod, p);
  const FPModule& m = mod.module;
  const std::size_t g = m.generator_count(), q = s.lifts.size(), nz = s.ideal.size(), r = m.relations().rows();
  const RMatrix& a = s.alpha.map.matrix();
  const std::size_t cols = q * g + nz * g;
  const std::size_t rows = g + a.rows() + s.target_relations.rows() + nz * r;
  RMatrix big(R, rows, cols);
  for (std::size_t t = 0; t < g; ++t) {
    for (std::size_t k = 0; k < q; ++k)
      for (std::size_t u = 0; u < g; ++u) big.set(t, k * g + u, s.lifts[k](t, u));
    for (std::size_t z = 0; z < nz; ++z)
      for (std::size_t u = 0; u < g; ++u) big.set(t, q * g + z * g + u, s.ideal[z](t, u));
  }
  std::size_t row = g;
  for (std::size_t i = 0; i < a.rows(); ++i, ++row)
    for (std::size_t c = 0; c < a.cols(); ++c) big.set(row, c, R.neg(a(i, c)));
  for (std::size_t i = 0; i < s.target_relations.rows(); ++i, ++row)
    for (std::size_t c = 0; c < s.target_relations.cols(); ++c) big.set(row, c, R.neg(s.target_relations(i, c)));
  for (std::size_t z = 0; z < nz; ++z)
    for (std::size_t j = 0; j < r; ++j, ++row)
      for (std::size_t u = 0; u < g; ++u) big.set(row, q * g + z * g + u, R.neg(m.relations()(j, u)));
  const RMatrix k = kernel(big);
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < k.rows(); ++i) {
    const Vector v = m.reduce(detail::first(k.row(i), g));
    if (!vec_is_zero(v)) gens.push_back(v);
  }
  const Echelon e = echelon_form(RMatrix::from_rows(R, g, gens));
  std::vector<Vector> reduced;
  for (std::size_t i = 0; i < e.rows.rows(); ++i)
    if (!vec_is_zero(e.rows.row(i))) reduced.push_back(e.rows.row(i));
  return Submodule{m, RMatrix::from_rows(R, g, reduced)};
}

/// The A-submodule generated by the given rows, presented on those rows.
inline AModule restrict_module(const AModule& mod, const RMatrix& gens) {
  const CoeffRing& R = mod.module.ring();
  const std::size_t s = gens.rows();
  const RMatrix stacked = vstack(gens, mod.module.relations());
  const RMatrix k = kernel(stacked);
  std::vector<Vector> rel;
  for (std::size_t i = 0; i < k.rows(); ++i) rel.push_back(detail::first(k.row(i), s));
  AModule out{FPModule(R, s, RMatrix::from_rows(R, s, rel)), mod.alg, {}};
  for (const auto& x : mod.act) {
    RMatrix y(R, s, s);
    for (std::size_t j = 0; j < s; ++j) {
      const auto sol = solve(stacked, vec_mul(gens.row(j), x));
      if (!sol) throw Error(ErrorKind::InvariantFailure, "generators do not span an A-submodule (row " + std::to_string(j) + ")");
      for (std::size_t u = 0; u < s; ++u) y.set(j, u, (*sol)[u]);
    }
    out.act.push_back(y);
  }
  return out;
}

/// rho(m_t) = sum m_s (x) c_i from the canonical parameters of each generator.
inline Comodule to_comodule(const AModule& mod, const Pairing& p) {
  const CoeffRing& R = p.ring();
  if (mod.module.relations().rows() != 0) throw Error(ErrorKind::InvalidArgument, "comodules are built on free modules");
  const std::size_t g = mod.generator_count(), pc = p.coalg().rank();
  RMatrix rho(R, g, g * pc);
  for (std::size_t t = 0; t < g; ++t) {
    const auto par = rational_parameters(mod, unit_vector(R, g, t), p);
    if (!par) throw Error(ErrorKind::NotRational, "generator " + std::to_string(t) + " has no rational parameters");
    for (std::size_t c = 0; c < g * pc; ++c) rho.set(t, c, par->tensor[c]);
  }
  return Comodule{p.coalg(), rho};
}

/// a m = sum m_0 <m_1 | a>.
inline AModule to_module(const Comodule& com, const Pairing& p) {
  if (!(com.coalg == p.coalg())) throw Error(ErrorKind::InvalidArgument, "comodule over another coalgebra");
  const CoeffRing& R = p.ring();
  const FilteredAlgebra& A = p.alg();
  const std::size_t g = com.rank(), pc = p.coalg().rank();
  auto act_of = [&](const AlgElement& a) {
    Vector vals(pc);
    for (std::size_t i = 0; i < pc; ++i) vals[i] = p.eval(unit_vector(R, pc, i), a);
    return com.coaction * kronecker(RMatrix::identity(R, g), RMatrix(R, pc, 1, vals));
  };
  AModule out{FPModule::free(R, g), A, {}};
  if (A.kind() == FamilyKind::Finite) {
    for (std::size_t k = 0; k < A.finite_algebra().rank(); ++k) out.act.push_back(act_of(AlgElement::of_coords(A.finite_algebra().basis(k))));
  } else if (A.is_monomial()) {
    for (std::size_t v = 0; v < A.nvars(); ++v) out.act.push_back(act_of(alg_monomial(A, v, 1)));
  } else {
    throw Error(ErrorKind::InvalidArgument, "modules over tensor families are not supported");
  }
  return out;
}

}  // namespace hopfdual
