#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hopfdual/normal_forms.hpp"

namespace hopfdual {

/// Isomorphism type of a finitely generated module: nontrivial invariant
/// factors of the torsion part (ascending, each dividing the next) and the
/// rank of the free part.
struct ModuleInvariants {
  std::vector<mpz_class> torsion;
  std::size_t free_rank = 0;
  bool operator==(const ModuleInvariants& o) const { return torsion == o.torsion && free_rank == o.free_rank; }
  bool operator!=(const ModuleInvariants& o) const { return !(*this == o); }
  bool is_zero() const { return torsion.empty() && free_rank == 0; }
};

/// Relation matrix of m viewed as an abelian group (only for Z, Z/n, F_p):
/// the integer lift of the relations stacked on char * I.
inline RMatrix integer_relations(const CoeffRing& R, std::size_t gens, const RMatrix& rel) {
  const CoeffRing Z = CoeffRing::integers();
  RMatrix lifted = lift_to_integers(rel);
  if (R.is_modular()) lifted = vstack(lifted, scaled(RMatrix::identity(Z, gens), Scalar(R.characteristic())));
  return lifted;
}

class FPModule {
 public:
  FPModule(const CoeffRing& ring, std::size_t generator_count, const RMatrix& relations)
      : ring_(ring), gens_(generator_count), rel_(relations) {
    require_same_ring(ring, relations.ring(), "FPModule");
    if (relations.cols() != generator_count)
      throw Error(ErrorKind::ShapeMismatch, "relation matrix has " + std::to_string(relations.cols()) +
                                                " columns for " + std::to_string(generator_count) + " generators");
    rel_ = change_ring(rel_, ring_);
    auto c = std::make_shared<Cache>();
    c->echelon = echelon_form(rel_);
    c->invariants = compute_invariants();
    cache_ = std::move(c);
  }

  static FPModule free(const CoeffRing& R, std::size_t rank) { return FPModule(R, rank, RMatrix(R, 0, rank)); }
  static FPModule zero(const CoeffRing& R) { return free(R, 0); }
  /// R/(a).
  static FPModule cyclic(const CoeffRing& R, const Scalar& a) {
    return FPModule(R, 1, RMatrix::from_rows(R, 1, {{a}}));
  }

  const CoeffRing& ring() const { return ring_; }
  std::size_t generator_count() const { return gens_; }
  const RMatrix& relations() const { return rel_; }
  const Echelon& relation_echelon() const { return cache_->echelon; }
  const ModuleInvariants& invariants() const { return cache_->invariants; }
  bool is_zero_module() const { return invariants().is_zero(); }

  /// Canonical representative of the class of v.
  Vector reduce(const Vector& v) const {
    check_element(v);
    return reduce_modulo(v, relation_echelon());
  }
  bool is_zero_element(const Vector& v) const { return vec_is_zero(reduce(v)); }
  bool equal_elements(const Vector& a, const Vector& b) const { return is_zero_element(vec_sub(a, b, ring_)); }

  void check_element(const Vector& v) const {
    if (v.size() != gens_)
      throw Error(ErrorKind::ShapeMismatch, "element has " + std::to_string(v.size()) + " coordinates, module has " +
                                                std::to_string(gens_) + " generators");
  }

  /// Human-readable isomorphism type, e.g. "Z^2 + Z/2 + Z/4".
  std::string describe() const {
    const ModuleInvariants& inv = invariants();
    if (inv.is_zero()) return "0";
    std::ostringstream os;
    const std::string base = ring_.name();
    bool first = true;
    if (inv.free_rank > 0) {
      os << base;
      if (inv.free_rank > 1) os << "^" << inv.free_rank;
      first = false;
    }
    for (const auto& d : inv.torsion) {
      if (!first) os << " + ";
      os << "Z/" << d.get_str();
      first = false;
    }
    return os.str();
  }

 private:
  struct Cache {
    Echelon echelon;
    ModuleInvariants invariants;
  };

  ModuleInvariants compute_invariants() const {
    ModuleInvariants inv;
    if (ring_.kind() == RingKind::Rationals) {
      inv.free_rank = gens_ - rank(rel_);
      return inv;
    }
    SmithResult s = smith_normal_form(integer_relations(ring_, gens_, rel_));
    for (std::size_t i = 0; i < s.rank; ++i) {
      mpz_class d = abs(s.d(i, i).get_num());
      if (d != 1) inv.torsion.push_back(d);
    }
    inv.free_rank = gens_ - s.rank;
    return inv;
  }

  CoeffRing ring_;
  std::size_t gens_;
  RMatrix rel_;
  std::shared_ptr<const Cache> cache_;
};

inline bool isomorphic(const FPModule& a, const FPModule& b) {
  return a.ring() == b.ring() && a.invariants() == b.invariants();
}

/// Same generators and the same relation span.
inline bool same_presentation(const FPModule& a, const FPModule& b) {
  return a.ring() == b.ring() && a.generator_count() == b.generator_count() &&
         a.relation_echelon().rows == b.relation_echelon().rows;
}

/// Additive order of v in m; nullopt means infinite.
inline std::optional<mpz_class> element_order(const FPModule& m, const Vector& v) {
  const CoeffRing& R = m.ring();
  m.check_element(v);
  if (R.kind() == RingKind::Rationals) {
    if (m.is_zero_element(v)) return mpz_class(1);
    return std::nullopt;
  }
  SmithResult s = smith_normal_form(integer_relations(R, m.generator_count(), m.relations()));
  RMatrix lifted_v = lift_to_integers(RMatrix::row_vector(R, canon_vector(R, v)));
  Vector c = vec_mul(lifted_v.row(0), s.v);
  mpz_class order = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (is_zero(c[i])) continue;
    if (i >= s.rank) return std::nullopt;
    mpz_class d = abs(s.d(i, i).get_num()), g, ci = c[i].get_num();
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), ci.get_mpz_t());
    mpz_class part = d / g;
    mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), part.get_mpz_t());
  }
  return order;
}

inline FPModule direct_sum(const FPModule& a, const FPModule& b) {
  require_same_ring(a.ring(), b.ring(), "direct_sum");
  const CoeffRing& R = a.ring();
  RMatrix top = hstack(a.relations(), RMatrix(R, a.relations().rows(), b.generator_count()));
  RMatrix bottom = hstack(RMatrix(R, b.relations().rows(), a.generator_count()), b.relations());
  return FPModule(R, a.generator_count() + b.generator_count(), vstack(top, bottom));
}

/// Generators are the pairs (i, k), index i * n.gens + k.
inline FPModule tensor_module(const FPModule& m, const FPModule& n) {
  require_same_ring(m.ring(), n.ring(), "tensor_module");
  const CoeffRing& R = m.ring();
  RMatrix rel = vstack(kronecker(m.relations(), RMatrix::identity(R, n.generator_count())),
                       kronecker(RMatrix::identity(R, m.generator_count()), n.relations()));
  return FPModule(R, m.generator_count() * n.generator_count(), rel);
}

/// Functionals m -> R, one per row, as values on the generators of m. For a
/// free module this is the dual basis in the primal order.
inline RMatrix dual_module_basis(const FPModule& m) {
  return kernel(m.relations().transpose());
}

/// Hom(m, R) presented on the functionals of dual_module_basis.
inline FPModule dual_module(const FPModule& m) {
  RMatrix basis = dual_module_basis(m);
  return FPModule(m.ring(), basis.rows(), kernel(basis));
}

struct InjectivityReport {
  bool injective = true;
  Vector witness;  // nonzero kernel element when not injective
};

class ModuleMap {
 public:
  ModuleMap(FPModule source, FPModule target, const RMatrix& matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(change_ring(matrix, source_.ring())) {
    require_same_ring(source_.ring(), target_.ring(), "ModuleMap");
    require_same_ring(source_.ring(), matrix.ring(), "ModuleMap");
    if (matrix.rows() != source_.generator_count() || matrix.cols() != target_.generator_count())
      throw Error(ErrorKind::ShapeMismatch, "map matrix must be source.gens x target.gens");
    const RMatrix image = source_.relations() * matrix_;
    for (std::size_t i = 0; i < image.rows(); ++i)
      if (!target_.is_zero_element(image.row(i)))
        throw Error(ErrorKind::InvalidArgument,
                    "map is not well defined: source relation " + std::to_string(i) + " maps to a nonzero element");
  }

  static ModuleMap identity(const FPModule& m) {
    return ModuleMap(m, m, RMatrix::identity(m.ring(), m.generator_count()));
  }

  const FPModule& source() const { return source_; }
  const FPModule& target() const { return target_; }
  const RMatrix& matrix() const { return matrix_; }

  Vector apply(const Vector& v) const {
    source_.check_element(v);
    return target_.reduce(vec_mul(v, matrix_));
  }

  /// Generators of the kernel, as elements of the source.
  RMatrix kernel_generators() const {
    const std::size_t g = source_.generator_count();
    RMatrix k = kernel(vstack(matrix_, target_.relations()));
    return k.select_cols(0, g);
  }

  InjectivityReport injectivity() const {
    RMatrix k = kernel_generators();
    for (std::size_t i = 0; i < k.rows(); ++i) {
      Vector v = k.row(i);
      if (!source_.is_zero_element(v)) return {false, source_.reduce(v)};
    }
    return {true, {}};
  }
  bool is_injective() const { return injectivity().injective; }

  bool is_surjective() const {
    Echelon e = echelon_form(vstack(matrix_, target_.relations()));
    for (std::size_t j = 0; j < target_.generator_count(); ++j)
      if (!in_span(unit_vector(target_.ring(), target_.generator_count(), j), e)) return false;
    return true;
  }

  bool is_zero_map() const {
    for (std::size_t i = 0; i < matrix_.rows(); ++i)
      if (!target_.is_zero_element(matrix_.row(i))) return false;
    return true;
  }

  bool equals(const ModuleMap& o) const {
    if (!isomorphic(source_, o.source_) || !same_presentation(target_, o.target_)) return false;
    if (source_.generator_count() != o.source_.generator_count()) return false;
    for (std::size_t i = 0; i < matrix_.rows(); ++i)
      if (!target_.equal_elements(matrix_.row(i), o.matrix_.row(i))) return false;
    return true;
  }

 private:
  FPModule source_;
  FPModule target_;
  RMatrix matrix_;
};

/// f then g.
inline ModuleMap compose(const ModuleMap& f, const ModuleMap& g) {
  if (f.target().generator_count() != g.source().generator_count())
    throw Error(ErrorKind::ShapeMismatch, "compose: target of f is not the source of g");
  return ModuleMap(f.source(), g.target(), f.matrix() * g.matrix());
}

inline ModuleMap tensor_maps(const ModuleMap& f, const ModuleMap& g) {
  return ModuleMap(tensor_module(f.source(), g.source()), tensor_module(f.target(), g.target()),
                   kronecker(f.matrix(), g.matrix()));
}

/// Inclusion of the submodule of m generated by the rows of gens.
inline ModuleMap submodule_inclusion(const FPModule& m, const RMatrix& gens) {
  const CoeffRing& R = m.ring();
  if (gens.cols() != m.generator_count()) throw Error(ErrorKind::ShapeMismatch, "submodule generators have wrong width");
  RMatrix rel = kernel(vstack(change_ring(gens, R), m.relations())).select_cols(0, gens.rows());
  return ModuleMap(FPModule(R, gens.rows(), rel), m, gens);
}

inline FPModule quotient(const FPModule& m, const RMatrix& extra_relations) {
  return FPModule(m.ring(), m.generator_count(), vstack(m.relations(), change_ring(extra_relations, m.ring())));
}

/// m / image(incl).
inline FPModule quotient(const ModuleMap& incl) { return quotient(incl.target(), incl.matrix()); }

inline ModuleMap quotient_map(const ModuleMap& incl) {
  const FPModule& m = incl.target();
  return ModuleMap(m, quotient(incl), RMatrix::identity(m.ring(), m.generator_count()));
}

inline void require_injective(const ModuleMap& incl, const char* where) {
  InjectivityReport r = incl.injectivity();
  if (!r.injective)
    throw Error(ErrorKind::NotInjective, std::string(where) + ": map is not injective, kernel element " + vec_str(r.witness));
}

/// incl (x) id_x : N (x) X -> M (x) X.
inline ModuleMap tensor_with(const ModuleMap& incl, const FPModule& x) { return tensor_maps(incl, ModuleMap::identity(x)); }

inline bool is_x_pure(const ModuleMap& incl, const FPModule& x) {
  require_same_ring(incl.source().ring(), x.ring(), "is_x_pure");
  require_injective(incl, "is_x_pure");
  return tensor_with(incl, x).is_injective();
}

/// Some retraction r : M -> N with incl then r = id, if one exists.
inline std::optional<RMatrix> find_retraction(const ModuleMap& incl) {
  const CoeffRing& R = incl.source().ring();
  const RMatrix& F = incl.matrix();
  const RMatrix& relN = incl.source().relations();
  const RMatrix& relM = incl.target().relations();
  const std::size_t gN = F.rows(), gM = F.cols(), rN = relN.rows(), rM = relM.rows();
  // unknowns: r (gM x gN), then one coefficient row over relN for each row of F and of relM
  const std::size_t nr = gM * gN, nc = gN * rN, nd = rM * rN;
  const std::size_t neq = (gN + rM) * gN;
  RMatrix A(R, nr + nc + nd, neq);
  Vector b(neq, R.zero());
  for (std::size_t i = 0; i < gN; ++i)
    for (std::size_t l = 0; l < gN; ++l) {
      const std::size_t eq = i * gN + l;
      for (std::size_t k = 0; k < gM; ++k) A.set(k * gN + l, eq, F(i, k));
      for (std::size_t r = 0; r < rN; ++r) A.set(nr + i * rN + r, eq, relN(r, l));
      if (i == l) b[eq] = R.one();
    }
  for (std::size_t i = 0; i < rM; ++i)
    for (std::size_t l = 0; l < gN; ++l) {
      const std::size_t eq = (gN + i) * gN + l;
      for (std::size_t k = 0; k < gM; ++k) A.set(k * gN + l, eq, relM(i, k));
      for (std::size_t r = 0; r < rN; ++r) A.set(nr + nc + i * rN + r, eq, relN(r, l));
    }
  auto x = solve(A, b);
  if (!x) return std::nullopt;
  RMatrix r(R, gM, gN);
  for (std::size_t k = 0; k < gM; ++k)
    for (std::size_t l = 0; l < gN; ++l) r.set(k, l, (*x)[k * gN + l]);
  return r;
}

struct PurityVerdict {
  bool pure = true;
  std::optional<RMatrix> retraction;    // when pure
  std::optional<FPModule> witness_module;  // X with N (x) X -> M (x) X not injective
  Vector kernel_element;                 // on the generators of N (x) X
};

inline std::vector<mpz_class> divisors_above_one(const mpz_class& n) {
  std::vector<mpz_class> out;
  for (mpz_class d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  if (n > 1) out.push_back(n);
  std::sort(out.begin(), out.end());
  return out;
}

/// Purity of a finitely generated submodule, decided as being a direct
/// summand. On failure a cyclic X = R/(d) witnesses it.
inline PurityVerdict is_pure_submodule(const ModuleMap& incl) {
  require_injective(incl, "is_pure_submodule");
  PurityVerdict v;
  if (auto r = find_retraction(incl)) {
    v.retraction = std::move(r);
    return v;
  }
  v.pure = false;
  const CoeffRing& R = incl.source().ring();
  std::vector<mpz_class> candidates;
  if (R.is_modular()) {
    candidates = divisors_above_one(R.characteristic());
  } else {
    const FPModule q = quotient(incl);
    for (const auto& d : q.invariants().torsion)
      for (const auto& e : divisors_above_one(d)) candidates.push_back(e);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  }
  for (const auto& d : candidates) {
    FPModule x = FPModule::cyclic(R, Scalar(d));
    InjectivityReport rep = tensor_with(incl, x).injectivity();
    if (!rep.injective) {
      v.witness_module = x;
      v.kernel_element = rep.witness;
      return v;
    }
  }
  throw Error(ErrorKind::InvariantFailure, "submodule is not a summand but no cyclic purity witness was found");
}

/// Compares M/M' (x) N/N' with (M (x) N)/(M' (x) N + M (x) N') under the
/// hypotheses that M' is N-pure and N' is M-pure.
inline bool quotient_tensor_check(const ModuleMap& m_sub, const ModuleMap& n_sub) {
  const FPModule& m = m_sub.target();
  const FPModule& n = n_sub.target();
  require_same_ring(m.ring(), n.ring(), "quotient_tensor_check");
  if (!is_x_pure(m_sub, n)) throw Error(ErrorKind::HypothesisFailed, "M' is not N-pure");
  if (!is_x_pure(n_sub, m)) throw Error(ErrorKind::HypothesisFailed, "N' is not M-pure");
  const CoeffRing& R = m.ring();
  FPModule lhs = tensor_module(quotient(m_sub), quotient(n_sub));
  RMatrix extra = vstack(kronecker(m_sub.matrix(), RMatrix::identity(R, n.generator_count())),
                         kronecker(RMatrix::identity(R, m.generator_count()), n_sub.matrix()));
  FPModule rhs = quotient(tensor_module(m, n), extra);
  return isomorphic(lhs, rhs);
}

}  // namespace hopfdual
