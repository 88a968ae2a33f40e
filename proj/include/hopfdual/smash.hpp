#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfdual/rational.hpp"

namespace hopfdual {

/// Left H-module algebra: row i * rank(A) + j of act is h_i . a_j.
struct ModuleAlgebraAction {
  HopfData h;
  SCAlgebra a;
  RMatrix act;

  Vector apply(const Vector& hv, const Vector& av) const {
    return vec_mul(kron(hv, av, a.ring()), act);
  }
  Vector apply_basis(std::size_t i, std::size_t j) const { return act.row(i * a.rank() + j); }
};

inline AxiomReport check_module_algebra(const ModuleAlgebraAction& m) {
  const CoeffRing& R = m.a.ring();
  const std::size_t nh = m.h.rank(), na = m.a.rank();
  if (m.act.rows() != nh * na || m.act.cols() != na) throw Error(ErrorKind::ShapeMismatch, "action must be rank(H) rank(A) x rank(A)");
  AxiomReport r;
  auto unit_trivial = [&]() -> std::optional<AxiomFailure> {
    for (std::size_t j = 0; j < na; ++j)
      if (m.apply(m.h.alg.unit(), m.a.basis(j)) != m.a.basis(j)) return AxiomFailure{"unit of H acts trivially", {j}, "1 . a != a"};
    return std::nullopt;
  };
  auto associative = [&]() -> std::optional<AxiomFailure> {
    for (std::size_t i = 0; i < nh; ++i)
      for (std::size_t k = 0; k < nh; ++k)
        for (std::size_t j = 0; j < na; ++j)
          if (m.apply(m.h.alg.basis_product(i, k), m.a.basis(j)) != m.apply(m.h.alg.basis(i), m.apply_basis(k, j)))
            return AxiomFailure{"action associative", {i, k, j}, "(hk) . a != h . (k . a)"};
    return std::nullopt;
  };
  auto measuring = [&]() -> std::optional<AxiomFailure> {
    for (std::size_t i = 0; i < nh; ++i) {
      const Vector d = m.h.coalg.comultiply(m.h.alg.basis(i));
      for (std::size_t j = 0; j < na; ++j)
        for (std::size_t l = 0; l < na; ++l) {
          Vector rhs(na, R.zero());
          for (std::size_t s = 0; s < nh; ++s)
            for (std::size_t t = 0; t < nh; ++t) {
              const Scalar& c = d[s * nh + t];
              if (!is_zero(c)) vec_axpy(rhs, c, m.a.mul(m.apply_basis(s, j), m.apply_basis(t, l)), R);
            }
          if (m.apply(m.h.alg.basis(i), m.a.basis_product(j, l)) != rhs) return AxiomFailure{"h(ab) = sum (h1 a)(h2 b)", {i, j, l}, ""};
        }
    }
    return std::nullopt;
  };
  auto unital = [&]() -> std::optional<AxiomFailure> {
    for (std::size_t i = 0; i < nh; ++i)
      if (m.apply(m.h.alg.basis(i), m.a.unit()) != vec_scale(m.a.unit(), m.h.coalg.counit()[i], R))
        return AxiomFailure{"h . 1 = eps(h) 1", {i}, ""};
    return std::nullopt;
  };
  for (const auto& f : {unit_trivial(), associative(), measuring(), unital()})
    if (f) r.push_back(*f);
  return r;
}

/// Right U-comodule algebra: row j of rho is rho(a_j), index s * rank(U) + i.
struct ComoduleAlgebraData {
  HopfData u;
  SCAlgebra a;
  RMatrix rho;
};

inline AxiomReport check_comodule_algebra(const ComoduleAlgebraData& c) {
  AxiomReport r = check_comodule(Comodule{c.u.coalg, c.rho});
  const SCAlgebra au = tensor_algebra(c.a, c.u.alg);
  for (const auto& f : algebra_map_failures(c.a, au, c.rho)) r.push_back({"rho " + f.axiom, f.witness, f.detail});
  return r;
}

/// Hopf pairing <u_i | h_k> = gram(i, k) between U and H.
struct HopfPairing {
  HopfData h;
  HopfData u;
  RMatrix gram;

  Scalar eval(const Vector& uv, const Vector& hv) const { return dot(vec_mul(uv, gram), hv, h.ring()); }
};

/// (H*, H) with the evaluation form.
inline HopfPairing full_dual_pairing(const HopfData& h) {
  return HopfPairing{h, convolution_dual(h), RMatrix::identity(h.ring(), h.rank())};
}

/// U = R eps inside H*.
inline HopfPairing counit_pairing(const HopfData& h) {
  const CoeffRing& R = h.ring();
  HopfData u = group_hopf(R, trivial_group());
  return HopfPairing{h, u, RMatrix::from_rows(R, h.rank(), {h.coalg.counit()})};
}

inline AxiomReport check_hopf_pairing(const HopfPairing& p) {
  const RMatrix& G = p.gram;
  AxiomReport r;
  // <u | hk> = sum <u1 | h><u2 | k>
  const RMatrix a = G * multiplication_matrix(p.h.alg).transpose();
  const RMatrix b = p.u.coalg.delta_matrix() * kronecker(G, G);
  if (a != b) r.push_back({"<u | hk> = sum <u1 | h><u2 | k>", {}, ""});
  // <uv | h> = sum <u | h1><v | h2>
  const RMatrix c = multiplication_matrix(p.u.alg) * G;
  const RMatrix d = kronecker(G, G) * p.h.coalg.delta_matrix().transpose();
  if (c != d) r.push_back({"<uv | h> = sum <u | h1><v | h2>", {}, ""});
  if (vec_mul(p.h.alg.unit(), G.transpose()) != p.u.coalg.counit()) r.push_back({"<u | 1> = eps(u)", {}, ""});
  if (vec_mul(p.u.alg.unit(), G) != p.h.coalg.counit()) r.push_back({"<1 | h> = eps(h)", {}, ""});
  return r;
}

/// Purity of U inside H* through the Gram matrix; throws NotInjective when
/// the pairing is degenerate on U.
inline PurityVerdict u_purity(const HopfPairing& p) {
  const CoeffRing& R = p.h.ring();
  return is_pure_submodule(ModuleMap(FPModule::free(R, p.u.rank()), FPModule::free(R, p.h.rank()), p.gram));
}

/// The pairing seen as a rational pairing between the coalgebra U and H.
inline Pairing as_pairing(const HopfPairing& p) {
  return Pairing(p.u.coalg, FilteredAlgebra::finite(p.h.alg), IdealSpec::zero(), p.gram);
}

/// h . a = sum a_0 <a_1 | h>.
inline ModuleAlgebraAction action_from_coaction(const ComoduleAlgebraData& c, const HopfPairing& p) {
  if (!(c.u.coalg == p.u.coalg)) throw Error(ErrorKind::InvalidArgument, "coaction and pairing use different U");
  const CoeffRing& R = c.a.ring();
  const std::size_t na = c.a.rank(), nh = p.h.rank(), nu = p.u.rank();
  RMatrix act(R, nh * na, na);
  for (std::size_t k = 0; k < nh; ++k)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t s = 0; s < na; ++s) {
        Scalar v = R.zero();
        for (std::size_t i = 0; i < nu; ++i) v = R.add(v, R.mul(c.rho(j, s * nu + i), p.gram(i, k)));
        act.set(k * na + j, s, v);
      }
  ModuleAlgebraAction out{p.h, c.a, act};
  const AxiomReport r = check_module_algebra(out);
  if (!r.empty()) throw Error(ErrorKind::InvariantFailure, "induced action: " + report_str(r));
  return out;
}

/// A # H on the basis a_i # h_j, index i * rank(H) + j, with
/// (a # h)(b # k) = sum a(h1 b) # h2 k.
struct SmashAlgebra {
  SCAlgebra alg;
  std::size_t rank_a, rank_h;

  Vector pure(const Vector& a, const Vector& h) const { return kron(a, h, alg.ring()); }
};

inline SmashAlgebra smash_product(const ModuleAlgebraAction& m) {
  const CoeffRing& R = m.a.ring();
  const std::size_t na = m.a.rank(), nh = m.h.rank(), n = na * nh;
  Vector c(n * n * n, R.zero());
  std::vector<std::string> labels;
  for (const auto& x : m.a.labels())
    for (const auto& y : m.h.alg.labels()) labels.push_back(x + "#" + y);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t p = 0; p < nh; ++p) {
      const Vector d = m.h.coalg.comultiply(m.h.alg.basis(p));
      for (std::size_t j = 0; j < na; ++j)
        for (std::size_t q = 0; q < nh; ++q) {
          Vector out(n, R.zero());
          for (std::size_t s = 0; s < nh; ++s)
            for (std::size_t t = 0; t < nh; ++t) {
              const Scalar& coef = d[s * nh + t];
              if (is_zero(coef)) continue;
              const Vector left = m.a.mul(m.a.basis(i), m.apply_basis(s, j));
              vec_axpy(out, coef, kron(left, m.h.alg.basis_product(t, q), R), R);
            }
          const std::size_t row = (i * nh + p) * n + j * nh + q;
          for (std::size_t k = 0; k < n; ++k) c[row * n + k] = out[k];
        }
    }
  return SmashAlgebra{SCAlgebra::make(R, labels, c, kron(m.a.unit(), m.h.alg.unit(), R)), na, nh};
}

/// a -> a # 1 and h -> 1 # h as matrices into the smash product.
inline std::pair<RMatrix, RMatrix> smash_embeddings(const SmashAlgebra& s, const ModuleAlgebraAction& m) {
  const CoeffRing& R = s.alg.ring();
  std::vector<Vector> ea, eh;
  for (std::size_t i = 0; i < s.rank_a; ++i) ea.push_back(s.pure(m.a.basis(i), m.h.alg.unit()));
  for (std::size_t j = 0; j < s.rank_h; ++j) eh.push_back(s.pure(m.a.unit(), m.h.alg.basis(j)));
  return {RMatrix::from_rows(R, s.alg.rank(), ea), RMatrix::from_rows(R, s.alg.rank(), eh)};
}

/// The four hit actions of a Hopf pairing.
enum class Harpoon {
  HOnU,  // h -> f = sum f1 <f2 | h>
  UOnH,  // f -> h = sum h1 <f | h2>
  URight,  // f <- h = sum <f1 | h> f2
  HRight,  // h <- f = sum <f | h1> h2
};

/// x is the acting element, y the element acted on (h, f for HOnU and
/// URight; f, h for UOnH and HRight).
inline Vector harpoon(const HopfPairing& p, Harpoon kind, const Vector& x, const Vector& y) {
  const CoeffRing& R = p.h.ring();
  switch (kind) {
    case Harpoon::HOnU:
    case Harpoon::URight: {
      const std::size_t nu = p.u.rank();
      const Vector d = p.u.coalg.comultiply(y);
      const Vector hv = vec_mul(x, p.gram.transpose());  // i -> <u_i | h>
      Vector out(nu, R.zero());
      for (std::size_t s = 0; s < nu; ++s)
        for (std::size_t t = 0; t < nu; ++t) {
          const Scalar& c = d[s * nu + t];
          if (is_zero(c)) continue;
          if (kind == Harpoon::HOnU)
            out[s] = R.add(out[s], R.mul(c, hv[t]));
          else
            out[t] = R.add(out[t], R.mul(c, hv[s]));
        }
      return out;
    }
    case Harpoon::UOnH:
    case Harpoon::HRight: {
      const std::size_t nh = p.h.rank();
      const Vector d = p.h.coalg.comultiply(y);
      const Vector fv = vec_mul(x, p.gram);  // k -> <f | h_k>
      Vector out(nh, R.zero());
      for (std::size_t s = 0; s < nh; ++s)
        for (std::size_t t = 0; t < nh; ++t) {
          const Scalar& c = d[s * nh + t];
          if (is_zero(c)) continue;
          if (kind == Harpoon::UOnH)
            out[s] = R.add(out[s], R.mul(c, fv[t]));
          else
            out[t] = R.add(out[t], R.mul(c, fv[s]));
        }
      return out;
    }
  }
  return {};
}

/// U acting on H by f -> h (for H # U) and H acting on U by h -> f (for U # H).
inline ModuleAlgebraAction u_on_h(const HopfPairing& p) {
  const std::size_t nu = p.u.rank(), nh = p.h.rank();
  RMatrix act(p.h.ring(), nu * nh, nh);
  for (std::size_t i = 0; i < nu; ++i)
    for (std::size_t k = 0; k < nh; ++k) {
      const Vector v = harpoon(p, Harpoon::UOnH, p.u.alg.basis(i), p.h.alg.basis(k));
      for (std::size_t t = 0; t < nh; ++t) act.set(i * nh + k, t, v[t]);
    }
  return ModuleAlgebraAction{p.u, p.h.alg, act};
}

inline ModuleAlgebraAction h_on_u(const HopfPairing& p) {
  const std::size_t nu = p.u.rank(), nh = p.h.rank();
  RMatrix act(p.h.ring(), nh * nu, nu);
  for (std::size_t k = 0; k < nh; ++k)
    for (std::size_t i = 0; i < nu; ++i) {
      const Vector v = harpoon(p, Harpoon::HOnU, p.h.alg.basis(k), p.u.alg.basis(i));
      for (std::size_t t = 0; t < nu; ++t) act.set(k * nu + i, t, v[t]);
    }
  return ModuleAlgebraAction{p.h, p.u.alg, act};
}

/// Endomorphisms of H are flattened row-major in the row convention: entry
/// t * rank(H) + s is the coefficient of h_s in sigma(h_t).
inline RMatrix endo_matrix(const Vector& flat, std::size_t n, const CoeffRing& R) { return RMatrix(R, n, n, flat); }

struct EndoRepresentation {
  SmashAlgebra smash;
  RMatrix matrix;         // row x = flattened image of basis x
  AxiomReport morphism;   // multiplicativity (lambda) or anti-multiplicativity (rho)
  std::size_t rank;
  bool injective;
  bool bijective;
};

namespace detail {

inline EndoRepresentation finish_endo(SmashAlgebra s, RMatrix m, bool anti, bool verify) {
  const CoeffRing& R = s.alg.ring();
  const std::size_t n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m.cols()))));
  AxiomReport r;
  if (verify && endo_matrix(vec_mul(s.alg.unit(), m), n, R) != RMatrix::identity(R, n)) r.push_back({"unital", {}, "1 does not act as the identity"});
  for (std::size_t x = 0; verify && x < s.alg.rank() && r.empty(); ++x)
    for (std::size_t y = 0; y < s.alg.rank(); ++y) {
      const RMatrix mx = endo_matrix(m.row(x), n, R), my = endo_matrix(m.row(y), n, R);
      // composition sigma o tau is M_tau M_sigma in the row convention
      const RMatrix expect = anti ? mx * my : my * mx;
      if (endo_matrix(vec_mul(s.alg.basis_product(x, y), m), n, R) != expect) {
        r.push_back({anti ? "anti-multiplicative" : "multiplicative", {x, y}, ""});
        break;
      }
    }
  const std::size_t rk = hopfdual::rank(m);
  const bool inj = kernel(m).rows() == 0;
  const bool bij = m.rows() == m.cols() && is_invertible(m);
  return EndoRepresentation{std::move(s), std::move(m), r, rk, inj, bij};
}

}  // namespace detail

/// lambda(h # f)(k) = h (f -> k) on H # U. With verify unset the morphism
/// report is left empty.
inline EndoRepresentation lambda_map(const HopfPairing& p, bool verify = true) {
  const CoeffRing& R = p.h.ring();
  SmashAlgebra s = smash_product(u_on_h(p));
  const std::size_t nh = p.h.rank(), nu = p.u.rank();
  RMatrix m(R, nh * nu, nh * nh);
  for (std::size_t j = 0; j < nh; ++j)
    for (std::size_t k = 0; k < nu; ++k)
      for (std::size_t t = 0; t < nh; ++t) {
        const Vector v = p.h.alg.mul(p.h.alg.basis(j), harpoon(p, Harpoon::UOnH, p.u.alg.basis(k), p.h.alg.basis(t)));
        for (std::size_t c = 0; c < nh; ++c) m.set(j * nu + k, t * nh + c, v[c]);
      }
  return detail::finish_endo(std::move(s), std::move(m), false, verify);
}

/// rho(f # h)(k) = (k <- f) h on U # H.
inline EndoRepresentation rho_map(const HopfPairing& p, bool verify = true) {
  const CoeffRing& R = p.h.ring();
  SmashAlgebra s = smash_product(h_on_u(p));
  const std::size_t nh = p.h.rank(), nu = p.u.rank();
  RMatrix m(R, nu * nh, nh * nh);
  for (std::size_t k = 0; k < nu; ++k)
    for (std::size_t j = 0; j < nh; ++j)
      for (std::size_t t = 0; t < nh; ++t) {
        const Vector v = p.h.alg.mul(harpoon(p, Harpoon::HRight, p.u.alg.basis(k), p.h.alg.basis(t)), p.h.alg.basis(j));
        for (std::size_t c = 0; c < nh; ++c) m.set(k * nh + j, t * nh + c, v[c]);
      }
  return detail::finish_endo(std::move(s), std::move(m), true, verify);
}

/// Inverse of the antipode, or AntipodeNotBijective.
inline RMatrix inverse_antipode(const HopfData& h, const char* which) {
  if (!h.antipode || !is_invertible(*h.antipode))
    throw Error(ErrorKind::AntipodeNotBijective, std::string("the antipode of ") + which + " is not bijective");
  return inverse(*h.antipode);
}

/// psi(sigma)(k) = sum sigma(k2) Sbar(k1) as a matrix on flattened endomorphisms.
inline RMatrix psi_matrix(const HopfData& h, const RMatrix& sbar) {
  const CoeffRing& R = h.ring();
  const std::size_t n = h.rank();
  RMatrix psi(R, n * n, n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      // sigma = E_ab: h_a -> h_b
      for (std::size_t t = 0; t < n; ++t) {
        const Vector d = h.coalg.comultiply(h.alg.basis(t));
        Vector out(n, R.zero());
        for (std::size_t s = 0; s < n; ++s) {
          const Scalar& c = d[s * n + a];
          if (is_zero(c)) continue;
          vec_axpy(out, c, h.alg.mul(h.alg.basis(b), sbar.row(s)), R);
        }
        for (std::size_t col = 0; col < n; ++col) psi.set(a * n + b, t * n + col, out[col]);
      }
    }
  return psi;
}

struct LambdaPrimeReport {
  RMatrix lambda_prime;
  AxiomReport mismatches;  // basis elements of H # U where lambda' != psi o lambda
  bool lambda_prime_injective;
};

/// lambda'(h # f)(k) = <f | k> h against psi o lambda; sbar defaults to the
/// inverse antipode of H.
inline LambdaPrimeReport lambda_prime_psi_check(const HopfPairing& p, std::optional<RMatrix> sbar = std::nullopt) {
  const CoeffRing& R = p.h.ring();
  const RMatrix s = sbar ? *sbar : inverse_antipode(p.h, "H");
  const std::size_t nh = p.h.rank(), nu = p.u.rank();
  RMatrix lp(R, nh * nu, nh * nh);
  for (std::size_t j = 0; j < nh; ++j)
    for (std::size_t k = 0; k < nu; ++k)
      for (std::size_t t = 0; t < nh; ++t)
        for (std::size_t c = 0; c < nh; ++c) lp.set(j * nu + k, t * nh + c, R.mul(p.gram(k, t), c == j ? R.one() : R.zero()));
  const RMatrix composed = lambda_map(p, false).matrix * psi_matrix(p.h, s);
  AxiomReport r;
  for (std::size_t x = 0; x < nh * nu; ++x)
    if (composed.row(x) != lp.row(x)) r.push_back({"lambda' = psi o lambda", {x / nu, x % nu}, ""});
  return LambdaPrimeReport{lp, r, kernel(lp).rows() == 0};
}

struct RLReport {
  bool holds;
  std::vector<Vector> solutions;  // per basis f of U, an element of H # U
  std::optional<std::size_t> failing;
};

/// rho(f # 1) in lambda(H # U) for every basis f of U.
inline RLReport check_rl_condition(const HopfPairing& p) {
  const EndoRepresentation lam = lambda_map(p, false), rho = rho_map(p, false);
  RLReport out{true, {}, std::nullopt};
  for (std::size_t k = 0; k < p.u.rank(); ++k) {
    // f # 1 in U # H
    const Vector f1 = rho.smash.pure(p.u.alg.basis(k), p.h.alg.unit());
    const auto sol = solve(lam.matrix, vec_mul(f1, rho.matrix));
    if (!sol) {
      out.holds = false;
      out.failing = k;
      return out;
    }
    out.solutions.push_back(*sol);
  }
  return out;
}

struct BMIsomorphism {
  SCAlgebra source;  // (A # H) # U, basis (a_i # h_j) # f_k
  SCAlgebra target;  // A (x) (H # U), same index layout
  RMatrix phi;
  std::string construction;
};

/// (A # H) # U -> A (x) (H # U). Built from the action of (A # H) # U on
/// A # H (left multiplication, U hitting the H factor), read as matrices
/// over A in the right A-basis 1 # h_j, with matrix units sent back through
/// lambda^{-1}; the result is certified as a unital multiplicative bijection.
inline BMIsomorphism bm_isomorphism(const ComoduleAlgebraData& ca, const HopfPairing& p) {
  const CoeffRing& R = p.h.ring();
  if (const AxiomReport pr = check_hopf_pairing(p); !pr.empty()) throw Error(ErrorKind::HypothesisFailed, "not a Hopf pairing: " + report_str(pr));
  if (const AxiomReport cr = check_comodule_algebra(ca); !cr.empty()) throw Error(ErrorKind::HypothesisFailed, "not a U-comodule algebra: " + report_str(cr));
  inverse_antipode(p.h, "H");
  if (!p.u.antipode || !is_invertible(*p.u.antipode)) throw Error(ErrorKind::HypothesisFailed, "antipode of U is not bijective");
  try {
    if (!u_purity(p).pure) throw Error(ErrorKind::HypothesisFailed, "U is not pure in H*");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::HypothesisFailed) throw;
    throw Error(ErrorKind::HypothesisFailed, std::string("U does not embed in H*: ") + e.what());
  }
  const RLReport rl = check_rl_condition(p);
  if (!rl.holds) throw Error(ErrorKind::HypothesisFailed, "RL-condition fails at basis element " + std::to_string(*rl.failing) + " of U");

  const ModuleAlgebraAction on_a = action_from_coaction(ca, p);
  const SmashAlgebra ah = smash_product(on_a);
  const std::size_t na = ca.a.rank(), nh = p.h.rank(), nu = p.u.rank(), nah = na * nh;

  // U on A # H: f . (a # h) = a # (f -> h)
  RMatrix act(R, nu * nah, nah);
  for (std::size_t k = 0; k < nu; ++k)
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < nh; ++j) {
        const Vector v = ah.pure(ca.a.basis(i), harpoon(p, Harpoon::UOnH, p.u.alg.basis(k), p.h.alg.basis(j)));
        for (std::size_t c = 0; c < nah; ++c) act.set(k * nah + i * nh + j, c, v[c]);
      }
  const ModuleAlgebraAction on_ah{p.u, ah.alg, act};
  const AxiomReport mr = check_module_algebra(on_ah);
  if (!mr.empty()) throw Error(ErrorKind::InvariantFailure, "U on A # H: " + report_str(mr));
  const SmashAlgebra ahu = smash_product(on_ah);
  const EndoRepresentation lam = lambda_map(p, false);
  const SCAlgebra target = tensor_algebra(ca.a, lam.smash.alg);

  // right A-basis of A # H: row j * na + s is (1 # h_j)(a_s # 1)
  RMatrix basis(R, nah, nah);
  for (std::size_t j = 0; j < nh; ++j)
    for (std::size_t s = 0; s < na; ++s) {
      const Vector v = ah.alg.mul(ah.pure(ca.a.unit(), p.h.alg.basis(j)), ah.pure(ca.a.basis(s), p.h.alg.unit()));
      for (std::size_t c = 0; c < nah; ++c) basis.set(j * na + s, c, v[c]);
    }
  if (!is_invertible(basis)) throw Error(ErrorKind::NoIsomorphismFound, "A # H is not free on 1 # h_j as a right A-module");
  const RMatrix to_right = inverse(basis);

  // lambda^{-1} of the matrix units E_ij : h_j -> h_i
  std::vector<Vector> units(nh * nh);
  for (std::size_t i = 0; i < nh; ++i)
    for (std::size_t j = 0; j < nh; ++j) {
      const auto sol = solve(lam.matrix, unit_vector(R, nh * nh, j * nh + i));
      if (!sol) throw Error(ErrorKind::NoIsomorphismFound, "matrix unit outside lambda(H # U)");
      units[i * nh + j] = *sol;
    }

  const std::size_t n = ahu.alg.rank();
  RMatrix phi(R, n, n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t k = x % nu, ahidx = x / nu;
    Vector image(n, R.zero());
    for (std::size_t j = 0; j < nh; ++j) {
      // X . (1 # h_j) = (a # h)(f . (1 # h_j))
      const Vector moved = on_ah.apply(p.u.alg.basis(k), ah.pure(ca.a.unit(), p.h.alg.basis(j)));
      const Vector z = ah.alg.mul(ah.alg.basis(ahidx), moved);
      const Vector coords = vec_mul(z, to_right);
      for (std::size_t i = 0; i < nh; ++i) {
        const Vector mij(coords.begin() + static_cast<long>(i * na), coords.begin() + static_cast<long>((i + 1) * na));
        if (vec_is_zero(mij)) continue;
        vec_axpy(image, R.one(), kron(mij, units[i * nh + j], R), R);
      }
    }
    for (std::size_t c = 0; c < n; ++c) phi.set(x, c, image[c]);
  }

  const AxiomReport cert = algebra_map_failures(ahu.alg, target, phi);
  if (!cert.empty()) throw Error(ErrorKind::NoIsomorphismFound, "candidate map fails certification: " + report_str(cert));
  if (!is_invertible(phi)) throw Error(ErrorKind::NoIsomorphismFound, "candidate map is not bijective");
  return BMIsomorphism{ahu.alg, target, phi,
                       "endomorphisms of A # H over A, matrix units through lambda^{-1}; certified unital, multiplicative, bijective"};
}

}  // namespace hopfdual
