#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfdual/normal_forms.hpp"

namespace hopfdual {

/// One failed axiom: its name, the basis indices exposing it and a note.
struct AxiomFailure {
  std::string axiom;
  std::vector<std::size_t> witness;
  std::string detail;
};
using AxiomReport = std::vector<AxiomFailure>;

inline std::string report_str(const AxiomReport& r) {
  if (r.empty()) return "ok";
  std::string out;
  for (const auto& f : r) {
    if (!out.empty()) out += "; ";
    out += f.axiom + " at (";
    for (std::size_t i = 0; i < f.witness.size(); ++i) out += (i ? "," : "") + std::to_string(f.witness[i]);
    out += ")";
    if (!f.detail.empty()) out += ": " + f.detail;
  }
  return out;
}

/// Free algebra of finite rank given by structure constants
/// e_i e_j = sum_k c[i][j][k] e_k, stored flat at (i * n + j) * n + k.
class SCAlgebra {
 public:
  /// Validated construction: throws NotAssociative or UnitLawFails.
  static SCAlgebra make(const CoeffRing& R, std::vector<std::string> labels, Vector mult, Vector unit) {
    SCAlgebra a = unchecked(R, std::move(labels), std::move(mult), std::move(unit));
    for (const auto& f : a.check()) {
      const ErrorKind k = f.axiom == "associativity" ? ErrorKind::NotAssociative : ErrorKind::UnitLawFails;
      throw Error(k, f.axiom + " fails at basis " + report_str({f}));
    }
    return a;
  }

  static SCAlgebra unchecked(const CoeffRing& R, std::vector<std::string> labels, Vector mult, Vector unit) {
    SCAlgebra a;
    a.ring_ = R;
    a.n_ = labels.size();
    const std::size_t n = a.n_;
    if (mult.size() != n * n * n) throw Error(ErrorKind::ShapeMismatch, "structure tensor must have rank^3 entries");
    if (unit.size() != n) throw Error(ErrorKind::ShapeMismatch, "unit vector must have rank entries");
    a.labels_ = std::move(labels);
    a.c_ = canon_vector(R, mult);
    a.unit_ = canon_vector(R, unit);
    a.index();
    return a;
  }

  /// The rank-1 algebra R.
  static SCAlgebra ground(const CoeffRing& R) { return make(R, {"1"}, {R.one()}, {R.one()}); }

  const CoeffRing& ring() const { return ring_; }
  std::size_t rank() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vector& structure() const { return c_; }
  const Scalar& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
  const Vector& unit() const { return unit_; }
  Vector basis(std::size_t i) const { return unit_vector(ring_, n_, i); }
  Vector zero() const { return Vector(n_, ring_.zero()); }

  Vector mul(const Vector& a, const Vector& b) const {
    Vector out(n_, Scalar(0));
    std::vector<std::size_t> nb;
    for (std::size_t j = 0; j < n_; ++j)
      if (!is_zero(b[j])) nb.push_back(j);
    for (std::size_t i = 0; i < n_; ++i) {
      if (is_zero(a[i])) continue;
      for (std::size_t j : nb) {
        const Scalar ab = a[i] * b[j];
        for (const auto& [k, v] : sparse_[i * n_ + j]) out[k] += ab * v;
      }
    }
    return canon_vector(ring_, out);
  }

  Vector basis_product(std::size_t i, std::size_t j) const {
    Vector out(n_, ring_.zero());
    for (const auto& [k, v] : sparse_[i * n_ + j]) out[k] = v;
    return out;
  }

  /// Row i is a * e_i.
  RMatrix left_mult(const Vector& a) const {
    RMatrix m(ring_, n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Vector r = mul(a, basis(i));
      for (std::size_t k = 0; k < n_; ++k) m.set(i, k, r[k]);
    }
    return m;
  }
  /// Row i is e_i * a.
  RMatrix right_mult(const Vector& a) const {
    RMatrix m(ring_, n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Vector r = mul(basis(i), a);
      for (std::size_t k = 0; k < n_; ++k) m.set(i, k, r[k]);
    }
    return m;
  }

  std::optional<std::vector<std::size_t>> associativity_witness() const {
    Vector diff(n_, Scalar(0));
    std::vector<std::size_t> touched;
    auto add = [&](std::size_t l, const Scalar& v) {
      if (is_zero(diff[l])) touched.push_back(l);
      diff[l] += v;
    };
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k) {
          for (const auto& [l, v] : sparse_[i * n_ + j])
            for (const auto& [m, w] : sparse_[l * n_ + k]) add(m, v * w);
          for (const auto& [l, v] : sparse_[j * n_ + k])
            for (const auto& [m, w] : sparse_[i * n_ + l]) add(m, -(v * w));
          bool bad = false;
          for (std::size_t m : touched) {
            if (!is_zero(ring_.canon(diff[m]))) bad = true;
            diff[m] = 0;
          }
          touched.clear();
          if (bad) return std::vector<std::size_t>{i, j, k};
        }
    return std::nullopt;
  }

  std::optional<std::size_t> unit_witness() const {
    for (std::size_t i = 0; i < n_; ++i)
      if (mul(unit_, basis(i)) != basis(i) || mul(basis(i), unit_) != basis(i)) return i;
    return std::nullopt;
  }

  AxiomReport check() const {
    AxiomReport r;
    if (auto w = associativity_witness()) r.push_back({"associativity", *w, "(e_i e_j) e_k != e_i (e_j e_k)"});
    if (auto w = unit_witness()) r.push_back({"unit", {*w}, "1 e_i != e_i or e_i 1 != e_i"});
    return r;
  }

  bool is_commutative() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (basis_product(i, j) != basis_product(j, i)) return false;
    return true;
  }

  bool operator==(const SCAlgebra& o) const { return ring_ == o.ring_ && n_ == o.n_ && c_ == o.c_ && unit_ == o.unit_; }
  bool operator!=(const SCAlgebra& o) const { return !(*this == o); }

 private:
  SCAlgebra() : ring_(CoeffRing::integers()) {}
  void index() {
    sparse_.assign(n_ * n_, {});
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k)
          if (!is_zero(c(i, j, k))) sparse_[i * n_ + j].push_back({k, c(i, j, k)});
  }

  CoeffRing ring_;
  std::size_t n_ = 0;
  std::vector<std::string> labels_;
  Vector c_;
  Vector unit_;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> sparse_;
};

/// Failures of a linear map f : a -> b (row i = f(e_i)) to be a unital
/// algebra morphism; reports the first failing basis pair.
inline AxiomReport algebra_map_failures(const SCAlgebra& a, const SCAlgebra& b, const RMatrix& f) {
  if (f.rows() != a.rank() || f.cols() != b.rank()) throw Error(ErrorKind::ShapeMismatch, "algebra map has wrong shape");
  AxiomReport r;
  if (vec_mul(a.unit(), f) != b.unit()) r.push_back({"unital", {}, "f(1) != 1"});
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j)
      if (vec_mul(a.basis_product(i, j), f) != b.mul(f.row(i), f.row(j))) {
        r.push_back({"multiplicative", {i, j}, "f(e_i e_j) != f(e_i) f(e_j)"});
        return r;
      }
  return r;
}

/// Finite group by multiplication table: table[i][j] = index of g_i g_j.
class GroupTable {
 public:
  static GroupTable make(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> table) {
    GroupTable g;
    g.labels_ = std::move(labels);
    g.table_ = std::move(table);
    g.validate();
    return g;
  }

  std::size_t order() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t mul(std::size_t i, std::size_t j) const { return table_[i][j]; }
  std::size_t identity() const { return identity_; }
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

 private:
  void validate() {
    const std::size_t n = labels_.size();
    if (n == 0) throw Error(ErrorKind::NotAGroup, "empty group table");
    if (table_.size() != n) throw Error(ErrorKind::NotAGroup, "table must be order x order");
    for (const auto& row : table_) {
      if (row.size() != n) throw Error(ErrorKind::NotAGroup, "table must be order x order");
      for (auto v : row)
        if (v >= n) throw Error(ErrorKind::NotAGroup, "table entry out of range");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (table_[table_[i][j]][k] != table_[i][table_[j][k]])
            throw Error(ErrorKind::NotAGroup, "not associative at (" + labels_[i] + "," + labels_[j] + "," + labels_[k] + ")");
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) ok = table_[e][i] == i && table_[i][e] == i;
      if (ok) {
        identity_ = e;
        found = true;
      }
    }
    if (!found) throw Error(ErrorKind::NotAGroup, "no identity element");
    inverse_.assign(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (table_[i][j] == identity_ && table_[j][i] == identity_) inverse_[i] = j;
    for (std::size_t i = 0; i < n; ++i)
      if (inverse_[i] == n) throw Error(ErrorKind::NotAGroup, labels_[i] + " has no inverse");
  }

  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

inline GroupTable trivial_group() { return GroupTable::make({"e"}, {{0}}); }

inline GroupTable cyclic_group(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::NotAGroup, "cyclic group of order 0");
  std::vector<std::string> labels{"e"};
  for (std::size_t k = 1; k < n; ++k) labels.push_back(k == 1 ? "g" : "g^" + std::to_string(k));
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return GroupTable::make(labels, t);
}

inline GroupTable direct_product(const GroupTable& a, const GroupTable& b) {
  std::vector<std::string> labels;
  for (const auto& x : a.labels())
    for (const auto& y : b.labels()) labels.push_back("(" + x + "," + y + ")");
  const std::size_t m = b.order(), n = a.order() * m;
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a.mul(i / m, j / m) * m + b.mul(i % m, j % m);
  return GroupTable::make(labels, t);
}

inline GroupTable klein_group() {
  return GroupTable::make({"e", "a", "b", "ab"}, {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
}

/// S3 as permutations of {0,1,2}, product p q = p after q.
inline GroupTable symmetric_group_s3() {
  const std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  const std::vector<std::string> labels{"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
  std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
      for (std::size_t k = 0; k < 6; ++k)
        if (perms[k] == c) t[i][j] = k;
    }
  return GroupTable::make(labels, t);
}

inline SCAlgebra group_algebra(const CoeffRing& R, const GroupTable& g) {
  const std::size_t n = g.order();
  Vector c(n * n * n, R.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[(i * n + j) * n + g.mul(i, j)] = R.one();
  return SCAlgebra::make(R, g.labels(), c, unit_vector(R, n, g.identity()));
}

inline std::string tensor_label(const std::string& a, const std::string& b) { return a + "(x)" + b; }

/// Basis e_i (x) f_k at index i * b.rank + k.
inline SCAlgebra tensor_algebra(const SCAlgebra& a, const SCAlgebra& b) {
  require_same_ring(a.ring(), b.ring(), "tensor_algebra");
  const CoeffRing& R = a.ring();
  const std::size_t na = a.rank(), nb = b.rank(), n = na * nb;
  Vector c(n * n * n, R.zero());
  for (std::size_t i1 = 0; i1 < na; ++i1)
    for (std::size_t j1 = 0; j1 < na; ++j1)
      for (std::size_t k1 = 0; k1 < na; ++k1) {
        const Scalar& x = a.c(i1, j1, k1);
        if (is_zero(x)) continue;
        for (std::size_t i2 = 0; i2 < nb; ++i2)
          for (std::size_t j2 = 0; j2 < nb; ++j2)
            for (std::size_t k2 = 0; k2 < nb; ++k2) {
              const Scalar& y = b.c(i2, j2, k2);
              if (is_zero(y)) continue;
              c[((i1 * nb + i2) * n + (j1 * nb + j2)) * n + (k1 * nb + k2)] = R.mul(x, y);
            }
      }
  std::vector<std::string> labels;
  for (const auto& x : a.labels())
    for (const auto& y : b.labels()) labels.push_back(tensor_label(x, y));
  return SCAlgebra::make(R, labels, c, kron(a.unit(), b.unit(), R));
}

/// A * G with basis a_i u_s at index i * |G| + s and product
/// (a u_s)(b u_t) = a s(b) u_{st}. act[s] is the matrix of s (row i = s(e_i)).
inline SCAlgebra skew_group_algebra(const SCAlgebra& a, const GroupTable& g, const std::vector<RMatrix>& act) {
  const CoeffRing& R = a.ring();
  const std::size_t na = a.rank(), ng = g.order(), n = na * ng;
  if (act.size() != ng) throw Error(ErrorKind::ShapeMismatch, "one automorphism per group element required");
  for (std::size_t s = 0; s < ng; ++s) {
    const AxiomReport r = algebra_map_failures(a, a, act[s]);
    if (!r.empty() || !is_invertible(act[s]))
      throw Error(ErrorKind::NotAutomorphism, "action of " + g.labels()[s] + " is not an automorphism: " +
                                                  (r.empty() ? std::string("not invertible") : report_str(r)));
  }
  if (act[g.identity()] != RMatrix::identity(R, na)) throw Error(ErrorKind::NotAction, "identity does not act trivially");
  for (std::size_t s = 0; s < ng; ++s)
    for (std::size_t t = 0; t < ng; ++t)
      if (act[g.mul(s, t)] != act[t] * act[s])
        throw Error(ErrorKind::NotAction, "action is not a homomorphism at (" + g.labels()[s] + "," + g.labels()[t] + ")");
  Vector c(n * n * n, R.zero());
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t s = 0; s < ng; ++s)
      for (std::size_t j = 0; j < na; ++j)
        for (std::size_t t = 0; t < ng; ++t) {
          const Vector prod = a.mul(a.basis(i), act[s].row(j));
          const std::size_t st = g.mul(s, t);
          for (std::size_t k = 0; k < na; ++k)
            if (!is_zero(prod[k])) c[((i * ng + s) * n + (j * ng + t)) * n + (k * ng + st)] = prod[k];
        }
  std::vector<std::string> labels;
  for (const auto& x : a.labels())
    for (const auto& y : g.labels()) labels.push_back(x + "u" + y);
  return SCAlgebra::make(R, labels, c, kron(a.unit(), unit_vector(R, ng, g.identity()), R));
}

}  // namespace hopfdual
