#pragma once

// Canonical forms and the linear-algebra questions that reduce to them:
// Hermite and Smith forms over the PIDs (Z, Q, F_p), Howell form over Z/n,
// kernels, solving x*M = b, span membership and coset representatives.
//
// Z/n questions are answered by lifting to Z and adjoining n*I as extra
// relations, so a single integer kernel serves both cases.

#include <cstddef>
#include <optional>
#include <vector>

#include "matrix.hpp"

namespace hopfdual {

struct HermiteResult {
  RMatrix h;                       // echelon form, rows >= rank are zero
  RMatrix u;                       // unimodular, u * m = h
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

/// Row Hermite normal form over a PID. Pivots are normalized (positive over
/// Z, 1 over fields) and entries above a pivot are reduced modulo it.
inline HermiteResult hermite_form(const RMatrix& m) {
  const CoeffRing& R = m.ring();
  if (!R.is_pid()) throw Error(ErrorKind::UnsupportedRing, "hermite_form needs a PID, got " + R.name());
  RMatrix h = m;
  RMatrix u = RMatrix::identity(R, m.rows());
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t j = 0; j < m.cols() && r < m.rows(); ++j) {
    std::size_t found = m.rows();
    for (std::size_t i = r; i < m.rows(); ++i)
      if (!is_zero(h(i, j))) {
        if (found == m.rows() || R.size(h(i, j)) < R.size(h(found, j))) found = i;
      }
    if (found == m.rows()) continue;
    h.swap_rows(r, found);
    u.swap_rows(r, found);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (is_zero(h(i, j))) continue;
      auto [g, s, t] = R.gcdext(h(r, j), h(i, j));
      const Scalar a = R.exact_div(h(r, j), g);
      const Scalar b = R.exact_div(h(i, j), g);
      h.combine_rows(r, i, s, t, R.neg(b), a);
      u.combine_rows(r, i, s, t, R.neg(b), a);
    }
    const Scalar unit = R.normalizing_unit(h(r, j));
    if (unit != R.one()) {
      h.scale_row(r, unit);
      u.scale_row(r, unit);
    }
    const Scalar p = h(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      if (is_zero(h(i, j))) continue;
      Scalar q;
      if (R.kind() == RingKind::Integers)
        q = Scalar(floor_div(h(i, j).get_num(), p.get_num()));
      else
        q = R.exact_div(h(i, j), p);
      if (is_zero(q)) continue;
      h.add_row_multiple(i, r, R.neg(q));
      u.add_row_multiple(i, r, R.neg(q));
    }
    pivots.push_back(j);
    ++r;
  }
  return {std::move(h), std::move(u), std::move(pivots)};
}

struct SmithResult {
  RMatrix u;  // rows x rows, invertible
  RMatrix d;  // rows x cols, diagonal with d_1 | d_2 | ...
  RMatrix v;  // cols x cols, invertible
  std::size_t rank = 0;
  Vector diagonal() const {
    Vector out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
    return out;
  }
};

/// Smith normal form u*m*v = d over Z, Q or F_p.
inline SmithResult smith_normal_form(const RMatrix& m) {
  const CoeffRing& R = m.ring();
  if (!R.is_pid())
    throw Error(ErrorKind::UnsupportedRing, "smith_normal_form needs Z, Q or F_p (use howell_form for " + R.name() + ")");
  const std::size_t rows = m.rows(), cols = m.cols();
  RMatrix d = m;
  RMatrix u = RMatrix::identity(R, rows);
  RMatrix v = RMatrix::identity(R, cols);
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    std::size_t bi = rows, bj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (!is_zero(d(i, j)) && (bi == rows || R.size(d(i, j)) < R.size(d(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi == rows) break;
    d.swap_rows(t, bi);
    u.swap_rows(t, bi);
    d.swap_cols(t, bj);
    v.swap_cols(t, bj);
    while (true) {
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (is_zero(d(i, t))) continue;
        if (R.divides(d(t, t), d(i, t))) {
          const Scalar q = R.neg(R.exact_div(d(i, t), d(t, t)));
          d.add_row_multiple(i, t, q);
          u.add_row_multiple(i, t, q);
          continue;
        }
        auto [g, s, tt] = R.gcdext(d(t, t), d(i, t));
        const Scalar a = R.exact_div(d(t, t), g);
        const Scalar b = R.exact_div(d(i, t), g);
        d.combine_rows(t, i, s, tt, R.neg(b), a);
        u.combine_rows(t, i, s, tt, R.neg(b), a);
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (is_zero(d(t, j))) continue;
        if (R.divides(d(t, t), d(t, j))) {
          const Scalar q = R.neg(R.exact_div(d(t, j), d(t, t)));
          d.combine_cols(t, j, R.one(), R.zero(), q, R.one());
          v.combine_cols(t, j, R.one(), R.zero(), q, R.one());
          continue;
        }
        auto [g, s, tt] = R.gcdext(d(t, t), d(t, j));
        const Scalar a = R.exact_div(d(t, t), g);
        const Scalar b = R.exact_div(d(t, j), g);
        d.combine_cols(t, j, s, tt, R.neg(b), a);
        v.combine_cols(t, j, s, tt, R.neg(b), a);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < rows && clean; ++i)
        if (!is_zero(d(i, t))) clean = false;
      if (!clean) continue;
      // divisibility: fold an offending row into the pivot row
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!R.divides(d(t, t), d(i, j))) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      d.add_row_multiple(t, bad, R.one());
      u.add_row_multiple(t, bad, R.one());
    }
    const Scalar unit = R.normalizing_unit(d(t, t));
    if (unit != R.one()) {
      d.scale_row(t, unit);
      u.scale_row(t, unit);
    }
  }
  return {std::move(u), std::move(d), std::move(v), t};
}

/// Howell form of the row span of m over Z/n: echelon, pivots are divisors
/// of n, entries above a pivot reduced modulo it, and the Howell property
/// (every span element vanishing on the first j columns is a combination of
/// the rows whose pivot lies beyond j). Zero rows are dropped.
inline RMatrix howell_form(const RMatrix& m) {
  const CoeffRing& R = m.ring();
  if (R.kind() != RingKind::IntegersMod)
    throw Error(ErrorKind::UnsupportedRing, "howell_form needs Z/n, got " + R.name());
  const CoeffRing Z = CoeffRing::integers();
  const Scalar n(R.modulus());
  RMatrix lifted = vstack(lift_to_integers(m), scaled(RMatrix::identity(Z, m.cols()), n));
  HermiteResult hr = hermite_form(lifted);
  RMatrix out(R, 0, m.cols());
  for (std::size_t k = 0; k < hr.rank(); ++k) {
    const std::size_t j = hr.pivots[k];
    if (hr.h(k, j) == n) continue;
    out.append_row(hr.h.row(k));
  }
  return out;
}

/// Canonical generating set of a row span: Hermite rows over PIDs, Howell
/// rows over Z/n.
struct Echelon {
  RMatrix rows;
  std::vector<std::size_t> pivots;
};

inline std::size_t leading_column(const Vector& v) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (!is_zero(v[j])) return j;
  return v.size();
}

inline Echelon echelon_form(const RMatrix& m) {
  const CoeffRing& R = m.ring();
  if (R.kind() == RingKind::IntegersMod) {
    Echelon e{howell_form(m), {}};
    for (std::size_t i = 0; i < e.rows.rows(); ++i) e.pivots.push_back(leading_column(e.rows.row(i)));
    return e;
  }
  HermiteResult hr = hermite_form(m);
  return {hr.h.select_rows(0, hr.rank()), hr.pivots};
}

/// Canonical representative of v modulo the span of an echelon form.
inline Vector reduce_modulo(const Vector& v, const Echelon& e) {
  const CoeffRing& R = e.rows.ring();
  Vector out = canon_vector(R, v);
  for (std::size_t k = 0; k < e.rows.rows(); ++k) {
    const std::size_t j = e.pivots[k];
    const Scalar& p = e.rows(k, j);
    if (is_zero(out[j])) continue;
    Scalar q;
    if (R.is_field())
      q = R.exact_div(out[j], p);
    else
      q = Scalar(floor_div(out[j].get_num(), p.get_num()));
    if (is_zero(q)) continue;
    const Vector row = e.rows.row(k);
    vec_axpy(out, R.neg(q), row, R);
  }
  return out;
}

inline bool in_span(const Vector& v, const Echelon& e) { return vec_is_zero(reduce_modulo(v, e)); }

inline bool in_span(const Vector& v, const RMatrix& m) { return in_span(v, echelon_form(m)); }

/// Do two matrices have the same row span?
inline bool same_span(const RMatrix& a, const RMatrix& b) {
  require_same_ring(a.ring(), b.ring(), "same_span");
  if (a.cols() != b.cols()) return false;
  return echelon_form(a).rows == echelon_form(b).rows;
}

/// Rows generating {x : x*m = 0}. Over PIDs a free basis, over Z/n a Howell
/// generating set of the kernel module.
inline RMatrix kernel(const RMatrix& m) {
  const CoeffRing& R = m.ring();
  if (R.is_pid()) {
    HermiteResult hr = hermite_form(m);
    return hr.u.select_rows(hr.rank(), m.rows());
  }
  const CoeffRing Z = CoeffRing::integers();
  RMatrix lifted = vstack(lift_to_integers(m), scaled(RMatrix::identity(Z, m.cols()), Scalar(R.modulus())));
  RMatrix k = kernel(lifted).select_cols(0, m.rows());
  return howell_form(change_ring(k, R));
}

/// Some x with x*m = b, or nullopt when the system is inconsistent.
inline std::optional<Vector> solve(const RMatrix& m, const Vector& b) {
  const CoeffRing& R = m.ring();
  if (b.size() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "solve: right-hand side length differs from column count");
  if (!R.is_pid()) {
    const CoeffRing Z = CoeffRing::integers();
    RMatrix lifted = vstack(lift_to_integers(m), scaled(RMatrix::identity(Z, m.cols()), Scalar(R.modulus())));
    auto x = solve(lifted, canon_vector(R, b));
    if (!x) return std::nullopt;
    x->resize(m.rows());
    return canon_vector(R, *x);
  }
  HermiteResult hr = hermite_form(m);
  Vector residual = canon_vector(R, b);
  Vector y(hr.rank(), Scalar(0));
  for (std::size_t k = 0; k < hr.rank(); ++k) {
    const std::size_t j = hr.pivots[k];
    if (is_zero(residual[j])) continue;
    if (!R.divides(hr.h(k, j), residual[j])) return std::nullopt;
    y[k] = R.exact_div(residual[j], hr.h(k, j));
    vec_axpy(residual, R.neg(y[k]), hr.h.row(k), R);
  }
  if (!vec_is_zero(residual)) return std::nullopt;
  Vector x(m.rows(), Scalar(0));
  for (std::size_t k = 0; k < hr.rank(); ++k) vec_axpy(x, y[k], hr.u.row(k), R);
  return x;
}

inline std::size_t rank(const RMatrix& m) {
  if (m.ring().is_pid()) return hermite_form(m).rank();
  return howell_form(m).rows();
}

/// Determinant of a square matrix (Bareiss over Z, elimination over Q,
/// integer lift for the modular rings).
inline Scalar determinant(const RMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "determinant of a non-square matrix");
  const CoeffRing& R = m.ring();
  const std::size_t n = m.rows();
  if (n == 0) return R.one();
  if (R.is_modular()) return R.canon(determinant(lift_to_integers(m)));
  std::vector<Scalar> a(m.entries());
  auto at = [&](std::size_t i, std::size_t j) -> Scalar& { return a[i * n + j]; };
  Scalar sign = 1;
  if (R.kind() == RingKind::Rationals) {
    Scalar det = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && is_zero(at(p, c))) ++p;
      if (p == n) return 0;
      if (p != c) {
        for (std::size_t j = 0; j < n; ++j) std::swap(at(p, j), at(c, j));
        sign = -sign;
      }
      det *= at(c, c);
      for (std::size_t i = c + 1; i < n; ++i) {
        if (is_zero(at(i, c))) continue;
        const Scalar f = at(i, c) / at(c, c);
        for (std::size_t j = c; j < n; ++j) at(i, j) -= f * at(c, j);
      }
    }
    return sign * det;
  }
  Scalar prev = 1;
  for (std::size_t c = 0; c + 1 < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(at(p, c))) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(p, j), at(c, j));
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        Scalar num = at(c, c) * at(i, j) - at(i, c) * at(c, j);
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), num.get_num_mpz_t(), prev.get_num_mpz_t());
        at(i, j) = Scalar(q);
      }
      at(i, c) = 0;
    }
    prev = at(c, c);
  }
  return sign * at(n - 1, n - 1);
}

inline bool is_invertible(const RMatrix& m) {
  return m.rows() == m.cols() && m.ring().is_unit(determinant(m));
}

/// Two-sided inverse of an invertible square matrix.
inline RMatrix inverse(const RMatrix& m) {
  if (!is_invertible(m)) throw Error(ErrorKind::NotAUnit, "matrix is not invertible");
  const CoeffRing& R = m.ring();
  RMatrix inv(R, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto x = solve(m, unit_vector(R, m.cols(), i));
    for (std::size_t j = 0; j < m.rows(); ++j) inv.set(i, j, (*x)[j]);
  }
  return inv;
}

}  // namespace hopfdual
