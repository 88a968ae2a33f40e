#pragma once

// Brute-force oracles used by the test suites. Nothing in here calls into the
// normal-form kernels; everything is enumeration or direct expansion.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "hopfdual/matrix.hpp"

namespace oracle {

using hopfdual::CoeffRing;
using hopfdual::RMatrix;
using hopfdual::Scalar;
using hopfdual::Vector;

using IntVec = std::vector<long>;

/// All Z/n-combinations of the rows of m (m over Z/n, small n and width).
inline std::set<IntVec> enumerate_span(const RMatrix& m) {
  const long n = m.ring().modulus().get_si();
  std::set<IntVec> span;
  span.insert(IntVec(m.cols(), 0));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<IntVec> current(span.begin(), span.end());
    for (const auto& v : current)
      for (std::size_t r = 0; r < m.rows(); ++r) {
        IntVec w = v;
        for (std::size_t j = 0; j < m.cols(); ++j) w[j] = (w[j] + m(r, j).get_num().get_si()) % n;
        if (span.insert(w).second) grew = true;
      }
  }
  return span;
}

/// Every vector in (Z/n)^len.
inline std::vector<IntVec> all_vectors(long n, std::size_t len) {
  std::vector<IntVec> out;
  IntVec v(len, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < len && ++v[i] == n) v[i++] = 0;
    if (i == len) break;
  }
  return out;
}

inline IntVec times(const IntVec& x, const RMatrix& m) {
  const long n = m.ring().modulus().get_si();
  IntVec out(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out[j] = (out[j] + x[i] * m(i, j).get_num().get_si()) % n;
  return out;
}

/// Order of Z^g / (rows of rel + E Z^g), by enumerating the span mod E.
inline long group_order_mod(const RMatrix& rel, std::size_t gens, long exponent) {
  const CoeffRing R = CoeffRing::integers_mod(exponent);
  RMatrix m(R, rel.rows(), gens);
  for (std::size_t i = 0; i < rel.rows(); ++i)
    for (std::size_t j = 0; j < gens; ++j) m.set(i, j, R.canon(rel(i, j)));
  long total = 1;
  for (std::size_t j = 0; j < gens; ++j) total *= exponent;
  return total / static_cast<long>(enumerate_span(m).size());
}

/// Additive order of v in Z^g / (rel + E Z^g), by repeated addition.
inline long element_order_mod(const RMatrix& rel, const IntVec& v, long exponent) {
  const CoeffRing R = CoeffRing::integers_mod(exponent);
  RMatrix m(R, rel.rows(), v.size());
  for (std::size_t i = 0; i < rel.rows(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m.set(i, j, R.canon(rel(i, j)));
  const auto span = enumerate_span(m);
  IntVec acc(v.size(), 0);
  for (long k = 1;; ++k) {
    for (std::size_t j = 0; j < v.size(); ++j) acc[j] = ((acc[j] + v[j]) % exponent + exponent) % exponent;
    if (span.count(acc)) return k;
  }
}

inline mpz_class brute_det(const std::vector<std::vector<mpz_class>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  mpz_class total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<mpz_class>> sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<mpz_class> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(a[i][j]);
      sub.push_back(row);
    }
    mpz_class term = a[0][c] * brute_det(sub);
    total += (c % 2 == 0) ? term : mpz_class(-term);
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Invariant factors of an integer matrix from determinantal divisors:
/// D_k = gcd of all k x k minors, d_k = D_k / D_{k-1}.
inline std::vector<mpz_class> invariant_factors_by_minors(const RMatrix& m) {
  std::vector<mpz_class> d;
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    mpz_class g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<mpz_class>> sub;
        for (auto i : r) {
          std::vector<mpz_class> row;
          for (auto j : c) row.push_back(m(i, j).get_num());
          sub.push_back(row);
        }
        mpz_class det = brute_det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
      }
    if (g == 0) break;
    d.push_back(g / prev);
    prev = g;
  }
  return d;
}

inline RMatrix random_matrix(std::mt19937& rng, const CoeffRing& R, std::size_t rows, std::size_t cols,
                             long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  RMatrix m(R, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, Scalar(dist(rng)));
  return m;
}

/// Raw Hopf structure tensors as machine integers, reduced mod `mod` (0 = Z).
struct RawHopf {
  long mod = 0;
  std::size_t n = 0;
  IntVec m, u, d, eps, s;  // s empty when there is no antipode
};

inline long reduce(long v, long mod) { return mod ? ((v % mod) + mod) % mod : v; }

/// Every Hopf axiom expanded index by index with nested loops.
inline bool naive_hopf_valid(const RawHopf& h) {
  const std::size_t n = h.n;
  const long md = h.mod;
  auto M = [&](std::size_t i, std::size_t j, std::size_t k) { return h.m[(i * n + j) * n + k]; };
  auto D = [&](std::size_t i, std::size_t j, std::size_t k) { return h.d[(i * n + j) * n + k]; };
  auto eq = [&](long a, long b) { return reduce(a - b, md) == 0; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t t = 0; t < n; ++t) {
          long l = 0, r = 0, dl = 0, dr = 0;
          for (std::size_t p = 0; p < n; ++p) {
            l += M(i, j, p) * M(p, k, t);
            r += M(i, p, t) * M(j, k, p);
            dl += D(i, p, t) * D(p, j, k);
            dr += D(i, j, p) * D(p, k, t);
          }
          if (!eq(l, r) || !eq(dl, dr)) return false;
        }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      long ul = 0, ur = 0, cl = 0, cr = 0;
      for (std::size_t p = 0; p < n; ++p) {
        ul += h.u[p] * M(p, i, k);
        ur += h.u[p] * M(i, p, k);
        cl += h.eps[p] * D(i, p, k);
        cr += h.eps[p] * D(i, k, p);
      }
      const long id = i == k ? 1 : 0;
      if (!eq(ul, id) || !eq(ur, id) || !eq(cl, id) || !eq(cr, id)) return false;
    }
  // Delta(e_i e_j) = Delta(e_i) Delta(e_j)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          long l = 0, r = 0;
          for (std::size_t p = 0; p < n; ++p) l += M(i, j, p) * D(p, a, b);
          for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
              for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) r += D(i, p, q) * D(j, x, y) * M(p, x, a) * M(q, y, b);
          if (!eq(l, r)) return false;
        }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      long l = 0;
      for (std::size_t p = 0; p < n; ++p) l += h.u[p] * D(p, a, b);
      if (!eq(l, h.u[a] * h.u[b])) return false;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long l = 0;
      for (std::size_t p = 0; p < n; ++p) l += M(i, j, p) * h.eps[p];
      if (!eq(l, h.eps[i] * h.eps[j])) return false;
    }
  long e1 = 0;
  for (std::size_t p = 0; p < n; ++p) e1 += h.u[p] * h.eps[p];
  if (!eq(e1, 1)) return false;
  if (!h.s.empty())
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        long l = 0, r = 0;
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = 0; q < n; ++q)
            for (std::size_t x = 0; x < n; ++x) {
              l += D(i, p, q) * h.s[p * n + x] * M(x, q, k);
              r += D(i, p, q) * h.s[q * n + x] * M(p, x, k);
            }
        if (!eq(l, h.eps[i] * h.u[k]) || !eq(r, h.eps[i] * h.u[k])) return false;
      }
  return true;
}

inline IntVec to_ints(const std::vector<Scalar>& v) {
  IntVec out;
  for (const auto& x : v) out.push_back(x.get_num().get_si());
  return out;
}

}  // namespace oracle
