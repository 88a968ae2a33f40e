#pragma once

// Dense matrices over a CoeffRing. Maps act on the right of row vectors:
// a linear map f with matrix F sends v to v*F, and the composite "f then g"
// has matrix F*G.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ring.hpp"

namespace hopfdual {

class RMatrix {
 public:
  RMatrix() = default;

  RMatrix(CoeffRing ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

  RMatrix(CoeffRing ring, std::size_t rows, std::size_t cols, const std::vector<Scalar>& entries)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(entries) {
    if (data_.size() != rows * cols) throw Error(ErrorKind::ShapeMismatch, "entry count does not match shape");
    for (auto& e : data_) e = ring_.canon(e);
  }

  RMatrix(CoeffRing ring, std::initializer_list<std::initializer_list<long>> rows) : ring_(std::move(ring)) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "ragged matrix literal");
      for (long v : r) data_.push_back(ring_.from_int(v));
    }
  }

  static RMatrix identity(const CoeffRing& ring, std::size_t n) {
    RMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = ring.one();
    return m;
  }

  static RMatrix from_rows(const CoeffRing& ring, std::size_t cols, const std::vector<Vector>& rows) {
    RMatrix m(ring, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(ErrorKind::ShapeMismatch, "row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m.data_[i * cols + j] = ring.canon(rows[i][j]);
    }
    return m;
  }

  static RMatrix row_vector(const CoeffRing& ring, const Vector& v) { return from_rows(ring, v.size(), {v}); }

  static RMatrix diagonal(const CoeffRing& ring, const Vector& d) {
    RMatrix m(ring, d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.data_[i * d.size() + i] = ring.canon(d[i]);
    return m;
  }

  const CoeffRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const Scalar& v) { data_[i * cols_ + j] = ring_.canon(v); }

  // Raw access for kernels that keep entries canonical themselves.
  Scalar& raw(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const std::vector<Scalar>& entries() const { return data_; }

  Vector row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  Vector col(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  std::vector<Vector> row_list() const {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return hopfdual::is_zero(s); });
  }

  RMatrix transpose() const {
    RMatrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
    return t;
  }

  RMatrix select_rows(std::size_t begin, std::size_t end) const {
    RMatrix m(ring_, end - begin, cols_);
    std::copy(data_.begin() + static_cast<std::ptrdiff_t>(begin * cols_),
              data_.begin() + static_cast<std::ptrdiff_t>(end * cols_), m.data_.begin());
    return m;
  }

  RMatrix select_cols(std::size_t begin, std::size_t end) const {
    RMatrix m(ring_, rows_, end - begin);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = begin; j < end; ++j) m.data_[i * (end - begin) + (j - begin)] = (*this)(i, j);
    return m;
  }

  void append_row(const Vector& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "append_row length mismatch");
    for (const auto& e : v) data_.push_back(ring_.canon(e));
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap(data_[i * cols_ + a], data_[i * cols_ + b]);
  }

  /// rows (a, b) <- (s*a + t*b, u*a + v*b)
  void combine_rows(std::size_t a, std::size_t b, const Scalar& s, const Scalar& t, const Scalar& u,
                    const Scalar& v) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const Scalar x = data_[a * cols_ + j];
      const Scalar y = data_[b * cols_ + j];
      if (hopfdual::is_zero(x) && hopfdual::is_zero(y)) continue;
      data_[a * cols_ + j] = ring_.add(ring_.mul(s, x), ring_.mul(t, y));
      data_[b * cols_ + j] = ring_.add(ring_.mul(u, x), ring_.mul(v, y));
    }
  }

  /// cols (a, b) <- (s*a + t*b, u*a + v*b)
  void combine_cols(std::size_t a, std::size_t b, const Scalar& s, const Scalar& t, const Scalar& u,
                    const Scalar& v) {
    for (std::size_t i = 0; i < rows_; ++i) {
      const Scalar x = data_[i * cols_ + a];
      const Scalar y = data_[i * cols_ + b];
      if (hopfdual::is_zero(x) && hopfdual::is_zero(y)) continue;
      data_[i * cols_ + a] = ring_.add(ring_.mul(s, x), ring_.mul(t, y));
      data_[i * cols_ + b] = ring_.add(ring_.mul(u, x), ring_.mul(v, y));
    }
  }

  /// row a <- row a + c * row b
  void add_row_multiple(std::size_t a, std::size_t b, const Scalar& c) {
    if (hopfdual::is_zero(c)) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!hopfdual::is_zero(data_[b * cols_ + j]))
        data_[a * cols_ + j] = ring_.add(data_[a * cols_ + j], ring_.mul(c, data_[b * cols_ + j]));
  }

  void scale_row(std::size_t a, const Scalar& c) {
    for (std::size_t j = 0; j < cols_; ++j) data_[a * cols_ + j] = ring_.mul(c, data_[a * cols_ + j]);
  }

  bool operator==(const RMatrix& o) const {
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const RMatrix& o) const { return !(*this == o); }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  CoeffRing ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

inline std::ostream& operator<<(std::ostream& os, const RMatrix& m) { return os << m.str(); }

inline RMatrix operator*(const RMatrix& a, const RMatrix& b) {
  require_same_ring(a.ring(), b.ring(), "matrix product");
  if (a.cols() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "matrix product inner dimensions differ");
  const CoeffRing& R = a.ring();
  RMatrix c(R, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& x = a(i, k);
      if (is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Scalar& y = b(k, j);
        if (is_zero(y)) continue;
        c.raw(i, j) += x * y;
      }
    }
  if (!R.is_field() || R.kind() == RingKind::PrimeField)
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) c.raw(i, j) = R.canon(c(i, j));
  return c;
}

inline RMatrix operator+(const RMatrix& a, const RMatrix& b) {
  require_same_ring(a.ring(), b.ring(), "matrix sum");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::ShapeMismatch, "matrix sum shapes differ");
  RMatrix c(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.raw(i, j) = a.ring().add(a(i, j), b(i, j));
  return c;
}

inline RMatrix operator-(const RMatrix& a, const RMatrix& b) {
  require_same_ring(a.ring(), b.ring(), "matrix difference");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::ShapeMismatch, "matrix difference shapes differ");
  RMatrix c(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.raw(i, j) = a.ring().sub(a(i, j), b(i, j));
  return c;
}

inline RMatrix scaled(const RMatrix& a, const Scalar& c) {
  RMatrix out(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.raw(i, j) = a.ring().mul(c, a(i, j));
  return out;
}

/// v * M for a row vector v.
inline Vector vec_mul(const Vector& v, const RMatrix& m) {
  if (v.size() != m.rows()) throw Error(ErrorKind::ShapeMismatch, "vector length does not match matrix rows");
  const CoeffRing& R = m.ring();
  Vector out(m.cols(), Scalar(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (is_zero(v[i])) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) out[j] += v[i] * m(i, j);
  }
  for (auto& e : out) e = R.canon(e);
  return out;
}

/// Kronecker product; entry (i*b.rows + k, j*b.cols + l) = a(i,j) * b(k,l).
inline RMatrix kronecker(const RMatrix& a, const RMatrix& b) {
  require_same_ring(a.ring(), b.ring(), "kronecker");
  const CoeffRing& R = a.ring();
  RMatrix c(R, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& x = a(i, j);
      if (is_zero(x)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!is_zero(b(k, l))) c.raw(i * b.rows() + k, j * b.cols() + l) = R.mul(x, b(k, l));
    }
  return c;
}

inline Vector kron(const Vector& a, const Vector& b, const CoeffRing& R) {
  Vector out(a.size() * b.size(), Scalar(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!is_zero(b[j])) out[i * b.size() + j] = R.mul(a[i], b[j]);
  }
  return out;
}

inline RMatrix vstack(const RMatrix& a, const RMatrix& b) {
  require_same_ring(a.ring(), b.ring(), "vstack");
  if (a.cols() != b.cols()) throw Error(ErrorKind::ShapeMismatch, "vstack column counts differ");
  RMatrix c(a.ring(), a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.raw(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c.raw(a.rows() + i, j) = b(i, j);
  return c;
}

inline RMatrix hstack(const RMatrix& a, const RMatrix& b) {
  require_same_ring(a.ring(), b.ring(), "hstack");
  if (a.rows() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "hstack row counts differ");
  RMatrix c(a.ring(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c.raw(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c.raw(i, a.cols() + j) = b(i, j);
  }
  return c;
}

inline Vector vec_add(const Vector& a, const Vector& b, const CoeffRing& R) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "vector sum length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = R.add(a[i], b[i]);
  return out;
}

inline Vector vec_sub(const Vector& a, const Vector& b, const CoeffRing& R) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "vector difference length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = R.sub(a[i], b[i]);
  return out;
}

inline Vector vec_scale(const Vector& a, const Scalar& c, const CoeffRing& R) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = R.mul(c, a[i]);
  return out;
}

inline void vec_axpy(Vector& y, const Scalar& c, const Vector& x, const CoeffRing& R) {
  if (is_zero(c)) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!is_zero(x[i])) y[i] = R.add(y[i], R.mul(c, x[i]));
}

inline bool vec_is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return is_zero(s); });
}

inline Scalar dot(const Vector& a, const Vector& b, const CoeffRing& R) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "dot length mismatch");
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!is_zero(a[i]) && !is_zero(b[i])) s += a[i] * b[i];
  return R.canon(s);
}

inline Vector unit_vector(const CoeffRing& R, std::size_t n, std::size_t i) {
  Vector v(n, Scalar(0));
  v[i] = R.one();
  return v;
}

inline Vector canon_vector(const CoeffRing& R, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = R.canon(v[i]);
  return out;
}

inline std::string vec_str(const Vector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + "]";
}

/// Lifts a matrix over Z/n or F_p to Z with canonical residues as entries.
inline RMatrix lift_to_integers(const RMatrix& m) {
  return RMatrix(CoeffRing::integers(), m.rows(), m.cols(), m.entries());
}

inline RMatrix change_ring(const RMatrix& m, const CoeffRing& R) { return RMatrix(R, m.rows(), m.cols(), m.entries()); }

}  // namespace hopfdual
