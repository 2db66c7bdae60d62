#pragma once

// Exact integer and rational linear algebra over lattices.
//
// Everything here is built on GMP (mpz_class / mpq_class); no floating point
// is used anywhere in the library.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fano4 {

using Integer = mpz_class;
using Rational = mpq_class;
using IVec = std::vector<Integer>;
using QVec = std::vector<Rational>;

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

inline std::string to_string(const Integer& z) { return z.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

template <class Vec>
std::string to_string_vec(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i].get_str();
  }
  os << ')';
  return os.str();
}

inline IVec ivec(std::initializer_list<long> xs) {
  IVec v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline QVec to_qvec(const IVec& v) { return QVec(v.begin(), v.end()); }

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const QVec& a, const IVec& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const IVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}
inline bool is_zero(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

inline Integer content(const IVec& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

/// Divides by the gcd of the entries. The zero vector is returned unchanged.
inline IVec primitive(IVec v) {
  Integer g = content(v);
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return v;
}

/// Smallest positive integer multiple of a rational vector that is integral
/// and primitive (direction preserved).
inline IVec primitive(const QVec& v) {
  Integer l = 1;
  for (const auto& q : v) l = lcm(l, Integer(q.get_den()));
  IVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * l;
    out[i] = s.get_num();
  }
  return primitive(std::move(out));
}

inline IVec neg(IVec v) {
  for (auto& x : v) x = -x;
  return v;
}

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("IntMatrix: ragged initializer");
      for (long x : r) data_.emplace_back(x);
    }
  }

  static IntMatrix from_rows(const std::vector<IVec>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionError("IntMatrix::from_rows: ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IVec row(std::size_t i) const {
    return IVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  IVec col(std::size_t j) const {
    IVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("IntMatrix product: inner dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Row-vector times matrix: v·M.
inline IVec mul(const IVec& v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw DimensionError("vector-matrix product: size mismatch");
  IVec out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

/// Matrix times column vector: M·v.
inline IVec mul(const IntMatrix& m, const IVec& v) {
  if (v.size() != m.cols()) throw DimensionError("matrix-vector product: size mismatch");
  IVec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

struct HermiteResult {
  IntMatrix H;  // row Hermite normal form
  IntMatrix U;  // unimodular, U * M == H
  std::size_t rank = 0;
};

/// Row-style Hermite normal form: returns (H, U) with U unimodular and U·M = H.
/// H is in row echelon form, pivots positive, entries above a pivot reduced
/// into [0, pivot). Zero rows are at the bottom.
inline HermiteResult hermite_normal_form(const IntMatrix& M) {
  if (M.rows() == 0) throw DimensionError("hermite_normal_form: empty matrix");
  const std::size_t m = M.rows(), n = M.cols();
  IntMatrix H = M;
  IntMatrix U = IntMatrix::identity(m);
  auto combine = [&](std::size_t r1, std::size_t r2, const Integer& a, const Integer& b,
                     const Integer& c, const Integer& d) {
    // (r1, r2) <- (a*r1 + b*r2, c*r1 + d*r2); requires ad - bc = ±1.
    for (IntMatrix* X : {&H, &U}) {
      for (std::size_t j = 0; j < X->cols(); ++j) {
        Integer x = (*X)(r1, j), y = (*X)(r2, j);
        (*X)(r1, j) = a * x + b * y;
        (*X)(r2, j) = c * x + d * y;
      }
    }
  };
  auto addmul = [&](std::size_t dst, std::size_t src, const Integer& q) {
    // row dst -= q * row src
    for (IntMatrix* X : {&H, &U})
      for (std::size_t j = 0; j < X->cols(); ++j) (*X)(dst, j) -= q * (*X)(src, j);
  };
  auto negate = [&](std::size_t r) {
    for (IntMatrix* X : {&H, &U})
      for (std::size_t j = 0; j < X->cols(); ++j) (*X)(r, j) = -(*X)(r, j);
  };

  std::size_t prow = 0;
  for (std::size_t col = 0; col < n && prow < m; ++col) {
    // Eliminate below prow in this column using extended gcd steps.
    for (std::size_t i = prow + 1; i < m; ++i) {
      if (H(i, col) == 0) continue;
      if (H(prow, col) == 0) {
        H.swap_rows(prow, i);
        U.swap_rows(prow, i);
        continue;
      }
      Integer a = H(prow, col), b = H(i, col);
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer ag = a / g, bg = b / g;
      // [s t; -b/g a/g] has determinant (s*a + t*b)/g = 1.
      combine(prow, i, s, t, -bg, ag);
    }
    if (H(prow, col) == 0) continue;
    if (H(prow, col) < 0) negate(prow);
    const Integer p = H(prow, col);
    for (std::size_t i = 0; i < prow; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, col).get_mpz_t(), p.get_mpz_t());
      if (q != 0) addmul(i, prow, q);
    }
    ++prow;
  }
  return {std::move(H), std::move(U), prow};
}

/// Saturated lattice basis of the left kernel {v : v·M = 0}, in Hermite
/// normal form (hence canonical).
inline std::vector<IVec> integer_kernel(const IntMatrix& M) {
  if (M.rows() == 0) throw DimensionError("integer_kernel: empty matrix");
  auto hr = hermite_normal_form(M);
  std::vector<IVec> basis;
  for (std::size_t i = hr.rank; i < M.rows(); ++i) basis.push_back(hr.U.row(i));
  if (basis.empty()) return basis;
  auto canon = hermite_normal_form(IntMatrix::from_rows(basis, M.rows()));
  std::vector<IVec> out;
  for (std::size_t i = 0; i < canon.rank; ++i) out.push_back(canon.H.row(i));
  return out;
}

/// Canonical Hermite basis of the lattice spanned by the given rows.
inline std::vector<IVec> lattice_hnf_basis(const std::vector<IVec>& rows, std::size_t cols) {
  if (rows.empty()) return {};
  auto hr = hermite_normal_form(IntMatrix::from_rows(rows, cols));
  std::vector<IVec> out;
  for (std::size_t i = 0; i < hr.rank; ++i) out.push_back(hr.H.row(i));
  return out;
}

// ---------------------------------------------------------------------------
// Rational linear algebra.

/// Reduced row echelon form over Q, in place. Returns the pivot columns.
inline std::vector<std::size_t> rref(std::vector<QVec>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

inline std::size_t rank(const std::vector<IVec>& rows, std::size_t cols) {
  std::vector<QVec> q;
  q.reserve(rows.size());
  for (const auto& r : rows) q.push_back(to_qvec(r));
  return rref(q, cols).size();
}

inline std::size_t rank(const IntMatrix& M) {
  std::vector<IVec> rows;
  for (std::size_t i = 0; i < M.rows(); ++i) rows.push_back(M.row(i));
  return rank(rows, M.cols());
}

/// Exact determinant of a square integer matrix (fraction-free Bareiss).
inline Integer determinant(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw DimensionError("determinant: matrix not square");
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  IntMatrix A = M;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && A(p, k) == 0) ++p;
      if (p == n) return 0;
      A.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = A(i, j) * A(k, k) - A(i, k) * A(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        A(i, j) = v;
      }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

/// Solves A·x = b exactly. Returns one solution (free variables set to zero),
/// or std::nullopt when the system is inconsistent.
inline std::optional<QVec> solve_rational(const IntMatrix& A, const QVec& b) {
  if (A.rows() != b.size()) throw DimensionError("solve_rational: rows(A) != size(b)");
  const std::size_t n = A.cols();
  std::vector<QVec> aug(A.rows(), QVec(n + 1));
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = A(i, j);
    aug[i][n] = b[i];
  }
  auto piv = rref(aug, n + 1);
  if (!piv.empty() && piv.back() == n) return std::nullopt;
  QVec x(n);
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][n];
  return x;
}

/// Solves Σ x_j · cols[j] = target where cols are column vectors.
inline std::optional<QVec> solve_columns(const std::vector<IVec>& cols, const QVec& target) {
  if (cols.empty()) return is_zero(target) ? std::optional<QVec>(QVec{}) : std::nullopt;
  IntMatrix A(target.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != target.size()) throw DimensionError("solve_columns: size mismatch");
    for (std::size_t i = 0; i < target.size(); ++i) A(i, j) = cols[j][i];
  }
  return solve_rational(A, target);
}

/// Basis of the rational orthogonal complement of span(rows), as primitive
/// integer vectors in canonical (RREF-derived) form.
inline std::vector<IVec> orthogonal_complement(const std::vector<IVec>& rows, std::size_t dim) {
  std::vector<QVec> q;
  for (const auto& r : rows) q.push_back(to_qvec(r));
  auto piv = rref(q, dim);
  std::vector<bool> is_piv(dim, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<IVec> out;
  for (std::size_t f = 0; f < dim; ++f) {
    if (is_piv[f]) continue;
    QVec v(dim);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -q[r][f];
    out.push_back(primitive(v));
  }
  // Canonical basis of the complement: RREF of the vectors, primitive scaled.
  std::vector<QVec> qc;
  for (const auto& v : out) qc.push_back(to_qvec(v));
  rref(qc, dim);
  std::vector<IVec> canon;
  for (const auto& v : qc) canon.push_back(primitive(v));
  return canon;
}

/// Canonical basis (RREF rows, primitive integer scaling) of span(rows).
inline std::vector<IVec> span_basis(const std::vector<IVec>& rows, std::size_t dim) {
  std::vector<QVec> q;
  for (const auto& r : rows) q.push_back(to_qvec(r));
  rref(q, dim);
  std::vector<IVec> out;
  for (const auto& v : q) out.push_back(primitive(v));
  return out;
}

}  // namespace fano4
