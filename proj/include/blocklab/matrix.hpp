#ifndef BLOCKLAB_MATRIX_HPP
#define BLOCKLAB_MATRIX_HPP

#include <optional>

#include "blocklab/poly.hpp"

namespace blocklab {

// Dense matrix over F_q, row-major.  Vectors are columns throughout; a
// subspace is represented by a matrix whose columns form its canonical basis
// (reduced echelon of the transpose, transposed back).
class Mat {
 public:
  static constexpr std::size_t max_columns = 4096;

  Mat() = default;
  Mat(Field f, std::size_t rows, std::size_t cols)
      : F_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, 0) {
    if (cols > max_columns) throw std::invalid_argument("Mat: column cap exceeded");
  }

  static Mat identity(Field f, std::size_t n) {
    Mat m(std::move(f), n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static Mat from_rows(Field f, const std::vector<std::vector<fq>>& rows) {
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Mat m(std::move(f), r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("Mat::from_rows: ragged rows");
      for (std::size_t j = 0; j < c; ++j) {
        if (rows[i][j] >= m.F_->q())
          throw std::invalid_argument("Mat::from_rows: element code out of range");
        m.at(i, j) = rows[i][j];
      }
    }
    return m;
  }

  static Mat column(Field f, const std::vector<fq>& v) {
    Mat m(std::move(f), v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
    return m;
  }

  const Field& field() const { return F_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  fq& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  fq at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<fq>& data() const { return a_; }
  std::vector<fq>& data() { return a_; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_zero() const {
    for (fq x : a_)
      if (x) return false;
    return true;
  }

  std::vector<fq> col(std::size_t j) const {
    std::vector<fq> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
  }

  Mat operator+(const Mat& o) const {
    check_shape(o);
    Mat r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->add(a_[i], o.a_[i]);
    return r;
  }

  Mat operator-(const Mat& o) const {
    check_shape(o);
    Mat r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->sub(a_[i], o.a_[i]);
    return r;
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Mat::mul: shape mismatch");
    Mat r(F_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        fq aik = at(i, k);
        if (aik == 0) continue;
        const fq* brow = &o.a_[k * o.cols_];
        fq* rrow = &r.a_[i * o.cols_];
        for (std::size_t j = 0; j < o.cols_; ++j)
          if (brow[j]) rrow[j] = F_->add(rrow[j], F_->mul(aik, brow[j]));
      }
    return r;
  }

  Mat scale(fq c) const {
    Mat r = *this;
    for (auto& x : r.a_) x = F_->mul(x, c);
    return r;
  }

  Mat neg() const {
    Mat r = *this;
    for (auto& x : r.a_) x = F_->neg(x);
    return r;
  }

  Mat transpose() const {
    Mat r(F_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  fq trace() const {
    if (rows_ != cols_) throw std::invalid_argument("Mat::trace: not square");
    fq t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t = F_->add(t, at(i, i));
    return t;
  }

  Mat pow(std::uint64_t e) const {
    if (rows_ != cols_) throw std::invalid_argument("Mat::pow: not square");
    Mat r = identity(F_, rows_), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  // Kronecker product; (A kron B)(i*rB + r, j*cB + c) = A(i,j)*B(r,c).
  Mat kron(const Mat& B) const {
    Mat r(F_, rows_ * B.rows_, cols_ * B.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        fq aij = at(i, j);
        if (aij == 0) continue;
        for (std::size_t u = 0; u < B.rows_; ++u)
          for (std::size_t v = 0; v < B.cols_; ++v)
            r.at(i * B.rows_ + u, j * B.cols_ + v) = F_->mul(aij, B.at(u, v));
      }
    return r;
  }

  Mat direct_sum(const Mat& B) const {
    Mat r(F_, rows_ + B.rows_, cols_ + B.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < B.rows_; ++i)
      for (std::size_t j = 0; j < B.cols_; ++j) r.at(rows_ + i, cols_ + j) = B.at(i, j);
    return r;
  }

  Mat hstack(const Mat& B) const {
    if (rows_ != B.rows_) throw std::invalid_argument("Mat::hstack: row mismatch");
    Mat r(F_, rows_, cols_ + B.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
      for (std::size_t j = 0; j < B.cols_; ++j) r.at(i, cols_ + j) = B.at(i, j);
    }
    return r;
  }

  Mat vstack(const Mat& B) const {
    if (cols_ != B.cols_) throw std::invalid_argument("Mat::vstack: column mismatch");
    Mat r(F_, rows_ + B.rows_, cols_);
    std::copy(a_.begin(), a_.end(), r.a_.begin());
    std::copy(B.a_.begin(), B.a_.end(), r.a_.begin() + static_cast<std::ptrdiff_t>(a_.size()));
    return r;
  }

  Mat submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Mat r(F_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
    return r;
  }

  std::vector<fq> apply(const std::vector<fq>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Mat::apply: size mismatch");
    std::vector<fq> r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      fq acc = 0;
      const fq* row = &a_[i * cols_];
      for (std::size_t j = 0; j < cols_; ++j)
        if (row[j] && v[j]) acc = F_->add(acc, F_->mul(row[j], v[j]));
      r[i] = acc;
    }
    return r;
  }

  // In-place reduced row echelon form; returns pivot columns.  The result is
  // the canonical form of the row space, so downstream bases are unique.
  std::vector<std::size_t> rref_in_place() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t sel = rows_;
      for (std::size_t i = row; i < rows_; ++i)
        if (at(i, col) != 0) {
          sel = i;
          break;
        }
      if (sel == rows_) continue;
      if (sel != row)
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(row, j), at(sel, j));
      fq inv = F_->inv(at(row, col));
      for (std::size_t j = col; j < cols_; ++j) at(row, j) = F_->mul(at(row, j), inv);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == row) continue;
        fq f = at(i, col);
        if (f == 0) continue;
        for (std::size_t j = col; j < cols_; ++j)
          at(i, j) = F_->sub(at(i, j), F_->mul(f, at(row, j)));
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    Mat m = *this;
    return m.rref_in_place().size();
  }

  fq det() const {
    if (rows_ != cols_) throw std::invalid_argument("Mat::det: not square");
    Mat m = *this;
    fq d = 1;
    for (std::size_t col = 0; col < cols_; ++col) {
      std::size_t sel = rows_;
      for (std::size_t i = col; i < rows_; ++i)
        if (m.at(i, col) != 0) {
          sel = i;
          break;
        }
      if (sel == rows_) return 0;
      if (sel != col) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(col, j), m.at(sel, j));
        d = F_->neg(d);
      }
      d = F_->mul(d, m.at(col, col));
      fq inv = F_->inv(m.at(col, col));
      for (std::size_t i = col + 1; i < rows_; ++i) {
        fq f = F_->mul(m.at(i, col), inv);
        if (f == 0) continue;
        for (std::size_t j = col; j < cols_; ++j)
          m.at(i, j) = F_->sub(m.at(i, j), F_->mul(f, m.at(col, j)));
      }
    }
    return d;
  }

  std::optional<Mat> inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("Mat::inverse: not square");
    Mat aug = hstack(identity(F_, rows_));
    auto piv = aug.rref_in_place();
    if (piv.size() != rows_ || (rows_ > 0 && piv.back() >= rows_) ||
        (rows_ > 0 && piv != [&] {
          std::vector<std::size_t> expect(rows_);
          for (std::size_t i = 0; i < rows_; ++i) expect[i] = i;
          return expect;
        }()))
      return std::nullopt;
    return aug.submatrix(0, rows_, rows_, rows_);
  }

  bool invertible() const {
    return rows_ == cols_ && rank() == rows_;
  }

  // Canonical basis of the right null space, as columns.
  Mat kernel() const {
    Mat m = *this;
    auto pivots = m.rref_in_place();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::size_t k = cols_ - pivots.size();
    Mat basis(F_, cols_, k);
    std::size_t bi = 0;
    for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
      if (is_pivot[free_col]) continue;
      basis.at(free_col, bi) = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r)
        basis.at(pivots[r], bi) = F_->neg(m.at(r, free_col));
      ++bi;
    }
    return basis;
  }

  struct Solution;

  // Solve this * X = B; nullopt if inconsistent.
  inline std::optional<Solution> solve(const Mat& B) const;

  // Canonical basis of the span of the columns.
  Mat column_space() const {
    Mat t = transpose();
    auto piv = t.rref_in_place();
    Mat basis(F_, rows_, piv.size());
    for (std::size_t r = 0; r < piv.size(); ++r)
      for (std::size_t i = 0; i < rows_; ++i) basis.at(i, r) = t.at(r, i);
    return basis;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? "\n[" : "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += " ";
        s += F_->str(at(i, j));
      }
      s += "]";
    }
    return s;
  }

 private:
  void check_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("Mat: shape mismatch");
  }

  Field F_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<fq> a_;
};

struct Mat::Solution {
  Mat particular;  // one solution per right-hand-side column
  Mat kernel;      // canonical basis of the homogeneous solutions, as columns
};

inline std::optional<Mat::Solution> Mat::solve(const Mat& B) const {
  if (B.rows_ != rows_) throw std::invalid_argument("Mat::solve: shape mismatch");
  Mat aug = hstack(B);
  auto pivots = aug.rref_in_place();
  for (auto p : pivots)
    if (p >= cols_) return std::nullopt;
  Mat part(F_, cols_, B.cols_);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t j = 0; j < B.cols_; ++j)
      part.at(pivots[r], j) = aug.at(r, cols_ + j);
  return Solution{part, kernel()};
}

inline bool in_column_span(const Mat& basis, const std::vector<fq>& v) {
  return basis.solve(Mat::column(basis.field(), v)).has_value();
}

inline Mat subspace_sum(const Mat& A, const Mat& B) {
  return A.hstack(B).column_space();
}

inline Mat subspace_intersection(const Mat& A, const Mat& B) {
  if (A.cols() == 0 || B.cols() == 0) return Mat(A.field(), A.rows(), 0);
  Mat stacked = A.hstack(B.neg());
  Mat ker = stacked.kernel();
  Mat coefA = ker.submatrix(0, 0, A.cols(), ker.cols());
  return (A * coefA).column_space();
}

inline bool subspace_contains(const Mat& big, const Mat& small) {
  for (std::size_t j = 0; j < small.cols(); ++j)
    if (!in_column_span(big, small.col(j))) return false;
  return true;
}

inline bool same_subspace(const Mat& A, const Mat& B) {
  return A.column_space() == B.column_space();
}

// Projection data for the quotient F^n / span(W): proj is (n-r) x n,
// section is n x (n-r), proj*section = I and ker(proj) = span(W).
// Built from the reduced echelon of W^T, so the result is canonical.
struct QuotientMap {
  Mat proj;
  Mat section;
};

inline QuotientMap quotient_map(const Mat& W, std::size_t ambient_dim) {
  Field F = W.field();
  if (W.cols() != 0 && W.rows() != ambient_dim)
    throw std::invalid_argument("quotient_map: ambient mismatch");
  Mat R = W.transpose();
  auto pivots = R.rref_in_place();
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::size_t r = pivots.size(), m = ambient_dim - r;
  Mat proj(F, m, ambient_dim), section(F, ambient_dim, m);
  std::size_t fi = 0;
  for (std::size_t c = 0; c < ambient_dim; ++c) {
    if (is_pivot[c]) continue;
    section.at(c, fi) = 1;
    proj.at(fi, c) = 1;
    // Reducing e_{pivot} by the echelon rows spreads -row entries onto the
    // free coordinates.
    ++fi;
  }
  for (std::size_t row = 0; row < r; ++row) {
    std::size_t pc = pivots[row];
    std::size_t fj = 0;
    for (std::size_t c = 0; c < ambient_dim; ++c) {
      if (is_pivot[c]) continue;
      // e_{pc} reduces to -(free part of echelon row), so proj column pc
      // picks up -R[row][c] at the free coordinate c.
      proj.at(fj, pc) = F->neg(R.at(row, c));
      ++fj;
    }
  }
  return {proj, section};
}

// Characteristic polynomial (monic) via Hessenberg reduction.
inline Poly charpoly(const Mat& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("charpoly: not square");
  Field F = A.field();
  std::size_t n = A.rows();
  Mat H = A;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t sel = n;
    for (std::size_t i = j + 1; i < n; ++i)
      if (H.at(i, j) != 0) {
        sel = i;
        break;
      }
    if (sel == n) continue;
    if (sel != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(H.at(j + 1, c), H.at(sel, c));
      for (std::size_t r2 = 0; r2 < n; ++r2) std::swap(H.at(r2, j + 1), H.at(r2, sel));
    }
    fq inv = F->inv(H.at(j + 1, j));
    for (std::size_t i = j + 2; i < n; ++i) {
      fq f = F->mul(H.at(i, j), inv);
      if (f == 0) continue;
      for (std::size_t c = 0; c < n; ++c) H.at(i, c) = F->sub(H.at(i, c), F->mul(f, H.at(j + 1, c)));
      for (std::size_t r2 = 0; r2 < n; ++r2) H.at(r2, j + 1) = F->add(H.at(r2, j + 1), F->mul(f, H.at(r2, i)));
    }
  }
  // p_m(x) = (x - H[m-1][m-1]) p_{m-1}(x)
  //          - sum_i H[m-1-i][m-1] (prod subdiagonals) p_{m-1-i}(x)
  std::vector<Poly> p;
  p.push_back(Poly::constant(F, 1));
  for (std::size_t m = 1; m <= n; ++m) {
    Poly pm = (Poly::x(F) - Poly::constant(F, H.at(m - 1, m - 1))) * p[m - 1];
    fq prod = 1;
    for (std::size_t i = 1; i < m; ++i) {
      prod = F->mul(prod, H.at(m - i, m - i - 1));
      if (prod == 0) break;
      fq c = F->mul(H.at(m - 1 - i, m - 1), prod);
      if (c != 0) pm = pm - p[m - 1 - i].scale(c);
    }
    p.push_back(pm);
  }
  return p[n];
}

// Minimal polynomial of a square matrix: lcm over seed vectors of the
// annihilator of the Krylov sequence v, Av, A^2 v, ...
inline Poly minpoly(const Mat& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("minpoly: not square");
  Field F = A.field();
  std::size_t n = A.rows();
  Poly m = Poly::constant(F, 1);
  if (n == 0) return m;
  Mat accumulated(F, n, 0);  // span of all Krylov vectors so far
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<fq> seed(n, 0);
    seed[s] = 1;
    if (in_column_span(accumulated, seed)) continue;
    std::vector<std::vector<fq>> iterates{seed};
    while (true) {
      Mat K(F, n, iterates.size());
      for (std::size_t j = 0; j < iterates.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) K.at(i, j) = iterates[j][i];
      std::vector<fq> next = A.apply(iterates.back());
      auto sol = K.solve(Mat::column(F, next));
      if (sol) {
        std::vector<fq> pc(iterates.size() + 1, 0);
        for (std::size_t i = 0; i < iterates.size(); ++i)
          pc[i] = F->neg(sol->particular.at(i, 0));
        pc[iterates.size()] = 1;
        m = lcm(m, Poly(F, pc));
        accumulated = subspace_sum(accumulated, K);
        break;
      }
      iterates.push_back(std::move(next));
    }
    if (m.deg() == static_cast<int>(n)) break;
  }
  return m;
}

inline Poly minpoly_of_vector(const Mat& A, const std::vector<fq>& v) {
  Field F = A.field();
  std::size_t n = A.rows();
  std::vector<std::vector<fq>> iterates{v};
  while (true) {
    Mat K(F, n, iterates.size());
    for (std::size_t j = 0; j < iterates.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) K.at(i, j) = iterates[j][i];
    std::vector<fq> next = A.apply(iterates.back());
    auto sol = K.solve(Mat::column(F, next));
    if (sol) {
      std::vector<fq> pc(iterates.size() + 1, 0);
      for (std::size_t i = 0; i < iterates.size(); ++i) pc[i] = F->neg(sol->particular.at(i, 0));
      pc[iterates.size()] = 1;
      return Poly(F, pc);
    }
    iterates.push_back(std::move(next));
  }
}

// Evaluate a polynomial at a square matrix.
inline Mat eval_poly(const Poly& f, const Mat& A) {
  Field F = A.field();
  Mat r(F, A.rows(), A.rows());
  Mat power = Mat::identity(F, A.rows());
  for (int i = 0; i <= f.deg(); ++i) {
    fq c = f.coeff(static_cast<std::size_t>(i));
    if (c != 0) r = r + power.scale(c);
    if (i < f.deg()) power = power * A;
  }
  return r;
}

}  // namespace blocklab

#endif
