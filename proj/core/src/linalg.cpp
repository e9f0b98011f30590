#include "hopfrep/linalg.hpp"

#include <sstream>

namespace hopfrep {

Mat Mat::identity(const Ctx& ctx, int n) { return scalar(ctx, n, Cyc::integer(ctx, 1)); }

Mat Mat::scalar(const Ctx& ctx, int n, const Cyc& c) {
  Mat m(ctx, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = c;
  return m;
}

Mat Mat::from_rows(const Ctx& ctx, std::vector<std::vector<Cyc>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Mat m(ctx, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw DimensionMismatch("ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = std::move(rows[i][j]);
  }
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix add");
  Mat r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sub");
  Mat r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("matrix mul");
  Mat r(ctx_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Cyc& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Cyc& bkj = o.at(k, j);
        if (bkj.is_zero()) continue;
        r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

Mat Mat::operator*(const Cyc& c) const {
  Mat r = *this;
  for (auto& x : r.e_) x *= c;
  return r;
}

Mat Mat::operator-() const {
  Mat r = *this;
  for (auto& x : r.e_) x = -x;
  return r;
}

bool Mat::operator==(const Mat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

Mat Mat::transpose() const {
  Mat r(ctx_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Mat Mat::pow(long e) const {
  if (rows_ != cols_) throw DimensionMismatch("pow of non-square");
  if (e < 0) return inverse().pow(-e);
  Mat acc = identity(ctx_, rows_);
  Mat base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool Mat::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  return *this == identity(ctx_, rows_);
}

Cyc Mat::trace() const {
  if (rows_ != cols_) throw DimensionMismatch("trace of non-square");
  Cyc t(ctx_);
  for (int i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

Mat Mat::hstack(const Mat& o) const {
  if (rows_ != o.rows_) throw DimensionMismatch("hstack");
  Mat r(ctx_, rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
  }
  return r;
}

Mat Mat::vstack(const Mat& o) const {
  if (cols_ != o.cols_) throw DimensionMismatch("vstack");
  Mat r(ctx_, rows_ + o.rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
  for (int i = 0; i < o.rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
  return r;
}

Mat Mat::submatrix(int r0, int c0, int nrows, int ncols) const {
  Mat r(ctx_, nrows, ncols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) r.at(i, j) = at(r0 + i, c0 + j);
  return r;
}

Mat Mat::unflatten(const Ctx& ctx, int rows, int cols, std::vector<Cyc> data) {
  if (static_cast<size_t>(rows) * cols != data.size()) throw DimensionMismatch("unflatten");
  Mat m(ctx, rows, cols);
  m.e_ = std::move(data);
  return m;
}

Mat Mat::inverse() const {
  if (rows_ != cols_) throw DimensionMismatch("inverse of non-square");
  auto sol = solve_linear(*this, identity(ctx_, rows_));
  if (!sol) throw Error("matrix is singular");
  return *sol;
}

std::string Mat::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << "[ ";
    for (int j = 0; j < cols_; ++j) os << at(i, j).str() << (j + 1 < cols_ ? ", " : " ");
    os << "]\n";
  }
  return os.str();
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.ctx(), a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a.at(i, j).is_zero()) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) {
          if (b.at(k, l).is_zero()) continue;
          r.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
        }
    }
  return r;
}

Mat rref(const Mat& a, int* rank_out, std::vector<int>* pivots_out) {
  Mat m = a;
  int r = 0;
  std::vector<int> pivots;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    Cyc piv_inv = m.at(r, c).inv();
    for (int j = c; j < m.cols(); ++j) m.at(r, j) *= piv_inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Cyc f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  if (rank_out) *rank_out = r;
  if (pivots_out) *pivots_out = pivots;
  return m;
}

int rank(const Mat& a) {
  int r = 0;
  rref(a, &r);
  return r;
}

Mat kernel_basis(const Mat& a) {
  int r = 0;
  std::vector<int> pivots;
  Mat e = rref(a, &r, &pivots);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  int k = a.cols() - r;
  Mat basis(a.ctx(), a.cols(), k);
  int col = 0;
  for (int c = 0; c < a.cols(); ++c) {
    if (is_pivot[c]) continue;
    basis.at(c, col) = Cyc::integer(a.ctx(), 1);
    for (int pr = 0; pr < r; ++pr) basis.at(pivots[pr], col) = -e.at(pr, c);
    ++col;
  }
  return basis;
}

std::optional<Mat> solve_linear(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("solve");
  Mat aug = a.hstack(b);
  int r = 0;
  std::vector<int> pivots;
  Mat e = rref(aug, &r, &pivots);
  for (int c : pivots)
    if (c >= a.cols()) return std::nullopt;  // inconsistent
  Mat x(a.ctx(), a.cols(), b.cols());
  for (size_t pr = 0; pr < pivots.size(); ++pr)
    for (int j = 0; j < b.cols(); ++j) x.at(pivots[pr], j) = e.at(static_cast<int>(pr), a.cols() + j);
  return x;
}

// Invariant: rows are fully inter-reduced (each row vanishes at every other
// row's pivot and is monic at its own), so reduce() is a single pass.
bool EchelonSpan::add(std::vector<Cyc> v) {
  reduce(v);
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    Cyc inv = v[i].inv();
    for (auto& x : v)
      if (!x.is_zero()) x *= inv;
    for (auto& [piv, row] : rows_) {
      if (row[i].is_zero()) continue;
      Cyc f = row[i];
      for (size_t j = 0; j < v.size(); ++j)
        if (!v[j].is_zero()) row[j] -= f * v[j];
    }
    auto it = rows_.begin();
    while (it != rows_.end() && it->first < i) ++it;
    rows_.insert(it, {i, std::move(v)});
    return true;
  }
  return false;
}

void EchelonSpan::reduce(std::vector<Cyc>& v) const {
  for (const auto& [piv, row] : rows_) {
    if (piv >= v.size()) continue;
    if (v[piv].is_zero()) continue;
    Cyc f = v[piv];
    for (size_t j = 0; j < v.size(); ++j)
      if (!row[j].is_zero()) v[j] -= f * row[j];
  }
}

bool EchelonSpan::contains(std::vector<Cyc> v) const {
  reduce(v);
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

MatAlgebra algebra_closure(const std::vector<Mat>& gens, bool unital, const Ctx& ctx,
                           int ambient_dim) {
  MatAlgebra alg;
  alg.ambient_dim = ambient_dim;
  EchelonSpan span(ctx);
  std::vector<Mat> worklist;

  auto push = [&](const Mat& m) {
    if (span.add(m.flatten())) {
      alg.basis.push_back(m);
      worklist.push_back(m);
      return true;
    }
    return false;
  };

  if (unital) push(Mat::identity(ctx, ambient_dim));
  for (const Mat& g : gens) {
    if (g.rows() != ambient_dim || g.cols() != ambient_dim)
      throw DimensionMismatch("closure generators");
    push(g);
  }

  while (!worklist.empty()) {
    Mat m = worklist.back();
    worklist.pop_back();
    // products against the current basis, both sides
    size_t snapshot = alg.basis.size();
    for (size_t i = 0; i < snapshot; ++i) {
      push(m * alg.basis[i]);
      push(alg.basis[i] * m);
    }
  }
  return alg;
}

std::vector<Mat> jacobson_radical(const MatAlgebra& alg) {
  int d = static_cast<int>(alg.basis.size());
  if (d == 0) return {};
  const Ctx& ctx = alg.basis[0].ctx();
  Mat gram(ctx, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Cyc t = (alg.basis[i] * alg.basis[j]).trace();
      gram.at(i, j) = t;
      gram.at(j, i) = t;
    }
  Mat null_cols = kernel_basis(gram);
  std::vector<Mat> rad;
  for (int c = 0; c < null_cols.cols(); ++c) {
    Mat m(ctx, alg.ambient_dim, alg.ambient_dim);
    for (int i = 0; i < d; ++i) {
      if (null_cols.at(i, c).is_zero()) continue;
      m = m + alg.basis[i] * null_cols.at(i, c);
    }
    rad.push_back(std::move(m));
  }
  return rad;
}

}  // namespace hopfrep
