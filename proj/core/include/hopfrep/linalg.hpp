#pragma once

// Dense exact linear algebra over a cyclotomic field: reduced row echelon
// form, kernels, solves, Kronecker products, plus matrix-algebra closure and
// the trace-form radical used by all module-structure analysis.

#include <functional>
#include <optional>
#include <vector>

#include "hopfrep/cyclotomic.hpp"

namespace hopfrep {

class Mat {
 public:
  Mat() = default;
  Mat(Ctx ctx, int rows, int cols)
      : ctx_(std::move(ctx)), rows_(rows), cols_(cols), e_(rows * cols, Cyc(ctx_)) {}

  static Mat identity(const Ctx& ctx, int n);
  static Mat scalar(const Ctx& ctx, int n, const Cyc& c);
  static Mat from_rows(const Ctx& ctx, std::vector<std::vector<Cyc>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Ctx& ctx() const { return ctx_; }

  Cyc& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const Cyc& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat operator*(const Cyc& c) const;
  Mat operator-() const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const;
  Mat pow(long e) const;
  Mat inverse() const;  // throws on singular
  bool is_zero() const;
  bool is_identity() const;

  Cyc trace() const;

  Mat hstack(const Mat& o) const;
  Mat vstack(const Mat& o) const;
  Mat submatrix(int r0, int c0, int nrows, int ncols) const;
  Mat column(int j) const { return submatrix(0, j, rows_, 1); }

  std::vector<Cyc> flatten() const { return e_; }
  static Mat unflatten(const Ctx& ctx, int rows, int cols, std::vector<Cyc> data);

  std::string str() const;

 private:
  Ctx ctx_;
  int rows_ = 0, cols_ = 0;
  std::vector<Cyc> e_;
};

Mat kron(const Mat& a, const Mat& b);

// In-place row reduction; returns the reduced row echelon form and reports
// the rank and pivot columns if requested. Pivot rule: first nonzero.
Mat rref(const Mat& a, int* rank_out = nullptr, std::vector<int>* pivots_out = nullptr);
int rank(const Mat& a);

// Columns span the nullspace {x : Ax = 0}.
Mat kernel_basis(const Mat& a);

// One solution of A x = b (b may have several columns), or nothing.
std::optional<Mat> solve_linear(const Mat& a, const Mat& b);

// Incremental echelon span of flattened vectors; used for closures and for
// membership tests. add() returns true when the vector enlarged the span.
class EchelonSpan {
 public:
  explicit EchelonSpan(Ctx ctx) : ctx_(std::move(ctx)) {}
  bool add(std::vector<Cyc> v);
  // Reduce v against the span; the residue is written back.
  void reduce(std::vector<Cyc>& v) const;
  bool contains(std::vector<Cyc> v) const;
  int dim() const { return static_cast<int>(rows_.size()); }

  // Coordinates of v in terms of the *original* vectors handed to add()
  // are not tracked; this span only answers membership and dimension.
 private:
  Ctx ctx_;
  std::vector<std::pair<size_t, std::vector<Cyc>>> rows_;  // (pivot index, vector)
};

struct MatAlgebra {
  int ambient_dim = 0;        // matrices are ambient_dim x ambient_dim
  std::vector<Mat> basis;     // linearly independent, spans a multiplicatively closed space
};

// Span-closure of all products of the generators (with the identity when
// unital). Terminates since everything lives in an n^2-dimensional space.
MatAlgebra algebra_closure(const std::vector<Mat>& gens, bool unital, const Ctx& ctx,
                           int ambient_dim);

// Radical of a matrix algebra in characteristic zero: the kernel of the
// trace form x, y -> tr(xy) on the algebra.
std::vector<Mat> jacobson_radical(const MatAlgebra& alg);

}  // namespace hopfrep
