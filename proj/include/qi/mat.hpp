#ifndef QI_MAT_HPP
#define QI_MAT_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "qi/errors.hpp"

namespace qi {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Index = Eigen::Index;

// Default entrywise absolute tolerance for approximate matrix equality.
inline constexpr double kDefaultTol = 1e-10;

/// Largest entrywise absolute difference between two same-shape matrices.
double max_abs_diff(const Mat& a, const Mat& b);

/// Entrywise approximate equality at absolute tolerance `tol`.
bool approx_equal(const Mat& a, const Mat& b, double tol = kDefaultTol);

/// Throws if any entry has a non-finite real or imaginary part.
void require_finite(const Mat& a, const std::string& what = "matrix");

// Dimension-checked arithmetic. Eigen asserts on shape mismatch only in
// debug builds; these wrappers turn mismatches into DimensionError.
Mat add(const Mat& a, const Mat& b);
Mat subtract(const Mat& a, const Mat& b);
Mat scale(Complex c, const Mat& a);
Mat mul(const Mat& a, const Mat& b);

/// Conjugate transpose.
Mat adjoint(const Mat& a);

/// Sum of diagonal entries; requires a square matrix.
Complex trace(const Mat& a);

/// Kronecker product, blocks a(i,j) * b.
Mat tensor(const Mat& a, const Mat& b);

/// <u|v> = sum conj(u_i) v_i for equal-length column vectors.
Complex inner(const Vec& u, const Vec& v);

/// |u><v|, the n x m matrix u_i * conj(v_j).
Mat outer(const Vec& u, const Vec& v);

/// Norm induced by the inner product.
double vec_norm(const Vec& u);

Mat identity(Index n);
Mat zeros(Index rows, Index cols);

// JSON text format: {"rows": n, "cols": m, "data": [[re, im], ...]},
// data row-major of length n*m. Parsing rejects length mismatches and
// non-finite numbers.
Mat mat_from_json_text(const std::string& text);
std::string mat_to_json_text(const Mat& a);
Mat mat_from_file(const std::string& path);

} // namespace qi

#endif
