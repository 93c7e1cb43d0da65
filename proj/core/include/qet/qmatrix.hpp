#pragma once

// Dense complex linear algebra for one- and two-qubit operators.
//
// Matrices are immutable values of dimension 2 or 4. For dimension 4 the
// basis is ordered |00>, |01>, |10>, |11> with subsystem A as the left
// (most significant) qubit.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qet {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Thrown when an operation receives an operand of unsupported dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by hermitian_eig for inputs that are not Hermitian to 1e-12.
class NotHermitianError : public std::invalid_argument {
 public:
  NotHermitianError(double max_asymmetry);
  double max_asymmetry() const noexcept { return max_asymmetry_; }

 private:
  double max_asymmetry_;
};

class ComplexVector {
 public:
  static constexpr std::size_t kMaxDim = 4;

  ComplexVector() = default;
  ComplexVector(std::initializer_list<Complex> entries);
  explicit ComplexVector(std::span<const Complex> entries);

  static ComplexVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return dim_; }
  Complex operator[](std::size_t i) const { return data_[i]; }
  std::span<const Complex> entries() const noexcept { return {data_.data(), dim_}; }

  double norm() const;
  ComplexVector normalized() const;

  friend ComplexVector operator+(const ComplexVector& a, const ComplexVector& b);
  friend ComplexVector operator-(const ComplexVector& a, const ComplexVector& b);
  friend ComplexVector operator*(Complex s, const ComplexVector& v);

 private:
  std::size_t dim_ = 0;
  std::array<Complex, kMaxDim> data_{};
};

/// <a|b>, antilinear in the first argument.
Complex inner(const ComplexVector& a, const ComplexVector& b);

class ComplexMatrix {
 public:
  static constexpr std::size_t kMaxDim = 4;

  ComplexMatrix() = default;
  /// Row-major entries; entries.size() must equal dim * dim.
  ComplexMatrix(std::size_t dim, std::span<const Complex> entries);
  ComplexMatrix(std::size_t dim, std::initializer_list<Complex> entries);

  static ComplexMatrix zero(std::size_t dim);
  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::initializer_list<Complex> diag);
  static ComplexMatrix from_fn(std::size_t dim,
                               const std::function<Complex(std::size_t, std::size_t)>& f);

  std::size_t dim() const noexcept { return dim_; }
  Complex operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }
  std::span<const Complex> entries() const noexcept { return {data_.data(), dim_ * dim_}; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;

  ComplexVector apply(const ComplexVector& v) const;

  /// max_ij |a_ij - conj(a_ji)|
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

  double max_abs() const;
  double frobenius_norm() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
  friend ComplexMatrix operator*(double s, const ComplexMatrix& a) { return Complex{s, 0.0} * a; }

 private:
  std::size_t dim_ = 0;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

/// max_ij |a_ij - b_ij|; dimensions must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// [a, b] = ab - ba
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// |a><b|
ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b);
inline ComplexMatrix projector(const ComplexVector& v) { return outer(v, v); }

/// Kronecker product. Throws DimensionError if the result would exceed 4x4.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Transpose of the second-qubit indices of a 4x4 operator. Involutive.
ComplexMatrix partial_transpose_B(const ComplexMatrix& rho);

/// Trace over the second qubit of a 4x4 operator; returns 2x2.
ComplexMatrix partial_trace_B(const ComplexMatrix& rho);

/// Trace over the first qubit of a 4x4 operator; returns 2x2.
ComplexMatrix partial_trace_A(const ComplexMatrix& rho);

/// Lift single-qubit operators onto qubit A (op x I) or qubit B (I x op).
ComplexMatrix on_A(const ComplexMatrix& op);
ComplexMatrix on_B(const ComplexMatrix& op);

// Standard Pauli matrices, sigma_z |0> = +|0>.
ComplexMatrix identity2();
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
/// (sigma_x + i sigma_y)/2 = |0><1|
ComplexMatrix sigma_plus();
/// (sigma_x - i sigma_y)/2 = |1><0|
ComplexMatrix sigma_minus();

struct HermitianSpectrum {
  std::vector<double> eigenvalues;         // ascending
  std::vector<ComplexVector> eigenvectors; // orthonormal, same order

  /// sum_i lambda_i v_i v_i^dagger
  ComplexMatrix reconstruct() const;
};

/// Eigen-decomposition of a Hermitian matrix.
///
/// Runs cyclic Jacobi rotations on the real-symmetric embedding
/// [[Re, -Im], [Im, Re]] of size 2n, which carries every eigenvalue twice.
/// Each eigenvalue cluster is mapped back to complex vectors by Gram-Schmidt;
/// eigenvalues are the Rayleigh quotients of the recovered vectors.
///
/// Each eigenvector's first component with modulus above 1e-12 is made real
/// and positive. Ties in eigenvalue are ordered lexicographically by
/// eigenvector entries (real part, then imaginary part).
///
/// Throws NotHermitianError when hermiticity_defect() > 1e-12.
HermitianSpectrum hermitian_eig(const ComplexMatrix& m);

/// Eigenvalues of a 2x2 Hermitian matrix from its trace and Bloch length,
/// ascending. No hermiticity check.
std::array<double, 2> eigvals_hermitian_2x2(const ComplexMatrix& m);

/// Singular values, descending, by one-sided (Hestenes) Jacobi on the
/// columns. Absolute accuracy is about eps * ||m||, including for the
/// smallest values, which squaring into m^dagger m would lose.
std::vector<double> singular_values(const ComplexMatrix& m);

}  // namespace qet
