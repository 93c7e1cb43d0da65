#include "qet/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace qet {

namespace {

void require_dim(std::size_t dim, const char* where) {
  if (dim != 2 && dim != 4) {
    throw DimensionError(std::string(where) + ": dimension must be 2 or 4, got " + std::to_string(dim));
  }
}

void require_same_dim(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    throw DimensionError(std::string(where) + ": dimension mismatch " + std::to_string(a) + " vs " +
                         std::to_string(b));
  }
}

std::string asymmetry_message(double defect) {
  std::ostringstream os;
  os << "hermitian_eig: input is not Hermitian (max |a_ij - conj(a_ji)| = " << defect << ")";
  return os.str();
}

}  // namespace

NotHermitianError::NotHermitianError(double max_asymmetry)
    : std::invalid_argument(asymmetry_message(max_asymmetry)), max_asymmetry_(max_asymmetry) {}

// ---------------------------------------------------------------------------
// ComplexVector

ComplexVector::ComplexVector(std::initializer_list<Complex> entries)
    : ComplexVector(std::span<const Complex>(entries.begin(), entries.size())) {}

ComplexVector::ComplexVector(std::span<const Complex> entries) : dim_(entries.size()) {
  require_dim(dim_, "ComplexVector");
  std::copy(entries.begin(), entries.end(), data_.begin());
}

ComplexVector ComplexVector::basis(std::size_t dim, std::size_t index) {
  require_dim(dim, "ComplexVector::basis");
  if (index >= dim) throw std::out_of_range("ComplexVector::basis: index out of range");
  std::array<Complex, kMaxDim> e{};
  e[index] = 1.0;
  return ComplexVector(std::span<const Complex>(e.data(), dim));
}

double ComplexVector::norm() const { return std::sqrt(std::real(inner(*this, *this))); }

ComplexVector ComplexVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("ComplexVector::normalized: zero vector");
  return Complex{1.0 / n, 0.0} * *this;
}

ComplexVector operator+(const ComplexVector& a, const ComplexVector& b) {
  require_same_dim(a.dim_, b.dim_, "ComplexVector::operator+");
  ComplexVector r = a;
  for (std::size_t i = 0; i < a.dim_; ++i) r.data_[i] += b.data_[i];
  return r;
}

ComplexVector operator-(const ComplexVector& a, const ComplexVector& b) {
  require_same_dim(a.dim_, b.dim_, "ComplexVector::operator-");
  ComplexVector r = a;
  for (std::size_t i = 0; i < a.dim_; ++i) r.data_[i] -= b.data_[i];
  return r;
}

ComplexVector operator*(Complex s, const ComplexVector& v) {
  ComplexVector r = v;
  for (std::size_t i = 0; i < v.dim_; ++i) r.data_[i] *= s;
  return r;
}

Complex inner(const ComplexVector& a, const ComplexVector& b) {
  require_same_dim(a.dim(), b.dim(), "inner");
  Complex s{};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim, std::span<const Complex> entries) : dim_(dim) {
  require_dim(dim, "ComplexMatrix");
  if (entries.size() != dim * dim) {
    throw DimensionError("ComplexMatrix: expected " + std::to_string(dim * dim) + " entries, got " +
                         std::to_string(entries.size()));
  }
  std::copy(entries.begin(), entries.end(), data_.begin());
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::initializer_list<Complex> entries)
    : ComplexMatrix(dim, std::span<const Complex>(entries.begin(), entries.size())) {}

ComplexMatrix ComplexMatrix::zero(std::size_t dim) {
  require_dim(dim, "ComplexMatrix::zero");
  ComplexMatrix m;
  m.dim_ = dim;
  return m;
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m = zero(dim);
  for (std::size_t i = 0; i < dim; ++i) m.data_[i * dim + i] = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> diag) {
  ComplexMatrix m = zero(diag.size());
  std::size_t i = 0;
  for (Complex d : diag) {
    m.data_[i * m.dim_ + i] = d;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::from_fn(std::size_t dim,
                                     const std::function<Complex(std::size_t, std::size_t)>& f) {
  ComplexMatrix m = zero(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m.data_[i * dim + j] = f(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  return from_fn(dim_, [this](std::size_t i, std::size_t j) { return std::conj((*this)(j, i)); });
}

ComplexMatrix ComplexMatrix::transpose() const {
  return from_fn(dim_, [this](std::size_t i, std::size_t j) { return (*this)(j, i); });
}

ComplexMatrix ComplexMatrix::conjugate() const {
  return from_fn(dim_, [this](std::size_t i, std::size_t j) { return std::conj((*this)(i, j)); });
}

Complex ComplexMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

ComplexVector ComplexMatrix::apply(const ComplexVector& v) const {
  require_same_dim(dim_, v.dim(), "ComplexMatrix::apply");
  std::array<Complex, kMaxDim> out{};
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out[i] += (*this)(i, j) * v[j];
  return ComplexVector(std::span<const Complex>(out.data(), dim_));
}

double ComplexMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

double ComplexMatrix::max_abs() const {
  double worst = 0.0;
  for (Complex c : entries()) worst = std::max(worst, std::abs(c));
  return worst;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (Complex c : entries()) s += std::norm(c);
  return std::sqrt(s);
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim_, b.dim_, "ComplexMatrix::operator+");
  ComplexMatrix r = a;
  for (std::size_t i = 0; i < a.dim_ * a.dim_; ++i) r.data_[i] += b.data_[i];
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim_, b.dim_, "ComplexMatrix::operator-");
  ComplexMatrix r = a;
  for (std::size_t i = 0; i < a.dim_ * a.dim_; ++i) r.data_[i] -= b.data_[i];
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim_, b.dim_, "ComplexMatrix::operator*");
  const std::size_t n = a.dim_;
  ComplexMatrix r = ComplexMatrix::zero(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a.data_[i * n + k];
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) r.data_[i * n + j] += aik * b.data_[k * n + j];
    }
  return r;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  ComplexMatrix r = a;
  for (std::size_t i = 0; i < a.dim_ * a.dim_; ++i) r.data_[i] *= s;
  return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) {
  require_same_dim(a.dim(), b.dim(), "outer");
  return ComplexMatrix::from_fn(a.dim(), [&](std::size_t i, std::size_t j) { return a[i] * std::conj(b[j]); });
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim() * b.dim();
  if (n > ComplexMatrix::kMaxDim) {
    throw DimensionError("kron: result dimension " + std::to_string(n) + " exceeds the two-qubit limit of 4");
  }
  return ComplexMatrix::from_fn(n, [&](std::size_t i, std::size_t j) {
    return a(i / b.dim(), j / b.dim()) * b(i % b.dim(), j % b.dim());
  });
}

ComplexMatrix partial_transpose_B(const ComplexMatrix& rho) {
  if (rho.dim() != 4) throw DimensionError("partial_transpose_B: expected a 4x4 operator");
  // index = 2*a + b; swap b and b' while keeping a, a'.
  return ComplexMatrix::from_fn(4, [&](std::size_t i, std::size_t j) {
    const std::size_t a = i / 2, b = i % 2, ap = j / 2, bp = j % 2;
    return rho(2 * a + bp, 2 * ap + b);
  });
}

ComplexMatrix partial_trace_B(const ComplexMatrix& rho) {
  if (rho.dim() != 4) throw DimensionError("partial_trace_B: expected a 4x4 operator");
  return ComplexMatrix::from_fn(2, [&](std::size_t a, std::size_t ap) {
    return rho(2 * a, 2 * ap) + rho(2 * a + 1, 2 * ap + 1);
  });
}

ComplexMatrix partial_trace_A(const ComplexMatrix& rho) {
  if (rho.dim() != 4) throw DimensionError("partial_trace_A: expected a 4x4 operator");
  return ComplexMatrix::from_fn(2, [&](std::size_t b, std::size_t bp) {
    return rho(b, bp) + rho(2 + b, 2 + bp);
  });
}

ComplexMatrix on_A(const ComplexMatrix& op) { return kron(op, identity2()); }
ComplexMatrix on_B(const ComplexMatrix& op) { return kron(identity2(), op); }

ComplexMatrix identity2() { return ComplexMatrix::identity(2); }
ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_y() { return ComplexMatrix(2, {0.0, -kI, kI, 0.0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }
ComplexMatrix sigma_plus() { return ComplexMatrix(2, {0.0, 1.0, 0.0, 0.0}); }
ComplexMatrix sigma_minus() { return ComplexMatrix(2, {0.0, 0.0, 1.0, 0.0}); }

// ---------------------------------------------------------------------------
// Eigensolver

namespace {

constexpr std::size_t kEmbedMax = 2 * ComplexMatrix::kMaxDim;
constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-13;

struct RealSym {
  std::size_t n = 0;
  std::array<std::array<double, kEmbedMax>, kEmbedMax> a{};
};

double off_diagonal_norm(const RealSym& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j)
      if (i != j) s += m.a[i][j] * m.a[i][j];
  return std::sqrt(s);
}

// Cyclic Jacobi: A <- J^T A J for every (p, q) in turn; V accumulates J.
void jacobi(RealSym& m, RealSym& v, double scale) {
  const std::size_t n = m.n;
  v.n = n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) v.a[i][j] = (i == j) ? 1.0 : 0.0;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(m) < kOffDiagonalTol * scale) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m.a[p][q];
        if (apq == 0.0) continue;
        const double theta = (m.a[q][q] - m.a[p][p]) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = m.a[k][p], akq = m.a[k][q];
          m.a[k][p] = c * akp - s * akq;
          m.a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = m.a[p][k], aqk = m.a[q][k];
          m.a[p][k] = c * apk - s * aqk;
          m.a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v.a[k][p], vkq = v.a[k][q];
          v.a[k][p] = c * vkp - s * vkq;
          v.a[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  if (off_diagonal_norm(m) >= kOffDiagonalTol * scale) {
    throw std::runtime_error("hermitian_eig: Jacobi iteration did not converge in 100 sweeps");
  }
}

// Pairwise 2x2 Rayleigh-Ritz sweeps over an orthonormal set spanning an
// invariant subspace of h. Pairs whose 2x2 spread is below `tiny` are left
// alone.
void separate_cluster(std::vector<ComplexVector>& vecs, const ComplexMatrix& h, double tiny) {
  for (int sweep = 0; sweep < 10; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < vecs.size(); ++i) {
      for (std::size_t j = i + 1; j < vecs.size(); ++j) {
        const Complex gij = inner(vecs[i], h.apply(vecs[j]));
        const double gii = std::real(inner(vecs[i], h.apply(vecs[i])));
        const double gjj = std::real(inner(vecs[j], h.apply(vecs[j])));
        if (std::abs(gij) <= tiny) continue;
        const double radius = std::hypot(0.5 * (gii - gjj), std::abs(gij));
        if (2.0 * radius <= tiny) continue;
        const double lo = 0.5 * (gii + gjj) - radius;
        // Eigenvector for lo from whichever row gives the larger candidate.
        Complex x0 = gij, x1 = lo - gii;
        if (std::hypot(std::abs(lo - gjj), std::abs(gij)) > std::hypot(std::abs(x0), std::abs(x1))) {
          x0 = lo - gjj;
          x1 = std::conj(gij);
        }
        const double xn = std::hypot(std::abs(x0), std::abs(x1));
        x0 /= xn;
        x1 /= xn;
        const ComplexVector low = x0 * vecs[i] + x1 * vecs[j];
        const ComplexVector high = -std::conj(x1) * vecs[i] + std::conj(x0) * vecs[j];
        vecs[i] = low;
        vecs[j] = high;
        rotated = true;
      }
    }
    if (!rotated) break;
  }
}

ComplexVector phase_normalized(const ComplexVector& v) {
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const double r = std::abs(v[i]);
    if (r > 1e-12) {
      const ComplexVector u = Complex{std::conj(v[i]) / r} * v;
      std::array<Complex, ComplexVector::kMaxDim> e{};
      for (std::size_t k = 0; k < v.dim(); ++k) e[k] = u[k];
      e[i] = Complex{std::abs(u[i]), 0.0};  // exactly real
      return ComplexVector(std::span<const Complex>(e.data(), v.dim()));
    }
  }
  return v;
}

bool lex_less(const ComplexVector& a, const ComplexVector& b) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace

HermitianSpectrum hermitian_eig(const ComplexMatrix& h) {
  const double defect = h.hermiticity_defect();
  if (defect > 1e-12) throw NotHermitianError(defect);

  const std::size_t n = h.dim();
  RealSym m;
  m.n = 2 * n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // Symmetrize so the embedding is exactly symmetric.
      const Complex hij = 0.5 * (h(i, j) + std::conj(h(j, i)));
      m.a[i][j] = hij.real();
      m.a[i][j + n] = -hij.imag();
      m.a[i + n][j] = hij.imag();
      m.a[i + n][j + n] = hij.real();
    }
  }
  const double scale = std::max(1.0, h.frobenius_norm());
  RealSym v;
  jacobi(m, v, scale);

  std::vector<std::size_t> order(2 * n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return m.a[x][x] < m.a[y][y]; });

  // Group the doubled eigenvalues of the embedding into clusters. Copies of
  // one eigenvalue agree to roughly the Jacobi stopping threshold.
  const double cluster_tol = 1e-12 * scale;
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t idx : order) {
    if (!clusters.empty() && m.a[idx][idx] - m.a[clusters.back().back()][clusters.back().back()] <= cluster_tol) {
      clusters.back().push_back(idx);
    } else {
      clusters.push_back({idx});
    }
  }

  HermitianSpectrum out;
  for (const auto& cluster : clusters) {
    std::vector<ComplexVector> candidates;
    for (std::size_t col : cluster) {
      std::array<Complex, ComplexMatrix::kMaxDim> c{};
      for (std::size_t i = 0; i < n; ++i) c[i] = Complex{v.a[i][col], v.a[i + n][col]};
      candidates.emplace_back(std::span<const Complex>(c.data(), n));
    }
    const std::size_t want = (cluster.size() + 1) / 2;

    // Pivoted Gram-Schmidt against every vector accepted so far.
    std::vector<ComplexVector> picked;
    for (std::size_t round = 0; round < want; ++round) {
      double best_norm = -1.0;
      ComplexVector best;
      for (const auto& cand : candidates) {
        ComplexVector r = cand;
        for (const auto& q : out.eigenvectors) r = r - inner(q, r) * q;
        for (const auto& q : picked) r = r - inner(q, r) * q;
        const double rn = r.norm();
        if (rn > best_norm) {
          best_norm = rn;
          best = r;
        }
      }
      if (best_norm < 1e-6) break;
      picked.push_back(best.normalized());
    }

    // Eigenpairs closer than cluster_tol are separated by diagonalizing h on
    // their span, unless they are degenerate to rounding.
    const double tiny = 1e-15 * scale;
    if (picked.size() > 1) separate_cluster(picked, h, tiny);

    // Ascending Rayleigh quotient; runs tied within `tiny` go in lexicographic order.
    std::vector<std::pair<double, ComplexVector>> ranked;
    for (const auto& p : picked) {
      const ComplexVector u = phase_normalized(p);
      ranked.emplace_back(std::real(inner(u, h.apply(u))), u);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t lo = 0; lo < ranked.size();) {
      std::size_t hi = lo + 1;
      while (hi < ranked.size() && ranked[hi].first - ranked[hi - 1].first <= tiny) ++hi;
      std::sort(ranked.begin() + lo, ranked.begin() + hi,
                [](const auto& x, const auto& y) { return lex_less(x.second, y.second); });
      lo = hi;
    }
    std::vector<ComplexVector> normalized;
    for (auto& r : ranked) normalized.push_back(r.second);

    for (const auto& p : normalized) {
      out.eigenvalues.push_back(std::real(inner(p, h.apply(p))));
      out.eigenvectors.push_back(p);
    }
  }

  if (out.eigenvectors.size() != n) {
    throw std::runtime_error("hermitian_eig: failed to recover a complete eigenbasis");
  }
  return out;
}

ComplexMatrix HermitianSpectrum::reconstruct() const {
  if (eigenvectors.empty()) throw std::logic_error("HermitianSpectrum::reconstruct: empty spectrum");
  ComplexMatrix r = ComplexMatrix::zero(eigenvectors.front().dim());
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) r = r + eigenvalues[i] * projector(eigenvectors[i]);
  return r;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  std::array<std::array<Complex, ComplexMatrix::kMaxDim>, ComplexMatrix::kMaxDim> col{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) col[j][i] = m(i, j);

  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma{};
        for (std::size_t i = 0; i < n; ++i) {
          alpha += std::norm(col[p][i]);
          beta += std::norm(col[q][i]);
          gamma += std::conj(col[p][i]) * col[q][i];
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        // Rephase column q so the overlap is real, then rotate as in the real case.
        const Complex phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t), s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const Complex x = col[p][i], y = col[q][i] * phase;
          col[p][i] = c * x - s * y;
          col[q][i] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(col[j][i]);
    out[j] = std::sqrt(s);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::array<double, 2> eigvals_hermitian_2x2(const ComplexMatrix& m) {
  if (m.dim() != 2) throw DimensionError("eigvals_hermitian_2x2: expected a 2x2 operator");
  const double mean = 0.5 * (m(0, 0).real() + m(1, 1).real());
  const double half_diff = 0.5 * (m(0, 0).real() - m(1, 1).real());
  const double radius = std::hypot(half_diff, std::abs(m(0, 1)));
  return {mean - radius, mean + radius};
}

}  // namespace qet
