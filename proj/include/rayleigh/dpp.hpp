#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rayleigh/error.hpp"
#include "rayleigh/measures.hpp"
#include "rayleigh/rng.hpp"

namespace rayleigh {

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kSpectrumTolerance = 1e-9;
inline constexpr int kDppExactCap = 12;

/// Hermitian kernel with spectrum in [0,1], defining the determinantal
/// measure with P(S ⊆ X) = det K_S.
///
/// Eigenvalues within 1e-9 of [0,1] are clamped; anything further out is
/// rejected with the offending eigenvalue in the message.
class HermitianKernel {
 public:
  using Matrix = Eigen::MatrixXcd;

  explicit HermitianKernel(Matrix k) : k_(std::move(k)) {
    if (k_.rows() != k_.cols() || k_.rows() < 1) throw DimensionMismatch("kernel must be a nonempty square matrix");
    const double asym = (k_ - k_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTolerance)
      throw InvalidArgument("kernel is not Hermitian (max |K - K^*| = " + std::to_string(asym) + ")");
    k_ = 0.5 * (k_ + k_.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(k_);
    if (solver.info() != Eigen::Success) throw NumericalError("kernel eigendecomposition failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
    for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
      double& lam = eigenvalues_(i);
      if (lam < -kSpectrumTolerance || lam > 1.0 + kSpectrumTolerance) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", lam);
        throw InvalidArgument(std::string("kernel eigenvalue ") + buf + " lies outside [0,1]");
      }
      lam = std::clamp(lam, 0.0, 1.0);
    }
  }

  static HermitianKernel from_parts(const std::vector<std::vector<double>>& re,
                                    const std::vector<std::vector<double>>& im) {
    const auto n = static_cast<Eigen::Index>(re.size());
    if (!im.empty() && im.size() != re.size()) throw DimensionMismatch("re and im parts differ in size");
    Matrix k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (re[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(n) ||
          (!im.empty() && im[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(n)))
        throw DimensionMismatch("kernel rows must have n entries");
      for (Eigen::Index j = 0; j < n; ++j)
        k(i, j) = {re[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                   im.empty() ? 0.0 : im[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]};
    }
    return HermitianKernel(std::move(k));
  }

  /// U diag(spectrum) U^* with U Haar-distributed (QR of a complex Ginibre matrix).
  static HermitianKernel random(const std::vector<double>& spectrum, SeededRng& rng) {
    const auto n = static_cast<Eigen::Index>(spectrum.size());
    Matrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::complex<double> d = r(j, j);
      if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    Eigen::VectorXd lam(n);
    for (Eigen::Index i = 0; i < n; ++i) lam(i) = spectrum[static_cast<std::size_t>(i)];
    return HermitianKernel(q * lam.asDiagonal() * q.adjoint());
  }

  /// Random kernel whose spectrum is drawn uniformly from [0,1].
  static HermitianKernel random(int n, SeededRng& rng) {
    std::vector<double> spectrum(static_cast<std::size_t>(n));
    for (double& l : spectrum) l = rng.uniform();
    return random(spectrum, rng);
  }

  int n() const noexcept { return static_cast<int>(k_.rows()); }
  const Matrix& matrix() const noexcept { return k_; }
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const Matrix& eigenvectors() const noexcept { return eigenvectors_; }

 private:
  Matrix k_;
  Eigen::VectorXd eigenvalues_;
  Matrix eigenvectors_;
};

/// Sorted indices of one draw.
///
/// Each eigenvector is kept with probability equal to its eigenvalue; the
/// projection process on the kept span is then sampled point by point, each
/// point drawn with probability (residual diagonal) / (remaining rank),
/// after which the basis is restricted to vectors vanishing at that point.
inline std::vector<int> sample_dpp_finite(const HermitianKernel& kernel, SeededRng& rng) {
  const Eigen::Index n = kernel.n();
  std::vector<Eigen::Index> chosen;
  for (Eigen::Index i = 0; i < n; ++i)
    if (rng.uniform() < kernel.eigenvalues()(i)) chosen.push_back(i);
  Eigen::MatrixXcd v(n, static_cast<Eigen::Index>(chosen.size()));
  for (std::size_t c = 0; c < chosen.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = kernel.eigenvectors().col(chosen[c]);

  std::vector<int> points;
  while (v.cols() > 0) {
    const Eigen::Index rank = v.cols();
    Eigen::VectorXd weight = v.rowwise().squaredNorm();
    for (int p : points) weight(p) = 0.0;
    const double total = weight.sum();
    double target = rng.uniform() * total;
    Eigen::Index pick = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (weight(i) <= 0.0) continue;
      pick = i;
      target -= weight(i);
      if (target < 0.0) break;
    }
    if (pick < 0) throw NumericalError("projection sampler found no positive residual mass");
    points.push_back(static_cast<int>(pick));
    if (rank == 1) break;

    // Eliminate the pivot column so every remaining column vanishes at `pick`.
    Eigen::Index pivot = 0;
    v.row(pick).cwiseAbs().maxCoeff(&pivot);
    const Eigen::VectorXcd pivot_col = v.col(pivot);
    const std::complex<double> pivot_val = v(pick, pivot);
    Eigen::MatrixXcd next(n, rank - 1);
    for (Eigen::Index c = 0, out = 0; c < rank; ++c) {
      if (c == pivot) continue;
      next.col(out++) = v.col(c) - pivot_col * (v(pick, c) / pivot_val);
    }
    // Modified Gram-Schmidt, with a second pass when a residual norm collapses.
    for (Eigen::Index c = 0; c < next.cols(); ++c) {
      const double before = next.col(c).norm();
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index d = 0; d < c; ++d) next.col(c) -= next.col(d) * next.col(d).dot(next.col(c));
        const double after = next.col(c).norm();
        if (after >= 1e-8 * before) break;
      }
      const double norm = next.col(c).norm();
      if (!(norm > 0.0)) throw NumericalError("projection basis lost rank during sampling");
      next.col(c) /= norm;
    }
    for (Eigen::Index c = 0; c < next.cols(); ++c) next(pick, c) = 0.0;
    v = std::move(next);
  }
  std::sort(points.begin(), points.end());
  return points;
}

/// Exact pmf: P(X = S) = sum_{T ⊇ S} (-1)^{|T \ S|} det K_T (n <= 12).
/// Masses within rounding noise of zero are set to zero.
inline BooleanMeasure dpp_exact_pmf(const HermitianKernel& kernel) {
  const int n = kernel.n();
  if (n > kDppExactCap) throw CapExceeded("dpp_exact_pmf", n, kDppExactCap);
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> f(size, 0.0);
  f[0] = 1.0;
  std::vector<Eigen::Index> idx;
  for (std::size_t t = 1; t < size; ++t) {
    idx.clear();
    for (int j = 0; j < n; ++j)
      if (t >> j & 1U) idx.push_back(j);
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd sub(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b) sub(a, b) = kernel.matrix()(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    f[t] = sub.determinant().real();
  }
  for (int b = 0; b < n; ++b)
    for (std::size_t s = 0; s < size; ++s)
      if (!(s >> b & 1U)) f[s] -= f[s | (std::size_t{1} << b)];
  // Masses at the rounding level of the alternating sums are zero: 2^n terms,
  // each a determinant of modulus at most one.
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(size);
  double total = 0.0;
  for (double& p : f) {
    if (p < -kSpectrumTolerance) throw NumericalError("inclusion-exclusion produced a negative probability");
    if (p <= noise) p = 0.0;
    total += p;
  }
  if (std::abs(total - 1.0) > kSpectrumTolerance) throw NumericalError("determinantal pmf does not sum to one");
  return BooleanMeasure(n, std::move(f));
}

}  // namespace rayleigh
