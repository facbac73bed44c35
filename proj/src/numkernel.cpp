#include "rrfilt/numkernel.hpp"

#include <Eigen/Cholesky>

#include <stdexcept>

namespace rrfilt {

namespace {

void requireHermitian(const ComplexMatrix& A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("hermitianSolve: matrix is not square");
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  const double asym = (A - A.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale)
    throw std::invalid_argument("hermitianSolve: matrix is not Hermitian");
}

}  // namespace

ComplexVector hermitianSolve(const ComplexMatrix& A, const ComplexVector& b) {
  requireHermitian(A);
  if (b.size() != A.rows())
    throw std::invalid_argument("hermitianSolve: dimension mismatch");
  if (!A.allFinite() || !b.allFinite())
    throw std::invalid_argument("hermitianSolve: non-finite input");

  Eigen::LDLT<ComplexMatrix> ldlt(A);
  const RealVector d = ldlt.vectorD().real();
  const double min_pivot = d.size() > 0 ? d.minCoeff() : 0.0;
  if (ldlt.info() != Eigen::Success || !(min_pivot > kPivotFloor))
    throw IllConditionedError("ill-conditioned solve", std::abs(min_pivot));

  ComplexVector x = ldlt.solve(b);
  x += ldlt.solve(b - A * x);  // one refinement step tightens the residual

  const double residual = (A * x - b).norm();
  if (!(residual <= 1e-10 * (1.0 + b.norm())))
    throw IllConditionedError("ill-conditioned solve: residual too large",
                              std::abs(min_pivot));
  return x;
}

MomentAccumulator::MomentAccumulator(Index dim)
    : sum_rr_(ComplexMatrix::Zero(dim, dim)),
      sum_dr_(ComplexVector::Zero(dim)) {
  if (dim < 1) throw std::invalid_argument("MomentAccumulator: dim < 1");
}

void MomentAccumulator::add(const ComplexVector& r, Complex d) {
  if (r.size() != sum_rr_.rows())
    throw std::invalid_argument("MomentAccumulator: sample length mismatch");
  sum_rr_.selfadjointView<Eigen::Lower>().rankUpdate(r, 1.0);
  sum_dr_ += std::conj(d) * r;
  sum_dd_ += std::norm(d);
  ++count_;
}

MomentSet MomentAccumulator::moments() const {
  if (count_ == 0) throw std::invalid_argument("no samples");
  MomentSet m;
  m.R = ComplexMatrix(sum_rr_.selfadjointView<Eigen::Lower>()) /
        static_cast<double>(count_);
  m.p = sum_dr_ / static_cast<double>(count_);
  m.sigma_d_sq = sum_dd_ / static_cast<double>(count_);
  m.sample_count = count_;
  return m;
}

MomentSet estimateMoments(const ComplexMatrix& samples,
                          const ComplexVector& desired) {
  if (samples.cols() == 0) throw std::invalid_argument("no samples");
  if (samples.cols() != desired.size())
    throw std::invalid_argument(
        "estimateMoments: sample/desired count mismatch");
  const double inv_t = 1.0 / static_cast<double>(samples.cols());
  ComplexMatrix sum = ComplexMatrix::Zero(samples.rows(), samples.rows());
  sum.selfadjointView<Eigen::Lower>().rankUpdate(samples, 1.0);

  MomentSet m;
  m.R = ComplexMatrix(sum.selfadjointView<Eigen::Lower>()) * inv_t;
  m.p = samples * desired.conjugate() * inv_t;
  m.sigma_d_sq = desired.squaredNorm() * inv_t;
  m.sample_count = samples.cols();
  return m;
}

ComplexMatrix orthonormalizeColumns(const ComplexMatrix& B) {
  if (B.rows() < 1 || B.cols() < 1)
    throw std::invalid_argument("orthonormalizeColumns: empty input");

  ComplexMatrix Q(B.rows(), B.cols());
  Index kept = 0;
  for (Index j = 0; j < B.cols(); ++j) {
    ComplexVector v = B.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (Index i = 0; i < kept; ++i) v -= Q.col(i).dot(v) * Q.col(i);
    const double norm = v.norm();
    if (norm < kDeflationFloor) continue;
    Q.col(kept++) = v / norm;
  }
  if (kept == 0) throw DegenerateBasisError("degenerate basis");
  return Q.leftCols(kept);
}

}  // namespace rrfilt
