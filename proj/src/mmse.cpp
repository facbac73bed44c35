#include "rrfilt/mmse.hpp"

#include <limits>
#include <stdexcept>

namespace rrfilt {

namespace {

ComplexMatrix hermitianPart(const ComplexMatrix& A) {
  return 0.5 * (A + ComplexMatrix(A.adjoint()));
}

}  // namespace

WienerSolution fullRankMmse(const MomentSet& m) {
  WienerSolution sol;
  sol.w = hermitianSolve(m.R, m.p);
  sol.mse = m.sigma_d_sq - std::real(m.p.dot(sol.w));
  return sol;
}

ComplexVector reducedWeights(const ComplexMatrix& S, const MomentSet& m) {
  if (S.rows() != m.R.rows())
    throw std::invalid_argument("reducedWeights: projection height mismatch");
  ComplexMatrix r_bar = hermitianPart(S.adjoint() * m.R * S);
  ComplexVector p_bar = S.adjoint() * m.p;
  return hermitianSolve(r_bar, p_bar);
}

ComplexMatrix mmseProjection(const MomentSet& m, const ComplexVector& w_bar) {
  const double w_sq = w_bar.squaredNorm();
  if (!(w_sq > 0.0)) throw std::invalid_argument("degenerate weights");
  ComplexVector w_full = hermitianSolve(m.R, m.p);
  return w_full * (w_bar.adjoint() / w_sq);
}

double evaluateMse(const ComplexMatrix& S, const ComplexVector& w_bar,
                   const MomentSet& m) {
  if (S.rows() != m.R.rows() || S.cols() != w_bar.size())
    throw std::invalid_argument("evaluateMse: shape mismatch");
  ComplexVector composite = S * w_bar;
  return m.sigma_d_sq - 2.0 * std::real(composite.dot(m.p)) +
         std::real(composite.dot(m.R * composite));
}

double projectedMmse(const ComplexMatrix& S, const MomentSet& m) {
  ComplexMatrix r_bar = hermitianPart(S.adjoint() * m.R * S);
  ComplexVector p_bar = S.adjoint() * m.p;
  ComplexVector w_bar = hermitianSolve(r_bar, p_bar);
  return m.sigma_d_sq - std::real(p_bar.dot(w_bar));
}

JointDesign jointFixedPoint(const MomentSet& m, Index d,
                            const ComplexMatrix& init_S, double tol,
                            int max_iters) {
  const Index full_dim = m.R.rows();
  if (d < 1 || d > full_dim)
    throw std::invalid_argument("jointFixedPoint: need 1 <= D <= M");

  JointDesign design;
  design.S = init_S.size() == 0 ? ComplexMatrix::Identity(full_dim, d) : init_S;
  if (design.S.rows() != full_dim || design.S.cols() != d)
    throw std::invalid_argument("jointFixedPoint: init_S shape mismatch");

  double prev = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iters; ++iter) {
    design.w_bar = reducedWeights(design.S, m);
    const double w_sq = design.w_bar.squaredNorm();
    if (!(w_sq > 0.0)) throw std::invalid_argument("degenerate weights");

    // Replace the component of S along w_bar with the conditional optimum;
    // the complement is left untouched.
    design.S -= (design.S * design.w_bar) * (design.w_bar.adjoint() / w_sq);
    design.S += mmseProjection(m, design.w_bar);

    const double j = evaluateMse(design.S, design.w_bar, m);
    design.mse_trajectory.push_back(j);
    if (std::abs(prev - j) < tol) {
      design.converged = true;
      break;
    }
    prev = j;
  }
  return design;
}

}  // namespace rrfilt
