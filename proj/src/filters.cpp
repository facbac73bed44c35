#include "rrfilt/filters.hpp"

#include "rrfilt/numkernel.hpp"

#include <cmath>
#include <stdexcept>

namespace rrfilt {

namespace {

bool isFinite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void requireInput(const JioState& state, const ComplexVector& r) {
  if (r.size() != state.S.rows())
    throw std::invalid_argument("jio: received vector length mismatch");
  if (state.w_bar.size() != state.S.cols())
    throw std::invalid_argument("jio: filter/projection rank mismatch");
}

}  // namespace

JioState JioState::initial(Index m, Index d, double mu, double eta) {
  if (d < 1 || d > m) throw std::invalid_argument("jio: need 1 <= D <= M");
  JioState state;
  state.S = ComplexMatrix::Identity(m, d);
  state.w_bar = ComplexVector::Zero(d);
  state.mu = mu;
  state.eta = eta;
  return state;
}

FullRankState FullRankState::initial(Index m, double mu) {
  return FullRankState{ComplexVector::Zero(m), mu};
}

Complex jioOutput(const JioState& state, const ComplexVector& r) {
  requireInput(state, r);
  ComplexVector r_bar = state.S.adjoint() * r;
  return state.w_bar.dot(r_bar);
}

ComplexVector gradientW(const JioState& state, const ComplexVector& r,
                        Complex d) {
  requireInput(state, r);
  ComplexVector r_bar = state.S.adjoint() * r;
  const Complex e = d - state.w_bar.dot(r_bar);
  return -std::conj(e) * r_bar;
}

ComplexMatrix gradientS(const JioState& state, const ComplexVector& r,
                        Complex d) {
  requireInput(state, r);
  ComplexVector r_bar = state.S.adjoint() * r;
  const Complex e = d - state.w_bar.dot(r_bar);
  return -std::conj(e) * r * state.w_bar.adjoint();
}

std::pair<StepOutput, JioState> jioLmsStep(const JioState& state,
                                           const ComplexVector& r, Complex d,
                                           long step_index) {
  requireInput(state, r);
  if (!r.allFinite() || !isFinite(d))
    throw std::invalid_argument("jio: non-finite input");

  ComplexVector r_bar = state.S.adjoint() * r;
  const Complex x = state.w_bar.dot(r_bar);
  const Complex e = d - x;

  // Both updates use the pre-update state and the shared error, written as
  // state minus step size times the conjugate gradient. The gradients are
  // materialized first so the update is bit-identical to subtracting the
  // scaled gradientW / gradientS outputs.
  const ComplexVector grad_w = -std::conj(e) * r_bar;
  const ComplexMatrix grad_s = -std::conj(e) * r * state.w_bar.adjoint();
  JioState next = state;
  next.w_bar = state.w_bar - state.mu * grad_w;
  next.S = state.S - state.eta * grad_s;

  if (!next.w_bar.allFinite() || !next.S.allFinite())
    throw DivergenceError("divergence", step_index);
  return {StepOutput{x, e}, std::move(next)};
}

std::pair<StepOutput, FullRankState> fullrankLmsStep(const FullRankState& state,
                                                     const ComplexVector& r,
                                                     Complex d,
                                                     long step_index) {
  if (r.size() != state.w.size())
    throw std::invalid_argument("lms: received vector length mismatch");
  if (!r.allFinite() || !isFinite(d))
    throw std::invalid_argument("lms: non-finite input");

  const Complex x = state.w.dot(r);
  const Complex e = d - x;

  FullRankState next = state;
  next.w = state.w - state.mu * (-std::conj(e) * r);

  if (!next.w.allFinite()) throw DivergenceError("divergence", step_index);
  return {StepOutput{x, e}, std::move(next)};
}

ComplexMatrix krylovProjection(const ComplexMatrix& R, const ComplexVector& p,
                               Index d) {
  if (R.rows() != R.cols() || R.rows() != p.size())
    throw std::invalid_argument("krylovProjection: dimension mismatch");
  if (d < 1 || d > R.rows())
    throw std::invalid_argument("krylovProjection: need 1 <= D <= M");
  const double p_norm = p.norm();
  if (!(p_norm > 0.0)) throw DegenerateBasisError("degenerate basis");

  // Generators are normalized as they are produced; this conditions the
  // Gram-Schmidt pass without changing the span.
  ComplexMatrix basis(R.rows(), d);
  ComplexVector v = p / p_norm;
  basis.col(0) = v;
  for (Index j = 1; j < d; ++j) {
    v = R * v;
    const double norm = v.norm();
    if (norm > 0.0) v /= norm;
    basis.col(j) = v;
  }
  return orthonormalizeColumns(basis);
}

}  // namespace rrfilt
