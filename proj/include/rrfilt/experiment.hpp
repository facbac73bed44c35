#pragma once

#include "rrfilt/cdma.hpp"
#include "rrfilt/config.hpp"
#include "rrfilt/csv.hpp"
#include "rrfilt/filters.hpp"
#include "rrfilt/numkernel.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rrfilt {

/// An averaged experiment result: one metric value per series per x-value,
/// plus per-series run bookkeeping. x is the symbol index for learning
/// curves and the rank for rank sweeps. Runs that diverge are excluded from
/// the averages of the affected series and counted in divergent_runs.
struct LearningCurve {
  std::vector<double> x;
  std::vector<std::string> series;
  std::vector<std::vector<double>> values;  // [series][x]
  std::vector<int> valid_runs;
  std::vector<int> divergent_runs;
};

/// Columns: x_name, then the series in stored order.
Table curveTable(const LearningCurve& curve, const std::string& x_name);

/// Online reduced-rank baseline: before each symbol the projection basis is
/// recomputed from running sample moments of the past samples (with a small
/// relative diagonal load for conditioning), and the reduced weights adapt
/// by LMS. Call output() then adapt() once per symbol, in symbol order.
class KrylovLmsFilter {
 public:
  KrylovLmsFilter(Index full_dim, Index rank, double mu,
                  double relative_loading = 1e-8);

  /// Refreshes the basis from moments of strictly earlier samples, then
  /// returns the a-priori estimate w_bar^H S^H r.
  Complex output(const ComplexVector& r);

  /// LMS update of the reduced weights with the cached projected sample,
  /// then the moment update with (r, desired). Throws DivergenceError when
  /// the weights leave the finite range.
  void adapt(double desired, long step_index = -1);

  const ComplexMatrix& basis() const { return basis_; }
  const ComplexVector& weights() const { return w_bar_; }

 private:
  void refreshBasis();

  MomentAccumulator acc_;
  ComplexMatrix basis_;
  ComplexVector w_bar_;
  ComplexVector r_cache_;
  ComplexVector r_bar_cache_;
  Complex x_cache_;
  double mu_;
  double relative_loading_;
};

/// Which per-run work mseMonteCarlo performs.
struct MseRunOptions {
  bool fullrank = true;
  bool jio = true;
  bool krylov = true;
  bool floor = false;  // estimate the full-rank MMSE floor per run
};

/// Per-symbol squared error, linear scale, averaged over valid runs.
/// Series order: fullrank, jio, krylov (disabled series stay empty).
struct MseSummary {
  std::vector<std::vector<double>> mean_sq_err;
  std::vector<int> valid_runs;
  std::vector<int> divergent_runs;
  double floor_linear = 0.0;
  int floor_runs = 0;
};

/// Supervised learning curves on static channels: run j uses seed
/// seed_base + j, d(i) is the known symbol of user 1 throughout.
MseSummary mseMonteCarlo(const ExperimentConfig& config, int num_runs,
                         std::uint64_t seed_base, const MseRunOptions& options);

/// Per-symbol error rate over a trailing ber_window-symbol window, averaged
/// over valid runs, in the fading scenario: training_symbols supervised
/// symbols, then decision-directed adaptation. Series order: fullrank, jio,
/// krylov, oracle (the exact MMSE receiver recomputed each symbol from the
/// true moments; skipped in runs where those moments are singular).
struct BerSummary {
  std::vector<std::vector<double>> ber;
  std::vector<int> valid_runs;
  std::vector<int> divergent_runs;
};

BerSummary berMonteCarlo(const ExperimentConfig& config, int num_runs,
                         std::uint64_t seed_base);

/// Mean of the last 10% (at least one) of the curve entries.
double steadyStateLinear(const std::vector<double>& linear_curve);

/// First index at which the curve enters within margin_db of its steady
/// state (curve[i] <= steadyState * 10^(margin_db/10)); curve.size() if
/// never.
std::size_t riseIndex(const std::vector<double>& linear_curve,
                      double margin_db);

/// Logarithmic step-size grid 1e-4 .. 1e-1, 7 points.
std::vector<double> logStepGrid();

/// One step-size candidate's averaged supervised learning curve (linear MSE
/// per symbol over the tuning runs). converged is false when any tuning run
/// diverged, in which case the curve is empty.
struct CandidateCurve {
  double mu = 0.0;
  double eta = 0.0;  // only meaningful for the jio grid
  std::vector<double> mean_sq_err;
  bool converged = false;
};

/// Averaged curves for every candidate of logStepGrid() on the tuning seed
/// block (tuning_runs runs seeded from base_seed + 10000, signal streams
/// shared across candidates). The jio grid is the mu x eta product grid.
std::vector<CandidateCurve> fullrankTuningCurves(const ExperimentConfig&);
std::vector<CandidateCurve> jioTuningCurves(const ExperimentConfig&, int rank);
std::vector<CandidateCurve> krylovTuningCurves(const ExperimentConfig&,
                                               int rank);

struct TunedSteps {
  double fullrank_mu = 0.0;
  double jio_mu = 0.0;
  double jio_eta = 0.0;
  double krylov_mu = 0.0;
};

/// How the grid search picks a candidate from the tuning curves.
enum class TuningObjective {
  /// Minimum steady-state MSE (the rank-sweep protocol).
  kMinSteadyState,
  /// Smallest rise index (first entry within 1 dB of the candidate's own
  /// steady state) among candidates whose steady state lies within 0.5 dB
  /// of the algorithm's best achievable steady state at the run horizon;
  /// ties prefer the lower steady state. This is the protocol for
  /// convergence-speed comparisons at equalized steady-state MSE.
  kFastestEqualized,
};

/// Grid search tuning each algorithm independently at the given rank over
/// the logStepGrid() candidates, on tuning_runs runs seeded from a block
/// disjoint from the evaluation seeds (base_seed + 10000). Candidates with
/// any divergent run are discarded.
TunedSteps tuneStepSizes(const ExperimentConfig& config, int rank,
                         TuningObjective objective =
                             TuningObjective::kMinSteadyState);

/// Learning curves in dB (10 log10 of the run-averaged squared error) for
/// the three adaptive algorithms plus the estimated MMSE floor.
LearningCurve runMseVsSymbols(const ExperimentConfig& config);

/// Steady-state MSE in dB per rank in [rank_min, rank_max], step sizes
/// tuned per rank; the full-rank row and the MMSE floor are constant.
LearningCurve runMseVsRank(const ExperimentConfig& config);

/// Windowed BER per symbol for the adaptive algorithms and the true-moment
/// oracle receiver.
LearningCurve runBerVsSymbols(const ExperimentConfig& config);

}  // namespace rrfilt
