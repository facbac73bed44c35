#include "rrfilt/experiment.hpp"

#include "rrfilt/mmse.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace rrfilt {

namespace {

constexpr const char* kFullRankName = "fullrank_lms";
constexpr const char* kJioName = "jio_lms";
constexpr const char* kKrylovName = "krylov_lms";
constexpr const char* kFloorName = "mmse_floor";
constexpr const char* kOracleName = "oracle_mmse";

double toDb(double linear) {
  return 10.0 * std::log10(std::max(linear, 1e-300));
}

template <typename Runner>
void parallelRuns(int count, int threads, Runner&& runner) {
  threads = std::clamp(threads, 1, count);
  if (threads == 1) {
    for (int j = 0; j < count; ++j) runner(j);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&runner, &next, count] {
      for (int j = next.fetch_add(1); j < count; j = next.fetch_add(1))
        runner(j);
    });
  for (std::thread& th : pool) th.join();
}

/// Complete a partially filled orthonormal basis to the requested number of
/// columns using canonical unit vectors.
ComplexMatrix padBasis(const ComplexMatrix& q, Index rank) {
  if (q.cols() >= rank) return q.leftCols(rank);
  const Index m = q.rows();
  ComplexMatrix out(m, rank);
  out.leftCols(q.cols()) = q;
  Index have = q.cols();
  for (Index j = 0; j < m && have < rank; ++j) {
    ComplexVector v = ComplexVector::Zero(m);
    v(j) = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (Index c = 0; c < have; ++c) v -= out.col(c).dot(v) * out.col(c);
    const double norm = v.norm();
    if (norm > 1e-8) out.col(have++) = v / norm;
  }
  if (have < rank) throw DegenerateBasisError("basis completion failed");
  return out;
}

struct MseRunData {
  std::array<std::vector<double>, 3> sq_err;
  std::array<char, 3> valid{1, 1, 1};
  double floor_linear = std::numeric_limits<double>::quiet_NaN();
  std::exception_ptr error;
};

MseRunData mseRunOnce(const ExperimentConfig& config, std::uint64_t seed,
                      const MseRunOptions& options) {
  MseRunData data;
  std::mt19937_64 rng(seed);
  CdmaParams params = config.scenario;
  params.doppler = 0.0;  // learning curves run on static channels
  const CdmaScenario scenario = drawScenario(params, rng);
  const Index m = params.observationDim();
  const int num_symbols = config.num_symbols;
  CdmaSimulator sim(scenario, rng(), num_symbols);

  FullRankState fullrank = FullRankState::initial(m, config.fullrank_mu);
  JioState jio =
      JioState::initial(m, config.rank, config.jio_mu, config.jio_eta);
  KrylovLmsFilter krylov(m, config.rank, config.krylov_mu);

  const std::array<bool, 3> enabled{options.fullrank, options.jio,
                                    options.krylov};
  for (int s = 0; s < 3; ++s)
    if (enabled[s]) data.sq_err[s].assign(num_symbols, 0.0);

  for (int i = 0; i < num_symbols; ++i) {
    const SymbolFrame frame = sim.frame(i);
    const Complex d(sim.desired(i), 0.0);
    if (enabled[0] && data.valid[0]) {
      try {
        auto [out, next] = fullrankLmsStep(fullrank, frame.r, d, i);
        data.sq_err[0][i] = std::norm(out.e);
        fullrank = std::move(next);
      } catch (const DivergenceError&) {
        data.valid[0] = 0;
      }
    }
    if (enabled[1] && data.valid[1]) {
      try {
        auto [out, next] = jioLmsStep(jio, frame.r, d, i);
        data.sq_err[1][i] = std::norm(out.e);
        jio = std::move(next);
      } catch (const DivergenceError&) {
        data.valid[1] = 0;
      }
    }
    if (enabled[2] && data.valid[2]) {
      try {
        const Complex x = krylov.output(frame.r);
        data.sq_err[2][i] = std::norm(d - x);
        krylov.adapt(d.real(), i);
      } catch (const DivergenceError&) {
        data.valid[2] = 0;
      }
    }
  }

  if (options.floor) {
    try {
      std::vector<ChannelRealization> channels(params.num_users);
      for (int u = 0; u < params.num_users; ++u)
        channels[u].taps = sim.channelAt(u, 0);
      CdmaSimulator floor_sim(scenario, std::move(channels), rng(),
                              config.floor_samples);
      ComplexMatrix samples(m, config.floor_samples);
      ComplexVector desired(config.floor_samples);
      for (int i = 0; i < config.floor_samples; ++i) {
        samples.col(i) = floor_sim.frame(i).r;
        desired(i) = Complex(floor_sim.desired(i), 0.0);
      }
      data.floor_linear = fullRankMmse(estimateMoments(samples, desired)).mse;
    } catch (const IllConditionedError&) {
      // singular estimated moments: no floor for this run
    }
  }
  return data;
}

struct BerRunData {
  std::array<std::vector<char>, 4> correct;
  std::array<char, 4> valid{1, 1, 1, 1};
  std::exception_ptr error;
};

BerRunData berRunOnce(const ExperimentConfig& config, std::uint64_t seed) {
  BerRunData data;
  std::mt19937_64 rng(seed);
  const CdmaScenario scenario = drawScenario(config.scenario, rng);
  const Index m = config.scenario.observationDim();
  const int num_symbols = config.num_symbols;
  const int span = config.scenario.isi_span;
  CdmaSimulator sim(scenario, rng(), num_symbols);

  FullRankState fullrank = FullRankState::initial(m, config.fullrank_mu);
  JioState jio =
      JioState::initial(m, config.rank, config.jio_mu, config.jio_eta);
  KrylovLmsFilter krylov(m, config.rank, config.krylov_mu);

  for (auto& c : data.correct) c.assign(num_symbols, 0);

  for (int i = 0; i < num_symbols; ++i) {
    const SymbolFrame frame = sim.frame(i);
    const double b = sim.desired(i);
    const bool training = i < config.training_symbols;

    // Each branch computes the a-priori output, decides, then feeds back
    // either the pilot or its own decision as the adaptation target.
    if (data.valid[0]) {
      try {
        const Complex x = fullrank.w.dot(frame.r);
        const double decision = detectBpsk(x);
        data.correct[0][i] = decision == b;
        const double d_adapt = training ? b : decision;
        auto [out, next] =
            fullrankLmsStep(fullrank, frame.r, Complex(d_adapt, 0.0), i);
        (void)out;
        fullrank = std::move(next);
      } catch (const DivergenceError&) {
        data.valid[0] = 0;
      }
    }
    if (data.valid[1]) {
      try {
        const Complex x = jioOutput(jio, frame.r);
        const double decision = detectBpsk(x);
        data.correct[1][i] = decision == b;
        const double d_adapt = training ? b : decision;
        auto [out, next] = jioLmsStep(jio, frame.r, Complex(d_adapt, 0.0), i);
        (void)out;
        jio = std::move(next);
      } catch (const DivergenceError&) {
        data.valid[1] = 0;
      }
    }
    if (data.valid[2]) {
      try {
        const Complex x = krylov.output(frame.r);
        const double decision = detectBpsk(x);
        data.correct[2][i] = decision == b;
        krylov.adapt(training ? b : decision, i);
      } catch (const DivergenceError&) {
        data.valid[2] = 0;
      }
    }
    if (data.valid[3]) {
      try {
        ComplexMatrix r_true = ComplexMatrix::Zero(m, m);
        ComplexVector p_true;
        for (int u = 0; u < config.scenario.num_users; ++u) {
          const ComplexMatrix sig = sim.signatureAt(u, i);
          r_true.selfadjointView<Eigen::Lower>().rankUpdate(sig, 1.0);
          if (u == 0) p_true = sig.col(span - 1);
        }
        ComplexMatrix r_full = r_true.selfadjointView<Eigen::Lower>();
        r_full.diagonal().array() += scenario.noise_var;
        const ComplexVector w = hermitianSolve(r_full, p_true);
        data.correct[3][i] = detectBpsk(w.dot(frame.r)) == b;
      } catch (const IllConditionedError&) {
        data.valid[3] = 0;
      }
    }
  }
  return data;
}

/// Supervised static-channel signal streams for the tuning seed block,
/// generated once and replayed for every grid candidate.
struct CachedStream {
  ComplexMatrix frames;  // one received vector per column
  RealVector desired;
};

std::vector<CachedStream> tuningStreams(const ExperimentConfig& config) {
  const int runs = config.tuning_runs;
  std::vector<CachedStream> streams(runs);
  std::vector<std::exception_ptr> errors(runs);
  parallelRuns(runs, config.threads, [&](int j) {
    try {
      std::mt19937_64 rng(config.base_seed + 10000 +
                          static_cast<std::uint64_t>(j));
      CdmaParams params = config.scenario;
      params.doppler = 0.0;
      const CdmaScenario scenario = drawScenario(params, rng);
      CdmaSimulator sim(scenario, rng(), config.num_symbols);
      streams[j].frames.resize(params.observationDim(), config.num_symbols);
      streams[j].desired.resize(config.num_symbols);
      for (int i = 0; i < config.num_symbols; ++i) {
        streams[j].frames.col(i) = sim.frame(i).r;
        streams[j].desired(i) = sim.desired(i);
      }
    } catch (...) {
      errors[j] = std::current_exception();
    }
  });
  for (std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  return streams;
}

/// Adds the per-symbol squared error of one filter pass over one stream into
/// sum; false when the pass diverges.
template <typename Step>
bool accumulateStream(const CachedStream& stream, std::vector<double>& sum,
                      Step&& step) {
  const int n = static_cast<int>(stream.desired.size());
  try {
    for (int i = 0; i < n; ++i)
      sum[i] += step(stream.frames.col(i), stream.desired(i), i);
  } catch (const DivergenceError&) {
    return false;
  }
  return true;
}

template <typename MakeStep>
CandidateCurve evaluateCandidate(const std::vector<CachedStream>& streams,
                                 int num_symbols, MakeStep&& make_step) {
  CandidateCurve candidate;
  std::vector<double> sum(num_symbols, 0.0);
  for (const CachedStream& stream : streams) {
    auto step = make_step();
    if (!accumulateStream(stream, sum, step)) return candidate;
  }
  for (double& v : sum) v /= static_cast<double>(streams.size());
  candidate.mean_sq_err = std::move(sum);
  candidate.converged = true;
  return candidate;
}

/// Applies a TuningObjective to a candidate list. kMinSteadyState picks the
/// minimum steady-state MSE; kFastestEqualized picks the smallest rise index
/// among candidates within 0.5 dB of the best steady state, ties preferring
/// the lower steady state. Grid order breaks remaining ties.
void selectTuned(const std::vector<CandidateCurve>& candidates,
                 TuningObjective objective, const char* what, double* best_mu,
                 double* best_eta) {
  double best_ss = std::numeric_limits<double>::infinity();
  const CandidateCurve* chosen = nullptr;
  for (const CandidateCurve& candidate : candidates) {
    if (!candidate.converged) continue;
    const double ss = steadyStateLinear(candidate.mean_sq_err);
    if (ss < best_ss) {
      best_ss = ss;
      chosen = &candidate;
    }
  }
  if (chosen == nullptr)
    throw DivergenceError(
        std::string("tuning: every ") + what + " step size diverged", -1);
  if (objective == TuningObjective::kFastestEqualized) {
    const double band = best_ss * std::pow(10.0, 0.05);
    std::size_t chosen_rise = 0;
    double chosen_ss = std::numeric_limits<double>::infinity();
    chosen = nullptr;
    for (const CandidateCurve& candidate : candidates) {
      if (!candidate.converged) continue;
      const double ss = steadyStateLinear(candidate.mean_sq_err);
      if (ss > band) continue;
      const std::size_t rise = riseIndex(candidate.mean_sq_err, 1.0);
      if (chosen == nullptr || rise < chosen_rise ||
          (rise == chosen_rise && ss < chosen_ss)) {
        chosen = &candidate;
        chosen_rise = rise;
        chosen_ss = ss;
      }
    }
  }
  *best_mu = chosen->mu;
  if (best_eta) *best_eta = chosen->eta;
}

double tuneFullrankMu(const ExperimentConfig& base, TuningObjective objective) {
  double mu = 0.0;
  selectTuned(fullrankTuningCurves(base), objective, "full-rank", &mu,
              nullptr);
  return mu;
}

std::pair<double, double> tuneJioSteps(const ExperimentConfig& base,
                                       TuningObjective objective) {
  double mu = 0.0;
  double eta = 0.0;
  selectTuned(jioTuningCurves(base, base.rank), objective, "jio", &mu, &eta);
  return {mu, eta};
}

double tuneKrylovMu(const ExperimentConfig& base, TuningObjective objective) {
  double mu = 0.0;
  selectTuned(krylovTuningCurves(base, base.rank), objective, "krylov", &mu,
              nullptr);
  return mu;
}

}  // namespace

Table curveTable(const LearningCurve& curve, const std::string& x_name) {
  Table table;
  table.columns.push_back(x_name);
  for (const std::string& name : curve.series) table.columns.push_back(name);
  table.rows.reserve(curve.x.size());
  for (std::size_t i = 0; i < curve.x.size(); ++i) {
    std::vector<double> row;
    row.reserve(1 + curve.series.size());
    row.push_back(curve.x[i]);
    for (const std::vector<double>& column : curve.values)
      row.push_back(column.at(i));
    table.rows.push_back(std::move(row));
  }
  return table;
}

KrylovLmsFilter::KrylovLmsFilter(Index full_dim, Index rank, double mu,
                                 double relative_loading)
    : acc_(full_dim),
      basis_(ComplexMatrix::Identity(full_dim, rank)),
      w_bar_(ComplexVector::Zero(rank)),
      mu_(mu),
      relative_loading_(relative_loading) {
  if (rank < 1 || rank > full_dim)
    throw std::invalid_argument("krylov filter: need 1 <= D <= M");
  if (!(mu > 0.0))
    throw std::invalid_argument("krylov filter: mu must be positive");
}

void KrylovLmsFilter::refreshBasis() {
  if (acc_.sampleCount() == 0) return;
  const MomentSet mom = acc_.moments();
  if (!(mom.p.norm() > 0.0)) return;
  ComplexMatrix r_est = mom.R;
  r_est.diagonal().array() +=
      relative_loading_ * mom.R.trace().real() / static_cast<double>(mom.R.rows());
  basis_ = padBasis(krylovProjection(r_est, mom.p, basis_.cols()),
                    basis_.cols());
}

Complex KrylovLmsFilter::output(const ComplexVector& r) {
  if (r.size() != basis_.rows())
    throw std::invalid_argument("krylov filter: received vector length "
                                "mismatch");
  refreshBasis();
  r_cache_ = r;
  r_bar_cache_ = basis_.adjoint() * r;
  x_cache_ = w_bar_.dot(r_bar_cache_);
  return x_cache_;
}

void KrylovLmsFilter::adapt(double desired, long step_index) {
  if (r_cache_.size() == 0)
    throw std::logic_error("krylov filter: adapt before output");
  const Complex d(desired, 0.0);
  const Complex e = d - x_cache_;
  w_bar_ += mu_ * std::conj(e) * r_bar_cache_;
  if (!w_bar_.allFinite()) throw DivergenceError("divergence", step_index);
  acc_.add(r_cache_, d);
}

MseSummary mseMonteCarlo(const ExperimentConfig& config, int num_runs,
                         std::uint64_t seed_base,
                         const MseRunOptions& options) {
  if (num_runs < 1) throw std::invalid_argument("num_runs must be >= 1");
  std::vector<MseRunData> slots(num_runs);
  parallelRuns(num_runs, config.threads, [&](int j) {
    try {
      slots[j] = mseRunOnce(config, seed_base + static_cast<std::uint64_t>(j),
                            options);
    } catch (...) {
      slots[j].error = std::current_exception();
    }
  });
  for (const MseRunData& slot : slots)
    if (slot.error) std::rethrow_exception(slot.error);

  MseSummary summary;
  summary.mean_sq_err.resize(3);
  summary.valid_runs.assign(3, 0);
  summary.divergent_runs.assign(3, 0);
  const std::array<bool, 3> enabled{options.fullrank, options.jio,
                                    options.krylov};
  for (int s = 0; s < 3; ++s) {
    if (!enabled[s]) continue;
    std::vector<double> sum(config.num_symbols, 0.0);
    for (const MseRunData& slot : slots) {
      if (!slot.valid[s]) {
        ++summary.divergent_runs[s];
        continue;
      }
      ++summary.valid_runs[s];
      for (int i = 0; i < config.num_symbols; ++i) sum[i] += slot.sq_err[s][i];
    }
    if (summary.valid_runs[s] > 0)
      for (double& v : sum) v /= summary.valid_runs[s];
    summary.mean_sq_err[s] = std::move(sum);
  }
  if (options.floor) {
    double total = 0.0;
    for (const MseRunData& slot : slots)
      if (std::isfinite(slot.floor_linear)) {
        total += slot.floor_linear;
        ++summary.floor_runs;
      }
    if (summary.floor_runs > 0) summary.floor_linear = total / summary.floor_runs;
  }
  return summary;
}

BerSummary berMonteCarlo(const ExperimentConfig& config, int num_runs,
                         std::uint64_t seed_base) {
  if (num_runs < 1) throw std::invalid_argument("num_runs must be >= 1");
  std::vector<BerRunData> slots(num_runs);
  parallelRuns(num_runs, config.threads, [&](int j) {
    try {
      slots[j] = berRunOnce(config, seed_base + static_cast<std::uint64_t>(j));
    } catch (...) {
      slots[j].error = std::current_exception();
    }
  });
  for (const BerRunData& slot : slots)
    if (slot.error) std::rethrow_exception(slot.error);

  BerSummary summary;
  summary.ber.resize(4);
  summary.valid_runs.assign(4, 0);
  summary.divergent_runs.assign(4, 0);
  const int n = config.num_symbols;
  for (int s = 0; s < 4; ++s) {
    std::vector<double> errors(n, 0.0);
    for (const BerRunData& slot : slots) {
      if (!slot.valid[s]) {
        ++summary.divergent_runs[s];
        continue;
      }
      ++summary.valid_runs[s];
      for (int i = 0; i < n; ++i) errors[i] += slot.correct[s][i] ? 0.0 : 1.0;
    }
    std::vector<double> ber(n, std::numeric_limits<double>::quiet_NaN());
    if (summary.valid_runs[s] > 0) {
      // Trailing-window average of the per-symbol error rate.
      double window_sum = 0.0;
      for (int i = 0; i < n; ++i) {
        window_sum += errors[i];
        if (i >= config.ber_window) window_sum -= errors[i - config.ber_window];
        const int width = std::min(i + 1, config.ber_window);
        ber[i] = window_sum / (static_cast<double>(width) *
                               summary.valid_runs[s]);
      }
    }
    summary.ber[s] = std::move(ber);
  }
  return summary;
}

double steadyStateLinear(const std::vector<double>& linear_curve) {
  if (linear_curve.empty())
    throw std::invalid_argument("steadyStateLinear: empty curve");
  const std::size_t n = linear_curve.size();
  const std::size_t tail = std::max<std::size_t>(1, n / 10);
  double sum = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) sum += linear_curve[i];
  return sum / static_cast<double>(tail);
}

std::size_t riseIndex(const std::vector<double>& linear_curve,
                      double margin_db) {
  const double threshold =
      steadyStateLinear(linear_curve) * std::pow(10.0, margin_db / 10.0);
  for (std::size_t i = 0; i < linear_curve.size(); ++i)
    if (linear_curve[i] <= threshold) return i;
  return linear_curve.size();
}

std::vector<double> logStepGrid() {
  std::vector<double> grid;
  grid.reserve(7);
  for (int k = 0; k <= 6; ++k)
    grid.push_back(std::pow(10.0, -4.0 + 0.5 * k));
  return grid;
}

std::vector<CandidateCurve> fullrankTuningCurves(
    const ExperimentConfig& config) {
  validateConfig(config);
  const std::vector<CachedStream> streams = tuningStreams(config);
  const Index m = config.scenario.observationDim();
  std::vector<CandidateCurve> out;
  for (double mu : logStepGrid()) {
    CandidateCurve candidate =
        evaluateCandidate(streams, config.num_symbols, [&] {
          return [state = FullRankState::initial(m, mu)](
                     const ComplexVector& r, double b, int i) mutable {
            auto [output, next] = fullrankLmsStep(state, r, Complex(b, 0), i);
            state = std::move(next);
            return std::norm(output.e);
          };
        });
    candidate.mu = mu;
    out.push_back(std::move(candidate));
  }
  return out;
}

std::vector<CandidateCurve> jioTuningCurves(const ExperimentConfig& config,
                                            int rank) {
  validateConfig(config);
  if (rank < 1 || rank > config.scenario.observationDim())
    throw std::invalid_argument("jioTuningCurves: rank out of range");
  const std::vector<CachedStream> streams = tuningStreams(config);
  const Index m = config.scenario.observationDim();
  std::vector<CandidateCurve> out;
  for (double mu : logStepGrid())
    for (double eta : logStepGrid()) {
      CandidateCurve candidate =
          evaluateCandidate(streams, config.num_symbols, [&] {
            return [state = JioState::initial(m, rank, mu, eta)](
                       const ComplexVector& r, double b, int i) mutable {
              auto [output, next] = jioLmsStep(state, r, Complex(b, 0), i);
              state = std::move(next);
              return std::norm(output.e);
            };
          });
      candidate.mu = mu;
      candidate.eta = eta;
      out.push_back(std::move(candidate));
    }
  return out;
}

std::vector<CandidateCurve> krylovTuningCurves(const ExperimentConfig& config,
                                               int rank) {
  validateConfig(config);
  if (rank < 1 || rank > config.scenario.observationDim())
    throw std::invalid_argument("krylovTuningCurves: rank out of range");
  const std::vector<CachedStream> streams = tuningStreams(config);
  const Index m = config.scenario.observationDim();
  std::vector<CandidateCurve> out;
  for (double mu : logStepGrid()) {
    CandidateCurve candidate =
        evaluateCandidate(streams, config.num_symbols, [&] {
          return [filter = KrylovLmsFilter(m, rank, mu)](
                     const ComplexVector& r, double b, int i) mutable {
            const double err = std::norm(Complex(b, 0) - filter.output(r));
            filter.adapt(b, i);
            return err;
          };
        });
    candidate.mu = mu;
    out.push_back(std::move(candidate));
  }
  return out;
}

TunedSteps tuneStepSizes(const ExperimentConfig& config, int rank,
                         TuningObjective objective) {
  validateConfig(config);
  if (rank < 1 || rank > config.scenario.observationDim())
    throw std::invalid_argument("tuneStepSizes: rank out of range");
  ExperimentConfig base = config;
  base.rank = rank;
  TunedSteps tuned;
  tuned.fullrank_mu = tuneFullrankMu(base, objective);
  std::tie(tuned.jio_mu, tuned.jio_eta) = tuneJioSteps(base, objective);
  tuned.krylov_mu = tuneKrylovMu(base, objective);
  return tuned;
}

LearningCurve runMseVsSymbols(const ExperimentConfig& config) {
  validateConfig(config);
  const MseRunOptions options{true, true, true, true};
  const MseSummary summary =
      mseMonteCarlo(config, config.num_runs, config.base_seed, options);

  LearningCurve curve;
  curve.x.resize(config.num_symbols);
  for (int i = 0; i < config.num_symbols; ++i) curve.x[i] = i;
  const std::array<const char*, 3> names{kFullRankName, kJioName, kKrylovName};
  for (int s = 0; s < 3; ++s) {
    curve.series.emplace_back(names[s]);
    std::vector<double> db(config.num_symbols);
    for (int i = 0; i < config.num_symbols; ++i)
      db[i] = toDb(summary.mean_sq_err[s][i]);
    curve.values.push_back(std::move(db));
    curve.valid_runs.push_back(summary.valid_runs[s]);
    curve.divergent_runs.push_back(summary.divergent_runs[s]);
  }
  if (summary.floor_runs > 0) {
    curve.series.emplace_back(kFloorName);
    curve.values.emplace_back(config.num_symbols, toDb(summary.floor_linear));
    curve.valid_runs.push_back(summary.floor_runs);
    curve.divergent_runs.push_back(config.num_runs - summary.floor_runs);
  }
  return curve;
}

LearningCurve runMseVsRank(const ExperimentConfig& config) {
  validateConfig(config);

  ExperimentConfig fr_config = config;
  fr_config.fullrank_mu =
      tuneFullrankMu(config, TuningObjective::kMinSteadyState);
  // Reuse the full-rank evaluation to estimate the rank-independent floor.
  const MseSummary fr_summary =
      mseMonteCarlo(fr_config, config.num_runs, config.base_seed,
                    MseRunOptions{true, false, false, true});
  if (fr_summary.valid_runs[0] == 0)
    throw DivergenceError("runMseVsRank: full-rank evaluation diverged in "
                          "every run",
                          -1);
  const double fr_db = toDb(steadyStateLinear(fr_summary.mean_sq_err[0]));

  LearningCurve curve;
  curve.series = {kFullRankName, kJioName, kKrylovName, kFloorName};
  curve.values.assign(4, {});
  curve.valid_runs.assign(4, config.num_runs);
  curve.divergent_runs.assign(4, 0);
  curve.valid_runs[0] = fr_summary.valid_runs[0];
  curve.divergent_runs[0] = fr_summary.divergent_runs[0];
  curve.valid_runs[3] = fr_summary.floor_runs;
  curve.divergent_runs[3] = config.num_runs - fr_summary.floor_runs;

  for (int rank = config.rank_min; rank <= config.rank_max; ++rank) {
    ExperimentConfig tuned = config;
    tuned.rank = rank;
    std::tie(tuned.jio_mu, tuned.jio_eta) =
        tuneJioSteps(tuned, TuningObjective::kMinSteadyState);
    tuned.krylov_mu = tuneKrylovMu(tuned, TuningObjective::kMinSteadyState);
    ExperimentConfig eval = tuned;
    eval.fullrank_mu = fr_config.fullrank_mu;
    const MseSummary summary =
        mseMonteCarlo(eval, config.num_runs, config.base_seed,
                      MseRunOptions{false, true, true, false});
    curve.x.push_back(rank);
    curve.values[0].push_back(fr_db);
    for (int s = 1; s <= 2; ++s) {
      if (summary.valid_runs[s] == 0)
        throw DivergenceError("runMseVsRank: evaluation diverged in every run",
                              -1);
      curve.values[s].push_back(
          toDb(steadyStateLinear(summary.mean_sq_err[s])));
      curve.valid_runs[s] =
          std::min(curve.valid_runs[s], summary.valid_runs[s]);
      curve.divergent_runs[s] += summary.divergent_runs[s];
    }
    curve.values[3].push_back(toDb(fr_summary.floor_linear));
  }
  return curve;
}

LearningCurve runBerVsSymbols(const ExperimentConfig& config) {
  validateConfig(config);
  if (config.training_symbols >= config.num_symbols)
    throw ConfigError("training_symbols = " +
                      std::to_string(config.training_symbols) +
                      " must be smaller than num_symbols = " +
                      std::to_string(config.num_symbols) +
                      " for a decision-directed phase");
  const BerSummary summary =
      berMonteCarlo(config, config.num_runs, config.base_seed);

  LearningCurve curve;
  curve.x.resize(config.num_symbols);
  for (int i = 0; i < config.num_symbols; ++i) curve.x[i] = i;
  const std::array<const char*, 4> names{kFullRankName, kJioName, kKrylovName,
                                         kOracleName};
  for (int s = 0; s < 4; ++s) {
    if (summary.valid_runs[s] == 0) continue;  // e.g. singular oracle moments
    curve.series.emplace_back(names[s]);
    curve.values.push_back(summary.ber[s]);
    curve.valid_runs.push_back(summary.valid_runs[s]);
    curve.divergent_runs.push_back(summary.divergent_runs[s]);
  }
  return curve;
}

}  // namespace rrfilt
