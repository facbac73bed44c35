#include "rrfilt/cdma.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rrfilt {

namespace {

constexpr int kClarkeSinusoids = 32;

void validateParams(const CdmaParams& p) {
  if (p.num_users < 1) throw std::invalid_argument("num_users must be >= 1");
  if (p.processing_gain < 1)
    throw std::invalid_argument("processing_gain must be >= 1");
  if (p.channel_length < 1)
    throw std::invalid_argument("channel_length must be >= 1");
  if (p.isi_span < 1) throw std::invalid_argument("isi_span must be >= 1");
}

/// Linear convolution of a real chip sequence with the channel taps,
/// length N + L - 1.
ComplexVector convolveCode(const RealVector& code, const ComplexVector& taps) {
  const Index n = code.size();
  const Index l = taps.size();
  ComplexVector out = ComplexVector::Zero(n + l - 1);
  for (Index q = 0; q < n; ++q) {
    if (code(q) == 0.0) continue;
    for (Index t = 0; t < l; ++t) out(q + t) += code(q) * taps(t);
  }
  return out;
}

/// Assemble the effective signature from the code/channel convolution: block
/// j of the code matrix sits at chip offset (L_s - 1 - j) N, so column j is
/// the convolution shifted by that offset and truncated to the window.
ComplexMatrix signatureFromConvolution(const ComplexVector& conv,
                                       int processing_gain, int isi_span,
                                       double amplitude) {
  const Index m = conv.size();
  const Index cols = 2 * isi_span - 1;
  ComplexMatrix sig = ComplexMatrix::Zero(m, cols);
  for (Index j = 0; j < cols; ++j) {
    const Index offset = (isi_span - 1 - j) * processing_gain;
    const Index lo = std::max<Index>(0, offset);
    const Index hi = std::min<Index>(m, offset + m);
    for (Index row = lo; row < hi; ++row)
      sig(row, j) = amplitude * conv(row - offset);
  }
  return sig;
}

ComplexVector drawComplexNoise(Index dim, double variance,
                               std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = std::sqrt(variance / 2.0);
  ComplexVector n(dim);
  for (Index i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    n(i) = scale * Complex(re, im);
  }
  return n;
}

}  // namespace

Eigen::Vector3d pathPowerProfile() {
  Eigen::Vector3d profile(1.0, std::pow(10.0, -0.3), std::pow(10.0, -0.6));
  return profile / profile.sum();
}

RealMatrix generateCodes(int num_users, int processing_gain,
                         std::mt19937_64& rng) {
  if (num_users < 1 || processing_gain < 1)
    throw std::invalid_argument("code dimensions must be positive");
  std::uniform_int_distribution<int> bit(0, 1);
  const double chip = 1.0 / std::sqrt(static_cast<double>(processing_gain));
  RealMatrix codes(processing_gain, num_users);
  for (Index k = 0; k < num_users; ++k)
    for (Index q = 0; q < processing_gain; ++q)
      codes(q, k) = bit(rng) ? chip : -chip;
  return codes;
}

CdmaScenario drawScenario(const CdmaParams& params, std::mt19937_64& rng) {
  validateParams(params);
  CdmaScenario scenario;
  scenario.params = params;
  scenario.codes = generateCodes(params.num_users, params.processing_gain, rng);
  scenario.amplitudes = lognormalPowers(params.num_users, params.power_std_db,
                                        rng);
  scenario.noise_var = std::pow(10.0, -params.snr_db / 10.0);
  return scenario;
}

ComplexMatrix buildCodeMatrix(const RealVector& code, int isi_span) {
  if (isi_span < 1) throw std::invalid_argument("isi_span must be >= 1");
  const Index n = code.size();
  const Index blocks = 2 * isi_span - 1;
  ComplexMatrix c = ComplexMatrix::Zero(blocks * n, blocks);
  for (Index j = 0; j < blocks; ++j)
    c.block(j * n, j, n, 1) = code.cast<Complex>();
  return c;
}

ComplexMatrix buildConvolutionMatrix(const ComplexVector& taps,
                                     int processing_gain, int isi_span) {
  if (processing_gain < 1 || isi_span < 1)
    throw std::invalid_argument("convolution matrix dimensions invalid");
  const Index n = processing_gain;
  const Index l = taps.size();
  const Index m = n + l - 1;
  const Index blocks = 2 * isi_span - 1;
  ComplexMatrix h = ComplexMatrix::Zero(m, blocks * n);
  for (Index j = 0; j < blocks; ++j) {
    const Index block_offset = (isi_span - 1 - j) * n;
    for (Index q = 0; q < n; ++q) {
      const Index col = j * n + q;
      for (Index t = 0; t < l; ++t) {
        const Index row = block_offset + q + t;
        if (row >= 0 && row < m) h(row, col) = taps(t);
      }
    }
  }
  return h;
}

std::array<int, 3> drawPathDelays(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> gap(1, 2);
  const int first = gap(rng);
  const int second = gap(rng);
  return {0, first, first + second};
}

ChannelRealization drawMultipath(int channel_length, std::mt19937_64& rng) {
  if (channel_length < 5)
    throw std::invalid_argument(
        "channel_length must be >= 5 to hold three paths spaced up to 2 "
        "chips");
  ChannelRealization ch;
  ch.delays = drawPathDelays(rng);
  ch.taps = ComplexVector::Zero(channel_length);
  const Eigen::Vector3d profile = pathPowerProfile();
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int t = 0; t < 3; ++t) {
    const double re = normal(rng);
    const double im = normal(rng);
    ch.taps(ch.delays[t]) =
        std::sqrt(profile(t) / 2.0) * Complex(re, im);
  }
  return ch;
}

ComplexMatrix clarkeFading(double normalized_doppler, int num_symbols,
                           int num_taps, std::mt19937_64& rng) {
  if (!(normalized_doppler > 0.0) || !(normalized_doppler < 0.5))
    throw std::invalid_argument("normalized_doppler must lie in (0, 0.5)");
  if (num_symbols < 1 || num_taps < 1)
    throw std::invalid_argument("fading dimensions must be positive");
  constexpr double pi = std::numbers::pi;
  std::uniform_real_distribution<double> phase(-pi, pi);
  const double omega = 2.0 * pi * normalized_doppler;
  const double scale = 1.0 / std::sqrt(static_cast<double>(kClarkeSinusoids));
  ComplexMatrix gains(num_taps, num_symbols);
  std::vector<double> cos_alpha(kClarkeSinusoids);
  std::vector<double> sin_alpha(kClarkeSinusoids);
  std::vector<double> phi(kClarkeSinusoids);
  std::vector<double> psi(kClarkeSinusoids);
  for (int tap = 0; tap < num_taps; ++tap) {
    const double theta = phase(rng);
    for (int s = 0; s < kClarkeSinusoids; ++s) {
      const double alpha =
          (2.0 * pi * (s + 1) - pi + theta) / (4.0 * kClarkeSinusoids);
      cos_alpha[s] = std::cos(alpha);
      sin_alpha[s] = std::sin(alpha);
      phi[s] = phase(rng);
      psi[s] = phase(rng);
    }
    for (int i = 0; i < num_symbols; ++i) {
      double re = 0.0;
      double im = 0.0;
      for (int s = 0; s < kClarkeSinusoids; ++s) {
        re += std::cos(omega * i * cos_alpha[s] + phi[s]);
        im += std::cos(omega * i * sin_alpha[s] + psi[s]);
      }
      gains(tap, i) = scale * Complex(re, im);
    }
  }
  return gains;
}

RealVector lognormalPowers(int num_users, double sigma_db,
                           std::mt19937_64& rng) {
  if (num_users < 1) throw std::invalid_argument("num_users must be >= 1");
  if (sigma_db < 0.0)
    throw std::invalid_argument("sigma_db must be non-negative");
  std::normal_distribution<double> normal(0.0, 1.0);
  RealVector amps(num_users);
  for (Index k = 0; k < num_users; ++k)
    amps(k) = std::pow(10.0, sigma_db * normal(rng) / 20.0);
  return amps;
}

ComplexMatrix effectiveSignature(const CdmaScenario& scenario, int user,
                                 const ComplexVector& taps) {
  validateParams(scenario.params);
  if (user < 0 || user >= scenario.params.num_users)
    throw std::invalid_argument("user index out of range");
  const ComplexMatrix h = buildConvolutionMatrix(
      taps, scenario.params.processing_gain, scenario.params.isi_span);
  const ComplexMatrix c =
      buildCodeMatrix(scenario.codes.col(user), scenario.params.isi_span);
  return scenario.amplitudes(user) * (h * c);
}

SymbolFrame synthesizeReceived(const CdmaScenario& scenario,
                               const std::vector<ComplexVector>& channel_taps,
                               const RealMatrix& symbol_windows,
                               std::mt19937_64& noise_rng) {
  validateParams(scenario.params);
  const int k = scenario.params.num_users;
  const Index m = scenario.params.observationDim();
  const Index window = 2 * scenario.params.isi_span - 1;
  if (static_cast<int>(channel_taps.size()) != k)
    throw std::invalid_argument("expected one channel per user");
  if (symbol_windows.rows() != k || symbol_windows.cols() != window)
    throw std::invalid_argument("symbol window dimensions invalid");
  SymbolFrame frame;
  frame.symbol_windows = symbol_windows;
  frame.r = ComplexVector::Zero(m);
  for (int u = 0; u < k; ++u) {
    const ComplexMatrix sig = effectiveSignature(scenario, u, channel_taps[u]);
    frame.r += sig * symbol_windows.row(u).transpose().cast<Complex>();
  }
  frame.noise = drawComplexNoise(m, scenario.noise_var, noise_rng);
  frame.r += frame.noise;
  return frame;
}

CdmaSimulator::CdmaSimulator(const CdmaScenario& scenario, std::uint64_t seed,
                             int num_symbols)
    : scenario_(scenario), num_symbols_(num_symbols) {
  validateParams(scenario_.params);
  if (num_symbols_ < 1)
    throw std::invalid_argument("num_symbols must be >= 1");
  fading_ = scenario_.params.doppler > 0.0;
  drawStreams(seed, /*draw_channels=*/true);
}

CdmaSimulator::CdmaSimulator(const CdmaScenario& scenario,
                             std::vector<ChannelRealization> channels,
                             std::uint64_t seed, int num_symbols)
    : scenario_(scenario),
      num_symbols_(num_symbols),
      static_channels_(std::move(channels)) {
  validateParams(scenario_.params);
  if (num_symbols_ < 1)
    throw std::invalid_argument("num_symbols must be >= 1");
  if (static_cast<int>(static_channels_.size()) != scenario_.params.num_users)
    throw std::invalid_argument("expected one channel per user");
  for (const ChannelRealization& ch : static_channels_)
    if (ch.taps.size() != scenario_.params.channel_length)
      throw std::invalid_argument("channel taps must span channel_length");
  fading_ = false;
  drawStreams(seed, /*draw_channels=*/false);
}

void CdmaSimulator::drawStreams(std::uint64_t seed, bool draw_channels) {
  std::mt19937_64 rng(seed);
  const int k = scenario_.params.num_users;
  if (draw_channels) {
    if (fading_) {
      const Eigen::Vector3d profile = pathPowerProfile();
      fading_delays_.resize(k);
      fading_gains_.resize(k);
      for (int u = 0; u < k; ++u) {
        fading_delays_[u] = drawPathDelays(rng);
        ComplexMatrix gains = clarkeFading(scenario_.params.doppler,
                                           num_symbols_, 3, rng);
        for (int t = 0; t < 3; ++t)
          gains.row(t) *= std::sqrt(profile(t));
        fading_gains_[u] = std::move(gains);
      }
    } else {
      static_channels_.reserve(k);
      for (int u = 0; u < k; ++u)
        static_channels_.push_back(
            drawMultipath(scenario_.params.channel_length, rng));
    }
  }
  const int span = scenario_.params.isi_span;
  const Index cols = num_symbols_ + 2 * (span - 1);
  std::uniform_int_distribution<int> bit(0, 1);
  symbols_.resize(k, cols);
  for (Index u = 0; u < k; ++u)
    for (Index i = 0; i < cols; ++i) symbols_(u, i) = bit(rng) ? 1.0 : -1.0;
  if (!fading_) {
    static_signatures_.reserve(k);
    for (int u = 0; u < k; ++u)
      static_signatures_.push_back(
          effectiveSignature(scenario_, u, static_channels_[u].taps));
  }
  noise_rng_ = rng;
}

RealMatrix CdmaSimulator::windowAt(int symbol_index) const {
  const int span = scenario_.params.isi_span;
  const Index window = 2 * span - 1;
  RealMatrix win(scenario_.params.num_users, window);
  for (Index j = 0; j < window; ++j)
    win.col(j) = symbols_.col(symbol_index + 2 * (span - 1) - j);
  return win;
}

ComplexVector CdmaSimulator::channelAt(int user, int symbol_index) const {
  if (user < 0 || user >= scenario_.params.num_users)
    throw std::invalid_argument("user index out of range");
  if (symbol_index < 0 || symbol_index >= num_symbols_)
    throw std::invalid_argument("symbol index out of range");
  if (!fading_) return static_channels_[user].taps;
  ComplexVector taps = ComplexVector::Zero(scenario_.params.channel_length);
  for (int t = 0; t < 3; ++t)
    taps(fading_delays_[user][t]) = fading_gains_[user](t, symbol_index);
  return taps;
}

ComplexMatrix CdmaSimulator::signatureAt(int user, int symbol_index) const {
  if (!fading_) {
    if (user < 0 || user >= scenario_.params.num_users)
      throw std::invalid_argument("user index out of range");
    return static_signatures_[user];
  }
  const ComplexVector conv = convolveCode(scenario_.codes.col(user),
                                          channelAt(user, symbol_index));
  return signatureFromConvolution(conv, scenario_.params.processing_gain,
                                  scenario_.params.isi_span,
                                  scenario_.amplitudes(user));
}

SymbolFrame CdmaSimulator::frame(int symbol_index) {
  if (symbol_index < 0 || symbol_index >= num_symbols_)
    throw std::invalid_argument("symbol index out of range");
  const Index m = scenario_.params.observationDim();
  SymbolFrame frame;
  frame.symbol_windows = windowAt(symbol_index);
  frame.r = ComplexVector::Zero(m);
  for (int u = 0; u < scenario_.params.num_users; ++u)
    frame.r += signatureAt(u, symbol_index) *
               frame.symbol_windows.row(u).transpose().cast<Complex>();
  frame.noise = drawComplexNoise(m, scenario_.noise_var, noise_rng_);
  frame.r += frame.noise;
  return frame;
}

double CdmaSimulator::desired(int symbol_index) const {
  if (symbol_index < 0 || symbol_index >= num_symbols_)
    throw std::invalid_argument("symbol index out of range");
  return symbols_(0, symbol_index + scenario_.params.isi_span - 1);
}

}  // namespace rrfilt
