#pragma once

#include "rrfilt/types.hpp"

#include <array>
#include <random>
#include <vector>

namespace rrfilt {

/// Uplink scenario parameters. The observation window spans one symbol plus
/// the channel tail, M = N + L - 1 chips.
struct CdmaParams {
  int num_users = 6;         // K
  int processing_gain = 16;  // N, chips per symbol
  int channel_length = 8;    // L, delay-spread upper bound in chips
  int isi_span = 2;          // L_s, symbols overlapping the window
  double snr_db = 15.0;      // nominal SNR of user 1
  double power_std_db = 1.5; // log-normal power spread across users
  double doppler = 1e-3;     // normalized Doppler f_d T for fading runs

  int observationDim() const { return processing_gain + channel_length - 1; }
};

/// A realized scenario: parameters plus the per-run draws that stay fixed
/// for a whole run (codes, user amplitudes, noise level).
struct CdmaScenario {
  CdmaParams params;
  RealMatrix codes;       // N x K, entries +/- 1/sqrt(N)
  RealVector amplitudes;  // K, around the unit nominal amplitude
  double noise_var = 0.0; // sigma^2 per complex dimension
};

/// Channel taps inside the length-L window; inactive taps are zero.
struct ChannelRealization {
  ComplexVector taps;
  std::array<int, 3> delays{};
};

/// One received symbol interval.
struct SymbolFrame {
  RealMatrix symbol_windows;  // K x (2 L_s - 1), future-most symbol first
  ComplexVector noise;        // M
  ComplexVector r;            // M
};

/// Mean tap powers, 3 paths at 0 / -3 / -6 dB, normalized to sum to one so
/// a drawn channel carries unit average energy.
Eigen::Vector3d pathPowerProfile();

/// Random signature matrix, entries +/- 1/sqrt(N) i.i.d. equiprobable.
RealMatrix generateCodes(int num_users, int processing_gain,
                         std::mt19937_64& rng);

/// Draws the per-run fixtures: random codes, log-normal user amplitudes,
/// and the noise variance 10^(-snr_db / 10) matching unit nominal signal
/// power.
CdmaScenario drawScenario(const CdmaParams& params, std::mt19937_64& rng);

/// Block-diagonal stack of N-chip shifted signature copies,
/// ((2 L_s - 1) N) x (2 L_s - 1).
ComplexMatrix buildCodeMatrix(const RealVector& code, int isi_span);

/// M x ((2 L_s - 1) N) convolution operator: column j N + q carries the
/// channel vector starting at row (L_s - 1 - j) N + q, truncated to the
/// window. Applied to a stacked chip sequence it performs linear convolution
/// restricted to the M-sample window.
ComplexMatrix buildConvolutionMatrix(const ComplexVector& taps,
                                     int processing_gain, int isi_span);

/// Three path positions with consecutive spacings drawn uniformly from
/// {1, 2} chips, first path at delay zero.
std::array<int, 3> drawPathDelays(std::mt19937_64& rng);

/// Static 3-path channel inside a length channel_length window: delays as
/// above, complex Gaussian gains with the normalized 0/-3/-6 dB power
/// profile. Requires channel_length >= 5 so the widest spacing fits.
ChannelRealization drawMultipath(int channel_length, std::mt19937_64& rng);

/// Unit-variance complex Gaussian fading trajectories (num_taps x
/// num_symbols), mutually independent taps, each with the Clarke/Jakes
/// autocorrelation J0(2 pi f_d T k). Requires 0 < normalized_doppler < 0.5.
ComplexMatrix clarkeFading(double normalized_doppler, int num_symbols,
                           int num_taps, std::mt19937_64& rng);

/// Per-user amplitude scalings around nominal: power in dB ~ N(0, sigma_db^2).
RealVector lognormalPowers(int num_users, double sigma_db,
                           std::mt19937_64& rng);

/// Effective windowed signature of one user: H_k A_k C_k, an
/// M x (2 L_s - 1) matrix mapping the symbol window onto the received
/// vector. Computed literally from the convolution and code matrices.
ComplexMatrix effectiveSignature(const CdmaScenario& scenario, int user,
                                 const ComplexVector& taps);

/// r = sum_k H_k A_k C_k b_k + n with n ~ CN(0, sigma^2 I).
SymbolFrame synthesizeReceived(const CdmaScenario& scenario,
                               const std::vector<ComplexVector>& channel_taps,
                               const RealMatrix& symbol_windows,
                               std::mt19937_64& noise_rng);

/// Per-run frame source: draws channels and BPSK symbol streams at
/// construction and synthesizes frames in symbol order. Identical seeds give
/// bit-identical streams.
class CdmaSimulator {
 public:
  CdmaSimulator(const CdmaScenario& scenario, std::uint64_t seed,
                int num_symbols);

  /// Test hook: impose the per-user static channels instead of drawing them.
  CdmaSimulator(const CdmaScenario& scenario,
                std::vector<ChannelRealization> channels, std::uint64_t seed,
                int num_symbols);

  /// Frames must be generated in symbol order (the noise stream advances
  /// with each call).
  SymbolFrame frame(int symbol_index);

  double desired(int symbol_index) const;  // b_1(i)
  int numSymbols() const { return num_symbols_; }
  const CdmaScenario& scenario() const { return scenario_; }

  /// Channel taps of one user at one symbol (constant when not fading).
  ComplexVector channelAt(int user, int symbol_index) const;

  /// H_k(i) A_k C_k for the true-moment oracles.
  ComplexMatrix signatureAt(int user, int symbol_index) const;

 private:
  void drawStreams(std::uint64_t seed, bool draw_channels);
  RealMatrix windowAt(int symbol_index) const;

  CdmaScenario scenario_;
  int num_symbols_ = 0;
  bool fading_ = false;
  std::vector<ChannelRealization> static_channels_;
  std::vector<ComplexMatrix> fading_gains_;     // per user: 3 x num_symbols
  std::vector<std::array<int, 3>> fading_delays_;
  std::vector<ComplexMatrix> static_signatures_;
  RealMatrix symbols_;  // K x (num_symbols + 2 (L_s - 1))
  std::mt19937_64 noise_rng_;
};

}  // namespace rrfilt
