#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fbl::sim {

enum class Constellation { antipodal, psk };

Constellation constellation_from_string(const std::string& s);
const char* to_string(Constellation c);

/// Equal-energy codebook: M^k distinct words drawn from the constellation's
/// symbol lattice. Every word has squared norm E = n * Es.
struct Codebook {
  int M = 2;
  int n = 0;
  int k = 0;
  Constellation constellation = Constellation::antipodal;
  int dim = 0;  // n for antipodal, 2n for psk
  double Es = 1.0;
  double E = 0.0;
  std::vector<std::uint16_t> symbols;  // size() x n, row-major
  std::vector<double> words;           // size() x dim, row-major

  std::size_t size() const { return symbols.empty() ? 0 : symbols.size() / n; }
  std::span<const double> word(std::size_t i) const {
    return {words.data() + i * dim, static_cast<std::size_t>(dim)};
  }
  std::span<const std::uint16_t> word_symbols(std::size_t i) const {
    return {symbols.data() + i * static_cast<std::size_t>(n),
            static_cast<std::size_t>(n)};
  }
};

// Deterministic given the seed. k == n enumerates the full symbol space;
// otherwise words are rejection-sampled until distinct. M^k is capped at
// 2^20 words.
Codebook gen_codebook(int M, int n, int k, Constellation c, double Es,
                      std::uint64_t seed);

struct DecodeOutcome {
  enum class Kind { correct, confusion, erasure };
  Kind kind = Kind::erasure;
  int decoded_index = -1;         // nearest codeword when within R, else -1
  double nearest_distance = 0.0;  // Euclidean distance to nearest codeword
  bool overlap = false;           // two or more codewords within R
};

// Nearest-codeword (ML/LS) decoding with erasure: the nearest codeword wins
// if it lies within R (exact ties go to the lowest index), otherwise the
// block is erased.
DecodeOutcome decode(const Codebook& cb, std::span<const double> y, double R,
                     int sent_index);

struct RateCI {
  double rate = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Wilson score interval at 99% confidence.
RateCI wilson_ci(std::uint64_t hits, std::uint64_t trials);

struct TrialSummary {
  std::uint64_t trials = 0;
  std::uint64_t n_correct = 0;
  std::uint64_t n_confusion = 0;
  std::uint64_t n_erasure = 0;
  std::uint64_t n_overlap_events = 0;
  RateCI correct, confusion, erasure;
  RateCI block_error;  // confusion + erasure
  std::uint64_t seed = 0;
};

struct RunOptions {
  // When >= 0, every trial sends this codeword instead of a uniform draw.
  // Pointing it at one endpoint of the minimum-distance pair concentrates
  // trials on the confusion-prone geometry.
  int forced_sent_index = -1;
};

// Monte Carlo campaign: per trial, draw a uniform codeword, add AWGN with
// per-dimension variance sigma^2, decode, tally. Trial t's randomness
// depends only on (seed, t) -- streams derive master seed -> shard (fixed
// 4096-trial blocks) -> trial -- so results are bit-identical for any
// worker count.
TrialSummary run_trials(const Codebook& cb, double sigma, double R,
                        std::uint64_t trials, std::uint64_t seed,
                        const RunOptions& opts = {});

// Common-random-numbers radius sweep: the same noise realizations are
// reclassified under each radius in `radii`. With increasing radii the
// correct and confusion counts are nondecreasing and the erasure count is
// nonincreasing, trial by trial.
std::vector<TrialSummary> radius_sweep_trials(const Codebook& cb, double sigma,
                                              std::span<const double> radii,
                                              std::uint64_t trials,
                                              std::uint64_t seed);

struct McEstimate {
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double estimate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

// Direct Monte Carlo estimate of P(||w - Delta|| <= R) with ||Delta|| = D on
// the first axis (isotropy makes the direction irrelevant) and w drawn as
// N(0, sigma^2 I_n). Requires samples >= 1e4.
McEstimate mc_p_pair(int n, double sigma, double R, double D,
                     std::uint64_t samples, std::uint64_t seed);

// Empirical exceedance P(||w|| >= R). Requires samples >= 1e4.
McEstimate mc_radius_check(int n, double sigma, double R,
                           std::uint64_t samples, std::uint64_t seed);

// Closest pair of codewords by Euclidean distance (exhaustive scan).
std::pair<std::size_t, std::size_t> min_distance_pair(const Codebook& cb);

// Minimum pairwise Hamming distance (exhaustive scan).
int min_hamming_distance(const Codebook& cb);

}  // namespace fbl::sim
