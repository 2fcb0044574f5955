#include "fbl/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "fbl/parallel.hpp"

namespace fbl::sim {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kCodebookTag = 0xc0deb00c5eedULL;
constexpr std::uint64_t kTrialsPerShard = 4096;
constexpr std::size_t kMaxWords = std::size_t{1} << 20;
constexpr std::uint64_t kMaxTrials = 100000000;  // desk-scale budget

// SplitMix64 finalizer; bijective on 64-bit values.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream: draw j is mix64(key + (j+1) * golden gamma), i.e.
// SplitMix64 keyed at `key`. No state beyond the counter.
class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}

  std::uint64_t next() { return mix64(key_ + (++ctr_) * kGolden); }

  double next_unit() {  // (0, 1), never exactly 0 or 1
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Box-Muller transform on consecutive uniforms.
  void next_gaussian_pair(double& z0, double& z1) {
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    z0 = r * std::cos(t);
    z1 = r * std::sin(t);
  }

  // Unbiased bounded draw (Lemire with rejection).
  std::uint64_t next_below(std::uint64_t bound) {
    for (;;) {
      const std::uint64_t x = next();
      const unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
      const std::uint64_t low = static_cast<std::uint64_t>(m);
      if (low >= bound || low >= (0 - bound) % bound)
        return static_cast<std::uint64_t>(m >> 64);
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

// Stream derivation: master seed -> shard (fixed 4096-trial blocks) ->
// trial. Depends only on the trial index, so shard scheduling and worker
// count never change the draws.
std::uint64_t trial_key(std::uint64_t master, std::uint64_t trial) {
  const std::uint64_t shard = trial / kTrialsPerShard;
  const std::uint64_t within = trial % kTrialsPerShard;
  const std::uint64_t shard_key = mix64(master ^ mix64(shard + kGolden));
  return mix64(shard_key ^ mix64(within + 1));
}

void fill_noise(Stream& s, double sigma, std::span<double> out) {
  std::size_t i = 0;
  double z0, z1;
  for (; i + 1 < out.size(); i += 2) {
    s.next_gaussian_pair(z0, z1);
    out[i] = sigma * z0;
    out[i + 1] = sigma * z1;
  }
  if (i < out.size()) {
    s.next_gaussian_pair(z0, z1);
    out[i] = sigma * z0;
  }
}

struct Tally {
  std::uint64_t correct = 0, confusion = 0, erasure = 0, overlap = 0;
  void merge(const Tally& o) {
    correct += o.correct;
    confusion += o.confusion;
    erasure += o.erasure;
    overlap += o.overlap;
  }
};

TrialSummary summarize(const Tally& t, std::uint64_t trials,
                       std::uint64_t seed) {
  TrialSummary s;
  s.trials = trials;
  s.n_correct = t.correct;
  s.n_confusion = t.confusion;
  s.n_erasure = t.erasure;
  s.n_overlap_events = t.overlap;
  s.correct = wilson_ci(t.correct, trials);
  s.confusion = wilson_ci(t.confusion, trials);
  s.erasure = wilson_ci(t.erasure, trials);
  s.block_error = wilson_ci(t.confusion + t.erasure, trials);
  s.seed = seed;
  return s;
}

// nearest and second-nearest squared distances over the codebook
struct NearestInfo {
  std::size_t best_index = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  double second_d2 = std::numeric_limits<double>::infinity();
};

NearestInfo scan_nearest(const Codebook& cb, std::span<const double> y) {
  NearestInfo info;
  const std::size_t count = cb.size();
  const int dim = cb.dim;
  const double* w = cb.words.data();
  for (std::size_t i = 0; i < count; ++i, w += dim) {
    double d2 = 0.0;
    for (int j = 0; j < dim; ++j) {
      const double diff = y[j] - w[j];
      d2 += diff * diff;
    }
    if (d2 < info.best_d2) {
      info.second_d2 = info.best_d2;
      info.best_d2 = d2;
      info.best_index = i;
    } else if (d2 < info.second_d2) {
      info.second_d2 = d2;
    }
  }
  return info;
}

std::size_t checked_count(int M, int k) {
  std::size_t count = 1;
  for (int i = 0; i < k; ++i) {
    if (count > kMaxWords / static_cast<std::size_t>(M))
      throw std::invalid_argument("gen_codebook: M^k exceeds the 2^20 cap");
    count *= static_cast<std::size_t>(M);
  }
  return count;
}

void append_word(Codebook& cb, std::span<const std::uint16_t> syms) {
  cb.symbols.insert(cb.symbols.end(), syms.begin(), syms.end());
  const double root_es = std::sqrt(cb.Es);
  if (cb.constellation == Constellation::antipodal) {
    for (std::uint16_t s : syms)
      cb.words.push_back(s == 0 ? root_es : -root_es);
  } else {
    for (std::uint16_t s : syms) {
      const double phase = 2.0 * std::numbers::pi * s / cb.M;
      cb.words.push_back(root_es * std::cos(phase));
      cb.words.push_back(root_es * std::sin(phase));
    }
  }
}

}  // namespace

Constellation constellation_from_string(const std::string& s) {
  if (s == "antipodal") return Constellation::antipodal;
  if (s == "psk") return Constellation::psk;
  throw std::invalid_argument("unknown constellation: " + s);
}

const char* to_string(Constellation c) {
  return c == Constellation::antipodal ? "antipodal" : "psk";
}

RateCI wilson_ci(std::uint64_t hits, std::uint64_t trials) {
  constexpr double z = 2.5758293035489004;  // 99.5th normal percentile
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

Codebook gen_codebook(int M, int n, int k, Constellation c, double Es,
                      std::uint64_t seed) {
  if (M < 2) throw std::invalid_argument("gen_codebook: M >= 2");
  if (n < 1 || k < 1 || k > n)
    throw std::invalid_argument("gen_codebook: need 1 <= k <= n");
  if (!(Es > 0.0)) throw std::invalid_argument("gen_codebook: Es > 0");
  if (c == Constellation::antipodal && M != 2)
    throw std::invalid_argument("gen_codebook: antipodal requires M = 2");
  if (M > std::numeric_limits<std::uint16_t>::max())
    throw std::invalid_argument("gen_codebook: M too large");

  const std::size_t count = checked_count(M, k);

  Codebook cb;
  cb.M = M;
  cb.n = n;
  cb.k = k;
  cb.constellation = c;
  cb.dim = c == Constellation::antipodal ? n : 2 * n;
  cb.Es = Es;
  cb.E = n * Es;
  cb.symbols.reserve(count * n);
  cb.words.reserve(count * cb.dim);

  std::vector<std::uint16_t> syms(n);
  if (k == n) {
    // full symbol space, lexicographic
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rem = idx;
      for (int j = n - 1; j >= 0; --j) {
        syms[j] = static_cast<std::uint16_t>(rem % M);
        rem /= M;
      }
      append_word(cb, syms);
    }
    return cb;
  }

  Stream stream(mix64(seed ^ kCodebookTag));
  std::unordered_set<std::string> seen;
  seen.reserve(count * 2);
  const std::uint64_t max_attempts = 1000 * static_cast<std::uint64_t>(count);
  std::uint64_t attempts = 0;
  while (seen.size() < count) {
    if (++attempts > max_attempts)
      throw std::runtime_error("gen_codebook: duplicate rejection exhausted");
    for (int j = 0; j < n; ++j)
      syms[j] = static_cast<std::uint16_t>(stream.next_below(M));
    std::string key(reinterpret_cast<const char*>(syms.data()),
                    syms.size() * sizeof(std::uint16_t));
    if (seen.insert(std::move(key)).second) append_word(cb, syms);
  }
  return cb;
}

DecodeOutcome decode(const Codebook& cb, std::span<const double> y, double R,
                     int sent_index) {
  if (y.size() != static_cast<std::size_t>(cb.dim))
    throw std::invalid_argument("decode: dimension mismatch");
  if (sent_index < 0 || static_cast<std::size_t>(sent_index) >= cb.size())
    throw std::invalid_argument("decode: sent index out of range");

  const NearestInfo info = scan_nearest(cb, y);
  const double r2 = R * R;
  DecodeOutcome out;
  out.nearest_distance = std::sqrt(info.best_d2);
  out.overlap = info.best_d2 <= r2 && info.second_d2 <= r2;
  if (info.best_d2 <= r2) {
    out.decoded_index = static_cast<int>(info.best_index);
    out.kind = info.best_index == static_cast<std::size_t>(sent_index)
                   ? DecodeOutcome::Kind::correct
                   : DecodeOutcome::Kind::confusion;
  } else {
    out.decoded_index = -1;
    out.kind = DecodeOutcome::Kind::erasure;
  }
  return out;
}

TrialSummary run_trials(const Codebook& cb, double sigma, double R,
                        std::uint64_t trials, std::uint64_t seed,
                        const RunOptions& opts) {
  if (trials < 1) throw std::invalid_argument("run_trials: trials >= 1");
  if (trials > kMaxTrials)
    throw std::invalid_argument("run_trials: trials above the 1e8 cap");
  if (!(sigma >= 0.0)) throw std::invalid_argument("run_trials: sigma >= 0");
  if (!(R >= 0.0)) throw std::invalid_argument("run_trials: R >= 0");
  const std::size_t count = cb.size();
  if (count == 0) throw std::invalid_argument("run_trials: empty codebook");
  if (opts.forced_sent_index >= 0 &&
      static_cast<std::size_t>(opts.forced_sent_index) >= count)
    throw std::invalid_argument("run_trials: forced sent index out of range");

  const double r2 = R * R;
  const int dim = cb.dim;
  std::mutex merge_mutex;
  Tally total;

  parallel_chunks(trials, [&](std::uint64_t begin, std::uint64_t end) {
    Tally local;
    std::vector<double> y(dim);
    for (std::uint64_t t = begin; t < end; ++t) {
      Stream s(trial_key(seed, t));
      const std::size_t sent =
          opts.forced_sent_index >= 0
              ? static_cast<std::size_t>(opts.forced_sent_index)
              : static_cast<std::size_t>(s.next_below(count));
      fill_noise(s, sigma, y);
      const double* w = cb.words.data() + sent * dim;
      for (int j = 0; j < dim; ++j) y[j] += w[j];

      const NearestInfo info = scan_nearest(cb, y);
      if (info.best_d2 <= r2 && info.second_d2 <= r2) ++local.overlap;
      if (info.best_d2 <= r2) {
        if (info.best_index == sent)
          ++local.correct;
        else
          ++local.confusion;
      } else {
        ++local.erasure;
      }
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    total.merge(local);
  });

  return summarize(total, trials, seed);
}

std::vector<TrialSummary> radius_sweep_trials(const Codebook& cb, double sigma,
                                              std::span<const double> radii,
                                              std::uint64_t trials,
                                              std::uint64_t seed) {
  if (trials < 1)
    throw std::invalid_argument("radius_sweep_trials: trials >= 1");
  if (trials > kMaxTrials)
    throw std::invalid_argument("radius_sweep_trials: trials above the 1e8 cap");
  if (radii.empty())
    throw std::invalid_argument("radius_sweep_trials: radii empty");
  const std::size_t count = cb.size();
  const int dim = cb.dim;
  const std::size_t nr = radii.size();

  std::vector<Tally> total(nr);
  std::mutex merge_mutex;

  parallel_chunks(trials, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<Tally> local(nr);
    std::vector<double> y(dim);
    for (std::uint64_t t = begin; t < end; ++t) {
      Stream s(trial_key(seed, t));
      const std::size_t sent = static_cast<std::size_t>(s.next_below(count));
      fill_noise(s, sigma, y);
      const double* w = cb.words.data() + sent * dim;
      for (int j = 0; j < dim; ++j) y[j] += w[j];

      // one decode pass; reclassify per radius (common random numbers)
      const NearestInfo info = scan_nearest(cb, y);
      for (std::size_t ri = 0; ri < nr; ++ri) {
        const double r2 = radii[ri] * radii[ri];
        if (info.best_d2 <= r2 && info.second_d2 <= r2) ++local[ri].overlap;
        if (info.best_d2 <= r2) {
          if (info.best_index == sent)
            ++local[ri].correct;
          else
            ++local[ri].confusion;
        } else {
          ++local[ri].erasure;
        }
      }
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    for (std::size_t ri = 0; ri < nr; ++ri) total[ri].merge(local[ri]);
  });

  std::vector<TrialSummary> out;
  out.reserve(nr);
  for (std::size_t ri = 0; ri < nr; ++ri)
    out.push_back(summarize(total[ri], trials, seed));
  return out;
}

McEstimate mc_p_pair(int n, double sigma, double R, double D,
                     std::uint64_t samples, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("mc_p_pair: n >= 1");
  if (!(sigma > 0.0) || !(R > 0.0) || !(D > 0.0))
    throw std::invalid_argument("mc_p_pair: sigma, R, D > 0");
  if (samples < 10000)
    throw std::invalid_argument("mc_p_pair: samples >= 1e4");

  const double r2 = R * R;
  std::uint64_t hits = 0;
  std::mutex merge_mutex;
  parallel_chunks(samples, [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t local = 0;
    std::vector<double> w(n);
    for (std::uint64_t i = begin; i < end; ++i) {
      Stream s(trial_key(seed, i));
      fill_noise(s, sigma, w);
      double d2 = (w[0] - D) * (w[0] - D);
      for (int j = 1; j < n; ++j) d2 += w[j] * w[j];
      if (d2 <= r2) ++local;
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    hits += local;
  });

  const RateCI ci = wilson_ci(hits, samples);
  return {samples, hits, ci.rate, ci.lo, ci.hi};
}

McEstimate mc_radius_check(int n, double sigma, double R,
                           std::uint64_t samples, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("mc_radius_check: n >= 1");
  if (!(sigma > 0.0) || !(R >= 0.0))
    throw std::invalid_argument("mc_radius_check: sigma > 0, R >= 0");
  if (samples < 10000)
    throw std::invalid_argument("mc_radius_check: samples >= 1e4");

  const double r2 = R * R;
  std::uint64_t hits = 0;
  std::mutex merge_mutex;
  parallel_chunks(samples, [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t local = 0;
    std::vector<double> w(n);
    for (std::uint64_t i = begin; i < end; ++i) {
      Stream s(trial_key(seed, i));
      fill_noise(s, sigma, w);
      double d2 = 0.0;
      for (int j = 0; j < n; ++j) d2 += w[j] * w[j];
      if (d2 >= r2) ++local;
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    hits += local;
  });

  const RateCI ci = wilson_ci(hits, samples);
  return {samples, hits, ci.rate, ci.lo, ci.hi};
}

std::pair<std::size_t, std::size_t> min_distance_pair(const Codebook& cb) {
  const std::size_t count = cb.size();
  if (count < 2)
    throw std::invalid_argument("min_distance_pair: need >= 2 words");
  std::pair<std::size_t, std::size_t> best{0, 1};
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const auto wi = cb.word(i);
    for (std::size_t j = i + 1; j < count; ++j) {
      const auto wj = cb.word(j);
      double d2 = 0.0;
      for (int d = 0; d < cb.dim; ++d) {
        const double diff = wi[d] - wj[d];
        d2 += diff * diff;
      }
      if (d2 < best_d2) {
        best_d2 = d2;
        best = {i, j};
      }
    }
  }
  return best;
}

int min_hamming_distance(const Codebook& cb) {
  const std::size_t count = cb.size();
  if (count < 2)
    throw std::invalid_argument("min_hamming_distance: need >= 2 words");
  int best = cb.n + 1;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const auto si = cb.word_symbols(i);
    for (std::size_t j = i + 1; j < count; ++j) {
      const auto sj = cb.word_symbols(j);
      int d = 0;
      for (int p = 0; p < cb.n; ++p) d += si[p] != sj[p];
      if (d < best) best = d;
    }
  }
  return best;
}

}  // namespace fbl::sim
