// Copyright 2026 The Flagshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLAGSHARE_MONTECARLO_H
#define FLAGSHARE_MONTECARLO_H

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flagshare/decode.h"
#include "flagshare/faults.h"
#include "flagshare/rng.h"
#include "flagshare/scheme.h"

namespace flagshare {

enum class Target { Memory, Computation };

/// Raised when a scheme fails certification under the requested procedure.
struct CertificationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Target parse_target(std::string_view s);
const char *target_name(Target t);

enum class Verdict { Success, LogicalFailure, Discarded };

struct TrialOutcome {
    Verdict verdict = Verdict::Success;
    size_t faults = 0;
    /// Bitwise OR of FollowupBits over all rounds of the trial.
    uint8_t followups = kFollowNone;
};

/// Draws circuit faults with geometric skipping at rate p, thinned per
/// location kind; the countdown carries over between circuits of one trial.
class NoiseSource {
   public:
    NoiseSource(Rng &rng, const NoiseParams &params);

    /// Faults for one run of `cc`, sorted by gate index.
    void draw(const CompiledCircuit &cc, std::vector<Injection> &out);
    /// Locations left before the next candidate fault.
    uint64_t countdown() const {
        return countdown_;
    }
    size_t faults() const {
        return faults_;
    }

   private:
    Rng &rng_;
    NoiseParams params_;
    uint64_t countdown_;
    size_t faults_ = 0;
};

/// Noisy execution of a scheme on one code block; follow-ups are noisy too.
class NoisyDriver : public RoundDriver {
   public:
    NoisyDriver(const Scheme &scheme, NoiseSource &noise, PauliMask &frame);

    uint64_t run_gadget(size_t i) override;
    uint64_t run_followup(const Followup &f) override;
    void apply_correction(const PauliMask &c) override;

   private:
    uint64_t run(const CompiledCircuit &cc);

    const Scheme &scheme_;
    NoiseSource &noise_;
    PauliMask &frame_;
    std::vector<Injection> buffer_;
};

/// A certified scheme with its decoder tables, ready for sampling.
class Experiment {
   public:
    /// Learns decoder tables and certifies the scheme under the procedure.
    /// Throws std::invalid_argument if the procedure is unavailable and
    /// CertificationError if the certification fails.
    Experiment(Scheme scheme, Procedure procedure, Target target);

    const Scheme &scheme() const {
        return scheme_;
    }
    const DecoderTables &tables() const {
        return tables_;
    }
    Procedure procedure() const {
        return procedure_;
    }
    /// The procedure actually run (see effective_procedure).
    Procedure effective() const {
        return effective_;
    }
    Target target() const {
        return target_;
    }
    bool detection() const {
        return effective_ == Procedure::Detect;
    }

    TrialOutcome trial(const NoiseParams &params, Rng &rng) const;

    /// `<code>_<scheme>_<procedure>_g<gamma>`.
    std::string run_name(double gamma) const;

   private:
    Scheme scheme_;
    DecoderTables tables_;
    Procedure procedure_;
    Procedure effective_;
    Target target_;
    CompiledCircuit transversal_;
    size_t clean_round_locations_ = 0;
    std::vector<PauliMask> generators_;
    std::vector<PauliMask> logicals_;

    friend TrialOutcome memory_trial(const Experiment &, const NoiseParams &, Rng &);
    friend TrialOutcome exrec_trial(const Experiment &, const NoiseParams &, Rng &);
    /// Verdict of the final noiseless round on one block.
    Verdict ideal_round(PauliMask frame) const;
};

/// One noisy extraction round under the procedure followed by a noiseless
/// round; failure iff the final residual is logical (or left uncorrected).
TrialOutcome memory_trial(const Experiment &e, const NoiseParams &params, Rng &rng);
/// Noisy leading EC on both blocks, noisy transversal CNOT, noisy trailing EC
/// (opposite cycle parity), then a noiseless round on each block.
TrialOutcome exrec_trial(const Experiment &e, const NoiseParams &params, Rng &rng);

struct Interval {
    double lo = 0;
    double hi = 0;
};

/// Wilson score interval for k successes in n trials.
Interval wilson_interval(size_t k, size_t n, double z = 1.959964);

struct RateEstimate {
    size_t trials = 0;
    size_t failures = 0;
    size_t accepted = 0;
    /// False when no trial was accepted.
    bool defined = false;
    double rate = 0;
    Interval ci;

    /// Adds the counts of another run on disjoint trial indices.
    void merge(const RateEstimate &o);
    void finish();
};

using TrialFn = std::function<TrialOutcome(Rng &)>;

/// Runs trials [first, first + n) with per-trial streams Rng(seed, index),
/// split over `threads` workers. Counts do not depend on `threads`.
/// Detection-mode rates divide by accepted trials.
RateEstimate estimate_rate(const TrialFn &fn, size_t n, uint64_t seed, unsigned threads = 1, uint64_t first = 0);

/// Worker count from FLAGSHARE_THREADS or the hardware.
unsigned default_threads();

struct GridPoint {
    double p = 0;
    RateEstimate estimate;
    /// -1: rate below p, +1: above, 0: not separated at the trial cap.
    int sign = 0;
};

struct ThresholdOptions {
    double p_min = 1e-6;
    double p_max = 5e-2;
    size_t initial_trials = 4000;
    size_t max_trials_per_point = 10000000;
    size_t budget = 400000000;
    /// Bisection stops once hi/lo - 1 is below this.
    double rel_width = 0.05;
    /// Normal quantile used to call the sign of a point.
    double decision_z = 3.29;
    uint64_t seed = 1;
    unsigned threads = 1;
};

struct ThresholdReport {
    std::string scheme;
    std::string procedure;
    std::string effective_procedure;
    Target target = Target::Memory;
    double gamma = 0;
    uint64_t seed = 0;
    std::vector<GridPoint> grid;
    std::optional<double> crossing;
    /// 95% interval of the crossing from the local power-law fit.
    Interval interval;
    /// Final bisection bracket (point-estimate signs).
    Interval bracket;
    /// "crossing", "below" (rate < p everywhere), "above", or "budget".
    std::string verdict;
    size_t total_trials = 0;

    std::string to_csv() const;
    std::string to_json() const;
};

/// Scans downward from p_max for a point whose rate falls below p, bisects in
/// log p (each point sampled until its sign is significant or the cap is
/// hit), then fits log(rate) = a + b log(p) by weighted least squares over
/// the points near the bracket. Deterministic given the options (including
/// the seed), regardless of thread count.
ThresholdReport find_pseudothreshold(const Experiment &e, double gamma, const ThresholdOptions &options);

/// A single grid point of `trials` trials at p; verdict "point".
ThresholdReport estimate_point(const Experiment &e, double p, double gamma, size_t trials, uint64_t seed,
                               unsigned threads = 1);

}  // namespace flagshare

#endif
