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

#include "flagshare/montecarlo.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "flagshare/ftcheck.h"
#include "json.hpp"

namespace flagshare {

Target parse_target(std::string_view s) {
    if (s == "memory") {
        return Target::Memory;
    }
    if (s == "computation" || s == "exrec") {
        return Target::Computation;
    }
    throw std::invalid_argument("unknown target '" + std::string(s) + "'; expected memory or computation");
}

const char *target_name(Target t) {
    return t == Target::Memory ? "memory" : "computation";
}

NoiseSource::NoiseSource(Rng &rng, const NoiseParams &params) : rng_(rng), params_(params) {
    countdown_ = rng_.geometric(params_.p);
}

void NoiseSource::draw(const CompiledCircuit &cc, std::vector<Injection> &out) {
    out.clear();
    uint64_t n = cc.num_gates();
    uint64_t pos = 0;
    while (countdown_ < n - pos) {
        pos += countdown_;
        LocationKind kind = cc.kind(static_cast<uint32_t>(pos));
        double m = NoiseParams::rate_multiple(kind, params_.gamma);
        if (m >= 1.0 || rng_.uniform() < m) {
            uint8_t effect = static_cast<uint8_t>(1 + rng_.below(static_cast<uint64_t>(num_effects(kind))));
            out.push_back(Injection{static_cast<uint32_t>(pos), effect});
            faults_++;
        }
        pos++;
        countdown_ = rng_.geometric(params_.p);
    }
    countdown_ -= n - pos;
}

NoisyDriver::NoisyDriver(const Scheme &scheme, NoiseSource &noise, PauliMask &frame)
    : scheme_(scheme), noise_(noise), frame_(frame) {
}

uint64_t NoisyDriver::run(const CompiledCircuit &cc) {
    noise_.draw(cc, buffer_);
    if (buffer_.empty() && frame_.is_identity()) {
        return 0;
    }
    GadgetResult r = cc.run(frame_.x, frame_.z, buffer_);
    frame_ = PauliMask{r.x, r.z};
    return r.outcomes;
}

uint64_t NoisyDriver::run_gadget(size_t i) {
    return run(scheme_.gadgets[i].compiled);
}

uint64_t NoisyDriver::run_followup(const Followup &f) {
    uint64_t bits = 0;
    for (const auto &cc : f.compiled) {
        bits ^= cc.generator_bits(run(cc));
    }
    return bits;
}

void NoisyDriver::apply_correction(const PauliMask &c) {
    frame_ ^= c;
}

namespace {

Circuit transversal_layer(size_t n) {
    Circuit c(2 * n);
    std::vector<Gate> layer;
    for (uint32_t q = 0; q < n; q++) {
        layer.push_back(Gate{GateKind::CNOT, q, static_cast<uint32_t>(n + q)});
    }
    c.append_step(layer);
    return c;
}

bool parity(uint64_t v) {
    return std::popcount(v) & 1;
}

bool anticommutes(const PauliMask &a, const PauliMask &b) {
    return parity((a.x & b.z) ^ (a.z & b.x));
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

Experiment::Experiment(Scheme scheme, Procedure procedure, Target target)
    : scheme_(std::move(scheme)),
      procedure_(procedure),
      effective_(effective_procedure(scheme_, procedure)),
      target_(target),
      transversal_(transversal_layer(scheme_.code->n())) {
    if (!procedure_supported(scheme_, procedure_)) {
        throw std::invalid_argument(std::string("procedure ") + procedure_name(procedure_) +
                                    " is not available for scheme " + scheme_.id());
    }
    if (scheme_.code->n() > 32) {
        throw std::invalid_argument("Monte Carlo supports codes with at most 32 qubits");
    }
    std::vector<Collision> collisions;
    tables_ = learn_tables(scheme_, effective_, &collisions);
    Certificate cert = certify(scheme_, effective_, tables_, collisions);
    if (!cert.pass) {
        throw CertificationError("scheme " + scheme_.id() + " is not certified under " +
                                    procedure_name(effective_));
    }
    const CssCode &code = *scheme_.code;
    for (const auto &g : code.generators()) {
        generators_.push_back(to_mask(g));
    }
    for (const auto &l : code.logical_x()) {
        logicals_.push_back(to_mask(l));
    }
    for (const auto &l : code.logical_z()) {
        logicals_.push_back(to_mask(l));
    }
    for (const auto &g : scheme_.gadgets) {
        clean_round_locations_ += g.compiled.num_gates();
    }
}

std::string Experiment::run_name(double gamma) const {
    return scheme_.code->name() + "_" + scheme_kind_name(scheme_.kind) + "_" + procedure_name(procedure_) + "_g" +
           format_double(gamma);
}

Verdict Experiment::ideal_round(PauliMask frame) const {
    auto syndrome = [&](const PauliMask &f) {
        uint64_t s = 0;
        for (size_t i = 0; i < generators_.size(); i++) {
            s |= static_cast<uint64_t>(anticommutes(f, generators_[i])) << i;
        }
        return s;
    };
    uint64_t s = syndrome(frame);
    if (detection()) {
        if (s) {
            return Verdict::Discarded;
        }
    } else if (s) {
        frame ^= tables_.lookup0(s);
        if (syndrome(frame)) {
            return Verdict::LogicalFailure;
        }
    }
    for (const auto &l : logicals_) {
        if (anticommutes(frame, l)) {
            return Verdict::LogicalFailure;
        }
    }
    return Verdict::Success;
}

TrialOutcome Experiment::trial(const NoiseParams &params, Rng &rng) const {
    return target_ == Target::Memory ? memory_trial(*this, params, rng) : exrec_trial(*this, params, rng);
}

TrialOutcome memory_trial(const Experiment &e, const NoiseParams &params, Rng &rng) {
    TrialOutcome out;
    NoiseSource noise(rng, params);
    if (noise.countdown() >= e.clean_round_locations_) {
        return out;
    }
    PauliMask frame;
    NoisyDriver driver(e.scheme_, noise, frame);
    DecodeOutcome d = decode_round(e.scheme_, e.tables_, DecoderConfig{e.effective_, 0}, driver);
    out.faults = noise.faults();
    out.followups = d.followups;
    if (d.action == DecodeAction::Discard) {
        out.verdict = Verdict::Discarded;
        return out;
    }
    out.verdict = e.ideal_round(frame);
    return out;
}

TrialOutcome exrec_trial(const Experiment &e, const NoiseParams &params, Rng &rng) {
    TrialOutcome out;
    NoiseSource noise(rng, params);
    size_t n = e.scheme_.code->n();
    if (noise.countdown() >= 4 * e.clean_round_locations_ + n) {
        return out;
    }
    PauliMask frames[2];
    auto ec = [&](int block, int parity) {
        NoisyDriver driver(e.scheme_, noise, frames[block]);
        DecodeOutcome d = decode_round(e.scheme_, e.tables_, DecoderConfig{e.effective_, parity}, driver);
        out.followups |= d.followups;
        return d.action != DecodeAction::Discard;
    };
    bool accepted = ec(0, 0);
    accepted = ec(1, 0) && accepted;
    std::vector<Injection> inj;
    noise.draw(e.transversal_, inj);
    uint64_t low = (uint64_t{1} << n) - 1;
    GadgetResult r = e.transversal_.run(frames[0].x | (frames[1].x << n), frames[0].z | (frames[1].z << n), inj);
    frames[0] = PauliMask{r.x & low, r.z & low};
    frames[1] = PauliMask{(r.x >> n) & low, (r.z >> n) & low};
    accepted = ec(0, 1) && accepted;
    accepted = ec(1, 1) && accepted;
    out.faults = noise.faults();
    if (!accepted) {
        out.verdict = Verdict::Discarded;
        return out;
    }
    Verdict v0 = e.ideal_round(frames[0]);
    Verdict v1 = e.ideal_round(frames[1]);
    if (v0 == Verdict::Discarded || v1 == Verdict::Discarded) {
        out.verdict = Verdict::Discarded;
    } else if (v0 == Verdict::LogicalFailure || v1 == Verdict::LogicalFailure) {
        out.verdict = Verdict::LogicalFailure;
    }
    return out;
}

Interval wilson_interval(size_t k, size_t n, double z) {
    if (n == 0) {
        return {0.0, 1.0};
    }
    double nn = static_cast<double>(n);
    double phat = static_cast<double>(k) / nn;
    double z2 = z * z;
    double denom = 1 + z2 / nn;
    double center = (phat + z2 / (2 * nn)) / denom;
    double half = z * std::sqrt(phat * (1 - phat) / nn + z2 / (4 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

void RateEstimate::merge(const RateEstimate &o) {
    trials += o.trials;
    failures += o.failures;
    accepted += o.accepted;
}

void RateEstimate::finish() {
    defined = accepted > 0;
    rate = defined ? static_cast<double>(failures) / static_cast<double>(accepted) : 0.0;
    ci = wilson_interval(failures, accepted);
}

RateEstimate estimate_rate(const TrialFn &fn, size_t n, uint64_t seed, unsigned threads, uint64_t first) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<size_t>(1, n / 1000))));
    std::vector<RateEstimate> parts(threads);
    auto work = [&](unsigned w) {
        size_t begin = n * w / threads;
        size_t end = n * (w + 1) / threads;
        RateEstimate &r = parts[w];
        for (size_t t = begin; t < end; t++) {
            Rng rng(seed, first + t);
            TrialOutcome o = fn(rng);
            r.trials++;
            if (o.verdict != Verdict::Discarded) {
                r.accepted++;
            }
            if (o.verdict == Verdict::LogicalFailure) {
                r.failures++;
            }
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; w++) {
            pool.emplace_back(work, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    RateEstimate total;
    for (const auto &p : parts) {
        total.merge(p);
    }
    total.finish();
    return total;
}

unsigned default_threads() {
    if (const char *env = std::getenv("FLAGSHARE_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

uint64_t point_seed(uint64_t seed, double p) {
    uint64_t s = seed ^ std::bit_cast<uint64_t>(p);
    return splitmix64(s);
}

class Scanner {
   public:
    Scanner(const Experiment &e, double gamma, const ThresholdOptions &opt) : e_(e), gamma_(gamma), opt_(opt) {
    }

    /// Samples at p until the interval separates from p, the per-point cap
    /// or the budget is reached.
    GridPoint evaluate(double p) {
        GridPoint g;
        g.p = p;
        uint64_t seed = point_seed(opt_.seed, p);
        NoiseParams params{p, gamma_};
        TrialFn fn = [&](Rng &rng) { return e_.trial(params, rng); };
        size_t target = opt_.initial_trials;
        while (true) {
            size_t batch = target - g.estimate.trials;
            RateEstimate r = estimate_rate(fn, batch, seed, opt_.threads, g.estimate.trials);
            g.estimate.merge(r);
            g.estimate.finish();
            used_ += batch;
            if (g.estimate.defined) {
                Interval d = wilson_interval(g.estimate.failures, g.estimate.accepted, opt_.decision_z);
                if (d.hi < p) {
                    g.sign = -1;
                    break;
                }
                if (d.lo > p) {
                    g.sign = 1;
                    break;
                }
            }
            if (target >= opt_.max_trials_per_point || used_ >= opt_.budget) {
                break;
            }
            target = std::min(opt_.max_trials_per_point, target * 4);
        }
        grid_.push_back(g);
        return g;
    }

    bool out_of_budget() const {
        return used_ >= opt_.budget;
    }
    size_t used() const {
        return used_;
    }
    std::vector<GridPoint> &grid() {
        return grid_;
    }

   private:
    const Experiment &e_;
    double gamma_;
    const ThresholdOptions &opt_;
    size_t used_ = 0;
    std::vector<GridPoint> grid_;
};

/// Sign used to steer the bisection: the significant sign when there is one,
/// else the point estimate.
int steering_sign(const GridPoint &g) {
    if (g.sign) {
        return g.sign;
    }
    if (!g.estimate.defined) {
        return 1;
    }
    return g.estimate.rate < g.p ? -1 : 1;
}

double log_interpolate(const GridPoint &a, const GridPoint &b) {
    if (a.estimate.rate <= 0 || b.estimate.rate <= 0) {
        return std::sqrt(a.p * b.p);
    }
    double fa = std::log(a.estimate.rate / a.p);
    double fb = std::log(b.estimate.rate / b.p);
    if (fa == fb) {
        return std::sqrt(a.p * b.p);
    }
    double la = std::log(a.p);
    double lb = std::log(b.p);
    double root = la + (lb - la) * fa / (fa - fb);
    return std::exp(std::clamp(root, std::min(la, lb), std::max(la, lb)));
}

struct Fit {
    double crossing;
    Interval interval;
};

/// Weighted least squares of log(rate) on log(p), weights equal to the
/// failure counts; the crossing solves a + b x = x.
std::optional<Fit> power_law_fit(const std::vector<GridPoint> &pts) {
    double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
    size_t used = 0;
    for (const auto &g : pts) {
        const auto &r = g.estimate;
        if (!r.defined || r.failures == 0 || r.failures == r.accepted) {
            continue;
        }
        double w = static_cast<double>(r.failures) * (1 - r.rate);
        double x = std::log(g.p);
        double y = std::log(r.rate);
        s0 += w;
        s1 += w * x;
        s2 += w * x * x;
        t0 += w * y;
        t1 += w * x * y;
        used++;
    }
    double det = s0 * s2 - s1 * s1;
    if (used < 2 || det <= 0) {
        return std::nullopt;
    }
    double b = (s0 * t1 - s1 * t0) / det;
    double a = (s2 * t0 - s1 * t1) / det;
    if (!(b > 1)) {
        return std::nullopt;
    }
    double var_a = s2 / det;
    double var_b = s0 / det;
    double cov_ab = -s1 / det;
    double xc = a / (1 - b);
    double da = 1 / (1 - b);
    double db = a / ((1 - b) * (1 - b));
    double se = std::sqrt(std::max(0.0, da * da * var_a + db * db * var_b + 2 * da * db * cov_ab));
    double z = 1.959964;
    return Fit{std::exp(xc), {std::exp(xc - z * se), std::exp(xc + z * se)}};
}

}  // namespace

ThresholdReport find_pseudothreshold(const Experiment &e, double gamma, const ThresholdOptions &options) {
    if (!(options.p_min > 0 && options.p_min < options.p_max && options.p_max <= 1)) {
        throw std::invalid_argument("threshold search needs 0 < p_min < p_max <= 1");
    }
    if (options.initial_trials == 0 || options.max_trials_per_point == 0) {
        throw std::invalid_argument("trial counts must be positive");
    }
    if (!(options.decision_z > 0) || !(options.rel_width > 0)) {
        throw std::invalid_argument("decision_z and rel_width must be positive");
    }
    NoiseParams{options.p_max, gamma}.validate();
    ThresholdReport rep;
    rep.scheme = e.scheme().id();
    rep.procedure = procedure_name(e.procedure());
    rep.effective_procedure = procedure_name(e.effective());
    rep.target = e.target();
    rep.gamma = gamma;
    rep.seed = options.seed;

    Scanner scan(e, gamma, options);
    const double step = std::sqrt(10.0);
    std::optional<GridPoint> above;
    std::optional<GridPoint> below;
    for (double p = options.p_max; p >= options.p_min * 0.999; p /= step) {
        GridPoint g = scan.evaluate(p);
        if (steering_sign(g) < 0) {
            below = g;
            break;
        }
        above = g;
        if (scan.out_of_budget()) {
            break;
        }
    }
    if (!below) {
        rep.verdict = scan.out_of_budget() ? "budget" : "above";
    } else if (!above) {
        rep.verdict = "below";
    } else {
        GridPoint lo = *below;
        GridPoint hi = *above;
        while (hi.p / lo.p - 1 > options.rel_width && !scan.out_of_budget()) {
            GridPoint mid = scan.evaluate(std::sqrt(lo.p * hi.p));
            (steering_sign(mid) < 0 ? lo : hi) = mid;
        }
        rep.verdict = "crossing";
        rep.bracket = {lo.p, hi.p};
        std::vector<GridPoint> near;
        for (const auto &g : scan.grid()) {
            if (g.p >= lo.p / 1.5 && g.p <= hi.p * 1.5) {
                near.push_back(g);
            }
        }
        if (auto fit = power_law_fit(near)) {
            rep.crossing = fit->crossing;
            rep.interval = fit->interval;
        } else {
            rep.crossing = log_interpolate(lo, hi);
            rep.interval = rep.bracket;
        }
    }
    rep.grid = scan.grid();
    std::sort(rep.grid.begin(), rep.grid.end(), [](const GridPoint &a, const GridPoint &b) { return a.p < b.p; });
    rep.total_trials = scan.used();
    return rep;
}

ThresholdReport estimate_point(const Experiment &e, double p, double gamma, size_t trials, uint64_t seed,
                               unsigned threads) {
    if (trials == 0) {
        throw std::invalid_argument("trial counts must be positive");
    }
    NoiseParams params{p, gamma};
    params.validate();
    ThresholdReport rep;
    rep.scheme = e.scheme().id();
    rep.procedure = procedure_name(e.procedure());
    rep.effective_procedure = procedure_name(e.effective());
    rep.target = e.target();
    rep.gamma = gamma;
    rep.seed = seed;
    rep.verdict = "point";
    GridPoint g;
    g.p = p;
    g.estimate = estimate_rate([&](Rng &rng) { return e.trial(params, rng); }, trials, point_seed(seed, p), threads);
    if (g.estimate.defined) {
        g.sign = g.estimate.ci.hi < p ? -1 : (g.estimate.ci.lo > p ? 1 : 0);
    }
    rep.grid.push_back(g);
    rep.total_trials = trials;
    return rep;
}

std::string ThresholdReport::to_csv() const {
    std::ostringstream out;
    out << "scheme,procedure,target,gamma,p,trials,failures,accepted,acceptance,logical_rate,ci_low,ci_high,sign\n";
    for (const auto &g : grid) {
        const auto &r = g.estimate;
        double acc = r.trials ? static_cast<double>(r.accepted) / static_cast<double>(r.trials) : 0.0;
        out << scheme << "," << procedure << "," << target_name(target) << "," << format_double(gamma) << ","
            << format_double(g.p) << "," << r.trials << "," << r.failures << "," << r.accepted << ","
            << format_double(acc) << "," << format_double(r.rate) << "," << format_double(r.ci.lo) << ","
            << format_double(r.ci.hi) << "," << g.sign << "\n";
    }
    return out.str();
}

std::string ThresholdReport::to_json() const {
    nlohmann::json j;
    j["scheme"] = scheme;
    j["procedure"] = procedure;
    j["effective_procedure"] = effective_procedure;
    j["target"] = target_name(target);
    j["gamma"] = gamma;
    j["seed"] = seed;
    j["verdict"] = verdict;
    j["total_trials"] = total_trials;
    if (crossing) {
        j["pseudo_threshold"] = *crossing;
        j["interval"] = {interval.lo, interval.hi};
        j["bracket"] = {bracket.lo, bracket.hi};
    } else {
        j["pseudo_threshold"] = nullptr;
    }
    nlohmann::json g = nlohmann::json::array();
    for (const auto &pt : grid) {
        const auto &r = pt.estimate;
        g.push_back({{"p", pt.p},
                     {"trials", r.trials},
                     {"failures", r.failures},
                     {"accepted", r.accepted},
                     {"logical_rate", r.rate},
                     {"ci", {r.ci.lo, r.ci.hi}},
                     {"sign", pt.sign}});
    }
    j["grid"] = g;
    return j.dump(2);
}

}  // namespace flagshare
