// Copyright 2026 The Ontolab Authors
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

#include "ontolab/infoanalysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <type_traits>
#include <utility>

#include "ontolab/errors.hpp"
#include "ontolab/parallel.hpp"

namespace ontolab {

namespace {

// Sub-stream tags; each ensemble of a multi-sample analysis draws from its own family of
// per-run streams.
constexpr std::uint64_t kTagFirst = 1;
constexpr std::uint64_t kTagSecond = 2;
constexpr std::uint64_t kTagBootstrap = 3;
constexpr std::uint64_t kTagDurations = 4;

void require_runs(std::uint64_t runs) {
    if (runs == 0) throw InvalidArgument("runs must be >= 1");
}

void merge_all(std::vector<SphereHistogram> &into, const std::vector<SphereHistogram> &from) {
    for (std::size_t k = 0; k < into.size(); ++k) into[k].merge(from[k]);
}

template <class F>
decltype(auto) visit_single_world(const OntologicalModel &model, const char *analysis, F &&f) {
    return std::visit(
        [&](const auto &m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (SingleWorldModel<M>) {
                return f(m);
            } else {
                throw ContractMismatch(std::string(analysis) +
                                       " needs a single-world model; the branching model keeps its system "
                                       "state untouched by construction (use the mw no-erasure check)");
                return f(BBModel{});
            }
        },
        model);
}

/// Post-measurement histogram (outcome discarded) of a maximally mixed ensemble.
template <SingleWorldModel M>
SphereHistogram post_measurement_histogram(const M &model, const BlochVector &n, std::uint64_t runs,
                                           std::uint64_t seed, int nz, int nphi) {
    return parallel_accumulate(
        runs, SphereHistogram(nz, nphi),
        [&](SphereHistogram &h, std::uint64_t r) {
            Rng rng = run_rng(seed, r);
            const auto lambda = model.prepare_max(rng);
            h.add(M::embed(model.measure(lambda, n, rng).post));
        },
        [](SphereHistogram &into, const SphereHistogram &from) { into.merge(from); });
}

/// Multinomial resample of a histogram's counts from its own empirical frequencies.
SphereHistogram resample(const SphereHistogram &h, Rng &rng) {
    SphereHistogram out(h.nz(), h.nphi());
    std::uint64_t remaining = h.total();
    std::uint64_t mass_left = h.total();
    for (std::size_t k = 0; k < h.bins() && remaining > 0; ++k) {
        const std::uint64_t c = h.counts()[k];
        if (c == 0) continue;
        std::uint64_t drawn = remaining;
        if (c < mass_left) {
            const double p = static_cast<double>(c) / static_cast<double>(mass_left);
            std::binomial_distribution<std::uint64_t> binom(remaining, p);
            drawn = binom(rng);
        }
        out.add_count(k, drawn);
        remaining -= drawn;
        mass_left -= c;
    }
    return out;
}

double percentile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

BlochVector orthogonal_unit(const BlochVector &v) {
    const BlochVector helper = std::abs(v.x) < 0.9 ? axis::x : axis::y;
    const BlochVector cross{v.y * helper.z - v.z * helper.y, v.z * helper.x - v.x * helper.z,
                            v.x * helper.y - v.y * helper.x};
    return cross.normalized();
}

}  // namespace

// --- SphereHistogram --------------------------------------------------------

SphereHistogram::SphereHistogram(int nz, int nphi) : nz_(nz), nphi_(nphi) {
    if (nz < 1 || nphi < 1) {
        throw InvalidArgument("histogram needs nz, nphi >= 1, got " + std::to_string(nz) + "x" +
                              std::to_string(nphi));
    }
    counts_.assign(static_cast<std::size_t>(nz) * static_cast<std::size_t>(nphi), 0);
}

double SphereHistogram::bin_area() const { return 4.0 * kPi / static_cast<double>(bins()); }

std::size_t SphereHistogram::bin_of(const BlochVector &v) const {
    const double z = std::clamp(v.z, -1.0, 1.0);
    const int iz = std::clamp(static_cast<int>(std::floor((z + 1.0) * 0.5 * nz_)), 0, nz_ - 1);
    double phi = std::atan2(v.y, v.x);
    if (phi < 0.0) phi += 2.0 * kPi;
    const int iphi = std::clamp(static_cast<int>(std::floor(phi / (2.0 * kPi) * nphi_)), 0, nphi_ - 1);
    return static_cast<std::size_t>(iz) * static_cast<std::size_t>(nphi_) + static_cast<std::size_t>(iphi);
}

void SphereHistogram::add(const BlochVector &v) { add_count(bin_of(v), 1); }

void SphereHistogram::add_count(std::size_t bin, std::uint64_t n) {
    counts_.at(bin) += n;
    total_ += n;
}

void SphereHistogram::merge(const SphereHistogram &other) {
    if (!same_binning(other)) throw InvalidArgument("cannot merge histograms with different binnings");
    for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
    total_ += other.total_;
}

// --- estimators -------------------------------------------------------------

double histogram_entropy(const SphereHistogram &h) {
    if (h.total() == 0) throw InvalidArgument("entropy of an empty sample set is undefined");
    const double n = static_cast<double>(h.total());
    double acc = 0.0;
    for (std::uint64_t c : h.counts()) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        acc -= p * std::log(p);
    }
    return acc + std::log(h.bin_area());
}

double entropy_estimate(std::span<const BlochVector> samples, int nz, int nphi) {
    if (samples.empty()) throw InvalidArgument("entropy of an empty sample set is undefined");
    SphereHistogram h(nz, nphi);
    for (const BlochVector &v : samples) h.add(v);
    return histogram_entropy(h);
}

double tv_distance(const SphereHistogram &h1, const SphereHistogram &h2) {
    if (!h1.same_binning(h2)) throw InvalidArgument("TV distance needs identical binnings");
    if (h1.total() == 0 || h2.total() == 0) throw InvalidArgument("TV distance of an empty histogram");
    const double n1 = static_cast<double>(h1.total());
    const double n2 = static_cast<double>(h2.total());
    double acc = 0.0;
    for (std::size_t k = 0; k < h1.bins(); ++k) {
        acc += std::abs(static_cast<double>(h1.counts()[k]) / n1 - static_cast<double>(h2.counts()[k]) / n2);
    }
    return std::clamp(0.5 * acc, 0.0, 1.0);
}

double tv_noise_threshold(const SphereHistogram &h1, const SphereHistogram &h2) {
    if (!h1.same_binning(h2)) throw InvalidArgument("TV threshold needs identical binnings");
    if (h1.total() == 0 || h2.total() == 0) throw InvalidArgument("TV threshold of an empty histogram");
    const double pooled = static_cast<double>(h1.total() + h2.total());
    const double n = static_cast<double>(std::min(h1.total(), h2.total()));
    double acc = 0.0;
    for (std::size_t k = 0; k < h1.bins(); ++k) {
        const double p = static_cast<double>(h1.counts()[k] + h2.counts()[k]) / pooled;
        acc += std::sqrt(p * (1.0 - p) / n);
    }
    return 3.0 * acc;
}

// --- erasure ----------------------------------------------------------------

ErasureReport erasure_report(const OntologicalModel &model, const MeasurementSetting &setting, std::uint64_t runs,
                             std::span<const Resolution> resolutions, std::uint64_t seed) {
    require_runs(runs);
    if (resolutions.empty()) throw InvalidArgument("erasure report needs at least one resolution");
    const BlochVector n = setting.direction();
    require_unit(n, "measurement direction");

    std::vector<SphereHistogram> zero;
    for (const Resolution &r : resolutions) zero.emplace_back(r.nz, r.nphi);
    struct Pair {
        std::vector<SphereHistogram> before;
        std::vector<SphereHistogram> after;
    };

    const Pair hists = visit_single_world(model, "erasure report", [&](const auto &m) {
        using M = std::decay_t<decltype(m)>;
        return parallel_accumulate(
            runs, Pair{zero, zero},
            [&](Pair &acc, std::uint64_t r) {
                Rng rng = run_rng(seed, r);
                const auto lambda = m.prepare_max(rng);
                const auto post = m.measure(lambda, n, rng).post;
                const BlochVector pre_v = M::embed(lambda);
                const BlochVector post_v = M::embed(post);
                for (std::size_t k = 0; k < acc.before.size(); ++k) {
                    acc.before[k].add(pre_v);
                    acc.after[k].add(post_v);
                }
            },
            [](Pair &into, const Pair &from) {
                merge_all(into.before, from.before);
                merge_all(into.after, from.after);
            });
    });

    ErasureReport report{std::string(model_name(model)), n, runs, seed, {}};
    for (std::size_t k = 0; k < resolutions.size(); ++k) {
        report.rows.push_back({resolutions[k], hists.before[k].bin_area(), histogram_entropy(hists.before[k]),
                               histogram_entropy(hists.after[k])});
    }
    return report;
}

// --- no-flow ----------------------------------------------------------------

NoFlowReport noflow_test(const OntologicalModel &model, const MeasurementSetting &setting1,
                         const MeasurementSetting &setting2, std::uint64_t runs, int nz, int nphi,
                         std::uint64_t seed, int resamples) {
    require_runs(runs);
    if (resamples < 1) throw InvalidArgument("bootstrap needs at least one resample");
    const BlochVector n1 = setting1.direction();
    const BlochVector n2 = setting2.direction();
    require_unit(n1, "first setting");
    require_unit(n2, "second setting");

    auto [h1, h2] = visit_single_world(model, "no-flow test", [&](const auto &m) {
        return std::pair{post_measurement_histogram(m, n1, runs, derive_seed(seed, kTagFirst), nz, nphi),
                         post_measurement_histogram(m, n2, runs, derive_seed(seed, kTagSecond), nz, nphi)};
    });

    NoFlowReport report{std::string(model_name(model)), n1, n2, {nz, nphi}, runs, seed, 0.0, 0.0, 0.0, 0.0,
                        resamples};
    report.tv = tv_distance(h1, h2);
    report.threshold = tv_noise_threshold(h1, h2);

    Rng rng(derive_seed(seed, kTagBootstrap));
    std::vector<double> tvs;
    tvs.reserve(static_cast<std::size_t>(resamples));
    for (int k = 0; k < resamples; ++k) {
        tvs.push_back(tv_distance(resample(h1, rng), resample(h2, rng)));
    }
    report.ci_low = percentile(tvs, 0.025);
    report.ci_high = percentile(tvs, 0.975);
    return report;
}

// --- branching model ---------------------------------------------------------

MWNoErasureReport mw_no_erasure_check(const BlochVector &a, const BlochVector &b, std::uint64_t runs,
                                      std::uint64_t seed, MWVariant variant, int nz, int nphi) {
    require_runs(runs);
    require_unit(a, "first measurement direction");
    require_unit(b, "second measurement direction");
    const MWModel model(variant);

    struct Acc {
        SphereHistogram x0;
        SphereHistogram x1;
        std::uint64_t mutated = 0;
    };
    auto run_ensemble = [&](const BlochVector &sa, const BlochVector &sb, std::uint64_t ensemble_seed) {
        return parallel_accumulate(
            runs, Acc{SphereHistogram(nz, nphi), SphereHistogram(nz, nphi)},
            [&](Acc &acc, std::uint64_t r) {
                Rng rng = run_rng(ensemble_seed, r);
                const MWTrial t = model.run_trial(sa, sb, rng);
                acc.x0.add(t.after.x0);
                acc.x1.add(t.after.x1);
                const bool same = std::memcmp(&t.before.x0, &t.after.x0, sizeof(BlochVector)) == 0 &&
                                  std::memcmp(&t.before.x1, &t.after.x1, sizeof(BlochVector)) == 0;
                if (!same) ++acc.mutated;
            },
            [](Acc &into, const Acc &from) {
                into.x0.merge(from.x0);
                into.x1.merge(from.x1);
                into.mutated += from.mutated;
            });
    };

    const Acc main = run_ensemble(a, b, derive_seed(seed, kTagFirst));
    const Acc reference = run_ensemble(orthogonal_unit(a), orthogonal_unit(b), derive_seed(seed, kTagSecond));

    MWNoErasureReport report;
    report.a = a;
    report.b = b;
    report.runs = runs;
    report.mutated_runs = main.mutated + reference.mutated;
    report.tv_x0 = tv_distance(main.x0, reference.x0);
    report.tv_x1 = tv_distance(main.x1, reference.x1);
    report.threshold_x0 = tv_noise_threshold(main.x0, reference.x0);
    report.threshold_x1 = tv_noise_threshold(main.x1, reference.x1);
    return report;
}

// --- unitary invariance -------------------------------------------------------

InvarianceReport invariance_test(std::uint64_t runs, int rotations, int nz, int nphi, std::uint64_t seed,
                                 InitialEnsemble start) {
    require_runs(runs);
    if (rotations < 0) throw InvalidArgument("rotation count must be >= 0");

    InvarianceReport report;
    report.resolution = {nz, nphi};
    report.runs = runs;
    Rng duration_rng(derive_seed(seed, kTagDurations));
    for (int k = 0; k < rotations; ++k) report.durations.push_back(duration_rng.uniform(0.0, kPi));

    const std::uint64_t evolved_seed = derive_seed(seed, kTagFirst);
    const SphereHistogram evolved = parallel_accumulate(
        runs, SphereHistogram(nz, nphi),
        [&](SphereHistogram &h, std::uint64_t r) {
            Rng rng = run_rng(evolved_seed, r);
            BBOntic state;
            if (start == InitialEnsemble::uniform) {
                state = bb_prepare_max(rng);
            } else {
                const double z = rng.uniform(0.5, 1.0);
                const double phi = rng.uniform(0.0, 2.0 * kPi);
                const double rho = std::sqrt(1.0 - z * z);
                state.lambda = {rho * std::cos(phi), rho * std::sin(phi), z};
            }
            for (double dt : report.durations) state = bb_evolve(state, dt);
            h.add(state.lambda);
        },
        [](SphereHistogram &into, const SphereHistogram &from) { into.merge(from); });

    const std::uint64_t fresh_seed = derive_seed(seed, kTagSecond);
    const SphereHistogram fresh = parallel_accumulate(
        runs, SphereHistogram(nz, nphi),
        [&](SphereHistogram &h, std::uint64_t r) {
            Rng rng = run_rng(fresh_seed, r);
            h.add(bb_prepare_max(rng).lambda);
        },
        [](SphereHistogram &into, const SphereHistogram &from) { into.merge(from); });

    report.tv = tv_distance(evolved, fresh);
    report.threshold = tv_noise_threshold(evolved, fresh);
    return report;
}

}  // namespace ontolab
