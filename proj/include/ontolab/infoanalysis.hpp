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

// Information flow on the ontic sphere: equal-area histograms, plug-in differential
// entropy (nats), total-variation two-sample tests, and the reports built on them.

#ifndef ONTOLAB_INFOANALYSIS_HPP
#define ONTOLAB_INFOANALYSIS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ontolab/ontomodels.hpp"

namespace ontolab {

/// Equal-area binning of S^2: nz slabs uniform in z times nphi sectors uniform in azimuth.
class SphereHistogram {
   public:
    /// Throws InvalidArgument if nz or nphi is zero.
    SphereHistogram(int nz, int nphi);

    int nz() const { return nz_; }
    int nphi() const { return nphi_; }
    std::size_t bins() const { return counts_.size(); }
    std::uint64_t total() const { return total_; }
    const std::vector<std::uint64_t> &counts() const { return counts_; }
    double bin_area() const;

    std::size_t bin_of(const BlochVector &v) const;
    void add(const BlochVector &v);
    void add_count(std::size_t bin, std::uint64_t n);
    /// Throws InvalidArgument on a binning mismatch.
    void merge(const SphereHistogram &other);

    bool same_binning(const SphereHistogram &other) const { return nz_ == other.nz_ && nphi_ == other.nphi_; }

   private:
    int nz_;
    int nphi_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// -sum p_i ln p_i + ln(bin area), over occupied bins. Throws InvalidArgument when empty.
double histogram_entropy(const SphereHistogram &h);

/// Plug-in differential entropy (nats) of unit-vector samples.
double entropy_estimate(std::span<const BlochVector> samples, int nz, int nphi);

/// (1/2) sum |p_i - q_i|.
double tv_distance(const SphereHistogram &h1, const SphereHistogram &h2);

/// 3 sum_i sqrt(p_i (1 - p_i) / n), p from the pooled histogram and n the smaller sample
/// size. TV between two samples of one distribution stays below this with overwhelming
/// probability.
double tv_noise_threshold(const SphereHistogram &h1, const SphereHistogram &h2);

struct Resolution {
    int nz;
    int nphi;
};

// ---------------------------------------------------------------------------

struct ErasureRow {
    Resolution resolution;
    double bin_area;
    double entropy_before;
    double entropy_after;
    double gap() const { return entropy_before - entropy_after; }
};

struct ErasureReport {
    std::string model;
    BlochVector setting;
    std::uint64_t runs;
    std::uint64_t seed;
    std::vector<ErasureRow> rows;
};

/// Entropy of the ontic ensemble before and after one non-selective measurement,
/// starting from the maximally mixed preparation. Throws ContractMismatch for the
/// branching model, which has no single-world measurement.
ErasureReport erasure_report(const OntologicalModel &model, const MeasurementSetting &setting, std::uint64_t runs,
                             std::span<const Resolution> resolutions, std::uint64_t seed);

// ---------------------------------------------------------------------------

struct NoFlowReport {
    std::string model;
    BlochVector setting1;
    BlochVector setting2;
    Resolution resolution;
    std::uint64_t runs;
    std::uint64_t seed;
    double tv;
    double ci_low;
    double ci_high;
    double threshold;
    int bootstrap_resamples;
    /// The whole bootstrap interval lies above the noise threshold.
    bool flow_detected() const { return ci_low > threshold; }
};

inline constexpr int kBootstrapResamples = 1000;

/// Two-sample test of whether the post-measurement ontic distribution (outcome discarded)
/// depends on which of two measurements was executed. Each setting gets `runs` samples;
/// the 95% interval is a percentile bootstrap with multinomial resampling of the counts.
NoFlowReport noflow_test(const OntologicalModel &model, const MeasurementSetting &setting1,
                         const MeasurementSetting &setting2, std::uint64_t runs, int nz, int nphi,
                         std::uint64_t seed, int resamples = kBootstrapResamples);

// ---------------------------------------------------------------------------

struct MWNoErasureReport {
    BlochVector a;
    BlochVector b;
    std::uint64_t runs;
    std::uint64_t mutated_runs;
    /// TV between post-measurement x0 (resp. x1) histograms under (a, b) and under a
    /// reference pair of orthogonal settings.
    double tv_x0;
    double tv_x1;
    double threshold_x0;
    double threshold_x1;
    bool immutable() const { return mutated_runs == 0; }
    bool passed() const { return immutable() && tv_x0 <= threshold_x0 && tv_x1 <= threshold_x1; }
};

/// True-valued (passed()) iff the branching model leaves (x0, x1) bit-identical in every run
/// and the system-state distribution after measurement carries no trace of the settings.
MWNoErasureReport mw_no_erasure_check(const BlochVector &a, const BlochVector &b, std::uint64_t runs,
                                      std::uint64_t seed, MWVariant variant = MWVariant::standard,
                                      int nz = 16, int nphi = 16);

// ---------------------------------------------------------------------------

enum class InitialEnsemble {
    uniform,
    /// Uniform on the polar cap z >= 1/2 (a quarter of the sphere).
    polar_cap,
};

struct InvarianceReport {
    std::vector<double> durations;
    Resolution resolution;
    std::uint64_t runs;
    double tv;
    double threshold;
    bool invariant() const { return tv <= threshold; }
};

/// Evolves an ensemble through `rotations` random-duration steps of the pure-state
/// dynamics and compares it with a fresh uniform ensemble.
InvarianceReport invariance_test(std::uint64_t runs, int rotations, int nz, int nphi, std::uint64_t seed,
                                 InitialEnsemble start = InitialEnsemble::uniform);

}  // namespace ontolab

#endif
