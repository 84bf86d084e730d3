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


#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ontolab/errors.hpp"
#include "ontolab/infoanalysis.hpp"
#include "ontolab/lgscen.hpp"

namespace ontolab {
namespace {

const double kLn4Pi = std::log(4 * kPi);

std::vector<BlochVector> uniform_samples(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<BlochVector> v(n);
    for (auto &x : v) x = sample_uniform_sphere(rng);
    return v;
}

SphereHistogram histogram_of(const std::vector<BlochVector> &v, int nz, int nphi) {
    SphereHistogram h(nz, nphi);
    for (const auto &x : v) h.add(x);
    return h;
}

TEST(SphereHistogram, Binning) {
    SphereHistogram h(4, 8);
    EXPECT_EQ(h.bins(), 32u);
    EXPECT_DOUBLE_EQ(h.bin_area(), 4 * kPi / 32);
    EXPECT_EQ(h.bin_of(-axis::z) / 8, 0u);
    EXPECT_EQ(h.bin_of(axis::z) / 8, 3u);
    EXPECT_EQ(h.bin_of(axis::x) % 8, 0u);
    EXPECT_EQ(h.bin_of(axis::y) % 8, 2u);
    EXPECT_EQ(h.bin_of(-axis::y) % 8, 6u);
    EXPECT_THROW(SphereHistogram(0, 4), InvalidArgument);
}

TEST(SphereHistogram, CountsSumToTotal) {
    const SphereHistogram h = histogram_of(uniform_samples(10000, 1), 8, 8);
    std::uint64_t sum = 0;
    for (auto c : h.counts()) sum += c;
    EXPECT_EQ(sum, h.total());
    EXPECT_EQ(h.total(), 10000u);
    SphereHistogram other(4, 4);
    SphereHistogram copy = h;
    EXPECT_THROW(copy.merge(other), InvalidArgument);
}

TEST(EntropyEstimate, UniformSphere) {
    EXPECT_NEAR(entropy_estimate(uniform_samples(1000000, 2), 32, 32), kLn4Pi, 0.01);
}

TEST(EntropyEstimate, Degenerate) {
    const std::vector<BlochVector> one(100, BlochVector{0.3, 0.4, std::sqrt(0.75)});
    EXPECT_DOUBLE_EQ(entropy_estimate(one, 8, 16), std::log(4 * kPi / 128));
    const std::vector<BlochVector> two{axis::z, -axis::z, axis::z, -axis::z};
    EXPECT_NEAR(entropy_estimate(two, 8, 16), std::log(2.0) + std::log(4 * kPi / 128), 1e-12);
}

TEST(EntropyEstimate, Errors) {
    EXPECT_THROW(entropy_estimate({}, 4, 4), InvalidArgument);
    const std::vector<BlochVector> one{axis::z};
    EXPECT_THROW(entropy_estimate(one, 0, 4), InvalidArgument);
}

TEST(EntropyEstimate, Consistency) {
    for (std::uint64_t seed : {11, 12, 13}) {
        double previous = INFINITY;
        for (std::size_t n : {10000, 100000, 1000000}) {
            const double err = std::abs(entropy_estimate(uniform_samples(n, seed), 16, 16) - kLn4Pi);
            EXPECT_LT(err, previous) << "seed " << seed << " n " << n;
            previous = err;
        }
    }
}

TEST(TvDistance, Examples) {
    const SphereHistogram h = histogram_of(uniform_samples(5000, 3), 16, 16);
    EXPECT_DOUBLE_EQ(tv_distance(h, h), 0.0);

    const SphereHistogram zs = histogram_of({axis::z, -axis::z}, 16, 16);
    const SphereHistogram xs = histogram_of({axis::x, -axis::x}, 16, 16);
    EXPECT_DOUBLE_EQ(tv_distance(zs, xs), 1.0);

    const SphereHistogram u1 = histogram_of(uniform_samples(1000000, 4), 16, 16);
    const SphereHistogram u2 = histogram_of(uniform_samples(1000000, 5), 16, 16);
    EXPECT_LE(tv_distance(u1, u2), 0.02);
    EXPECT_LE(tv_distance(u1, u2), tv_noise_threshold(u1, u2));

    EXPECT_THROW(tv_distance(u1, SphereHistogram(8, 8)), InvalidArgument);
}

TEST(TvDistance, SymmetricAndBounded) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        Rng rng(s);
        std::vector<BlochVector> a = uniform_samples(2000, 100 + s);
        std::vector<BlochVector> b;
        for (int i = 0; i < 1000; ++i) {
            const BlochVector v = sample_uniform_sphere(rng);
            b.push_back(v.z > 0 ? v : -v);
        }
        const SphereHistogram ha = histogram_of(a, 8, 8), hb = histogram_of(b, 8, 8);
        const double d = tv_distance(ha, hb);
        EXPECT_DOUBLE_EQ(d, tv_distance(hb, ha));
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, 1.0);
    }
}

TEST(ErasureReport, BBAtomicCollapse) {
    const std::vector<Resolution> res{{32, 32}};
    const ErasureReport r = erasure_report(BBModel{}, MeasurementSetting::along(axis::y), 1000000, res, 1);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_NEAR(r.rows[0].entropy_before, kLn4Pi, 0.02);
    EXPECT_NEAR(r.rows[0].entropy_after, std::log(2.0) + std::log(4 * kPi / 1024), 0.02);
    EXPECT_NEAR(r.rows[0].gap(), 6.25, 0.03);
}

TEST(ErasureReport, DivergesWithResolution) {
    const std::vector<Resolution> res{{8, 8}, {16, 16}, {32, 32}, {64, 64}};
    const ErasureReport r = erasure_report(BBModel{}, MeasurementSetting::at_time(0.4), 1000000, res, 2);
    ASSERT_EQ(r.rows.size(), 4u);
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
        EXPECT_LT(r.rows[k].entropy_after, r.rows[k].entropy_before);
        if (k == 0) continue;
        EXPECT_NEAR(r.rows[k - 1].entropy_after - r.rows[k].entropy_after, std::log(4.0), 0.02);
        EXPECT_NEAR(r.rows[k].entropy_before, r.rows[k - 1].entropy_before, 0.02);
    }
}

TEST(ErasureReport, ErasesAtModerateSampleSizes) {
    const std::vector<Resolution> res{{4, 4}, {8, 8}, {16, 16}};
    const ErasureReport r = erasure_report(BBModel{}, MeasurementSetting::along(axis::z), 100000, res, 3);
    for (const ErasureRow &row : r.rows) EXPECT_LT(row.entropy_after, row.entropy_before);
}

TEST(ErasureReport, TelegraphUnchanged) {
    const std::vector<Resolution> res{{8, 8}, {16, 16}};
    const ErasureReport r =
        erasure_report(TelegraphModel(1.0), MeasurementSetting::along(axis::x), 1000000, res, 4);
    for (const ErasureRow &row : r.rows) EXPECT_NEAR(row.gap(), 0.0, 0.005);
}

TEST(ErasureReport, Errors) {
    const std::vector<Resolution> res{{8, 8}};
    EXPECT_THROW(erasure_report(MWModel{}, MeasurementSetting::along(axis::z), 1000, res, 1), ContractMismatch);
    EXPECT_THROW(erasure_report(BBModel{}, MeasurementSetting::along(axis::z), 0, res, 1), InvalidArgument);
    EXPECT_THROW(erasure_report(BBModel{}, MeasurementSetting::along(axis::z), 10, {}, 1), InvalidArgument);
}

TEST(NoFlow, BBDetectsFlow) {
    const NoFlowReport r = noflow_test(BBModel{}, MeasurementSetting::along(axis::z),
                                       MeasurementSetting::along(axis::x), 100000, 16, 16, 1);
    EXPECT_NEAR(r.tv, 1.0, 0.01);
    EXPECT_TRUE(r.flow_detected());
    EXPECT_LE(r.ci_low, r.tv);
    EXPECT_GE(r.ci_high, r.tv);
}

TEST(NoFlow, SameSettingNoFlow) {
    const NoFlowReport r = noflow_test(BBModel{}, MeasurementSetting::along(axis::z),
                                       MeasurementSetting::along(axis::z), 100000, 16, 16, 2);
    EXPECT_LE(r.tv, r.threshold);
    EXPECT_FALSE(r.flow_detected());
}

TEST(NoFlow, TelegraphNoFlow) {
    const NoFlowReport r = noflow_test(TelegraphModel(0.5), MeasurementSetting::along(axis::z),
                                       MeasurementSetting::along(axis::x), 100000, 16, 16, 3);
    EXPECT_LE(r.tv, r.threshold);
    EXPECT_FALSE(r.flow_detected());
    EXPECT_THROW(noflow_test(MWModel{}, MeasurementSetting::along(axis::z), MeasurementSetting::along(axis::x), 10,
                             4, 4, 1),
                 ContractMismatch);
}

// Telegraph obeys both no-flow and LG <= 2; BB breaks both.
TEST(NoFlow, Dichotomy) {
    const LGScenario s = LGScenario::evenly_spaced(0.0, kPi / 8);
    const auto z = MeasurementSetting::along(axis::z), x = MeasurementSetting::along(axis::x);

    const CorrelationMatrix tel = empirical_correlations(TelegraphModel(1.0), s, 200000, 1);
    EXPECT_LE(lg_value(tel), kClassicalBound + 5 * tel.lg_stderr());
    EXPECT_FALSE(noflow_test(TelegraphModel(1.0), z, x, 50000, 16, 16, 1).flow_detected());

    const CorrelationMatrix bb = empirical_correlations(BBModel{}, s, 200000, 1);
    EXPECT_GT(lg_value(bb), kClassicalBound + 5 * bb.lg_stderr());
    EXPECT_TRUE(noflow_test(BBModel{}, z, x, 50000, 16, 16, 1).flow_detected());
}

TEST(MWNoErasure, Examples) {
    EXPECT_TRUE(mw_no_erasure_check(axis::z, heisenberg_direction(0.7), 100000, 1).passed());
    EXPECT_TRUE(mw_no_erasure_check(axis::x, axis::x, 100000, 2).passed());
    const MWNoErasureReport bad =
        mw_no_erasure_check(axis::z, axis::y, 100000, 3, MWVariant::collapsing_fault);
    EXPECT_FALSE(bad.passed());
    EXPECT_FALSE(bad.immutable());
}

TEST(Invariance, UniformStaysUniform) {
    const InvarianceReport r = invariance_test(1000000, 10, 16, 16, 1);
    EXPECT_EQ(r.durations.size(), 10u);
    EXPECT_LE(r.tv, 0.02);
    EXPECT_TRUE(r.invariant());
    const InvarianceReport none = invariance_test(1000000, 0, 16, 16, 2);
    EXPECT_LE(none.tv, 0.02);
}

TEST(Invariance, CapNegativeControl) {
    const InvarianceReport r = invariance_test(1000000, 10, 16, 16, 3, InitialEnsemble::polar_cap);
    EXPECT_GT(r.tv, 0.1);
    EXPECT_FALSE(r.invariant());
}

}  // namespace
}  // namespace ontolab
