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
#include <cstring>
#include <random>

#include "ontolab/errors.hpp"
#include "ontolab/ontomodels.hpp"

namespace ontolab {
namespace {

// 0.999 quantile of chi-square with 127 degrees of freedom.
constexpr double kChi2_127_999 = 181.99;

BlochVector random_unit(std::mt19937_64 &g) {
    std::normal_distribution<double> n;
    BlochVector v{n(g), n(g), n(g)};
    return v * (1.0 / v.norm());
}

// 8 z-slabs x 16 sectors, equal area.
int cell128(const BlochVector &v) {
    const int iz = std::min(7, static_cast<int>((v.z + 1.0) * 4.0));
    double phi = std::atan2(v.y, v.x);
    if (phi < 0) phi += 2 * kPi;
    const int ip = std::min(15, static_cast<int>(phi / (2 * kPi) * 16));
    return iz * 16 + ip;
}

template <class Sampler>
double chi_square_128(int n, Sampler &&sample) {
    std::array<int, 128> counts{};
    for (int i = 0; i < n; ++i) ++counts[cell128(sample())];
    const double expected = n / 128.0;
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    return chi2;
}

bool same_bits(const MWOntic &a, const MWOntic &b) {
    return std::memcmp(&a.x0, &b.x0, sizeof a.x0) == 0 && std::memcmp(&a.x1, &b.x1, sizeof a.x1) == 0;
}

TEST(UniformSphere, MeanAndUniformity) {
    Rng rng(1);
    BlochVector sum;
    for (int i = 0; i < 1000000; ++i) {
        const BlochVector v = sample_uniform_sphere(rng);
        ASSERT_NEAR(v.norm(), 1.0, 1e-12);
        sum = sum + v;
    }
    EXPECT_LE((sum * 1e-6).norm(), 0.005);
    Rng rng2(2);
    EXPECT_LT(chi_square_128(200000, [&] { return sample_uniform_sphere(rng2); }), kChi2_127_999);
}

TEST(UniformSphere, Reproducible) {
    Rng a(99), b(99);
    EXPECT_EQ(sample_uniform_sphere(a), sample_uniform_sphere(b));
}

TEST(BBMeasure, Eigenstate) {
    Rng rng(3);
    std::mt19937_64 g(3);
    for (int i = 0; i < 100; ++i) {
        const BlochVector n = random_unit(g);
        const Measured<BBOntic> m = bb_measure({n}, n, rng);
        EXPECT_EQ(m.outcome, +1);
        EXPECT_EQ(m.post.lambda, n);
    }
}

TEST(BBMeasure, Equator) {
    Rng rng(4);
    int plus = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const Measured<BBOntic> m = bb_measure({axis::x}, axis::z, rng);
        EXPECT_TRUE(m.post.lambda == axis::z || m.post.lambda == -axis::z);
        plus += m.outcome > 0;
    }
    EXPECT_NEAR(plus / double(n), 0.5, 3 * 0.5 / std::sqrt(n));
}

TEST(BBMeasure, MaximallyMixedEnsembleSupport) {
    Rng rng(5);
    const BlochVector n = BlochVector{1, 2, -2} * (1.0 / 3.0);
    const int runs = 100000;
    long sum = 0;
    for (int i = 0; i < runs; ++i) {
        const Measured<BBOntic> m = bb_measure(bb_prepare_max(rng), n, rng);
        sum += m.outcome;
        ASSERT_TRUE(m.post.lambda == n || m.post.lambda == -n);
    }
    EXPECT_LE(std::abs(sum / double(runs)), 3.0 / std::sqrt(runs));
}

TEST(BBMeasure, BornEquivalence) {
    std::mt19937_64 g(6);
    const int runs = 100000;
    for (int k = 0; k < 50; ++k) {
        const BlochVector u = random_unit(g), n = random_unit(g);
        const double p = measure(bloch_to_density(u), n, +1).probability;
        Rng rng(1000 + k);
        int plus = 0;
        for (int i = 0; i < runs; ++i) plus += bb_measure({u}, n, rng).outcome > 0;
        const double se = std::sqrt(std::max(p * (1 - p), 1e-12) / runs);
        EXPECT_LE(std::abs(plus / double(runs) - p), 5 * se + 1e-12) << "pair " << k;
    }
}

TEST(BBMeasure, RejectsNonUnit) {
    Rng rng(1);
    EXPECT_THROW(bb_measure({axis::z}, {0, 0, 0.5}, rng), InvalidArgument);
}

TEST(BBEvolve, Examples) {
    const BlochVector v{0.6, 0.0, 0.8};
    EXPECT_EQ(bb_evolve({v}, 0.0).lambda, v);
    const BlochVector r = bb_evolve({axis::z}, kPi / 4).lambda;
    EXPECT_NEAR(r.x, 0.0, 1e-12);
    EXPECT_NEAR(r.y, -1.0, 1e-12);
    EXPECT_NEAR(r.z, 0.0, 1e-12);
}

TEST(BBEvolve, MatchesQuantumEvolution) {
    std::mt19937_64 g(8);
    std::uniform_real_distribution<double> t(-4.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        const BlochVector u = random_unit(g);
        const double dt = t(g);
        const BlochVector q = density_to_bloch(evolve(bloch_to_density(u), dt));
        EXPECT_LE((bb_evolve({u}, dt).lambda - q).norm(), 1e-12);
    }
}

TEST(BBEvolve, PreservesUniformity) {
    Rng rng(9);
    for (double dt : {0.3, 1.1, 2.9}) {
        EXPECT_LT(chi_square_128(200000, [&] { return bb_evolve(bb_prepare_max(rng), dt).lambda; }), kChi2_127_999);
    }
}

TEST(Telegraph, FlipKernel) {
    EXPECT_THROW(TelegraphModel(-0.1), InvalidArgument);
    EXPECT_THROW(TelegraphModel(NAN), InvalidArgument);
    const TelegraphModel m(0.7);
    EXPECT_DOUBLE_EQ(m.flip_probability(0.0), 0.0);
    EXPECT_NEAR(m.flip_probability(1e6), 0.5, 1e-15);
    EXPECT_DOUBLE_EQ(m.flip_probability(-0.4), m.flip_probability(0.4));
    // Chapman-Kolmogorov for the two-state chain.
    for (double a : {0.1, 0.5, 2.0})
        for (double b : {0.2, 1.3}) {
            const double fa = m.flip_probability(a), fb = m.flip_probability(b);
            EXPECT_NEAR(m.flip_probability(a + b), fa * (1 - fb) + fb * (1 - fa), 1e-15);
        }
}

TEST(Telegraph, FrozenAtZeroRate) {
    const TelegraphModel m(0.0);
    Rng rng(10);
    for (int i = 0; i < 1000; ++i) {
        const TelegraphOntic s = m.prepare_max(rng);
        EXPECT_EQ(m.evolve(s, 5.0, rng).s, s.s);
    }
}

TEST(Telegraph, Autocorrelation) {
    const TelegraphModel m(1.0);
    Rng rng(11);
    const int runs = 1000000;
    long sum = 0;
    for (int i = 0; i < runs; ++i) {
        const TelegraphOntic s0 = m.prepare_max(rng);
        const Measured<TelegraphOntic> first = m.measure(s0, axis::z, rng);
        EXPECT_EQ(first.post.s, s0.s);
        sum += first.outcome * m.measure(m.evolve(first.post, 0.5, rng), axis::z, rng).outcome;
    }
    EXPECT_NEAR(sum / double(runs), std::exp(-1.0), 0.005);
}

TEST(Telegraph, EmbedsAtPoles) {
    EXPECT_EQ(TelegraphModel::embed({+1}), axis::z);
    EXPECT_EQ(TelegraphModel::embed({-1}), -axis::z);
}

TEST(MWSample, IndependentUniformPair) {
    Rng rng(12);
    double dot = 0.0;
    const int runs = 1000000;
    for (int i = 0; i < runs; ++i) {
        const MWOntic o = mw_sample_ontic(rng);
        dot += o.x0.dot(o.x1);
    }
    EXPECT_NEAR(dot / runs, 0.0, 0.005);
    Rng rng2(13);
    EXPECT_LT(chi_square_128(200000, [&] { return mw_sample_ontic(rng2).x0; }), kChi2_127_999);
    Rng a(5), b(5);
    const MWOntic oa = mw_sample_ontic(a), ob = mw_sample_ontic(b);
    EXPECT_TRUE(same_bits(oa, ob));
}

TEST(MWAlice, Examples) {
    MWOntic o;
    o.x0 = axis::z;
    o.x1 = -axis::z;
    EXPECT_EQ(mw_alice(axis::z, o).s, +1);
    o.x0 = BlochVector{1, 0, 1} * std::sqrt(0.5);
    o.x1 = BlochVector{-1, 0, 1} * std::sqrt(0.5);
    const DeviceRecord r = mw_alice(axis::x, o);
    EXPECT_EQ(r.s, +1);
    EXPECT_EQ(r.n, -1);
}

TEST(MWBob, Examples) {
    MWOntic o;
    o.x0 = BlochVector{1, 0, 1} * std::sqrt(0.5);
    o.x1 = BlochVector{1, 0, -1} * std::sqrt(0.5);
    const BlochVector plus = (o.x0 + o.x1).normalized();
    EXPECT_EQ(mw_bob(plus, o).s, +1);
    // b = x orthogonal to x- = (0, 0, sqrt2): tie resolved as +1.
    EXPECT_EQ(mw_bob(axis::x, o).n, +1);
}

TEST(MWDevices, BalancedOutcomes) {
    Rng rng(14);
    const BlochVector a = axis::z, b = heisenberg_direction(0.3);
    const int runs = 200000;
    long sa = 0, sb = 0;
    for (int i = 0; i < runs; ++i) {
        const MWOntic o = mw_sample_ontic(rng);
        sa += mw_alice(a, o).s;
        sb += mw_bob(b, o).s;
    }
    EXPECT_LE(std::abs(sa / double(runs)), 3 / std::sqrt(runs));
    EXPECT_LE(std::abs(sb / double(runs)), 3 / std::sqrt(runs));
}

TEST(MWPairAndSelect, BranchTable) {
    Rng rng(15);
    for (int sa : {+1, -1})
        for (int sb : {+1, -1})
            for (int na : {+1, -1})
                for (int nb : {+1, -1}) {
                    const int beta_plus = (na == -1 && nb == -1) ? -sb : sb;
                    bool seen_plus = false, seen_minus = false;
                    for (int i = 0; i < 64; ++i) {
                        const OutcomePair r = mw_pair_and_select({sa, na}, {sb, nb}, rng);
                        if (r.alpha == sa) {
                            EXPECT_EQ(r.beta, beta_plus);
                            seen_plus = true;
                        } else {
                            EXPECT_EQ(r.alpha, -sa);
                            EXPECT_EQ(r.beta, -beta_plus);
                            seen_minus = true;
                        }
                    }
                    EXPECT_TRUE(seen_plus && seen_minus);
                }
}

TEST(MWModel, SameAndOppositeSettings) {
    std::mt19937_64 g(16);
    for (int k = 0; k < 5; ++k) {
        const BlochVector a = random_unit(g);
        const MWJointStatistics same = mw_joint_statistics(a, a, 100000, k);
        EXPECT_EQ(same.correlation(), 1.0);
        EXPECT_EQ(same.agreements, same.runs);
        const MWJointStatistics opposite = mw_joint_statistics(a, -a, 100000, k);
        EXPECT_EQ(opposite.correlation(), -1.0);
    }
}

TEST(MWModel, Immutability) {
    const MWModel m;
    Rng rng(17);
    std::mt19937_64 g(17);
    for (int i = 0; i < 10000; ++i) {
        const MWTrial t = m.run_trial(random_unit(g), random_unit(g), rng);
        ASSERT_TRUE(same_bits(t.before, t.after));
    }
    EXPECT_TRUE(mw_joint_statistics(axis::z, axis::x, 50000, 1).immutable());
    EXPECT_FALSE(mw_joint_statistics(axis::z, axis::x, 50000, 1, MWVariant::collapsing_fault).immutable());
}

TEST(MWModel, QuantumEquivalence) {
    std::mt19937_64 g(18);
    const DensityMatrix mixed = DensityMatrix::maximally_mixed();
    for (int k = 0; k < 50; ++k) {
        const BlochVector a = random_unit(g), b = random_unit(g);
        const std::array<MeasurementSetting, 2> s{MeasurementSetting::along(a), MeasurementSetting::along(b)};
        const JointDistribution q = sequential_joint(mixed, s);
        const MWJointStatistics st = mw_joint_statistics(a, b, 100000, 500 + k);
        for (int al : {+1, -1})
            for (int be : {+1, -1}) {
                const double p = q.at(al, be);
                const double se = std::sqrt(std::max(p * (1 - p), 1e-12) / st.runs);
                EXPECT_LE(std::abs(st.frequency(al, be) - p), 5 * se) << "pair " << k;
            }
    }
}

TEST(MWModel, AliceDirectionVariantDeviates) {
    const BlochVector a = axis::z, b = heisenberg_direction(kPi / 8);
    const MWJointStatistics st = mw_joint_statistics(a, b, 100000, 3, MWVariant::alice_direction_in_bob);
    EXPECT_GT(std::abs(st.correlation() - a.dot(b)), 5 * st.correlation_stderr());
}

// Settings are only consulted after the ontic state is drawn.
TEST(MWModel, PreMeasurementStateIgnoresSettings) {
    const MWModel m;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng r1(seed), r2(seed);
        const MWTrial t1 = m.run_trial(axis::z, axis::x, r1);
        const MWTrial t2 = m.run_trial(axis::y, -axis::z, r2);
        EXPECT_TRUE(same_bits(t1.before, t2.before));
    }
}

TEST(Models, Names) {
    EXPECT_EQ(model_name(BBModel{}), "bb");
    EXPECT_EQ(model_name(TelegraphModel(1.0)), "telegraph");
    EXPECT_EQ(model_name(MWModel{}), "mw");
    static_assert(SingleWorldModel<BBModel>);
    static_assert(SingleWorldModel<TelegraphModel>);
}

}  // namespace
}  // namespace ontolab
