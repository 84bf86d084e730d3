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

#include "ontolab/ontomodels.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "ontolab/errors.hpp"
#include "ontolab/parallel.hpp"

namespace ontolab {

namespace {

bool bit_identical(const BlochVector &u, const BlochVector &v) {
    return std::bit_cast<std::uint64_t>(u.x) == std::bit_cast<std::uint64_t>(v.x) &&
           std::bit_cast<std::uint64_t>(u.y) == std::bit_cast<std::uint64_t>(v.y) &&
           std::bit_cast<std::uint64_t>(u.z) == std::bit_cast<std::uint64_t>(v.z);
}

}  // namespace

BlochVector sample_uniform_sphere(Rng &rng) {
    const double z = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, 2.0 * kPi);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

// --- Beltrametti-Bugajski ---------------------------------------------------

BBOntic bb_prepare_max(Rng &rng) { return {sample_uniform_sphere(rng)}; }

Measured<BBOntic> bb_measure(const BBOntic &state, const BlochVector &n, Rng &rng) {
    require_unit(n, "measurement direction");
    const double p_plus = 0.5 * (1.0 + n.dot(state.lambda));
    const int outcome = rng.bernoulli(p_plus) ? +1 : -1;
    return {outcome, {outcome > 0 ? n : -n}};
}

BBOntic bb_evolve(const BBOntic &state, double dt) {
    if (!std::isfinite(dt)) throw InvalidArgument("evolution time must be finite");
    const double c = std::cos(2.0 * dt);
    const double s = std::sin(2.0 * dt);
    const BlochVector &v = state.lambda;
    return {{v.x, c * v.y - s * v.z, s * v.y + c * v.z}};
}

// --- Telegraph --------------------------------------------------------------

TelegraphModel::TelegraphModel(double gamma) : gamma_(gamma) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw InvalidArgument("telegraph flip rate must be finite and non-negative, got " +
                              std::to_string(gamma));
    }
}

double TelegraphModel::flip_probability(double dt) const {
    return 0.5 * (1.0 - std::exp(-2.0 * gamma_ * std::abs(dt)));
}

TelegraphOntic TelegraphModel::prepare_max(Rng &rng) const { return {rng.bernoulli(0.5) ? +1 : -1}; }

TelegraphOntic TelegraphModel::evolve(const TelegraphOntic &o, double dt, Rng &rng) const {
    if (!std::isfinite(dt)) throw InvalidArgument("evolution time must be finite");
    return {rng.bernoulli(flip_probability(dt)) ? -o.s : o.s};
}

Measured<TelegraphOntic> TelegraphModel::measure(const TelegraphOntic &o, const BlochVector &, Rng &) const {
    return {o.s, o};
}

// --- Branching model --------------------------------------------------------

std::string_view to_string(MWVariant v) {
    switch (v) {
        case MWVariant::standard:
            return "standard";
        case MWVariant::alice_direction_in_bob:
            return "alice_direction_in_bob";
        case MWVariant::collapsing_fault:
            return "collapsing_fault";
    }
    return "unknown";
}

MWOntic mw_sample_ontic(Rng &rng) {
    MWOntic o;
    o.x0 = sample_uniform_sphere(rng);
    o.x1 = sample_uniform_sphere(rng);
    return o;
}

DeviceRecord mw_alice(const BlochVector &a, const MWOntic &o) {
    const int s = sign_of(a.dot(o.x0));
    return {s, s * sign_of(a.dot(o.x1))};
}

DeviceRecord mw_bob(const BlochVector &b, const MWOntic &o, const BlochVector &pairing_direction) {
    const BlochVector plus = o.x0 + o.x1;
    const BlochVector minus = o.x0 - o.x1;
    return {sign_of(b.dot(plus)), sign_of(pairing_direction.dot(plus)) * sign_of(pairing_direction.dot(minus))};
}

DeviceRecord mw_bob(const BlochVector &b, const MWOntic &o) { return mw_bob(b, o, b); }

OutcomePair mw_pair_and_select(const DeviceRecord &alice, const DeviceRecord &bob, Rng &rng) {
    // Outcome seen by Bob's branch that is paired with Alice's A+1 branch.
    const bool crossed = alice.n == -1 && bob.n == -1;
    const int beta_for_a_plus = crossed ? -bob.s : bob.s;
    // The A-1 merged branch carries (-s_A, -beta).
    if (rng.bernoulli(0.5)) {
        return {alice.s, beta_for_a_plus};
    }
    return {-alice.s, -beta_for_a_plus};
}

MWTrial MWModel::run_trial(const BlochVector &a, const BlochVector &b, Rng &rng) const {
    MWTrial trial;
    trial.before = mw_sample_ontic(rng);
    MWOntic o = trial.before;

    o.alice = mw_alice(a, o);
    if (variant_ == MWVariant::collapsing_fault) {
        o.x0 = a * static_cast<double>(o.alice.s);
    }
    o.bob = variant_ == MWVariant::alice_direction_in_bob ? mw_bob(b, o, a) : mw_bob(b, o);

    trial.outcomes = mw_pair_and_select(o.alice, o.bob, rng);
    trial.after = o;
    return trial;
}

double MWJointStatistics::frequency(int alpha, int beta) const {
    if (runs == 0) return 0.0;
    return static_cast<double>(counts[JointDistribution::index(alpha)][JointDistribution::index(beta)]) /
           static_cast<double>(runs);
}

double MWJointStatistics::correlation() const {
    if (runs == 0) return 0.0;
    return (2.0 * static_cast<double>(agreements) - static_cast<double>(runs)) / static_cast<double>(runs);
}

double MWJointStatistics::correlation_stderr() const {
    if (runs == 0) return 1.0;
    const double c = correlation();
    return std::sqrt(std::max(0.0, 1.0 - c * c) / static_cast<double>(runs));
}

MWJointStatistics mw_joint_statistics(const BlochVector &a, const BlochVector &b, std::uint64_t runs,
                                      std::uint64_t seed, MWVariant variant) {
    if (runs == 0) throw InvalidArgument("runs must be >= 1");
    require_unit(a, "first measurement direction");
    require_unit(b, "second measurement direction");
    const MWModel model(variant);
    MWJointStatistics stats = parallel_accumulate(
        runs, MWJointStatistics{},
        [&](MWJointStatistics &acc, std::uint64_t r) {
            Rng rng = run_rng(seed, r);
            const MWTrial t = model.run_trial(a, b, rng);
            ++acc.counts[JointDistribution::index(t.outcomes.alpha)][JointDistribution::index(t.outcomes.beta)];
            ++acc.runs;
            if (t.outcomes.alpha == t.outcomes.beta) ++acc.agreements;
            if (!bit_identical(t.before.x0, t.after.x0) || !bit_identical(t.before.x1, t.after.x1)) {
                ++acc.mutated_runs;
            }
        },
        [](MWJointStatistics &into, const MWJointStatistics &from) {
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) into.counts[i][j] += from.counts[i][j];
            into.runs += from.runs;
            into.agreements += from.agreements;
            into.mutated_runs += from.mutated_runs;
        });
    return stats;
}

std::string_view model_name(const OntologicalModel &model) {
    return std::visit([](const auto &m) { return std::decay_t<decltype(m)>::name; }, model);
}

}  // namespace ontolab
