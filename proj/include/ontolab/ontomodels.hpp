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

// Ontological (hidden-variable) models of a qubit measured at two times.
//
// A single-world model maps an ontic state through preparation, evolution and
// measurement:
//
//   prepare_max(rng)        -> lambda   distribution representing the maximally mixed state
//   evolve(lambda, dt, rng) -> lambda   measure-preserving on ensembles
//   measure(lambda, n, rng) -> (outcome, lambda_out)
//
// None of these sees a setting that is chosen later, so the pre-measurement ensemble
// cannot depend on future choices.
//
// The branching model does not fit that contract: its outcomes are only fixed when the
// two parties' branches are paired, after both measurements. It exposes a trial runner
// instead.

#ifndef ONTOLAB_ONTOMODELS_HPP
#define ONTOLAB_ONTOMODELS_HPP

#include <array>
#include <concepts>
#include <cstdint>
#include <string_view>
#include <variant>

#include "ontolab/qcore.hpp"
#include "ontolab/rng.hpp"

namespace ontolab {

/// sign(0) := +1.
constexpr int sign_of(double v) { return v >= 0.0 ? +1 : -1; }

/// Uniform point on the unit sphere (z uniform in [-1, 1], azimuth uniform in [0, 2pi)).
BlochVector sample_uniform_sphere(Rng &rng);

template <class Ontic>
struct Measured {
    int outcome;
    Ontic post;
};

template <class M>
concept SingleWorldModel = requires(const M &m, const typename M::Ontic &o, const BlochVector &n,
                                    double dt, Rng &rng) {
    typename M::Ontic;
    { m.prepare_max(rng) } -> std::same_as<typename M::Ontic>;
    { m.evolve(o, dt, rng) } -> std::same_as<typename M::Ontic>;
    { m.measure(o, n, rng) } -> std::same_as<Measured<typename M::Ontic>>;
    // Position of the ontic state on S^2, for the shared histogram tooling.
    { M::embed(o) } -> std::same_as<BlochVector>;
};

// ---------------------------------------------------------------------------
// Beltrametti-Bugajski: the ontic state is the pure quantum state itself.

struct BBOntic {
    BlochVector lambda;
};

BBOntic bb_prepare_max(Rng &rng);

/// Born rule on the pure-state ontology; the state collapses onto outcome * n.
Measured<BBOntic> bb_measure(const BBOntic &state, const BlochVector &n, Rng &rng);

/// Rotation about x by 2 dt, the Bloch image of U(dt).
BBOntic bb_evolve(const BBOntic &state, double dt);

struct BBModel {
    using Ontic = BBOntic;
    static constexpr std::string_view name = "bb";

    Ontic prepare_max(Rng &rng) const { return bb_prepare_max(rng); }
    Ontic evolve(const Ontic &o, double dt, Rng &) const { return bb_evolve(o, dt); }
    Measured<Ontic> measure(const Ontic &o, const BlochVector &n, Rng &rng) const {
        return bb_measure(o, n, rng);
    }
    static BlochVector embed(const Ontic &o) { return o.lambda; }
};

// ---------------------------------------------------------------------------
// Telegraph: a macrorealist control. The measured value is always definite, the
// measurement reveals it without disturbance, and between measurements it flips as a
// symmetric two-state Markov process with rate gamma.

struct TelegraphOntic {
    int s = +1;
};

class TelegraphModel {
   public:
    using Ontic = TelegraphOntic;
    static constexpr std::string_view name = "telegraph";

    /// Throws InvalidArgument for negative or non-finite gamma.
    explicit TelegraphModel(double gamma);

    double gamma() const { return gamma_; }

    /// Probability that s has flipped an odd number of times after dt: (1 - e^{-2 gamma dt}) / 2.
    double flip_probability(double dt) const;

    Ontic prepare_max(Rng &rng) const;
    Ontic evolve(const Ontic &o, double dt, Rng &rng) const;
    /// Returns s; the direction is irrelevant to a macrorealist pointer.
    Measured<Ontic> measure(const Ontic &o, const BlochVector &n, Rng &rng) const;
    /// Poles: s = +1 -> +z, s = -1 -> -z.
    static BlochVector embed(const Ontic &o) { return {0.0, 0.0, static_cast<double>(o.s)}; }

   private:
    double gamma_;
};

// ---------------------------------------------------------------------------
// Branching (many-worlds) model.
//
// The system carries two unit vectors x0, x1 that no measurement touches. Each device
// splits into two branches and records an outcome bit s and a pairing bit n; branches are
// paired when the parties meet, and one merged branch is taken at random.

struct DeviceRecord {
    int s = +1;
    int n = +1;
};

struct MWOntic {
    BlochVector x0;
    BlochVector x1;
    DeviceRecord alice;
    DeviceRecord bob;
};

/// How the second device computes its pairing bit.
enum class MWVariant {
    /// n_B = sign(b.x+) sign(b.x-).
    standard,
    /// n_B = sign(a.x+) sign(a.x-), the literal reading with the first party's direction.
    alice_direction_in_bob,
    /// Fault injection: the first measurement overwrites x0 with sign(a.x0) a.
    collapsing_fault,
};

std::string_view to_string(MWVariant v);

MWOntic mw_sample_ontic(Rng &rng);

/// s_A = sign(a.x0) in branch A+1 (branch A-1 sees -s_A); n_A = sign(a.x0) sign(a.x1).
DeviceRecord mw_alice(const BlochVector &a, const MWOntic &o);

/// s_B = sign(b.x+) in branch B+1; n_B = sign(d.x+) sign(d.x-) with d = `pairing_direction`
/// (b for the standard model).
DeviceRecord mw_bob(const BlochVector &b, const MWOntic &o, const BlochVector &pairing_direction);
DeviceRecord mw_bob(const BlochVector &b, const MWOntic &o);

struct OutcomePair {
    int alpha;
    int beta;
};

/// Pairs A+-1 with B+-1 unless (n_A, n_B) = (-1, -1), in which case A+-1 pairs with B-+1;
/// then keeps one of the two merged branches with probability 1/2.
OutcomePair mw_pair_and_select(const DeviceRecord &alice, const DeviceRecord &bob, Rng &rng);

struct MWTrial {
    MWOntic before;
    MWOntic after;
    OutcomePair outcomes;
};

class MWModel {
   public:
    static constexpr std::string_view name = "mw";

    explicit MWModel(MWVariant variant = MWVariant::standard) : variant_(variant) {}
    MWVariant variant() const { return variant_; }

    /// One two-party experiment on a fresh ontic sample.
    MWTrial run_trial(const BlochVector &a, const BlochVector &b, Rng &rng) const;

   private:
    MWVariant variant_;
};

/// Monte Carlo joint statistics of the branching model.
struct MWJointStatistics {
    std::array<std::array<std::uint64_t, 2>, 2> counts{};
    std::uint64_t runs = 0;
    /// Runs in which x0 or x1 changed in any bit.
    std::uint64_t mutated_runs = 0;
    /// Runs with alpha * beta == +1.
    std::uint64_t agreements = 0;

    double frequency(int alpha, int beta) const;
    double correlation() const;
    double correlation_stderr() const;
    bool immutable() const { return mutated_runs == 0; }
};

MWJointStatistics mw_joint_statistics(const BlochVector &a, const BlochVector &b, std::uint64_t runs,
                                      std::uint64_t seed, MWVariant variant = MWVariant::standard);

// ---------------------------------------------------------------------------

using OntologicalModel = std::variant<BBModel, TelegraphModel, MWModel>;

std::string_view model_name(const OntologicalModel &model);

}  // namespace ontolab

#endif
