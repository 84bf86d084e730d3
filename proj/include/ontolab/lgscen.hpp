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

// Four-time Leggett-Garg scenario: sigma_z is measured first at t1 or t2 and then at
// t3 or t4, and the CHSH-form combination C13 + C23 + C24 - C14 is bounded by 2 for any
// macrorealist account.

#ifndef ONTOLAB_LGSCEN_HPP
#define ONTOLAB_LGSCEN_HPP

#include <array>
#include <cstdint>
#include <string_view>

#include "ontolab/ontomodels.hpp"

namespace ontolab {

inline constexpr double kClassicalBound = 2.0;
inline const double kTsirelsonBound = 2.0 * std::sqrt(2.0);

struct LGScenario {
    double t1 = 0.0;
    double t2 = 0.0;
    double t3 = 0.0;
    double t4 = 0.0;

    /// Scenario from four chronological times T1 <= T2 <= T3 <= T4 of the usual LG chain,
    /// whose consecutive pairs and end points are correlated. The chain visits the labels in
    /// the order t1, t3, t2, t4; t3 and t4 are then advanced by the smallest common whole
    /// number of periods pi that puts them after t1 and t2. Quantum correlations and the
    /// pure-state dynamics are pi-periodic, so this changes none of their statistics.
    /// Throws InvalidArgument if the times are not chronological or not finite.
    static LGScenario from_chain(double T1, double T2, double T3, double T4);

    /// from_chain(t1, t1 + spacing, t1 + 2 spacing, t1 + 3 spacing).
    static LGScenario evenly_spaced(double t1, double spacing);

    /// Throws InvalidArgument unless all times are finite and t3, t4 >= max(t1, t2).
    void validate() const;
};

/// The four measured pairs, in the order the LG expression lists them.
enum class LGPair { p13 = 0, p23 = 1, p24 = 2, p14 = 3 };
inline constexpr std::array<LGPair, 4> kLGPairs{LGPair::p13, LGPair::p23, LGPair::p24, LGPair::p14};

std::string_view to_string(LGPair pair);

/// (first time, second time) of a pair in scenario `s`.
std::array<double, 2> pair_times(const LGScenario &s, LGPair pair);

struct Correlator {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t count = 0;
};

struct CorrelationMatrix {
    std::array<Correlator, 4> entries{};

    Correlator &operator[](LGPair p) { return entries[static_cast<int>(p)]; }
    const Correlator &operator[](LGPair p) const { return entries[static_cast<int>(p)]; }

    static CorrelationMatrix exact(double c13, double c23, double c24, double c14);

    /// Standard error of lg_value, entries treated as independent.
    double lg_stderr() const;
};

/// C13 + C23 + C24 - C14.
double lg_value(const CorrelationMatrix &c);

/// Exact correlations C_kl = cos 2(t_k - t_l) for the maximally mixed preparation.
CorrelationMatrix quantum_correlations(const LGScenario &s);

struct ViolationScan {
    double value;
    double t3;
    double t4;
    /// 2 (|cos(t2 - t1)| + |sin(t2 - t1)|)
    double closed_form;
};

/// Maximises the quantum LG value over (t3, t4) for fixed (t1, t2).
///
/// The objective separates in t3 and t4; each gets a 721-point grid over one period followed
/// by golden-section refinement.
/// The returned t3, t4 are shifted by whole periods so they follow t1 and t2. Throws
/// NumericalFailure if the optimum disagrees with the closed form by more than 1e-9.
ViolationScan max_violation_over_34(double t1, double t2);

/// 2 (|cos(t2 - t1)| + |sin(t2 - t1)|)
double max_violation_closed_form(double t1, double t2);

/// Monte Carlo LG experiment: each run draws one of the four pairs uniformly, prepares the
/// maximally mixed state at the ontic level at time 0, evolves to the first time, measures
/// sigma_z, evolves to the second time and measures sigma_z again. The branching model
/// measures the Heisenberg directions of the two times instead.
CorrelationMatrix empirical_correlations(const OntologicalModel &model, const LGScenario &s,
                                         std::uint64_t runs, std::uint64_t seed);

}  // namespace ontolab

#endif
