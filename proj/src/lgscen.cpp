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

#include "ontolab/lgscen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <type_traits>

#include "ontolab/errors.hpp"
#include "ontolab/parallel.hpp"

namespace ontolab {

namespace {

constexpr int kGridPoints = 721;
constexpr double kGoldenTol = 1e-10;
constexpr double kScanTol = 1e-9;

/// Maximiser of `f` on [lo, hi], assuming unimodality there.
double golden_section_max(const std::function<double(double)> &f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > kGoldenTol) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

double wrap_after(double t, double base) {
    double shifted = std::fmod(t - base, kPi);
    if (shifted < 0.0) shifted += kPi;
    return base + shifted;
}

struct PairTally {
    std::array<std::uint64_t, 4> count{};
    std::array<std::int64_t, 4> product_sum{};
};

template <SingleWorldModel M>
std::array<int, 2> run_single_world(const M &model, double first, double second, Rng &rng) {
    auto lambda = model.prepare_max(rng);
    lambda = model.evolve(lambda, first, rng);
    const auto m1 = model.measure(lambda, axis::z, rng);
    lambda = model.evolve(m1.post, second - first, rng);
    const auto m2 = model.measure(lambda, axis::z, rng);
    return {m1.outcome, m2.outcome};
}

}  // namespace

LGScenario LGScenario::from_chain(double T1, double T2, double T3, double T4) {
    for (double t : {T1, T2, T3, T4}) {
        if (!std::isfinite(t)) throw InvalidArgument("scenario times must be finite");
    }
    if (!(T1 <= T2 && T2 <= T3 && T3 <= T4)) {
        throw InvalidArgument("chain times must be chronological (T1 <= T2 <= T3 <= T4)");
    }
    const double periods = std::max(0.0, std::ceil((T3 - T2) / kPi));
    LGScenario s{T1, T3, T2 + periods * kPi, T4 + periods * kPi};
    // Guard against ceil() landing one ulp short.
    if (s.t3 < s.t2) {
        s.t3 += kPi;
        s.t4 += kPi;
    }
    return s;
}

LGScenario LGScenario::evenly_spaced(double t1, double spacing) {
    return from_chain(t1, t1 + spacing, t1 + 2.0 * spacing, t1 + 3.0 * spacing);
}

void LGScenario::validate() const {
    for (double t : {t1, t2, t3, t4}) {
        if (!std::isfinite(t)) throw InvalidArgument("scenario times must be finite");
    }
    const double first = std::max(t1, t2);
    if (t3 < first || t4 < first) {
        std::ostringstream msg;
        msg << "second measurement times (t3=" << t3 << ", t4=" << t4
            << ") must not precede the first measurement times (t1=" << t1 << ", t2=" << t2 << ")";
        throw InvalidArgument(msg.str());
    }
}

std::string_view to_string(LGPair pair) {
    switch (pair) {
        case LGPair::p13:
            return "C13";
        case LGPair::p23:
            return "C23";
        case LGPair::p24:
            return "C24";
        case LGPair::p14:
            return "C14";
    }
    return "?";
}

std::array<double, 2> pair_times(const LGScenario &s, LGPair pair) {
    switch (pair) {
        case LGPair::p13:
            return {s.t1, s.t3};
        case LGPair::p23:
            return {s.t2, s.t3};
        case LGPair::p24:
            return {s.t2, s.t4};
        case LGPair::p14:
            return {s.t1, s.t4};
    }
    return {0.0, 0.0};
}

CorrelationMatrix CorrelationMatrix::exact(double c13, double c23, double c24, double c14) {
    CorrelationMatrix c;
    c[LGPair::p13].value = c13;
    c[LGPair::p23].value = c23;
    c[LGPair::p24].value = c24;
    c[LGPair::p14].value = c14;
    return c;
}

double CorrelationMatrix::lg_stderr() const {
    double var = 0.0;
    for (const Correlator &e : entries) var += e.std_error * e.std_error;
    return std::sqrt(var);
}

double lg_value(const CorrelationMatrix &c) {
    return c[LGPair::p13].value + c[LGPair::p23].value + c[LGPair::p24].value - c[LGPair::p14].value;
}

CorrelationMatrix quantum_correlations(const LGScenario &s) {
    s.validate();
    CorrelationMatrix c;
    for (LGPair p : kLGPairs) {
        const auto [tk, tl] = pair_times(s, p);
        c[p].value = std::cos(2.0 * (tk - tl));
    }
    return c;
}

double max_violation_closed_form(double t1, double t2) {
    const double delta = t2 - t1;
    return 2.0 * (std::abs(std::cos(delta)) + std::abs(std::sin(delta)));
}

ViolationScan max_violation_over_34(double t1, double t2) {
    if (!std::isfinite(t1) || !std::isfinite(t2)) throw InvalidArgument("scan times must be finite");
    if (t2 < t1) throw InvalidArgument("scan requires t2 >= t1");

    // The LG value splits as g3(t3) + g4(t4), so each time is maximised on its own.
    const double base = std::max(t1, t2);
    auto g3 = [&](double t) { return std::cos(2.0 * (t1 - t)) + std::cos(2.0 * (t2 - t)); };
    auto g4 = [&](double t) { return std::cos(2.0 * (t2 - t)) - std::cos(2.0 * (t1 - t)); };

    const double step = kPi / (kGridPoints - 1);
    auto maximise = [&](auto &&g) {
        double best = -std::numeric_limits<double>::infinity();
        double arg = base;
        for (int i = 0; i < kGridPoints; ++i) {
            const double t = base + i * step;
            const double v = g(t);
            if (v > best) {
                best = v;
                arg = t;
            }
        }
        return golden_section_max(g, arg - step, arg + step);
    };
    const double best3 = maximise(g3);
    const double best4 = maximise(g4);

    ViolationScan out;
    out.t3 = wrap_after(best3, base);
    out.t4 = wrap_after(best4, base);
    out.value = lg_value(quantum_correlations({t1, t2, out.t3, out.t4}));
    out.closed_form = max_violation_closed_form(t1, t2);
    if (!(std::abs(out.value - out.closed_form) <= kScanTol)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "LG maximisation over (t3, t4) found " << out.value << " but the closed form gives "
            << out.closed_form << " for t1=" << t1 << ", t2=" << t2;
        throw NumericalFailure(msg.str());
    }
    return out;
}

CorrelationMatrix empirical_correlations(const OntologicalModel &model, const LGScenario &s,
                                         std::uint64_t runs, std::uint64_t seed) {
    s.validate();
    if (runs == 0) throw InvalidArgument("runs must be >= 1");

    auto one_run = [&](Rng &rng, double first, double second) -> std::array<int, 2> {
        return std::visit(
            [&](const auto &m) -> std::array<int, 2> {
                using M = std::decay_t<decltype(m)>;
                if constexpr (SingleWorldModel<M>) {
                    return run_single_world(m, first, second, rng);
                } else {
                    const MWTrial t = m.run_trial(heisenberg_direction(first), heisenberg_direction(second), rng);
                    return {t.outcomes.alpha, t.outcomes.beta};
                }
            },
            model);
    };

    const PairTally tally = parallel_accumulate(
        runs, PairTally{},
        [&](PairTally &acc, std::uint64_t r) {
            Rng rng = run_rng(seed, r);
            const auto pair_index = static_cast<std::size_t>(rng() >> 62);
            const auto [first, second] = pair_times(s, kLGPairs[pair_index]);
            const auto [alpha, beta] = one_run(rng, first, second);
            ++acc.count[pair_index];
            acc.product_sum[pair_index] += alpha * beta;
        },
        [](PairTally &into, const PairTally &from) {
            for (std::size_t k = 0; k < 4; ++k) {
                into.count[k] += from.count[k];
                into.product_sum[k] += from.product_sum[k];
            }
        });

    CorrelationMatrix c;
    for (std::size_t k = 0; k < 4; ++k) {
        Correlator &e = c.entries[k];
        e.count = tally.count[k];
        if (e.count == 0) {
            e.value = 0.0;
            e.std_error = 1.0;
            continue;
        }
        e.value = static_cast<double>(tally.product_sum[k]) / static_cast<double>(e.count);
        e.std_error = std::sqrt(std::max(0.0, 1.0 - e.value * e.value) / static_cast<double>(e.count));
    }
    return c;
}

}  // namespace ontolab
