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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ontolab/cli.hpp"
#include "ontolab/errors.hpp"
#include "ontolab/infoanalysis.hpp"
#include "ontolab/lgscen.hpp"
#include "ontolab/version.hpp"

namespace py = pybind11;
using namespace ontolab;

namespace {

using Vec3 = std::array<double, 3>;

BlochVector to_bloch(const Vec3 &v) { return {v[0], v[1], v[2]}; }
Vec3 to_vec3(const BlochVector &v) { return {v.x, v.y, v.z}; }

std::vector<std::vector<Complex>> to_nested(const ComplexMatrix2 &m) {
    return {{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}};
}

OntologicalModel make_model(const std::string &name, double gamma) {
    if (name == "bb") return BBModel{};
    if (name == "telegraph") return TelegraphModel(gamma);
    if (name == "mw") return MWModel{};
    throw py::value_error("unknown model '" + name + "' (expected bb, telegraph or mw)");
}

MWVariant make_variant(const std::string &name) {
    for (MWVariant v : {MWVariant::standard, MWVariant::alice_direction_in_bob, MWVariant::collapsing_fault}) {
        if (to_string(v) == name) return v;
    }
    throw py::value_error("unknown branching-model variant '" + name + "'");
}

py::dict joint_dict(const JointDistribution &j) {
    py::dict d;
    for (int a : {+1, -1})
        for (int b : {+1, -1}) d[py::make_tuple(a, b)] = j.at(a, b);
    return d;
}

py::dict correlations_dict(const CorrelationMatrix &c) {
    py::dict d;
    for (LGPair p : kLGPairs) {
        py::dict e;
        e["value"] = c[p].value;
        e["std_error"] = c[p].std_error;
        e["count"] = c[p].count;
        d[py::str(std::string(to_string(p)))] = e;
    }
    d["lg_value"] = lg_value(c);
    d["lg_stderr"] = c.lg_stderr();
    return d;
}

}  // namespace

PYBIND11_MODULE(_ontolab, m) {
    m.doc() = "Ontological models of a sequentially measured qubit";
    m.attr("__version__") = kVersion;
    m.attr("CLASSICAL_BOUND") = kClassicalBound;
    m.attr("TSIRELSON_BOUND") = kTsirelsonBound;

    py::register_exception<InvalidState>(m, "InvalidState", PyExc_ValueError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<UndefinedConditionalState>(m, "UndefinedConditionalState", PyExc_ValueError);
    py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);
    py::register_exception<ContractMismatch>(m, "ContractMismatch", PyExc_TypeError);

    // qcore
    m.def("bloch_to_density", [](const Vec3 &v) { return to_nested(bloch_to_density(to_bloch(v)).matrix()); },
          py::arg("v"));
    m.def("unitary", [](double dt) { return to_nested(unitary(dt)); }, py::arg("dt"));
    m.def("heisenberg_direction", [](double t) { return to_vec3(heisenberg_direction(t)); }, py::arg("t"));
    m.def(
        "evolve_bloch", [](const Vec3 &v, double dt) { return to_vec3(density_to_bloch(evolve(bloch_to_density(to_bloch(v)), dt))); },
        py::arg("v"), py::arg("dt"));
    m.def(
        "von_neumann_entropy", [](const Vec3 &v) { return von_neumann_entropy(bloch_to_density(to_bloch(v))); },
        py::arg("v"));
    m.def(
        "sequential_joint",
        [](const Vec3 &state, const Vec3 &a, const Vec3 &b) {
            const std::array<MeasurementSetting, 2> s{MeasurementSetting::along(to_bloch(a)),
                                                      MeasurementSetting::along(to_bloch(b))};
            return joint_dict(sequential_joint(bloch_to_density(to_bloch(state)), s));
        },
        py::arg("state"), py::arg("a"), py::arg("b"),
        "Exact joint law {(alpha, beta): p} of two sequential projective measurements.");

    // lgscen
    m.def(
        "lg_value", [](double c13, double c23, double c24, double c14) { return lg_value(CorrelationMatrix::exact(c13, c23, c24, c14)); },
        py::arg("c13"), py::arg("c23"), py::arg("c24"), py::arg("c14"));
    m.def(
        "quantum_correlations",
        [](double t1, double t2, double t3, double t4) { return correlations_dict(quantum_correlations({t1, t2, t3, t4})); },
        py::arg("t1"), py::arg("t2"), py::arg("t3"), py::arg("t4"));
    m.def(
        "scenario_from_chain",
        [](double T1, double T2, double T3, double T4) {
            const LGScenario s = LGScenario::from_chain(T1, T2, T3, T4);
            return std::array<double, 4>{s.t1, s.t2, s.t3, s.t4};
        },
        py::arg("T1"), py::arg("T2"), py::arg("T3"), py::arg("T4"),
        "(t1, t2, t3, t4) labels for chronological LG chain times.");
    m.def(
        "max_violation_over_34",
        [](double t1, double t2) {
            const ViolationScan r = max_violation_over_34(t1, t2);
            py::dict d;
            d["value"] = r.value;
            d["t3"] = r.t3;
            d["t4"] = r.t4;
            d["closed_form"] = r.closed_form;
            return d;
        },
        py::arg("t1"), py::arg("t2"));
    m.def(
        "empirical_correlations",
        [](const std::string &model, std::array<double, 4> t, std::uint64_t runs, std::uint64_t seed, double gamma) {
            return correlations_dict(
                empirical_correlations(make_model(model, gamma), {t[0], t[1], t[2], t[3]}, runs, seed));
        },
        py::arg("model"), py::arg("times"), py::arg("runs"), py::arg("seed"), py::arg("gamma") = 1.0);

    // ontomodels
    m.def(
        "mw_joint_statistics",
        [](const Vec3 &a, const Vec3 &b, std::uint64_t runs, std::uint64_t seed, const std::string &variant) {
            const MWJointStatistics s = mw_joint_statistics(to_bloch(a), to_bloch(b), runs, seed, make_variant(variant));
            py::dict d;
            py::dict freq;
            for (int x : {+1, -1})
                for (int y : {+1, -1}) freq[py::make_tuple(x, y)] = s.frequency(x, y);
            d["frequencies"] = freq;
            d["correlation"] = s.correlation();
            d["std_error"] = s.correlation_stderr();
            d["runs"] = s.runs;
            d["immutable"] = s.immutable();
            return d;
        },
        py::arg("a"), py::arg("b"), py::arg("runs"), py::arg("seed"), py::arg("variant") = "standard");

    // infoanalysis
    m.def(
        "entropy_estimate",
        [](const std::vector<Vec3> &samples, int nz, int nphi) {
            std::vector<BlochVector> v;
            v.reserve(samples.size());
            for (const auto &s : samples) v.push_back(to_bloch(s));
            return entropy_estimate(v, nz, nphi);
        },
        py::arg("samples"), py::arg("nz"), py::arg("nphi"));
    m.def(
        "erasure_report",
        [](const std::string &model, const Vec3 &direction, std::uint64_t runs,
           const std::vector<std::pair<int, int>> &resolutions, std::uint64_t seed, double gamma) {
            std::vector<Resolution> res;
            for (auto [nz, nphi] : resolutions) res.push_back({nz, nphi});
            const ErasureReport r =
                erasure_report(make_model(model, gamma), MeasurementSetting::along(to_bloch(direction)), runs, res, seed);
            py::list rows;
            for (const ErasureRow &row : r.rows) {
                py::dict d;
                d["nz"] = row.resolution.nz;
                d["nphi"] = row.resolution.nphi;
                d["bin_area"] = row.bin_area;
                d["entropy_before"] = row.entropy_before;
                d["entropy_after"] = row.entropy_after;
                d["gap"] = row.gap();
                rows.append(d);
            }
            return rows;
        },
        py::arg("model"), py::arg("direction"), py::arg("runs"), py::arg("resolutions"), py::arg("seed"),
        py::arg("gamma") = 1.0);
    m.def(
        "noflow_test",
        [](const std::string &model, const Vec3 &s1, const Vec3 &s2, std::uint64_t runs, int nz, int nphi,
           std::uint64_t seed, double gamma) {
            const NoFlowReport r = noflow_test(make_model(model, gamma), MeasurementSetting::along(to_bloch(s1)),
                                               MeasurementSetting::along(to_bloch(s2)), runs, nz, nphi, seed);
            py::dict d;
            d["tv"] = r.tv;
            d["ci_low"] = r.ci_low;
            d["ci_high"] = r.ci_high;
            d["threshold"] = r.threshold;
            d["flow_detected"] = r.flow_detected();
            return d;
        },
        py::arg("model"), py::arg("setting1"), py::arg("setting2"), py::arg("runs"), py::arg("nz") = 16,
        py::arg("nphi") = 16, py::arg("seed") = 1, py::arg("gamma") = 1.0);
    m.def(
        "mw_no_erasure_check",
        [](const Vec3 &a, const Vec3 &b, std::uint64_t runs, std::uint64_t seed, const std::string &variant) {
            return mw_no_erasure_check(to_bloch(a), to_bloch(b), runs, seed, make_variant(variant)).passed();
        },
        py::arg("a"), py::arg("b"), py::arg("runs"), py::arg("seed"), py::arg("variant") = "standard");
    m.def(
        "invariance_test",
        [](std::uint64_t runs, int rotations, int nz, int nphi, std::uint64_t seed, const std::string &start) {
            InitialEnsemble e;
            if (start == "uniform") e = InitialEnsemble::uniform;
            else if (start == "polar_cap") e = InitialEnsemble::polar_cap;
            else throw py::value_error("start must be 'uniform' or 'polar_cap'");
            const InvarianceReport r = invariance_test(runs, rotations, nz, nphi, seed, e);
            py::dict d;
            d["tv"] = r.tv;
            d["threshold"] = r.threshold;
            d["invariant"] = r.invariant();
            d["durations"] = r.durations;
            return d;
        },
        py::arg("runs"), py::arg("rotations"), py::arg("nz") = 16, py::arg("nphi") = 16, py::arg("seed") = 1,
        py::arg("start") = "uniform");

    // cli
    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run a CLI command in-process; returns (exit_code, stdout, stderr).");
}
