# Copyright 2026 The Ontolab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import math

import pytest

import ontolab


def test_version_and_bounds():
    assert ontolab.__version__ == "0.1.0"
    assert ontolab.CLASSICAL_BOUND == 2.0
    assert ontolab.TSIRELSON_BOUND == pytest.approx(2 * math.sqrt(2), abs=1e-15)


def test_qcore_roundtrip():
    rho = ontolab.bloch_to_density([1.0, 0.0, 0.0])
    assert all(abs(x - 0.5) < 1e-12 for row in rho for x in row)
    assert ontolab.evolve_bloch([0, 0, 1], math.pi / 4) == pytest.approx([0, -1, 0], abs=1e-12)
    assert ontolab.von_neumann_entropy([0, 0, 0]) == pytest.approx(math.log(2))
    u = ontolab.unitary(math.pi / 2)
    assert u[0][1] == pytest.approx(-1j)


def test_sequential_joint_correlation():
    a = ontolab.heisenberg_direction(0.0)
    b = ontolab.heisenberg_direction(math.pi / 8)
    joint = ontolab.sequential_joint([0, 0, 0], a, b)
    e = sum(x * y * p for (x, y), p in joint.items())
    assert e == pytest.approx(math.sqrt(0.5), abs=1e-12)


def test_lg_quantum_and_scan():
    c = ontolab.quantum_correlations(0.0, 0.0, 0.0, 0.0)
    assert c["lg_value"] == pytest.approx(2.0)
    r = ontolab.max_violation_over_34(0.0, math.pi / 4)
    assert r["value"] == pytest.approx(2 * math.sqrt(2), abs=1e-9)
    assert ontolab.lg_value(1, 1, 1, -1) == 4.0


def test_empirical_models():
    times = ontolab.scenario_from_chain(0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8)
    assert times == pytest.approx([0.0, math.pi / 4, 9 * math.pi / 8, 11 * math.pi / 8])
    bb = ontolab.empirical_correlations("bb", times, 200000, 1)
    assert bb["lg_value"] > 2.0 + 5 * bb["lg_stderr"]
    tel = ontolab.empirical_correlations("telegraph", [0.0, 0.3, 0.5, 0.9], 200000, 1, gamma=0.5)
    assert tel["lg_value"] <= 2.0 + 5 * tel["lg_stderr"]
    with pytest.raises(ValueError):
        ontolab.empirical_correlations("nope", [0, 0, 0, 0], 10, 1)


def test_mw_statistics():
    s = ontolab.mw_joint_statistics([0, 0, 1], [0, 0, 1], 20000, 3)
    assert s["correlation"] == 1.0
    assert s["immutable"]
    assert ontolab.mw_no_erasure_check([0, 0, 1], [1, 0, 0], 20000, 3)
    assert not ontolab.mw_no_erasure_check([0, 0, 1], [1, 0, 0], 20000, 3, variant="collapsing_fault")


def test_information_analysis():
    rows = ontolab.erasure_report("bb", [0, 0, 1], 100000, [(8, 8), (16, 16)], 1)
    assert [r["nz"] for r in rows] == [8, 16]
    assert all(r["gap"] > 0 for r in rows)
    with pytest.raises(TypeError):
        ontolab.erasure_report("mw", [0, 0, 1], 1000, [(8, 8)], 1)
    nf = ontolab.noflow_test("bb", [0, 0, 1], [1, 0, 0], 20000)
    assert nf["flow_detected"]
    inv = ontolab.invariance_test(100000, 3)
    assert inv["invariant"] and len(inv["durations"]) == 3
    assert ontolab.entropy_estimate([[0, 0, 1]] * 10, 4, 4) == pytest.approx(math.log(4 * math.pi / 16))


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        ontolab.bloch_to_density([0, 0, 2])
    with pytest.raises(ValueError):
        ontolab.entropy_estimate([], 4, 4)


def test_run_cli():
    code, out, err = ontolab.run_cli(["lg", "--times", "0,pi/8,pi/4,3pi/8"])
    assert code == 0, err
    assert "lg_value,2.82842712475," in out
    code, out, err = ontolab.run_cli(["lg", "--runs", "0"])
    assert code == 2
