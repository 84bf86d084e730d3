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

#include "ontolab/qcore.hpp"

#include <algorithm>
#include <string>

#include "ontolab/errors.hpp"

namespace ontolab {

namespace {

constexpr double kZeroProbability = 1e-15;

std::string fmt_vec(const BlochVector &v) {
    return "(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ", " + std::to_string(v.z) + ")";
}

}  // namespace

BlochVector BlochVector::normalized() const {
    const double n = norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw InvalidArgument("cannot normalize zero or non-finite vector " + fmt_vec(*this));
    }
    return *this * (1.0 / n);
}

void require_unit(const BlochVector &n, const char *what) {
    if (!(std::abs(n.norm() - 1.0) <= kExactTol)) {
        throw InvalidArgument(std::string(what) + " must be a unit vector, got " + fmt_vec(n));
    }
}

ComplexMatrix2 ComplexMatrix2::operator+(const ComplexMatrix2 &o) const {
    ComplexMatrix2 r;
    for (int k = 0; k < 4; ++k) r.m_[k] = m_[k] + o.m_[k];
    return r;
}

ComplexMatrix2 ComplexMatrix2::operator-(const ComplexMatrix2 &o) const {
    ComplexMatrix2 r;
    for (int k = 0; k < 4; ++k) r.m_[k] = m_[k] - o.m_[k];
    return r;
}

ComplexMatrix2 ComplexMatrix2::operator*(const ComplexMatrix2 &o) const {
    const auto &a = m_;
    const auto &b = o.m_;
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

ComplexMatrix2 ComplexMatrix2::operator*(Complex s) const {
    return {m_[0] * s, m_[1] * s, m_[2] * s, m_[3] * s};
}

ComplexMatrix2 ComplexMatrix2::adjoint() const {
    return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
}

double ComplexMatrix2::max_abs_diff(const ComplexMatrix2 &o) const {
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(m_[k] - o.m_[k]));
    return worst;
}

const ComplexMatrix2 &hamiltonian() { return pauli::X; }

ComplexMatrix2 pauli_dot(const BlochVector &n) {
    return {n.z, Complex(n.x, -n.y), Complex(n.x, n.y), -n.z};
}

ComplexMatrix2 projector(const BlochVector &n, int outcome) {
    if (outcome != 1 && outcome != -1) throw InvalidArgument("outcome must be +1 or -1");
    const double s = outcome > 0 ? 0.5 : -0.5;
    return ComplexMatrix2{0.5 + s * n.z, s * Complex(n.x, -n.y), s * Complex(n.x, n.y), 0.5 - s * n.z};
}

DensityMatrix::DensityMatrix(const ComplexMatrix2 &m) : m_(m) {
    if (m.max_abs_diff(m.adjoint()) > kExactTol) {
        throw InvalidState("density matrix is not Hermitian");
    }
    if (std::abs(m.trace() - 1.0) > kExactTol) {
        throw InvalidState("density matrix trace " + std::to_string(m.trace().real()) + " != 1");
    }
    if (eigenvalues()[0] < -kExactTol) {
        throw InvalidState("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(pauli::I * 0.5); }

std::array<double, 2> DensityMatrix::eigenvalues() const {
    const double a = m_(0, 0).real();
    const double d = m_(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double half_gap = std::hypot(0.5 * (a - d), std::abs(m_(0, 1)));
    return {mean - half_gap, mean + half_gap};
}

double von_neumann_entropy(const DensityMatrix &rho) {
    double h = 0.0;
    for (double lambda : rho.eigenvalues()) {
        if (lambda > 0.0) h -= lambda * std::log(lambda);
    }
    return h;
}

BlochVector heisenberg_direction(double t) {
    if (!std::isfinite(t)) throw InvalidArgument("measurement time must be finite");
    return {0.0, std::sin(2.0 * t), std::cos(2.0 * t)};
}

MeasurementSetting MeasurementSetting::along(const BlochVector &direction) {
    require_unit(direction, "measurement direction");
    return MeasurementSetting(direction);
}

MeasurementSetting MeasurementSetting::at_time(double t) {
    if (!std::isfinite(t)) throw InvalidArgument("measurement time must be finite");
    return MeasurementSetting(t);
}

BlochVector MeasurementSetting::direction() const {
    if (is_time()) return heisenberg_direction(time());
    return std::get<BlochVector>(value_);
}

DensityMatrix bloch_to_density(const BlochVector &v) {
    if (!(v.norm() <= 1.0 + kExactTol)) {
        throw InvalidState("Bloch vector " + fmt_vec(v) + " lies outside the unit ball");
    }
    return DensityMatrix((pauli::I + pauli_dot(v)) * 0.5);
}

BlochVector density_to_bloch(const DensityMatrix &rho) {
    const ComplexMatrix2 &m = rho.matrix();
    return {(m * pauli::X).trace().real(), (m * pauli::Y).trace().real(), (m * pauli::Z).trace().real()};
}

ComplexMatrix2 unitary(double dt) {
    if (!std::isfinite(dt)) throw InvalidArgument("evolution time must be finite");
    return pauli::I * std::cos(dt) - hamiltonian() * Complex(0.0, std::sin(dt));
}

DensityMatrix evolve(const DensityMatrix &rho, double dt) {
    const ComplexMatrix2 u = unitary(dt);
    return DensityMatrix(u * rho.matrix() * u.adjoint());
}

double outcome_probability(const DensityMatrix &rho, const BlochVector &n, int outcome) {
    require_unit(n, "measurement direction");
    return (projector(n, outcome) * rho.matrix()).trace().real();
}

MeasureResult measure(const DensityMatrix &rho, const BlochVector &n, int outcome) {
    const double p = outcome_probability(rho, n, outcome);
    if (p < kZeroProbability) {
        throw UndefinedConditionalState("outcome " + std::to_string(outcome) + " along " + fmt_vec(n) +
                                        " has zero probability");
    }
    return {p, bloch_to_density(n * static_cast<double>(outcome > 0 ? 1 : -1))};
}

DensityMatrix dephase(const DensityMatrix &rho, const BlochVector &n) {
    require_unit(n, "measurement direction");
    const ComplexMatrix2 plus = projector(n, +1);
    const ComplexMatrix2 minus = projector(n, -1);
    return DensityMatrix(plus * rho.matrix() * plus + minus * rho.matrix() * minus);
}

double JointDistribution::total() const { return p[0][0] + p[0][1] + p[1][0] + p[1][1]; }

double JointDistribution::correlation() const { return p[0][0] - p[0][1] - p[1][0] + p[1][1]; }

double JointDistribution::marginal_first(int alpha) const {
    return p[index(alpha)][0] + p[index(alpha)][1];
}

double JointDistribution::marginal_second(int beta) const {
    return p[0][index(beta)] + p[1][index(beta)];
}

JointDistribution sequential_joint(const DensityMatrix &rho0,
                                   std::span<const MeasurementSetting, 2> settings) {
    const BlochVector first = settings[0].direction();
    const BlochVector second = settings[1].direction();
    require_unit(first, "first measurement direction");
    require_unit(second, "second measurement direction");
    JointDistribution out;
    for (int alpha : {+1, -1}) {
        const ComplexMatrix2 pa = projector(first, alpha);
        const ComplexMatrix2 collapsed = pa * rho0.matrix() * pa;
        for (int beta : {+1, -1}) {
            out.p[JointDistribution::index(alpha)][JointDistribution::index(beta)] =
                (projector(second, beta) * collapsed).trace().real();
        }
    }
    return out;
}

}  // namespace ontolab
