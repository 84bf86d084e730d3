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

// Exact single-qubit algebra: the reference against which every ontological model is
// checked.
//
// Conventions: |+1> = (1, 0), |-1> = (0, 1); the hopping Hamiltonian
// H = |+1><-1| + |-1><+1| is then sigma_x, and U(dt) = cos(dt) I - i sin(dt) H.
// Entropies are in nats.

#ifndef ONTOLAB_QCORE_HPP
#define ONTOLAB_QCORE_HPP

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <variant>

namespace ontolab {

using Complex = std::complex<double>;

inline constexpr double kExactTol = 1e-12;
inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// BlochVector

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr BlochVector operator+(const BlochVector &o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr BlochVector operator-(const BlochVector &o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr BlochVector operator-() const { return {-x, -y, -z}; }
    constexpr BlochVector operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr double dot(const BlochVector &o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
    BlochVector normalized() const;

    bool operator==(const BlochVector &) const = default;
};

inline constexpr BlochVector operator*(double s, const BlochVector &v) { return v * s; }

namespace axis {
inline constexpr BlochVector x{1, 0, 0};
inline constexpr BlochVector y{0, 1, 0};
inline constexpr BlochVector z{0, 0, 1};
}  // namespace axis

/// Throws InvalidArgument unless |n| = 1 within kExactTol.
void require_unit(const BlochVector &n, const char *what);

// ---------------------------------------------------------------------------
// ComplexMatrix2

/// 2x2 complex matrix, row-major.
class ComplexMatrix2 {
   public:
    constexpr ComplexMatrix2() = default;
    constexpr ComplexMatrix2(Complex a, Complex b, Complex c, Complex d) : m_{a, b, c, d} {}

    static constexpr ComplexMatrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    constexpr Complex operator()(int row, int col) const { return m_[2 * row + col]; }
    constexpr Complex &operator()(int row, int col) { return m_[2 * row + col]; }

    ComplexMatrix2 operator+(const ComplexMatrix2 &o) const;
    ComplexMatrix2 operator-(const ComplexMatrix2 &o) const;
    ComplexMatrix2 operator*(const ComplexMatrix2 &o) const;
    ComplexMatrix2 operator*(Complex s) const;
    ComplexMatrix2 adjoint() const;
    Complex trace() const { return m_[0] + m_[3]; }

    /// Largest absolute entry of (*this - o).
    double max_abs_diff(const ComplexMatrix2 &o) const;

   private:
    std::array<Complex, 4> m_{};
};

inline ComplexMatrix2 operator*(Complex s, const ComplexMatrix2 &m) { return m * s; }

namespace pauli {
inline const ComplexMatrix2 I = ComplexMatrix2::identity();
inline const ComplexMatrix2 X{0.0, 1.0, 1.0, 0.0};
inline const ComplexMatrix2 Y{0.0, Complex(0, -1), Complex(0, 1), 0.0};
inline const ComplexMatrix2 Z{1.0, 0.0, 0.0, -1.0};
}  // namespace pauli

/// The Hamiltonian |+1><-1| + |-1><+1|.
const ComplexMatrix2 &hamiltonian();

/// n . sigma
ComplexMatrix2 pauli_dot(const BlochVector &n);

/// (I + outcome * n.sigma) / 2
ComplexMatrix2 projector(const BlochVector &n, int outcome);

// ---------------------------------------------------------------------------
// DensityMatrix

/// Hermitian, unit-trace, positive semidefinite 2x2 matrix. Validated on construction.
class DensityMatrix {
   public:
    /// Throws InvalidState if `m` is not a density matrix within kExactTol.
    explicit DensityMatrix(const ComplexMatrix2 &m);

    static DensityMatrix maximally_mixed();

    const ComplexMatrix2 &matrix() const { return m_; }

    /// Ascending eigenvalues.
    std::array<double, 2> eigenvalues() const;

   private:
    ComplexMatrix2 m_;
};

double von_neumann_entropy(const DensityMatrix &rho);

// ---------------------------------------------------------------------------
// Measurement settings

/// Direction of the observable sigma_z measured at time t, pulled back to time 0:
/// U(t)^dagger sigma_z U(t) = (0, sin 2t, cos 2t) . sigma.
BlochVector heisenberg_direction(double t);

/// A projective qubit measurement, given either as a Bloch direction or as the time at
/// which sigma_z is measured.
class MeasurementSetting {
   public:
    static MeasurementSetting along(const BlochVector &direction);
    static MeasurementSetting at_time(double t);

    BlochVector direction() const;
    bool is_time() const { return std::holds_alternative<double>(value_); }
    double time() const { return std::get<double>(value_); }

   private:
    explicit MeasurementSetting(std::variant<BlochVector, double> v) : value_(v) {}
    std::variant<BlochVector, double> value_;
};

// ---------------------------------------------------------------------------
// Operations

DensityMatrix bloch_to_density(const BlochVector &v);
BlochVector density_to_bloch(const DensityMatrix &rho);

ComplexMatrix2 unitary(double dt);
DensityMatrix evolve(const DensityMatrix &rho, double dt);

/// Born probability of `outcome` (+1 or -1) along unit direction `n`.
double outcome_probability(const DensityMatrix &rho, const BlochVector &n, int outcome);

struct MeasureResult {
    double probability;
    DensityMatrix post;
};

/// Selective projective measurement. Throws UndefinedConditionalState when the outcome
/// has probability below 1e-15.
MeasureResult measure(const DensityMatrix &rho, const BlochVector &n, int outcome);

/// Non-selective measurement: sum over outcomes of P rho P.
DensityMatrix dephase(const DensityMatrix &rho, const BlochVector &n);

/// Joint law of two +-1 outcomes. Index 0 is outcome +1, index 1 is -1.
struct JointDistribution {
    std::array<std::array<double, 2>, 2> p{};

    static constexpr int index(int outcome) { return outcome > 0 ? 0 : 1; }
    double at(int alpha, int beta) const { return p[index(alpha)][index(beta)]; }
    double total() const;
    double correlation() const;
    double marginal_first(int alpha) const;
    double marginal_second(int beta) const;
};

/// Exact statistics of two sequential projective measurements:
/// P(alpha, beta) = tr(P_beta P_alpha rho0 P_alpha).
JointDistribution sequential_joint(const DensityMatrix &rho0,
                                   std::span<const MeasurementSetting, 2> settings);

}  // namespace ontolab

#endif
