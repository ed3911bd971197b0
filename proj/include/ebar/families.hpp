#pragma once

// Two families with closed-form values, used to validate the generic pipeline:
// a three-qubit pure family written in the Bell basis of the last two qubits,
// and the isotropic mixture of an n-qubit GHZ projector with white noise.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ebar/aggregate.hpp"

namespace ebar {

// c[0], c[1] pair |0>, |1> of the first qubit with phi+ of the last two;
// c[2], c[3] with phi-; c[4], c[5] with psi+; c[6], c[7] with psi-.
using ThreeQubitCoefficients = std::array<Complex, 8>;

namespace detail {

inline void check_three_qubit_norm(const ThreeQubitCoefficients& c) {
    double norm2 = 0.0;
    for (const Complex& v : c) {
        norm2 += std::norm(v);
    }
    if (!(std::abs(norm2 - 1.0) <= kNormTol)) {
        throw std::invalid_argument("three-qubit family: coefficients are not normalized");
    }
}

}  // namespace detail

// The 8-amplitude computational-basis state, with the Bell states expanded as
// phi+- = (|00> +- |11>)/sqrt(2) and psi+- = (|01> +- |10>)/sqrt(2).
inline PureState build_three_qubit_state(const ThreeQubitCoefficients& c) {
    detail::check_three_qubit_norm(c);
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<Complex> amps(8);
    amps[0] = (c[0] + c[2]) * r;  // |000>
    amps[1] = (c[4] + c[6]) * r;  // |001>
    amps[2] = (c[4] - c[6]) * r;  // |010>
    amps[3] = (c[0] - c[2]) * r;  // |011>
    amps[4] = (c[1] + c[3]) * r;  // |100>
    amps[5] = (c[5] + c[7]) * r;  // |101>
    amps[6] = (c[5] - c[7]) * r;  // |110>
    amps[7] = (c[1] - c[3]) * r;  // |111>
    return PureState(SubsystemShape({2, 2, 2}), std::move(amps));
}

// Closed-form concurrences for the three single-particle cuts, transcribed
// term by term: for each cut, C = sqrt(2 (1 - (M^2 + N^2 + 2 P Q))) with
// Q = conj(P), where M and N are the populations of the two grouped basis
// blocks and P their coherence.
inline MeasureReport three_qubit_closed_form(const ThreeQubitCoefficients& c) {
    detail::check_three_qubit_norm(c);

    const auto a2 = [](const Complex& v) { return std::norm(v); };

    // Cut {0}: first qubit against the Bell pair.
    const double m_a = a2(c[0]) + a2(c[2]) + a2(c[4]) + a2(c[6]);
    const double n_a = a2(c[1]) + a2(c[3]) + a2(c[5]) + a2(c[7]);
    const Complex p_a = c[0] * std::conj(c[1]) + c[2] * std::conj(c[3]) +
                        c[4] * std::conj(c[5]) + c[6] * std::conj(c[7]);

    // Cut {1}: second qubit against the rest.
    const double m_b = 0.5 * (a2(c[0] + c[2]) + a2(c[1] + c[3]) + a2(c[4] + c[6]) +
                              a2(c[5] + c[7]));
    const double n_b = 0.5 * (a2(c[0] - c[2]) + a2(c[1] - c[3]) + a2(c[4] - c[6]) +
                              a2(c[5] - c[7]));
    const Complex p_b = 0.5 * ((c[0] + c[2]) * std::conj(c[4] - c[6]) +
                               (c[4] + c[6]) * std::conj(c[0] - c[2]) +
                               (c[1] + c[3]) * std::conj(c[5] - c[7]) +
                               (c[5] + c[7]) * std::conj(c[1] - c[3]));

    // Cut {2}: third qubit against the rest.
    const double m_c = 0.5 * (a2(c[0] + c[2]) + a2(c[1] + c[3]) + a2(c[4] - c[6]) +
                              a2(c[5] - c[7]));
    const double n_c = 0.5 * (a2(c[0] - c[2]) + a2(c[1] - c[3]) + a2(c[4] + c[6]) +
                              a2(c[5] + c[7]));
    const Complex p_c = 0.5 * ((c[0] + c[2]) * std::conj(c[4] + c[6]) +
                               (c[4] - c[6]) * std::conj(c[0] - c[2]) +
                               (c[1] + c[3]) * std::conj(c[5] + c[7]) +
                               (c[5] - c[7]) * std::conj(c[1] - c[3]));

    const auto concurrence = [](double m, double n, const Complex& p) {
        const Complex q = std::conj(p);
        const double two_pq = 2.0 * (p * q).real();
        return std::sqrt(std::max(0.0, 2.0 * (1.0 - (m * m + n * n + two_pq))));
    };

    const SubsystemShape shape({2, 2, 2});
    MeasureReport report{MeasureKind::concurrence, CutMode::literal, {}, 3, 0.0};
    report.per_cut = {
        CutValue{Bipartition(shape, {0}), MeasureKind::concurrence, concurrence(m_a, n_a, p_a)},
        CutValue{Bipartition(shape, {1}), MeasureKind::concurrence, concurrence(m_b, n_b, p_b)},
        CutValue{Bipartition(shape, {2}), MeasureKind::concurrence, concurrence(m_c, n_c, p_c)},
    };
    report.e_bar = (report.per_cut[0].value + report.per_cut[1].value +
                    report.per_cut[2].value) / 3.0;
    return report;
}

// x |GHZ><GHZ| + (1 - x)/2^n identity, over n qubits.
inline DensityMatrix isotropic_state(std::size_t n, double x) {
    if (n < 2 || n > 8) {
        throw std::invalid_argument("isotropic_state: particle count must be in [2, 8]");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("isotropic_state: mixing weight must be in [0, 1]");
    }
    const PureState ghz = ghz_state(n);
    const std::size_t total = ghz.shape().total();
    ComplexMatrix m(total, total);
    const auto& a = ghz.amplitudes();
    for (std::size_t r = 0; r < total; ++r) {
        for (std::size_t c = 0; c < total; ++c) {
            m(r, c) = x * a[r] * std::conj(a[c]);
        }
        m(r, r) += (1.0 - x) / static_cast<double>(total);
    }
    return DensityMatrix(ghz.shape(), std::move(m));
}

// Averaged negativity of the isotropic family: every cut has the same value
// |(1 - (1 + 2^{n-1}) x)| / 2^n once x exceeds 1/(1 + 2^{n-1}), and 0 below.
inline double isotropic_closed_form(std::size_t n, double x) {
    if (n < 2 || n > 8) {
        throw std::invalid_argument("isotropic_closed_form: particle count must be in [2, 8]");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("isotropic_closed_form: mixing weight must be in [0, 1]");
    }
    const double half_dim = std::ldexp(1.0, static_cast<int>(n - 1));  // 2^{n-1}
    if (!(x > 1.0 / (1.0 + half_dim))) {
        return 0.0;
    }
    return std::abs(1.0 - (1.0 + half_dim) * x) / (2.0 * half_dim);
}

struct SweepRow {
    double x;
    double e_bar_closed;
    double e_bar_generic;
};

// Evenly spaced grid over [x_min, x_max]; the closed form next to the full
// negativity pipeline at every grid point.
inline std::vector<SweepRow> sweep_isotropic(std::size_t n, double x_min, double x_max,
                                             std::size_t steps) {
    if (steps < 2) {
        throw std::invalid_argument("sweep_isotropic: at least 2 steps required");
    }
    if (!(x_min >= 0.0 && x_max <= 1.0 && x_min < x_max)) {
        throw std::invalid_argument("sweep_isotropic: require 0 <= x_min < x_max <= 1");
    }
    std::vector<SweepRow> rows;
    rows.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double x = x_min + (x_max - x_min) * static_cast<double>(i) /
                                     static_cast<double>(steps - 1);
        const double closed = isotropic_closed_form(n, x);
        const double generic =
            free_entanglement(isotropic_state(n, x), MeasureKind::negativity).e_bar;
        rows.push_back(SweepRow{x, closed, generic});
    }
    return rows;
}

}  // namespace ebar
