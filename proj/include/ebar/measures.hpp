#pragma once

// Bipartite entanglement measures across one cut: partial trace, pure-state
// concurrence, von Neumann entropy (base 2), partial transpose and negativity.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "ebar/regroup.hpp"

namespace ebar {

enum class MeasureKind { concurrence, entropy, negativity };

inline const char* to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::concurrence: return "concurrence";
        case MeasureKind::entropy: return "entropy";
        case MeasureKind::negativity: return "negativity";
    }
    return "?";
}

inline std::optional<MeasureKind> measure_kind_from_string(std::string_view name) {
    if (name == "concurrence") return MeasureKind::concurrence;
    if (name == "entropy") return MeasureKind::entropy;
    if (name == "negativity") return MeasureKind::negativity;
    return std::nullopt;
}

enum class Side { one, two };

// One measured cut. Values are clamped to 0 when rounding pushes them within
// 1e-12 below zero, so classification thresholds behave deterministically.
struct CutValue {
    Bipartition cut;
    MeasureKind kind;
    double value;  // entropy in bits; concurrence and negativity dimensionless
};

namespace detail {

inline double clamp_rounding(double v) { return v < 0.0 ? 0.0 : v; }

inline void check_grouped(const ComplexMatrix& m, std::size_t n1, std::size_t n2,
                          const char* where) {
    if (!m.square() || m.rows() != n1 * n2) {
        throw std::invalid_argument(std::string(where) + ": matrix size does not match the " +
                                    std::to_string(n1) + "x" + std::to_string(n2) + " grouping");
    }
}

inline void check_cut(const SubsystemShape& shape, const Bipartition& cut, const char* where) {
    if (!(shape == cut.shape())) {
        throw std::invalid_argument(std::string(where) + ": cut does not match the state shape");
    }
}

}  // namespace detail

// Partial trace of a matrix grouped as (n1, n2); the kept side's matrix, with
// the other side summed over. Preserves the trace.
inline ComplexMatrix partial_trace(const ComplexMatrix& grouped, std::size_t n1, std::size_t n2,
                                   Side keep) {
    detail::check_grouped(grouped, n1, n2, "partial_trace");
    if (keep == Side::one) {
        ComplexMatrix out(n1, n1);
        for (std::size_t i = 0; i < n1; ++i) {
            for (std::size_t k = 0; k < n1; ++k) {
                Complex sum = 0.0;
                for (std::size_t j = 0; j < n2; ++j) {
                    sum += grouped(i * n2 + j, k * n2 + j);
                }
                out(i, k) = sum;
            }
        }
        return out;
    }
    ComplexMatrix out(n2, n2);
    for (std::size_t j = 0; j < n2; ++j) {
        for (std::size_t l = 0; l < n2; ++l) {
            Complex sum = 0.0;
            for (std::size_t i = 0; i < n1; ++i) {
                sum += grouped(i * n2 + j, i * n2 + l);
            }
            out(j, l) = sum;
        }
    }
    return out;
}

// Transposition of the chosen side's indices only: for side 1,
// ((i,j),(k,l)) -> ((k,j),(i,l)). Hermiticity- and trace-preserving, involutive.
inline ComplexMatrix partial_transpose(const ComplexMatrix& grouped, std::size_t n1,
                                       std::size_t n2, Side side) {
    detail::check_grouped(grouped, n1, n2, "partial_transpose");
    ComplexMatrix out(n1 * n2, n1 * n2);
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            for (std::size_t k = 0; k < n1; ++k) {
                for (std::size_t l = 0; l < n2; ++l) {
                    if (side == Side::one) {
                        out(i * n2 + j, k * n2 + l) = grouped(k * n2 + j, i * n2 + l);
                    } else {
                        out(i * n2 + j, k * n2 + l) = grouped(i * n2 + l, k * n2 + j);
                    }
                }
            }
        }
    }
    return out;
}

// Reduced density matrix of one side of a grouped pure state, accumulated
// straight from the amplitudes; no full outer product is materialized.
inline ComplexMatrix pure_reduced_density(std::span<const Complex> amplitudes, std::size_t n1,
                                          std::size_t n2, Side keep) {
    if (amplitudes.size() != n1 * n2) {
        throw std::invalid_argument("pure_reduced_density: amplitude count does not match the " +
                                    std::to_string(n1) + "x" + std::to_string(n2) + " grouping");
    }
    if (keep == Side::one) {
        ComplexMatrix out(n1, n1);
        for (std::size_t i = 0; i < n1; ++i) {
            for (std::size_t k = 0; k < n1; ++k) {
                Complex sum = 0.0;
                for (std::size_t j = 0; j < n2; ++j) {
                    sum += amplitudes[i * n2 + j] * std::conj(amplitudes[k * n2 + j]);
                }
                out(i, k) = sum;
            }
        }
        return out;
    }
    ComplexMatrix out(n2, n2);
    for (std::size_t j = 0; j < n2; ++j) {
        for (std::size_t l = 0; l < n2; ++l) {
            Complex sum = 0.0;
            for (std::size_t i = 0; i < n1; ++i) {
                sum += amplitudes[i * n2 + j] * std::conj(amplitudes[i * n2 + l]);
            }
            out(j, l) = sum;
        }
    }
    return out;
}

// sqrt(2 (1 - Tr rho_r^2)) with rho_r the reduced matrix of side 1 after
// regrouping; 0 for product states, up to sqrt(2 (1 - 1/n1)) in general.
// Evaluated through the squared 2x2 minors of the n1 x n2 amplitude matrix:
// by Cauchy-Binet their sum equals (1 - Tr rho_r^2)/2, and the minors vanish
// identically on product states, where the direct form would return
// sqrt(rounding) instead of 0.
inline CutValue pure_concurrence(const PureState& psi, const Bipartition& cut) {
    detail::check_cut(psi.shape(), cut, "pure_concurrence");
    const PureState grouped = regroup_pure(psi, cut);
    const std::size_t n1 = cut.side1_dim();
    const std::size_t n2 = cut.side2_dim();
    const auto& a = grouped.amplitudes();
    double minor_sum = 0.0;
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t k = i + 1; k < n1; ++k) {
            for (std::size_t j = 0; j < n2; ++j) {
                for (std::size_t l = j + 1; l < n2; ++l) {
                    minor_sum += std::norm(a[i * n2 + j] * a[k * n2 + l] -
                                           a[i * n2 + l] * a[k * n2 + j]);
                }
            }
        }
    }
    return CutValue{cut, MeasureKind::concurrence, 2.0 * std::sqrt(minor_sum)};
}

// -sum lambda log2(lambda) over the reduced spectrum, with 0 log 0 := 0.
inline CutValue entanglement_entropy(const PureState& psi, const Bipartition& cut) {
    detail::check_cut(psi.shape(), cut, "entanglement_entropy");
    const PureState grouped = regroup_pure(psi, cut);
    const ComplexMatrix reduced =
        pure_reduced_density(grouped.amplitudes(), cut.side1_dim(), cut.side2_dim(), Side::one);
    double bits = 0.0;
    for (double lambda : hermitian_eigenvalues(reduced)) {
        if (lambda > 0.0) {
            bits -= lambda * std::log2(lambda);
        }
    }
    return CutValue{cut, MeasureKind::entropy, detail::clamp_rounding(bits)};
}

// (trace_norm(rho^{T_side1}) - 1)/2, clamped at 0 from below; equals the
// absolute sum of negative eigenvalues of the partial transpose.
inline CutValue negativity(const DensityMatrix& rho, const Bipartition& cut) {
    detail::check_cut(rho.shape(), cut, "negativity");
    const DensityMatrix grouped = regroup_density(rho, cut);
    const ComplexMatrix transposed =
        partial_transpose(grouped.matrix(), cut.side1_dim(), cut.side2_dim(), Side::one);
    const double value = 0.5 * (trace_norm(transposed) - 1.0);
    return CutValue{cut, MeasureKind::negativity, detail::clamp_rounding(value)};
}

}  // namespace ebar
