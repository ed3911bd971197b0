#pragma once

// Quantum-state model: tensor-factor shapes, pure states, density matrices and
// bipartite cuts. All types validate on construction and are immutable after,
// so they are safe to share across threads.

#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ebar/complex_matrix.hpp"

namespace ebar {

inline constexpr std::size_t kMaxTotalDimension = 4096;
inline constexpr double kNormTol = 1e-8;  // |sum |a|^2 - 1| for pure states, |trace - 1| for mixed
inline constexpr double kPsdTol = 1e-8;   // eigenvalue floor for density matrices

// Ordered list of per-particle dimensions; fixes the tensor-factor layout that
// every flat index refers to. The first listed particle is the most
// significant digit of the mixed-radix flat index.
class SubsystemShape {
public:
    explicit SubsystemShape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
        if (dims_.size() < 2) {
            throw std::invalid_argument("SubsystemShape: at least 2 particles required");
        }
        total_ = 1;
        for (std::size_t d : dims_) {
            if (d < 2) {
                throw std::invalid_argument("SubsystemShape: particle dimension must be >= 2");
            }
            total_ *= d;
            if (total_ > kMaxTotalDimension) {
                throw std::invalid_argument("SubsystemShape: total dimension exceeds " +
                                            std::to_string(kMaxTotalDimension));
            }
        }
    }

    std::size_t particle_count() const { return dims_.size(); }
    std::size_t dim(std::size_t particle) const { return dims_.at(particle); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t total() const { return total_; }

    // Mixed-radix flat index with the first particle most significant:
    // ((i0*D1 + i1)*D2 + i2)...
    std::size_t flat_index(std::span<const std::size_t> locals) const {
        if (locals.size() != dims_.size()) {
            throw std::invalid_argument("flat_index: expected one local index per particle");
        }
        std::size_t idx = 0;
        for (std::size_t p = 0; p < dims_.size(); ++p) {
            if (locals[p] >= dims_[p]) {
                throw std::out_of_range("flat_index: local index " + std::to_string(locals[p]) +
                                        " out of range for particle " + std::to_string(p));
            }
            idx = idx * dims_[p] + locals[p];
        }
        return idx;
    }

    std::vector<std::size_t> local_indices(std::size_t flat) const {
        if (flat >= total_) {
            throw std::out_of_range("local_indices: flat index " + std::to_string(flat) +
                                    " out of range");
        }
        std::vector<std::size_t> locals(dims_.size());
        for (std::size_t p = dims_.size(); p-- > 0;) {
            locals[p] = flat % dims_[p];
            flat /= dims_[p];
        }
        return locals;
    }

    bool operator==(const SubsystemShape&) const = default;

private:
    std::vector<std::size_t> dims_;
    std::size_t total_ = 0;
};

class PureState {
public:
    PureState(SubsystemShape shape, std::vector<Complex> amplitudes)
        : shape_(std::move(shape)), amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.size() != shape_.total()) {
            throw std::invalid_argument("PureState: expected " + std::to_string(shape_.total()) +
                                        " amplitudes, got " + std::to_string(amplitudes_.size()));
        }
        double norm2 = 0.0;
        for (const Complex& a : amplitudes_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                throw std::invalid_argument("PureState: non-finite amplitude");
            }
            norm2 += std::norm(a);
        }
        if (!(std::abs(norm2 - 1.0) <= kNormTol)) {
            throw std::invalid_argument("PureState: squared norm " + std::to_string(norm2) +
                                        " deviates from 1 beyond tolerance");
        }
    }

    const SubsystemShape& shape() const { return shape_; }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }

private:
    SubsystemShape shape_;
    std::vector<Complex> amplitudes_;
};

class DensityMatrix {
public:
    DensityMatrix(SubsystemShape shape, ComplexMatrix matrix)
        : shape_(std::move(shape)), matrix_(std::move(matrix)) {
        if (matrix_.rows() != shape_.total() || matrix_.cols() != shape_.total()) {
            throw std::invalid_argument("DensityMatrix: matrix size does not match shape total " +
                                        std::to_string(shape_.total()));
        }
        if (!matrix_.is_finite()) {
            throw std::invalid_argument("DensityMatrix: non-finite entry");
        }
        const double defect = matrix_.hermiticity_defect();
        if (!(defect <= kHermitianTol)) {
            throw std::invalid_argument("DensityMatrix: Hermiticity defect " +
                                        std::to_string(defect) + " exceeds tolerance");
        }
        const Complex tr = matrix_.trace();
        if (!(std::abs(tr - Complex(1.0)) <= kNormTol)) {
            throw std::invalid_argument("DensityMatrix: trace deviates from 1 beyond tolerance");
        }
        const std::vector<double> evals = hermitian_eigenvalues(matrix_);
        if (!evals.empty() && evals.front() < -kPsdTol) {
            throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                        std::to_string(evals.front()) +
                                        " (not positive semidefinite)");
        }
    }

    // Bypasses validation. For outputs of spectrum-preserving transforms of an
    // already-validated matrix (permutation conjugation, projector of a
    // normalized pure state); never for external data.
    static DensityMatrix from_validated(SubsystemShape shape, ComplexMatrix matrix) {
        return DensityMatrix(std::move(shape), std::move(matrix), unchecked_tag{});
    }

    const SubsystemShape& shape() const { return shape_; }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    struct unchecked_tag {};
    DensityMatrix(SubsystemShape shape, ComplexMatrix matrix, unchecked_tag)
        : shape_(std::move(shape)), matrix_(std::move(matrix)) {}

    SubsystemShape shape_;
    ComplexMatrix matrix_;
};

// One bipartite grouping: side 1 is a subset of particle positions of size
// 1..floor(N/2); side 2 is the complement. For even N, a half-size subset and
// its complement are distinct cuts.
class Bipartition {
public:
    Bipartition(SubsystemShape shape, std::vector<std::size_t> side1)
        : shape_(std::move(shape)), side1_(std::move(side1)) {
        const std::size_t n = shape_.particle_count();
        if (side1_.empty()) {
            throw std::invalid_argument("Bipartition: side 1 must be nonempty");
        }
        if (side1_.size() > n / 2) {
            throw std::invalid_argument("Bipartition: side 1 size " +
                                        std::to_string(side1_.size()) + " exceeds floor(N/2)");
        }
        for (std::size_t k = 0; k < side1_.size(); ++k) {
            if (side1_[k] >= n) {
                throw std::invalid_argument("Bipartition: position " + std::to_string(side1_[k]) +
                                            " out of range");
            }
            if (k > 0 && side1_[k] <= side1_[k - 1]) {
                throw std::invalid_argument("Bipartition: positions must be strictly increasing");
            }
        }
    }

    const SubsystemShape& shape() const { return shape_; }
    const std::vector<std::size_t>& side1() const { return side1_; }

    std::vector<std::size_t> side2() const {
        std::vector<std::size_t> rest;
        rest.reserve(shape_.particle_count() - side1_.size());
        std::size_t k = 0;
        for (std::size_t p = 0; p < shape_.particle_count(); ++p) {
            if (k < side1_.size() && side1_[k] == p) {
                ++k;
            } else {
                rest.push_back(p);
            }
        }
        return rest;
    }

    // n1: product of dims over side 1; n2 = total / n1.
    std::size_t side1_dim() const {
        std::size_t n1 = 1;
        for (std::size_t p : side1_) {
            n1 *= shape_.dim(p);
        }
        return n1;
    }
    std::size_t side2_dim() const { return shape_.total() / side1_dim(); }

    bool operator==(const Bipartition&) const = default;

private:
    SubsystemShape shape_;
    std::vector<std::size_t> side1_;
};

using State = std::variant<PureState, DensityMatrix>;

inline const SubsystemShape& state_shape(const State& s) {
    return std::visit([](const auto& v) -> const SubsystemShape& { return v.shape(); }, s);
}

// Projector |psi><psi|; rank 1 and unit trace by construction.
inline DensityMatrix to_density(const PureState& psi) {
    const std::size_t n = psi.shape().total();
    ComplexMatrix m(n, n);
    const auto& a = psi.amplitudes();
    for (std::size_t r = 0; r < n; ++r) {
        if (a[r] == 0.0) {
            continue;
        }
        for (std::size_t c = 0; c < n; ++c) {
            m(r, c) = a[r] * std::conj(a[c]);
        }
    }
    return DensityMatrix::from_validated(psi.shape(), std::move(m));
}

// (|0...0> + |1...1>)/sqrt(2) over n qubits; n = 2 gives the Bell state phi+.
inline PureState ghz_state(std::size_t n) {
    SubsystemShape shape(std::vector<std::size_t>(n, 2));
    std::vector<Complex> amps(shape.total());
    const double r = 1.0 / std::sqrt(2.0);
    amps.front() = r;
    amps.back() = r;
    return PureState(std::move(shape), std::move(amps));
}

}  // namespace ebar
