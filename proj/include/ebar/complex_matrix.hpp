#pragma once

// Dense complex-matrix kernel: matrix products, Kronecker products, Hermitian
// eigenvalues and the trace norm. This is the only header that touches raw
// numerics; everything above it speaks in states and cuts.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ebar {

using Complex = std::complex<double>;

// Matrices handed to the eigensolver must be Hermitian up to this defect.
inline constexpr double kHermitianTol = 1e-10;

class ComplexMatrix {
public:
    ComplexMatrix() = default;

    // Zero-filled rows x cols matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(checked_size(rows, cols)) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    // Row-major storage.
    Complex* data() { return entries_.data(); }
    const Complex* data() const { return entries_.data(); }
    const std::vector<Complex>& entries() const { return entries_; }

    Complex trace() const {
        if (!square()) {
            throw std::invalid_argument("trace: matrix must be square");
        }
        Complex t = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = (*this)(r, c);
            }
        }
        return out;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    bool is_finite() const {
        for (const Complex& e : entries_) {
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
                return false;
            }
        }
        return true;
    }

    // max_ij |m[i][j] - conj(m[j][i])|; NaN entries propagate into the result.
    double hermiticity_defect() const {
        if (!square()) {
            throw std::invalid_argument("hermiticity_defect: matrix must be square");
        }
        double defect = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = r; c < cols_; ++c) {
                const double d = std::abs((*this)(r, c) - std::conj((*this)(c, r)));
                if (!(d <= defect)) {
                    defect = d;
                }
            }
        }
        return defect;
    }

    bool operator==(const ComplexMatrix&) const = default;

private:
    static std::size_t checked_size(std::size_t rows, std::size_t cols) {
        if (rows != 0 && cols > std::numeric_limits<std::size_t>::max() / rows) {
            throw std::invalid_argument("ComplexMatrix: dimension overflow");
        }
        return rows * cols;
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

namespace detail {

using EigenRowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstRowMajorMap = Eigen::Map<const EigenRowMajor>;
using RowMajorMap = Eigen::Map<EigenRowMajor>;

inline ConstRowMajorMap as_eigen(const ComplexMatrix& m) {
    return ConstRowMajorMap(m.data(), static_cast<Eigen::Index>(m.rows()),
                            static_cast<Eigen::Index>(m.cols()));
}

}  // namespace detail

// Kronecker product: entry ((i1*b.rows + i2), (j1*b.cols + j2)) = a(i1,j1) * b(i2,j2).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
    if ((a.rows() != 0 && b.rows() > kMax / a.rows()) ||
        (a.cols() != 0 && b.cols() > kMax / a.cols())) {
        throw std::invalid_argument("kron: dimension overflow of the product shape");
    }
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1) {
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            const Complex f = a(i1, j1);
            if (f == 0.0) {
                continue;
            }
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2) {
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2) {
                    out(i1 * b.rows() + i2, j1 * b.cols() + j2) = f * b(i2, j2);
                }
            }
        }
    }
    return out;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: shape mismatch (" + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                                    "x" + std::to_string(b.cols()) + ")");
    }
    ComplexMatrix out(a.rows(), b.cols());
    detail::RowMajorMap result(out.data(), static_cast<Eigen::Index>(out.rows()),
                               static_cast<Eigen::Index>(out.cols()));
    result.noalias() = detail::as_eigen(a) * detail::as_eigen(b);
    return out;
}

// Eigenvalues of a Hermitian matrix in non-decreasing order. The input is
// validated against kHermitianTol and symmetrized via (m + m^dagger)/2 before
// solving, so rounding-level asymmetry cannot destabilize the solver.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    if (!m.square()) {
        throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
    }
    const double defect = m.hermiticity_defect();
    if (!(defect <= kHermitianTol)) {
        throw std::invalid_argument("hermitian_eigenvalues: Hermiticity defect " +
                                    std::to_string(defect) + " exceeds tolerance");
    }
    const auto n = static_cast<Eigen::Index>(m.rows());
    Eigen::MatrixXcd h(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            h(r, c) = 0.5 * (m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) +
                             std::conj(m(static_cast<std::size_t>(c), static_cast<std::size_t>(r))));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigenvalues: eigensolver did not converge");
    }
    return std::vector<double>(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
}

// Trace norm of a Hermitian matrix: sum of |eigenvalue|. All operators this
// library feeds here are Hermitian, where singular values equal |eigenvalues|.
inline double trace_norm(const ComplexMatrix& m) {
    double sum = 0.0;
    for (double lambda : hermitian_eigenvalues(m)) {
        sum += std::abs(lambda);
    }
    return sum;
}

}  // namespace ebar
