#pragma once

// Bipartite groupings and the two interchangeable ways to realize them:
// explicit permutation matrices built from pairwise-commutation factors, and a
// direct relabeling of flat basis indices. The matrix path is the reference;
// the index path doubles as an independent oracle and takes over for matrices
// larger than kMatrixPathLimit.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ebar/state.hpp"

namespace ebar {

enum class CutMode {
    literal,   // every subset of size 1..floor(N/2); complementary half-cuts both appear
    distinct,  // complementary half-cuts collapsed (the one containing particle 0 is kept)
};

struct GroupingPlan {
    Bipartition cut;
    ComplexMatrix permutation;  // U with |psi regrouped> = U |psi>; U^T U = I exactly
    std::size_t side1_dim;      // n1 = product of dims over side 1
    std::size_t side2_dim;      // n2 = total / n1
};

namespace detail {

// Advances c to the next size-|c| subset of {0..n-1} in lexicographic order.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t q = c.size();
    for (std::size_t i = q; i-- > 0;) {
        if (c[i] + (q - i) < n) {
            ++c[i];
            for (std::size_t k = i + 1; k < q; ++k) {
                c[k] = c[k - 1] + 1;
            }
            return true;
        }
    }
    return false;
}

}  // namespace detail

// All cuts with side-1 size 1..floor(N/2), in size-then-lexicographic order.
// The list length is sum_{i=1}^{floor(N/2)} C(N,i): for even N a half-size
// subset and its complement both appear, so the average over cuts counts both.
inline std::vector<Bipartition> enumerate_bipartitions(const SubsystemShape& shape, CutMode mode) {
    const std::size_t n = shape.particle_count();
    std::vector<Bipartition> cuts;
    for (std::size_t q = 1; q <= n / 2; ++q) {
        std::vector<std::size_t> pick(q);
        std::iota(pick.begin(), pick.end(), std::size_t{0});
        do {
            if (mode == CutMode::distinct && n % 2 == 0 && q == n / 2 && pick[0] != 0) {
                continue;  // complement of an already-listed half-cut
            }
            cuts.emplace_back(shape, pick);
        } while (detail::next_combination(pick, n));
    }
    return cuts;
}

inline std::vector<Bipartition> enumerate_bipartitions(const SubsystemShape& shape) {
    return enumerate_bipartitions(shape, CutMode::literal);
}

// Commutation matrix: the (n1*n2)x(n1*n2) 0/1 matrix with
// P * (x tensor y) = y tensor x for x of dimension n1 and y of dimension n2.
inline ComplexMatrix pair_permutation(std::size_t n1, std::size_t n2) {
    if (n1 == 0 || n2 == 0) {
        throw std::invalid_argument("pair_permutation: dimensions must be >= 1");
    }
    if (n2 > std::numeric_limits<std::size_t>::max() / n1) {
        throw std::invalid_argument("pair_permutation: dimension overflow");
    }
    ComplexMatrix p(n1 * n2, n1 * n2);
    for (std::size_t a = 0; a < n1; ++a) {
        for (std::size_t b = 0; b < n2; ++b) {
            p(b * n1 + a, a * n2 + b) = 1.0;
        }
    }
    return p;
}

// Full-space permutation that moves particle j to position i (i <= j) and
// shifts particles i..j-1 one slot right, built as a chain of adjacent
// commutation factors sandwiched in identities. Acting on a product vector
// v_0 x ... x v_{N-1} yields the correspondingly reordered product.
inline ComplexMatrix move_permutation(const SubsystemShape& shape, std::size_t i, std::size_t j) {
    const std::size_t n = shape.particle_count();
    if (i > j) {
        throw std::invalid_argument("move_permutation: require i <= j");
    }
    if (j >= n) {
        throw std::invalid_argument("move_permutation: position " + std::to_string(j) +
                                    " out of range");
    }
    ComplexMatrix result = ComplexMatrix::identity(shape.total());
    std::vector<std::size_t> dims = shape.dims();
    // Swap (t, t+1) for t = j-1 down to i; each factor is built on the dims
    // as reordered by the factors already applied.
    for (std::size_t t = j; t-- > i;) {
        std::size_t pre = 1;
        for (std::size_t k = 0; k < t; ++k) {
            pre *= dims[k];
        }
        std::size_t post = 1;
        for (std::size_t k = t + 2; k < n; ++k) {
            post *= dims[k];
        }
        ComplexMatrix swap_t = kron(kron(ComplexMatrix::identity(pre),
                                         pair_permutation(dims[t], dims[t + 1])),
                                    ComplexMatrix::identity(post));
        result = matmul(swap_t, result);
        std::swap(dims[t], dims[t + 1]);
    }
    return result;
}

// Per-particle dims in regrouped order: side 1 first, then side 2, each in
// increasing original position.
inline SubsystemShape regrouped_shape(const Bipartition& cut) {
    std::vector<std::size_t> dims;
    dims.reserve(cut.shape().particle_count());
    for (std::size_t p : cut.side1()) {
        dims.push_back(cut.shape().dim(p));
    }
    for (std::size_t p : cut.side2()) {
        dims.push_back(cut.shape().dim(p));
    }
    return SubsystemShape(std::move(dims));
}

// Composition of move_permutation steps that brings side 1's particles, in
// increasing order, to the front positions 0..q-1. Relative order inside each
// side is preserved. Processing side 1 left to right keeps each remaining
// target at its original position, because every earlier move only shifts
// particles that sit left of it.
inline GroupingPlan grouping_unitary(const Bipartition& cut) {
    const SubsystemShape& shape = cut.shape();
    ComplexMatrix u = ComplexMatrix::identity(shape.total());
    std::vector<std::size_t> dims = shape.dims();
    const auto& side1 = cut.side1();
    for (std::size_t k = 0; k < side1.size(); ++k) {
        if (side1[k] == k) {
            continue;  // already in place
        }
        u = matmul(move_permutation(SubsystemShape(dims), k, side1[k]), u);
        std::rotate(dims.begin() + static_cast<std::ptrdiff_t>(k),
                    dims.begin() + static_cast<std::ptrdiff_t>(side1[k]),
                    dims.begin() + static_cast<std::ptrdiff_t>(side1[k]) + 1);
    }
    return GroupingPlan{cut, std::move(u), cut.side1_dim(), cut.side2_dim()};
}

// The flat-index relabeling induced by regrouping: sigma[old] = new, where the
// new index reads the old particle digits in regrouped order.
inline std::vector<std::size_t> regroup_index_map(const Bipartition& cut) {
    const SubsystemShape& shape = cut.shape();
    const SubsystemShape new_shape = regrouped_shape(cut);
    std::vector<std::size_t> order = cut.side1();
    for (std::size_t p : cut.side2()) {
        order.push_back(p);
    }
    std::vector<std::size_t> sigma(shape.total());
    std::vector<std::size_t> new_locals(order.size());
    for (std::size_t r = 0; r < shape.total(); ++r) {
        const std::vector<std::size_t> locals = shape.local_indices(r);
        for (std::size_t k = 0; k < order.size(); ++k) {
            new_locals[k] = locals[order[k]];
        }
        sigma[r] = new_shape.flat_index(new_locals);
    }
    return sigma;
}

// Regrouping computed without matrices: entry (r,c) is copied to
// (sigma(r), sigma(c)). A bit-exact permutation of the entries; serves as the
// independent oracle for the matrix path.
inline DensityMatrix regroup_oracle(const DensityMatrix& rho, const Bipartition& cut) {
    if (!(rho.shape() == cut.shape())) {
        throw std::invalid_argument("regroup_oracle: cut does not match the state shape");
    }
    const std::vector<std::size_t> sigma = regroup_index_map(cut);
    const std::size_t n = rho.shape().total();
    ComplexMatrix out(n, n);
    const ComplexMatrix& in = rho.matrix();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            out(sigma[r], sigma[c]) = in(r, c);
        }
    }
    return DensityMatrix::from_validated(regrouped_shape(cut), std::move(out));
}

// Above this total dimension the dense permutation conjugation is replaced by
// the index relabeling; both paths agree exactly wherever both run.
inline constexpr std::size_t kMatrixPathLimit = 256;

// Density matrix over the reordered shape (side 1 dims then side 2 dims);
// unitary conjugation, so the spectrum and trace are untouched.
inline DensityMatrix regroup_density(const DensityMatrix& rho, const Bipartition& cut) {
    if (!(rho.shape() == cut.shape())) {
        throw std::invalid_argument("regroup_density: cut does not match the state shape");
    }
    if (rho.shape().total() > kMatrixPathLimit) {
        return regroup_oracle(rho, cut);
    }
    GroupingPlan plan = grouping_unitary(cut);
    ComplexMatrix m = matmul(matmul(plan.permutation, rho.matrix()), plan.permutation.transpose());
    return DensityMatrix::from_validated(regrouped_shape(cut), std::move(m));
}

// Amplitude counterpart of regroup_density for pure states.
inline PureState regroup_pure(const PureState& psi, const Bipartition& cut) {
    if (!(psi.shape() == cut.shape())) {
        throw std::invalid_argument("regroup_pure: cut does not match the state shape");
    }
    const std::vector<std::size_t> sigma = regroup_index_map(cut);
    std::vector<Complex> out(psi.amplitudes().size());
    for (std::size_t r = 0; r < out.size(); ++r) {
        out[sigma[r]] = psi.amplitudes()[r];
    }
    return PureState(regrouped_shape(cut), std::move(out));
}

}  // namespace ebar
