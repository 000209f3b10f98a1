#pragma once

#include <span>
#include <vector>

#include "mmq/ladder.hpp"

namespace mmq {

// Relative tolerance the decomposition is expected to meet:
// ||M g_i - lambda_i g_i||_inf <= kEigTolerance * ||M||_inf and G'G = I.
inline constexpr double kEigTolerance = 1e-10;

// Full eigensystem of a ladder matrix, eigenvalues ascending. Columns of
// `vectors` form an orthonormal basis; the ground-state column is
// sign-normalized so its q = 0 component is positive (it is then positive
// everywhere: the ground eigenvector of a tridiagonal matrix with negative
// off-diagonals has no sign change).
struct SpectralDecomposition {
    int n = 0;
    std::vector<double> eigenvalues;
    std::vector<double> vectors;  // column-major, vectors[i + n*j]

    double component(int i, int j) const {
        return vectors[static_cast<std::size_t>(n) * j + i];
    }
    std::span<const double> eigenvector(int j) const {
        return {vectors.data() + static_cast<std::size_t>(n) * j,
                static_cast<std::size_t>(n)};
    }
};

// Implicit-QL iteration with Wilkinson shifts, accumulating rotations.
// Throws ConvergenceError after 50*dim total iterations.
SpectralDecomposition decompose(const LadderMatrix& m);

}  // namespace mmq
