#include "mmq/spectral.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "mmq/errors.hpp"

namespace mmq {

namespace {

// Implicit QL sweeps with Wilkinson shift on (d, e), accumulating the plane
// rotations into the column-major matrix z. d enters as the diagonal and
// leaves as the (unsorted) eigenvalues; e[i] couples rows i and i+1.
void tridiag_ql(std::vector<double>& d, std::vector<double>& e,
                std::vector<double>& z, int n, long budget) {
    const double eps = std::numeric_limits<double>::epsilon();
    long iters = 0;
    for (int l = 0; l < n; ++l) {
        for (;;) {
            int m = l;
            while (m < n - 1) {
                double scale = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * scale) break;
                ++m;
            }
            if (m == l) break;
            if (++iters > budget)
                throw ConvergenceError("eigensolver failed to converge", n, iters);

            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            int i = m - 1;
            for (; i >= l; --i) {
                double f = s * e[i];
                double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {  // underflow mid-sweep: deflate and retry
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;

                double* zi = z.data() + static_cast<std::size_t>(n) * i;
                double* zj = z.data() + static_cast<std::size_t>(n) * (i + 1);
                for (int w = 0; w < n; ++w) {
                    f = zj[w];
                    zj[w] = s * zi[w] + c * f;
                    zi[w] = c * zi[w] - s * f;
                }
            }
            if (r == 0.0 && i >= l) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

}  // namespace

SpectralDecomposition decompose(const LadderMatrix& mat) {
    const int n = mat.dim();
    SpectralDecomposition out;
    out.n = n;
    out.eigenvalues = mat.diag;
    out.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        out.vectors[static_cast<std::size_t>(n) * i + i] = 1.0;

    if (n > 1) {
        std::vector<double> e(n, 0.0);
        for (int i = 0; i + 1 < n; ++i) e[i] = mat.offdiag;
        tridiag_ql(out.eigenvalues, e, out.vectors, n, 50L * n);
    }

    // ascending eigenvalues, columns following along
    for (int i = 0; i + 1 < n; ++i) {
        int best = i;
        for (int j = i + 1; j < n; ++j)
            if (out.eigenvalues[j] < out.eigenvalues[best]) best = j;
        if (best != i) {
            std::swap(out.eigenvalues[i], out.eigenvalues[best]);
            for (int w = 0; w < n; ++w)
                std::swap(out.vectors[static_cast<std::size_t>(n) * i + w],
                          out.vectors[static_cast<std::size_t>(n) * best + w]);
        }
    }

    // ground state: make the q = 0 component positive
    if (out.component(mat.inv_bound, 0) < 0.0)
        for (int w = 0; w < n; ++w) out.vectors[w] = -out.vectors[w];

    return out;
}

}  // namespace mmq
