#pragma once

#include <span>
#include <vector>

#include "mmq/params.hpp"

namespace mmq {

// Symmetric tridiagonal generator of the value-ladder ODE system together
// with its terminal vector w. Array position i maps to inventory q = i - Q;
// that convention is used by every module in this library.
//
//   base:   diag_q = alpha q^2,            offdiag = -eta,               w_q = 1
//   drift:  diag_q = alpha q^2 - beta q,   offdiag = -eta,               w_q = 1
//   impact: diag_q = alpha q^2,            offdiag = -eta e^{-k xi / 2}, w_q = e^{-k xi q^2 / 2}
struct LadderMatrix {
    int inv_bound = 0;  // Q
    Variant variant = Variant::base;
    std::vector<double> diag;      // 2Q+1 entries
    double offdiag = 0.0;          // constant sub/superdiagonal, < 0
    std::vector<double> terminal;  // w = v(T)

    int dim() const { return 2 * inv_bound + 1; }
    int index_of(int q) const { return q + inv_bound; }
    int inventory_of(int i) const { return i - inv_bound; }

    // max row sum of |entries|
    double inf_norm() const;
};

LadderMatrix build_matrix(const ModelParams& params, Variant variant);

// y = M x
std::vector<double> multiply(const LadderMatrix& m, std::span<const double> x);

}  // namespace mmq
