#pragma once

#include <cstddef>

namespace qic {

// Numerical tolerances, chosen for double precision at dimensions <= 64.
inline constexpr double tol_herm = 1e-10;   // Hermiticity check
inline constexpr double tol_psd = 1e-10;    // eigenvalue positivity slack
inline constexpr double tol_trace = 1e-9;   // unit-trace check
inline constexpr double tol_eig = 1e-9;     // eigendecomposition residuals
inline constexpr double tol_supp = 1e-12;   // support membership threshold
inline constexpr double tol_prior = 1e-12;  // uniform-prior check
inline constexpr double tol_chain = 1e-8;   // chain-rule residual fault level

// All entropies are natural-log internally; log(2) converts to/from bits.
inline constexpr double ln2 = 0.69314718055994530942;

// Largest dense block dimension any operation may materialize.
inline constexpr std::size_t dim_budget = 4096;

// Deepest exact polar recursion for qubit-output channels under the budget.
inline constexpr int n_max_exact = 3;

}  // namespace qic
