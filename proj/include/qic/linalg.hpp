#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qic/constants.hpp"
#include "qic/errors.hpp"

namespace qic {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major.
struct ComplexMatrix {
    std::size_t dim = 0;
    std::vector<cplx> a;

    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n) : dim(n), a(n * n) {}

    cplx& operator()(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

    static ComplexMatrix identity(std::size_t n);
};

// Quantum state: Hermitian within tol_herm, eigenvalues >= -tol_psd,
// trace 1 within tol_trace.  density_matrix() checks the first and last
// invariant; positivity is checked wherever a spectrum is computed.
struct DensityMatrix {
    ComplexMatrix mat;
    std::size_t dim() const { return mat.dim; }
};

// Eigenvalues ascending; eigenvector k is column k of `eigenvectors`.
struct Spectrum {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

ComplexMatrix add(const ComplexMatrix& A, const ComplexMatrix& B);
ComplexMatrix sub(const ComplexMatrix& A, const ComplexMatrix& B);
ComplexMatrix scale(cplx s, const ComplexMatrix& A);
ComplexMatrix matmul(const ComplexMatrix& A, const ComplexMatrix& B);
ComplexMatrix adjoint(const ComplexMatrix& A);
ComplexMatrix transpose(const ComplexMatrix& A);
cplx trace(const ComplexMatrix& A);
double max_abs(const ComplexMatrix& A);
double max_abs_diff(const ComplexMatrix& A, const ComplexMatrix& B);
double frobenius_norm(const ComplexMatrix& A);
bool is_hermitian(const ComplexMatrix& A, double tol);
// (A + A^dagger)/2: removes tolerated asymmetry before spectral work.
ComplexMatrix hermitize(const ComplexMatrix& A);

DensityMatrix density_matrix(ComplexMatrix m);

// Cyclic Jacobi diagonalization for Hermitian input; 100-sweep cap.
Spectrum eig_hermitian(const ComplexMatrix& M);

double von_neumann_entropy(const DensityMatrix& rho);
// -sum lambda log lambda for a PSD block of arbitrary trace; the entropy of
// a block-diagonal state is the sum of this over its blocks.
double entropy_unnormalized(const ComplexMatrix& block);

ComplexMatrix matrix_sqrt(const DensityMatrix& rho);
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
// May return +infinity when supp(rho) is not contained in supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

ComplexMatrix tensor(const ComplexMatrix& A, const ComplexMatrix& B);
ComplexMatrix partial_trace(const ComplexMatrix& M,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

}  // namespace qic
