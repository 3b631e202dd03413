#pragma once

#include <complex>
#include <Eigen/Dense>

namespace qb {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

enum class Subsystem { A, B };

// Eigendecomposition of a hermitian matrix. Eigenvalues sorted ascending
// (exact ties broken by lexicographic comparison of the phase-fixed
// eigenvectors); eigenvector columns are orthonormal and the first
// component above 1e-12 in modulus of each column is made real positive.
struct HermitianSpectrum {
  RVec eigenvalues;
  CMat eigenvectors;  // columns
};

// Kronecker product, (ij,kl) entry = a(i,k) * b(j,l).
CMat kron(const CMat& a, const CMat& b);

// Trace out the tagged subsystem of a (da*db) x (da*db) operator.
CMat partial_trace(const CMat& rho, int da, int db, Subsystem traced);

// Transpose the tagged subsystem of a (da*db) x (da*db) operator.
CMat partial_transpose(const CMat& rho, int da, int db, Subsystem which);

// Max abs deviation from hermiticity.
double hermiticity_error(const CMat& h);

// Full spectrum via cyclic Jacobi (off-diagonal Frobenius mass < 1e-12).
// Throws std::invalid_argument if h is non-hermitian beyond 1e-10.
HermitianSpectrum hermitian_eigs(const CMat& h);

// Hilbert-Schmidt inner product Tr(a^dagger b) and the induced norm.
cplx hs_inner(const CMat& a, const CMat& b);
double hs_norm(const CMat& a);

double min_eig(const CMat& h);
bool is_psd(const CMat& h, double tol = 1e-10);

}  // namespace qb
