#pragma once

#include <vector>

#include "quditbell/matcore.hpp"

namespace qb {

enum class BasisKind { pauli, gellmann, weyl };

// Traceless orthogonal operator basis of C^{d x d}, identity kept apart.
//
// Element order is fixed so Bloch coefficients index deterministically:
//   pauli    : sigma_1, sigma_2, sigma_3
//   gellmann : symmetric block by (j,k) lex, then antisymmetric by (j,k)
//              lex, then diagonal by l
//   weyl     : W_{k,l} by k-major (k,l) order, skipping (0,0)
struct OperatorBasis {
  int dim = 0;
  BasisKind kind = BasisKind::pauli;
  std::vector<CMat> elements;
  CMat identity;
};

// Bloch expansion rho = 1/d + sum_i a_i Gamma_i with
// a_i = <Gamma_i|rho>_HS / <Gamma_i|Gamma_i>_HS. Coefficients are real for
// pauli/gellmann (imaginary parts below roundoff), complex for weyl.
struct BlochVector {
  BasisKind kind = BasisKind::pauli;
  int dim = 0;
  std::vector<cplx> coefficients;
};

// rho = (1/4)(1x1 + r.sigma x 1 + 1 x s.sigma + sum t_nm sigma_n x sigma_m)
struct TwoQubitBloch {
  Eigen::Vector3d r;
  Eigen::Vector3d s;
  Eigen::Matrix3d t;
};

CMat pauli(int i);  // i in {1,2,3}

OperatorBasis pauli_basis();
OperatorBasis gellmann_basis(int d);
OperatorBasis weyl_basis(int d);
const OperatorBasis& cached_basis(BasisKind kind, int d);

// W_{k,l} = sum_s w^{sk} |s><(s+l) mod d|, w = e^{2 pi i/d}; indices mod d.
CMat weyl_operator(int d, int k, int l);

// Gell-Mann building blocks (hermitian, traceless).
CMat gellmann_symmetric(int d, int j, int k);
CMat gellmann_antisymmetric(int d, int j, int k);
CMat gellmann_diagonal(int d, int l);

BlochVector bloch_decompose(const CMat& rho, const OperatorBasis& basis);
CMat bloch_reconstruct(const BlochVector& b);
double bloch_norm(const BlochVector& b);

TwoQubitBloch twoqubit_bloch(const CMat& rho);
CMat twoqubit_from_bloch(const TwoQubitBloch& b);

}  // namespace qb
