#pragma once

#include <cstddef>
#include <vector>

#include "triwalk/coin.hpp"
#include "triwalk/walk.hpp"

namespace triwalk {

// Density matrix on the joint (position ⊗ chirality) space, dimension
// d = 3 (2 t_max + 1), basis ordered position-major: index(n, k) =
// 3 (n + t_max) + k with k in {L, S, R}. Dense row-major storage.
struct JointDensity {
    int t_max = 0;
    int t = 0;
    std::vector<cplx> rho;

    int dim() const { return 3 * (2 * t_max + 1); }
    std::size_t basis_index(int n, int k) const {
        return static_cast<std::size_t>(3) * (n + t_max) + k;
    }
    cplx entry(int m, int j, int n, int k) const {
        return rho[basis_index(m, j) * dim() + basis_index(n, k)];
    }
    double trace_real() const;
};

// rho = |psi><psi|
JointDensity from_pure(const SpinorState& state);

// rho <- U rho U† applied structurally: the coin on every 3x3 chirality
// block, then the shift permutation on block indices.
JointDensity apply_unitary_step(const JointDensity& rho, const Mat3& coin);

// rho <- sum_j (I ⊗ E_j) rho (I ⊗ E_j)†
JointDensity apply_kraus(const JointDensity& rho, const KrausSet& ks);

// steps repetitions of (unitary step, then Kraus).
JointDensity evolve_channel(JointDensity rho, int steps, const Mat3& coin,
                            const KrausSet& ks);

PositionDistribution density_distribution(const JointDensity& rho);
GcpVector density_gcp(const JointDensity& rho);

// Q_i from the site-diagonal chirality coherences of rho; coincides with
// interference_terms on pure states.
InterferenceTerms density_interference(const JointDensity& rho);

double purity(const JointDensity& rho);           // Tr(rho^2)
double density_hermiticity_defect(const JointDensity& rho);
double min_diagonal(const JointDensity& rho);

}  // namespace triwalk
