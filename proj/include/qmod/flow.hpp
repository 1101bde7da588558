#pragma once

#include <Eigen/Dense>

#include "qmod/hn.hpp"
#include "qmod/quiver.hpp"

namespace qmod {

/// Representation over C in double precision, one matrix per arrow.
struct CRep {
    DimensionVector dim;
    std::vector<Eigen::MatrixXcd> mats;
};

CRep zero_crep(const Quiver& q, const DimensionVector& d);
void validate_crep(const Quiver& q, const CRep& r);

/// Per-vertex hermitian moment-map values
///   mu_i = sum_{h(a)=i} phi_a phi_a^* - sum_{t(a)=i} phi_a^* phi_a + theta_i I.
/// The shift sign is the calibration making the 1-arrow Kronecker quiver
/// with theta = (1,-1), |phi| = 1 a zero of mu. Hermitian symmetrization is
/// enforced to 1e-12.
using MomentValue = std::vector<Eigen::MatrixXcd>;
MomentValue moment_value(const Quiver& q, const CRep& r, const StabilityParam& theta);

/// f = sum_i ||mu_i||_F^2.
double energy(const Quiver& q, const CRep& r, const StabilityParam& theta);

/// Gradient of f under the Frobenius metric:
///   grad_a = 4 (mu_{h(a)} phi_a - phi_a mu_{t(a)}).
/// The normalization is pinned by the finite-difference test, not by any
/// closed form.
std::vector<Eigen::MatrixXcd> energy_gradient(const Quiver& q, const CRep& r,
                                              const StabilityParam& theta);

struct FlowOptions {
    double initial_step = 1e-2;
    long long max_iters = 20000;
    double tol = 1e-9; // on the gradient Frobenius norm
};

struct FlowResult {
    CRep limit;
    std::vector<double> energy_trace; // values at accepted iterates, non-increasing
    double residual = 0;              // max over arrows of ||mu_h phi - phi mu_t||_F
    std::vector<std::vector<double>> beta_spectrum; // per-vertex mu eigenvalues, ascending
    bool converged = false;
    long long iterations = 0;
};

/// Discrete steepest descent on f with Armijo backtracking. Terminates when
/// the gradient norm drops below tol or after max_iters steps; in the latter
/// case the result is flagged unconverged but carries all partial data.
FlowResult flow_to_critical(const Quiver& q, const CRep& start, const StabilityParam& theta,
                            const FlowOptions& opts = {});

struct ClassifyOptions {
    double cluster_tol = 1e-4;  // eigenvalue gap that separates clusters
    double residual_tol = 1e-4; // refusal threshold on FlowResult::residual
};

/// HN type read off a critical point: eigenvalues of mu are grouped into
/// clusters across all vertices; per-vertex multiplicities of each cluster
/// form a piece, pieces ordered by decreasing cluster value. Refuses when
/// the residual is too large or a cluster is wider than the tolerance.
HNType classify_critical(const FlowResult& f, const ClassifyOptions& opts = {});

} // namespace qmod
