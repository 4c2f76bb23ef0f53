#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "tin/error.hpp"
#include "tin/graph.hpp"
#include "tin/scm.hpp"
#include "tin/tin_result.hpp"

namespace tin {

// The algebraic rank and the graphical min cut disagree, i.e. the weights are not generic.
class RouteDisagreement : public MethodError {
 public:
  using MethodError::MethodError;
};

// Per-vertex noise cumulants; column j holds order j + 2.
struct NoiseCumulants {
  Eigen::MatrixXd values;

  int k_max() const { return static_cast<int>(values.cols()) + 1; }
  Eigen::VectorXd order(int k) const;
};

// Order 2 in [0.5, 2]; higher orders the same magnitude with a random sign.
NoiseCumulants generic_noise_cumulants(int n, int k_max, std::uint64_t seed);

TinResult tin_oracle(const LinearScm& scm, const VertexSet& z, const VertexSet& y);

// Samples generic weights for dag and retries with fresh weights on a route disagreement.
TinResult tin_oracle_generic(const Dag& dag, const VertexSet& z, const VertexSet& y,
                             std::uint64_t seed, int max_resamples = 5);

struct OmegaCheck {
  bool holds = false;
  bool zero_input = false;  // omega was the zero vector, so the check held vacuously
  explicit operator bool() const { return holds; }
};

OmegaCheck omega_basis_check(const LinearScm& scm, const VertexSet& z, const VertexSet& y,
                             const Eigen::VectorXd& omega);

// Members of y whose row, when dropped, lowers the rank of B[y, Anc(z)] by one.
VertexSet degenerate_indices(const LinearScm& scm, const VertexSet& z, const VertexSet& y);

bool gin_oracle(const LinearScm& scm, const VertexSet& z, const VertexSet& y);
bool in_oracle(const LinearScm& scm, const VertexSet& z, int y);

// Rows of order j are B[z]^(j-1) diag(phi_j) B[y]^T, stacked for j = 2..k.
Eigen::MatrixXd symbolic_stacked_cumulants(const LinearScm& scm, const NoiseCumulants& nc,
                                           const VertexSet& z, const VertexSet& y, int k);

// Graph with k copies: level l >= 2 of vertex i sits at (l - 1) * n + i.
Dag augmented_graph(const Dag& dag, int k);
int augmented_graph_rank(const Dag& dag, const VertexSet& z, const VertexSet& y, int k);

// Compares TIN on measured counterparts against TIN on the latents.
bool latent_observed_equivalence_check(const MeasurementModel& model, const VertexSet& z,
                                       const VertexSet& y);

}  // namespace tin
