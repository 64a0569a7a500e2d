#pragma once

// Conditioning length of a planar n-revolute manipulator at a posture, and
// the characteristic length obtained by searching postures for the one
// closest to isotropy.

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include "isokin/chains.hpp"
#include "isokin/jacobian.hpp"

namespace isokin {

struct ConditioningResult {
  /// Reciprocal of the conditioning length, in 1/length.
  double lambda = 0.0;
  double conditioning_length = 0.0;
  /// Normalized Frobenius distance between the homogeneous Jacobian and K.
  double residual_distance = 0.0;
  double objective_z = 0.0;
};

/// Jacobian with rows 2-3 multiplied by lambda (lambda = 0 allowed).
Matrix scaled_jacobian(const ChainConfiguration& config, double lambda);

/// z = tr[(Jbar - K)(Jbar - K)^T] / (2n), evaluated on the difference matrix.
double objective_z(const ChainConfiguration& config, const ModelMatrix& model, double lambda);

/// z from the expansion tr(Jbar Jbar^T - 2 K Jbar^T + K K^T) / (2n).
double objective_z_expanded(const ChainConfiguration& config, const ModelMatrix& model, double lambda);

/// lambda * sum |r_j|^2 - sum k_j . r_j, which is n dz/dlambda.
double normality_residual(const ChainConfiguration& config, const ModelMatrix& model, double lambda);

/// Closed-form minimizer of z over lambda.
ConditioningResult optimal_lambda(const ChainConfiguration& config, const ModelMatrix& model);

/// Rotation of the whole configuration (a change of the base joint angle)
/// that maximizes sum k_j . r_j.
double optimal_base_rotation(const ChainConfiguration& config, const ModelMatrix& model);

/// Dimensionless model set k_i proportional to centroid - p_ordering[i],
/// scaled so that sum |k_i|^2 = 2n. Paired column-by-column with the chain of
/// the same ordering, its model matrix is attained at the placement posture.
PointSet placement_model_set(const PointSet& set, const Ordering& ordering);

struct SearchParams {
  std::size_t starts_per_dim = 3;
  std::size_t max_starts = 243;
  double gradient_tol = 1e-6;
  std::size_t max_evaluations = 10000;
  double initial_step = std::numbers::pi / 8.0;
  double min_step = 1e-10;
  bool randomized_starts = false;
  std::uint64_t seed = 0;
  /// Also search over every column order of K (n <= 8).
  bool permute_model_columns = false;
  /// best_distance at or below this counts as attaining isotropy.
  double isotropy_tol = 1e-6;
};

struct CharacteristicLengthResult {
  double characteristic_length = 0.0;
  double lambda = 0.0;
  Posture best_posture{{}};
  double best_distance = 0.0;
  double objective_z = 0.0;
  double gradient_norm = 0.0;
  bool converged = false;
  bool attains_isotropy = false;
  std::size_t starts_used = 0;
  std::size_t evaluations = 0;
  /// Column order of K used for the best result (identity unless permuted).
  Ordering model_columns{{}};
};

/// Multi-start compass search over joint angles 2..n with the base angle and
/// lambda eliminated in closed form at every evaluation.
CharacteristicLengthResult characteristic_length(const KinematicChain& chain, const ModelMatrix& model,
                                                 const SearchParams& params = {});

/// Start points for the search over d free angles, each in (-pi, pi].
std::vector<std::vector<double>> search_starts(std::size_t dimensions, const SearchParams& params);

}  // namespace isokin
