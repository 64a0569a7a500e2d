#include "isokin/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include "isokin/error.hpp"

namespace isokin {

namespace {

void require_matching(const ChainConfiguration& config, const ModelMatrix& model) {
  if (config.size() != model.cols())
    throw Error(ErrorCode::ShapeMismatch, "configuration has " + std::to_string(config.size()) +
                                              " joints but the model matrix has " + std::to_string(model.cols()) +
                                              " columns");
}

double trace_of_gram(const Matrix& a, const Matrix& b) {
  double t = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) t += a(r, c) * b(r, c);
  return t;
}

struct Alignment {
  double along = 0.0;   // sum k_j . r_j
  double across = 0.0;  // sum k_j . (E r_j)
  double r_squared = 0.0;
  double k_squared = 0.0;
};

Alignment alignment(std::span<const Vec2> r, const ModelMatrix& model) {
  Alignment a;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const Vec2 k = model.k(j);
    a.along += dot(k, r[j]);
    a.across += dot(k, rotate90(r[j]));
    a.r_squared += dot(r[j], r[j]);
    a.k_squared += dot(k, k);
  }
  return a;
}

}  // namespace

Matrix scaled_jacobian(const ChainConfiguration& config, double lambda) {
  Matrix j = build_jacobian(config).entries;
  for (std::size_t r = 1; r < 3; ++r)
    for (std::size_t c = 0; c < j.cols(); ++c) j(r, c) *= lambda;
  return j;
}

double objective_z(const ChainConfiguration& config, const ModelMatrix& model, double lambda) {
  require_matching(config, model);
  const Matrix diff = scaled_jacobian(config, lambda) - model.entries();
  const double n = static_cast<double>(config.size());
  return trace_of_gram(diff, diff) / (2.0 * n);
}

double objective_z_expanded(const ChainConfiguration& config, const ModelMatrix& model, double lambda) {
  require_matching(config, model);
  const Matrix jbar = scaled_jacobian(config, lambda);
  const Matrix& k = model.entries();
  const double n = static_cast<double>(config.size());
  return (trace_of_gram(jbar, jbar) - 2.0 * trace_of_gram(k, jbar) + trace_of_gram(k, k)) / (2.0 * n);
}

double normality_residual(const ChainConfiguration& config, const ModelMatrix& model, double lambda) {
  require_matching(config, model);
  const Alignment a = alignment(config.r_vectors, model);
  return lambda * a.r_squared - a.along;
}

ConditioningResult optimal_lambda(const ChainConfiguration& config, const ModelMatrix& model) {
  require_matching(config, model);
  const Alignment a = alignment(config.r_vectors, model);
  if (!(a.r_squared > 0.0))
    throw Error(ErrorCode::DegenerateConfiguration, "every joint center coincides with the operation point");
  if (!(a.along > 0.0))
    throw Error(ErrorCode::NonpositiveAlignment,
                "sum k_j . r_j = " + std::to_string(a.along) + " leaves no positive conditioning length");
  // sum |r_j|^2 = n d_rms^2 over the distances |r_j|.
  ConditioningResult result;
  result.lambda = a.along / a.r_squared;
  result.conditioning_length = a.r_squared / a.along;
  result.objective_z = objective_z(config, model, result.lambda);
  result.residual_distance = distance(scaled_jacobian(config, result.lambda), model.entries());
  return result;
}

double optimal_base_rotation(const ChainConfiguration& config, const ModelMatrix& model) {
  require_matching(config, model);
  const Alignment a = alignment(config.r_vectors, model);
  return std::atan2(a.across, a.along);
}

PointSet placement_model_set(const PointSet& set, const Ordering& ordering) {
  if (ordering.size() != set.size())
    throw Error(ErrorCode::ArityMismatch, "ordering arity does not match the point set");
  const Vec2 c = centroid(set);
  std::vector<Vec2> ks;
  ks.reserve(set.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    ks.push_back(c - set[ordering[i]]);
    sum += dot(ks.back(), ks.back());
  }
  if (!(sum > 0.0)) throw Error(ErrorCode::DegenerateConfiguration, "all points coincide with the centroid");
  const double scale = std::sqrt(2.0 * static_cast<double>(set.size()) / sum);
  for (Vec2& k : ks) k = scale * k;
  return PointSet(std::move(ks), Unit::dimensionless);
}

namespace {

std::vector<std::size_t> first_primes(std::size_t count) {
  std::vector<std::size_t> primes;
  for (std::size_t candidate = 2; primes.size() < count; ++candidate) {
    const bool prime = std::none_of(primes.begin(), primes.end(), [&](std::size_t p) { return candidate % p == 0; });
    if (prime) primes.push_back(candidate);
  }
  return primes;
}

double radical_inverse(std::size_t index, std::size_t base) {
  double result = 0.0;
  double f = 1.0 / static_cast<double>(base);
  for (std::size_t i = index; i > 0; i /= base) {
    result += f * static_cast<double>(i % base);
    f /= static_cast<double>(base);
  }
  return result;
}

/// Reduced search problem for one column order of K.
class PostureSearch {
 public:
  PostureSearch(const KinematicChain& chain, const ModelMatrix& model) : chain_(chain), model_(model) {
    angles_.assign(chain.size(), 0.0);
  }

  /// z at the free angles with the base angle and lambda eliminated, or
  /// nullopt when no positive conditioning length exists there.
  std::optional<double> evaluate(std::span<const double> free) {
    ++evaluations_;
    std::copy(free.begin(), free.end(), angles_.begin() + 1);
    angles_[0] = 0.0;
    const ChainConfiguration config = forward_kinematics(chain_, Posture(angles_));
    const Alignment a = alignment(config.r_vectors, model_);
    const double best_along_sq = a.along * a.along + a.across * a.across;
    if (!(a.r_squared > 0.0) || !(best_along_sq > 0.0)) return std::nullopt;
    const double n = static_cast<double>(chain_.size());
    return std::max(0.0, a.k_squared - best_along_sq / a.r_squared) / (2.0 * n);
  }

  /// Full posture with the optimal base angle for the given free angles.
  Posture posture(std::span<const double> free) {
    std::vector<double> angles(chain_.size(), 0.0);
    std::copy(free.begin(), free.end(), angles.begin() + 1);
    const ChainConfiguration config = forward_kinematics(chain_, Posture(angles));
    angles[0] = optimal_base_rotation(config, model_);
    return Posture(std::move(angles));
  }

  double gradient_norm(std::vector<double> free) {
    constexpr double h = 1e-6;
    double sq = 0.0;
    for (std::size_t d = 0; d < free.size(); ++d) {
      const double x = free[d];
      free[d] = x + h;
      const auto up = evaluate(free);
      free[d] = x - h;
      const auto down = evaluate(free);
      free[d] = x;
      if (!up || !down) return std::numeric_limits<double>::infinity();
      const double g = (*up - *down) / (2.0 * h);
      sq += g * g;
    }
    return std::sqrt(sq);
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  const KinematicChain& chain_;
  const ModelMatrix& model_;
  std::vector<double> angles_;
  std::size_t evaluations_ = 0;
};

struct LocalResult {
  std::vector<double> free;
  double z;
};

std::optional<LocalResult> compass_search(PostureSearch& search, std::vector<double> x, const SearchParams& params) {
  std::size_t budget = params.max_evaluations;
  auto eval = [&](std::span<const double> v) -> std::optional<double> {
    if (budget == 0) return std::nullopt;
    --budget;
    return search.evaluate(v);
  };
  std::optional<double> fx = eval(x);
  if (!fx) return std::nullopt;
  double step = params.initial_step;
  while (step >= params.min_step && budget > 0) {
    bool improved = false;
    for (std::size_t d = 0; d < x.size() && budget > 0; ++d) {
      for (double sign : {1.0, -1.0}) {
        const double saved = x[d];
        x[d] = reduce_angle(saved + sign * step);
        const std::optional<double> f = eval(x);
        if (f && *f < *fx) {
          fx = f;
          improved = true;
          break;
        }
        x[d] = saved;
      }
    }
    if (!improved) step *= 0.5;
  }
  return LocalResult{std::move(x), *fx};
}

bool better(const CharacteristicLengthResult& a, const CharacteristicLengthResult& b) {
  if (std::abs(a.best_distance - b.best_distance) > 1e-12) return a.best_distance < b.best_distance;
  if (a.characteristic_length != b.characteristic_length) return a.characteristic_length < b.characteristic_length;
  return std::lexicographical_compare(a.best_posture.joint_angles().begin(), a.best_posture.joint_angles().end(),
                                      b.best_posture.joint_angles().begin(), b.best_posture.joint_angles().end());
}

std::optional<CharacteristicLengthResult> search_one(const KinematicChain& chain, const ModelMatrix& model,
                                                     const SearchParams& params) {
  PostureSearch search(chain, model);
  const std::size_t dims = chain.size() - 1;
  std::optional<CharacteristicLengthResult> best;
  std::size_t starts = 0;
  for (std::vector<double>& start : search_starts(dims, params)) {
    ++starts;
    const std::optional<LocalResult> local = compass_search(search, std::move(start), params);
    if (!local) continue;
    const Posture posture = search.posture(local->free);
    const ChainConfiguration config = forward_kinematics(chain, posture);
    ConditioningResult cond;
    try {
      cond = optimal_lambda(config, model);
    } catch (const Error&) {
      continue;
    }
    CharacteristicLengthResult candidate;
    candidate.characteristic_length = cond.conditioning_length;
    candidate.lambda = cond.lambda;
    candidate.best_posture = posture;
    candidate.best_distance = cond.residual_distance;
    candidate.objective_z = cond.objective_z;
    candidate.gradient_norm = search.gradient_norm(local->free);
    if (!best || better(candidate, *best)) best = std::move(candidate);
  }
  if (best) {
    best->starts_used = starts;
    best->evaluations = search.evaluations();
    best->converged = best->gradient_norm < params.gradient_tol;
    best->attains_isotropy = best->best_distance <= params.isotropy_tol;
  }
  return best;
}

}  // namespace

std::vector<std::vector<double>> search_starts(std::size_t dimensions, const SearchParams& params) {
  const std::size_t per_dim = std::max<std::size_t>(params.starts_per_dim, 1);
  std::size_t grid_size = 1;
  bool grid_fits = true;
  for (std::size_t d = 0; d < dimensions && grid_fits; ++d) {
    grid_size *= per_dim;
    grid_fits = grid_size <= params.max_starts;
  }
  const std::size_t count = grid_fits ? grid_size : params.max_starts;
  constexpr double pi = std::numbers::pi;

  std::vector<std::vector<double>> starts;
  starts.reserve(count);
  if (params.randomized_starts) {
    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> uniform(-pi, pi);
    for (std::size_t s = 0; s < count; ++s) {
      std::vector<double> x(dimensions);
      for (double& v : x) v = reduce_angle(uniform(rng));
      starts.push_back(std::move(x));
    }
  } else if (grid_fits) {
    for (std::size_t s = 0; s < count; ++s) {
      std::vector<double> x(dimensions);
      std::size_t index = s;
      for (std::size_t d = 0; d < dimensions; ++d) {
        const std::size_t j = index % per_dim;
        index /= per_dim;
        x[d] = -pi + 2.0 * pi * (static_cast<double>(j) + 0.5) / static_cast<double>(per_dim);
      }
      starts.push_back(std::move(x));
    }
  } else {
    const std::vector<std::size_t> primes = first_primes(dimensions);
    for (std::size_t s = 0; s < count; ++s) {
      std::vector<double> x(dimensions);
      for (std::size_t d = 0; d < dimensions; ++d) x[d] = reduce_angle(-pi + 2.0 * pi * radical_inverse(s + 1, primes[d]));
      starts.push_back(std::move(x));
    }
  }
  return starts;
}

CharacteristicLengthResult characteristic_length(const KinematicChain& chain, const ModelMatrix& model,
                                                 const SearchParams& params) {
  if (chain.size() != model.cols())
    throw Error(ErrorCode::ArityMismatch, "chain has " + std::to_string(chain.size()) +
                                              " links but the model matrix has " + std::to_string(model.cols()) +
                                              " columns");
  std::vector<Ordering> column_orders;
  if (params.permute_model_columns)
    column_orders = all_orderings(model.cols());
  else
    column_orders.push_back(Ordering::identity(model.cols()));

  std::optional<CharacteristicLengthResult> best;
  std::size_t starts = 0;
  std::size_t evaluations = 0;
  for (const Ordering& columns : column_orders) {
    const ModelMatrix permuted = model.permuted(columns);
    std::optional<CharacteristicLengthResult> candidate = search_one(chain, permuted, params);
    if (!candidate) continue;
    starts += candidate->starts_used;
    evaluations += candidate->evaluations;
    candidate->model_columns = columns;
    if (!best || better(*candidate, *best)) best = std::move(candidate);
  }
  if (!best) throw Error(ErrorCode::NoValidPosture, "no start reached a posture with a positive conditioning length");
  best->starts_used = starts;
  best->evaluations = evaluations;
  return *best;
}

}  // namespace isokin
