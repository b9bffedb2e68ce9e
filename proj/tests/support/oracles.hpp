#pragma once

// Test-only reference computations. None of these call into the library's
// volume, projection or kernel code.

#include <cstdint>
#include <random>
#include <vector>

#include "simplexflow/configuration.hpp"

namespace oracle {

using simplexflow::Configuration;
using simplexflow::Point;

/// det(G^T G) / (k!)^2 with G = [x_1 - x_0, ..., x_k - x_0], evaluated as
/// the squared product of the R diagonal of a QR factorisation of G.
double gram_volume_squared(const std::vector<Point>& vertices);

/// kappa / (2 (n+1) N^n) * sum over every ordered tuple in [N]^{n+1}
/// (repeats included) of the Gram volume squared.
double brute_force_potential(const Configuration& x, std::size_t order, double kappa);

/// -grad of brute_force_potential by central differences.
Configuration finite_difference_flow(const Configuration& x, std::size_t order, double kappa,
                                     double h);

/// Haar-ish random rotation via QR of a Gaussian matrix, row-major d x d.
std::vector<double> random_rotation(std::size_t d, std::mt19937_64& rng);

Configuration random_configuration(std::size_t n, std::size_t d, std::mt19937_64& rng,
                                   double half_width = 1.0);

/// N points on a random (rank)-dimensional affine subspace of R^d.
Configuration random_flat_configuration(std::size_t n, std::size_t d, std::size_t rank,
                                        std::mt19937_64& rng);

Configuration transform(const Configuration& x, const std::vector<double>& rotation,
                        const Point& shift);

}  // namespace oracle
