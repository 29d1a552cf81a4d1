#pragma once

// Reference implementations used only by tests. Each one computes the same
// quantity as the library through a different algorithm, so agreement is
// evidence rather than tautology.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "numkit.hpp"

namespace oracles {

// Long-double accumulation, deliberately not the library kernel.
double naive_dot(std::span<const double> a, std::span<const double> b);

// Dense BFGS built by applying the rank-two update for each (s, t) pair in
// order to B = gamma I.
lhac::SymmetricDense recursive_bfgs(std::size_t dim, double gamma,
                                    const std::vector<lhac::DenseVector>& s,
                                    const std::vector<lhac::DenseVector>& t);

// Eigenvalues by cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_eigenvalues(const lhac::SymmetricDense& a);

// Minimizer of a unimodal scalar function on [lo, hi] to width tol.
double golden_section(const std::function<double(double)>& f, double lo, double hi, double tol);

// Minimizer of (a/2) z^2 + b z + lambda |c + z| by golden section, then
// checked against the subgradient optimality condition. Aborts the test run
// by throwing when the check fails.
double scalar_piecewise_min(double a, double b, double c, double lambda);

// psi(d) = grad . d + d^T B d / 2 + sum_j weights_j |w_j + d_j|
double model_value(const lhac::SymmetricDense& b, std::span<const double> grad,
                   std::span<const double> w, std::span<const double> weights,
                   std::span<const double> d);

// High-accuracy minimizer of psi over d by accelerated proximal gradient on
// the explicit dense matrix.
lhac::DenseVector dense_subproblem_reference(const lhac::SymmetricDense& b,
                                             std::span<const double> grad,
                                             std::span<const double> w,
                                             std::span<const double> weights,
                                             std::size_t iters);

// (f(w + h u) - f(w - h u)) / (2h)
double central_diff(const std::function<double(std::span<const double>)>& f,
                    std::span<const double> w, std::span<const double> u, double h);

// Correction pair with guaranteed positive curvature: t = (I + 0.25 R^T R) s
// for a random R, so s . t >= s . s.
void curvature_pair(std::mt19937_64& rng, std::size_t dim, lhac::DenseVector& s,
                    lhac::DenseVector& t);

lhac::DenseVector random_vector(std::mt19937_64& rng, std::size_t dim, double scale = 1.0);

}  // namespace oracles
