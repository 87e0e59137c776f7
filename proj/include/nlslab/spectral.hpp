#pragma once

#include <array>
#include <functional>
#include <vector>

#include "nlslab/field.hpp"

namespace nlslab {

// Samples u(x_j) on a uniform grid, x_j = j * side_length / M per axis.
struct PhysicalGrid {
  TorusGeometry geometry;
  std::array<int, 2> points{1, 1};
  std::vector<cd> values;

  std::size_t size() const { return values.size(); }
  double cell_volume() const;
};

// Oversampling factor ceil((p+1)/2) that makes degree-p products alias free.
int dealias_factor(int degree);

PhysicalGrid to_physical(const SpectralField& f, int oversample);
PhysicalGrid to_physical(const SpectralField& f, std::array<int, 2> points);
// Coefficients for |n_a| <= K_a; requires M_a >= 2 K_a + 1.
SpectralField from_physical(const PhysicalGrid& g, std::array<int, 2> K);

enum class NormKind { L2, Hs, DotHs };
double norm(const SpectralField& f, NormKind kind, double s = 0.0);
inline double norm_l2(const SpectralField& f) { return norm(f, NormKind::L2); }

// Riemann sum of |u|^p over the grid (spectrally exact for resolved trigonometric polynomials).
double quadrature_lp(const PhysicalGrid& g, double p);

// Sharp dyadic label: 1 if r < 2, otherwise the N with r in [N, 2N).
int sharp_shell(double r);
// Smooth partition-of-unity weight of shell N at radius r; sums to 1 over N.
double smooth_shell_weight(double r, int N);

SpectralField lp_project(const SpectralField& f, int N, bool sharp = true);
SpectralField project_set(const SpectralField& f, const std::function<bool(const Mode&)>& in_set);

// e^{it Laplacian}: multiplies f^(k) by exp(-i t |k|^2).
SpectralField free_evolve(const SpectralField& f, double t);

// (int_0^T int |u|^p dx dt)^(1/p) from uniformly spaced samples covering [0, T].
double lp_spacetime_norm(const std::vector<SpectralField>& traj, double p, double T, int oversample = 0);

// Projection to the K_out lattice of |u|^{2q} u, computed alias free.
SpectralField power_nonlinearity(const SpectralField& u, int q, std::array<int, 2> K_out);
// Projection to the K_out lattice of f * g, computed alias free.
SpectralField product(const SpectralField& f, const SpectralField& g, std::array<int, 2> K_out);

// Composite Simpson weights for n uniformly spaced samples on [0, T]
// (3/8 rule on the last three intervals when n - 1 is odd).
std::vector<double> simpson_weights(std::size_t n, double T);

}  // namespace nlslab
