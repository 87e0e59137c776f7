#pragma once

#include <cstdint>
#include <vector>

#include "nlslab/field.hpp"

namespace nlslab {

// |u^(k)| proportional to <k>^{-s-d/2-0.01} with uniform phases, scaled to the
// requested mass.
SpectralField random_hs(const TorusGeometry& g, std::array<int, 2> K, double s, double mass, std::uint64_t seed);

// `modes` distinct lattice points (chosen uniformly) with complex Gaussian
// amplitudes, scaled to the requested mass.
SpectralField random_modes(const TorusGeometry& g, std::array<int, 2> K, int modes, double mass,
                           std::uint64_t seed);

// The function c e^{i k.x} (coefficient c times the volume) at integer mode n.
SpectralField plane_wave(const TorusGeometry& g, std::array<int, 2> K, const Mode& n, cd c);

// Explicit mode list.
struct ModeAmplitude {
  Mode n{0, 0};
  cd c{};
};
SpectralField from_modes(const TorusGeometry& g, std::array<int, 2> K, const std::vector<ModeAmplitude>& modes);

inline constexpr double kSmallMass = 0.01;

}  // namespace nlslab
