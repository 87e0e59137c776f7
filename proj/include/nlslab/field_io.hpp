#pragma once

#include <string>

#include "nlslab/field.hpp"

namespace nlslab {

enum class StoragePrecision { Complex64, Complex128 };

// Binary checkpoint: "NLSF", u32 header length, JSON header (geometry, cutoff,
// layout, dtype), then little-endian interleaved (re, im) coefficients.
void write_field(const std::string& path, const SpectralField& f,
                 StoragePrecision prec = StoragePrecision::Complex128);
SpectralField read_field(const std::string& path);

}  // namespace nlslab
