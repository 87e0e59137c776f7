#include "nlslab/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <json.hpp>

#include "nlslab/errors.hpp"

namespace nlslab {

static_assert(std::endian::native == std::endian::little, "checkpoint format assumes a little-endian host");

namespace {
constexpr char kMagic[4] = {'N', 'L', 'S', 'F'};
}

void write_field(const std::string& path, const SpectralField& f, StoragePrecision prec) {
  const auto& g = f.geometry();
  nlohmann::json h;
  h["geometry"] = {{"dimension", g.dimension}, {"gamma", g.gamma}, {"lambda", g.lambda}};
  h["cutoff"] = {f.cutoff()[0], f.cutoff()[1]};
  h["layout"] = "row-major, axis 0 slowest, index n_a stored at n_a + K_a";
  h["dtype"] = prec == StoragePrecision::Complex64 ? "complex64" : "complex128";
  const std::string header = h.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("path", "cannot open " + path + " for writing");
  out.write(kMagic, 4);
  const auto len = static_cast<std::uint32_t>(header.size());
  out.write(reinterpret_cast<const char*>(&len), 4);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  for (const cd& v : f.coeffs()) {
    if (prec == StoragePrecision::Complex64) {
      const float p[2] = {static_cast<float>(v.real()), static_cast<float>(v.imag())};
      out.write(reinterpret_cast<const char*>(p), sizeof p);
    } else {
      const double p[2] = {v.real(), v.imag()};
      out.write(reinterpret_cast<const char*>(p), sizeof p);
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

SpectralField read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("path", "cannot open " + path);
  char magic[4];
  std::uint32_t len = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&len), 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw ValidationError("path", "not a field checkpoint: " + path);
  std::string header(len, '\0');
  in.read(header.data(), len);
  const auto h = nlohmann::json::parse(header);
  const auto& gj = h.at("geometry");
  const TorusGeometry g =
      build_geometry(gj.at("dimension").get<int>(), gj.at("gamma").get<std::vector<double>>(), gj.at("lambda").get<double>());
  SpectralField f(g, std::array<int, 2>{h.at("cutoff")[0].get<int>(), h.at("cutoff")[1].get<int>()});
  const bool single = h.at("dtype").get<std::string>() == "complex64";
  for (cd& v : f.coeffs()) {
    if (single) {
      float p[2];
      in.read(reinterpret_cast<char*>(p), sizeof p);
      v = cd(p[0], p[1]);
    } else {
      double p[2];
      in.read(reinterpret_cast<char*>(p), sizeof p);
      v = cd(p[0], p[1]);
    }
  }
  if (!in) throw ValidationError("path", "truncated checkpoint: " + path);
  return f;
}

}  // namespace nlslab
