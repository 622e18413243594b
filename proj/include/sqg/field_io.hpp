#ifndef SQG_FIELD_IO_HPP
#define SQG_FIELD_IO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "sqg/spectral_field.hpp"

namespace sqg::io {

/// SQGF1 layout (little-endian):
///   bytes  0-3   magic "SQGF"
///   bytes  4-7   u32 version (1)
///   bytes  8-11  u32 K
///   bytes 12-15  u32 representation (0 spectral, 1 physical)
///   bytes 16-23  f64 L
///   bytes 24-31  reserved, zero
/// then K*K row-major entries: interleaved (re, im) f64 pairs in FFT order for
/// spectral files, f64 samples u(x1_i, x2_j) for physical files.
enum class Representation : std::uint32_t { spectral = 0, physical = 1 };

inline constexpr std::size_t kHeaderBytes = 32;

void write_field(std::ostream& out, const SpectralField& u, Representation rep);
void write_field(const std::filesystem::path& path, const SpectralField& u, Representation rep);

/// Reads either representation. The grid uses the default dealias fraction
/// unless one is supplied. Throws std::runtime_error on malformed input.
SpectralField read_field(std::istream& in, double dealias_fraction = 2.0 / 3.0);
SpectralField read_field(const std::filesystem::path& path, double dealias_fraction = 2.0 / 3.0);

}  // namespace sqg::io

#endif
