#include "sqg/field_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace sqg::io {
namespace {

static_assert(std::endian::native == std::endian::little, "SQGF1 I/O assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  std::memcpy(bytes.data(), &value, sizeof(T));
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get(std::istream& in) {
  std::array<char, sizeof(T)> bytes{};
  if (!in.read(bytes.data(), bytes.size())) throw std::runtime_error("SQGF1: truncated input");
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_field(std::ostream& out, const SpectralField& u, Representation rep) {
  const GridSpec& g = u.grid();
  out.write("SQGF", 4);
  put<std::uint32_t>(out, 1);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.K));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(rep));
  put<double>(out, g.L);
  put<std::uint64_t>(out, 0);
  if (rep == Representation::spectral) {
    for (const cplx& z : u.data()) {
      put<double>(out, z.real());
      put<double>(out, z.imag());
    }
  } else {
    for (double x : u.to_physical()) put<double>(out, x);
  }
  if (!out) throw std::runtime_error("SQGF1: write failed");
}

void write_field(const std::filesystem::path& path, const SpectralField& u, Representation rep) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("SQGF1: cannot open " + path.string() + " for writing");
  write_field(out, u, rep);
}

SpectralField read_field(std::istream& in, double dealias_fraction) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4) || std::memcmp(magic.data(), "SQGF", 4) != 0)
    throw std::runtime_error("SQGF1: bad magic");
  const auto version = get<std::uint32_t>(in);
  if (version != 1) throw std::runtime_error("SQGF1: unsupported version " + std::to_string(version));
  const auto K = get<std::uint32_t>(in);
  const auto tag = get<std::uint32_t>(in);
  const auto L = get<double>(in);
  (void)get<std::uint64_t>(in);
  if (tag > 1) throw std::runtime_error("SQGF1: unknown representation tag " + std::to_string(tag));
  GridSpec grid;
  try {
    grid = make_grid(static_cast<int>(K), L, dealias_fraction);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("SQGF1: invalid header: ") + e.what());
  }
  const std::size_t count = static_cast<std::size_t>(K) * K;
  if (static_cast<Representation>(tag) == Representation::spectral) {
    SpectralField u(grid);
    auto data = u.data();
    for (std::size_t i = 0; i < count; ++i) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      data[i] = cplx(re, im);
    }
    data[0] = 0.0;
    return u;
  }
  std::vector<double> samples(count);
  for (auto& x : samples) x = get<double>(in);
  return SpectralField::from_physical(grid, samples);
}

SpectralField read_field(const std::filesystem::path& path, double dealias_fraction) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("SQGF1: cannot open " + path.string());
  return read_field(in, dealias_fraction);
}

}  // namespace sqg::io
