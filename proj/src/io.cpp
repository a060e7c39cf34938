#include "fracwave/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

#include "fracwave/errors.hpp"

namespace fracwave {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_for_write(const std::string& path, const char* mode = "w") {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  return f;
}

void finish(FilePtr& f, const std::string& path) {
  if (std::ferror(f.get()) || std::fclose(f.release()) != 0)
    throw IoError("write to '" + path + "' failed");
}

std::uint64_t to_little_endian(double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  return bits;
}

double from_little_endian(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

}  // namespace

Surface parse_surface(std::string_view s) {
  if (s == "u") return Surface::u;
  if (s == "sin_u") return Surface::sin_u;
  if (s == "sin_half_u") return Surface::sin_half_u;
  throw ValidationError("unknown surface '" + std::string(s) + "' (u, sin_u, sin_half_u)");
}

std::string_view to_string(Surface s) {
  switch (s) {
    case Surface::u: return "u";
    case Surface::sin_u: return "sin_u";
    case Surface::sin_half_u: return "sin_half_u";
  }
  return "u";
}

Field transform_surface(const Field& u, Surface s) {
  Field out = u;
  if (s == Surface::u) return out;
  const double scale = s == Surface::sin_u ? 1.0 : 0.5;
  for (double& v : out.values()) v = std::sin(scale * v);
  return out;
}

void write_snapshot_csv(const std::string& path, const Field& values) {
  auto f = open_for_write(path);
  std::fputs("i,j,value\n", f.get());
  for (std::size_t j = 0; j < values.n(); ++j)
    for (std::size_t i = 0; i < values.n(); ++i)
      std::fprintf(f.get(), "%zu,%zu,%.17g\n", i + 1, j + 1, values(i, j));
  finish(f, path);
}

void write_snapshot_raw(const std::string& base_path, const Field& values, const SnapshotMeta& meta) {
  const std::string bin = base_path + ".bin";
  {
    auto f = open_for_write(bin, "wb");
    std::vector<std::uint64_t> words(values.size());
    auto v = values.values();
    for (std::size_t k = 0; k < v.size(); ++k) words[k] = to_little_endian(v[k]);
    std::fwrite(words.data(), sizeof(std::uint64_t), words.size(), f.get());
    finish(f, bin);
  }
  const std::string txt = base_path + ".txt";
  auto f = open_for_write(txt);
  std::fprintf(f.get(),
               "n = %zu\nh = %.17g\na = %.17g\nb = %.17g\nt = %.17g\nstep = %zu\nalpha = %.17g\n"
               "kappa = %.17g\nnonlinearity = %s\nsurface = %s\nlayout = float64-le row-major (j, i)\n",
               values.n(), meta.grid.h, meta.grid.a, meta.grid.b, meta.time, meta.step, meta.alpha,
               meta.kappa, meta.nonlinearity.c_str(), std::string(to_string(meta.surface)).c_str());
  finish(f, txt);
}

Field read_snapshot_raw(const std::string& bin_path, std::size_t n) {
  std::ifstream in(bin_path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + bin_path + "'");
  std::vector<std::uint64_t> words(n * n);
  in.read(reinterpret_cast<char*>(words.data()), static_cast<std::streamsize>(words.size() * 8));
  if (!in) throw IoError("'" + bin_path + "' is shorter than " + std::to_string(n) + "^2 values");
  Field out(n);
  auto v = out.values();
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = from_little_endian(words[k]);
  return out;
}

void write_coeffs_csv(const std::string& path, const Coeffs1D& c) {
  auto f = open_for_write(path);
  std::fputs("i,j,value\n", f.get());
  for (std::size_t k = 0; k < c.count(); ++k) std::fprintf(f.get(), "%zu,0,%.17g\n", k, c.weights[k]);
  finish(f, path);
}

void write_coeffs_csv(const std::string& path, const Coeffs2D& c) {
  auto f = open_for_write(path);
  std::fputs("i,j,value\n", f.get());
  for (std::size_t i = 0; i < c.count; ++i)
    for (std::size_t j = 0; j < c.count; ++j)
      std::fprintf(f.get(), "%zu,%zu,%.17g\n", i, j, c.quadrant[i * c.count + j]);
  finish(f, path);
}

}  // namespace fracwave
