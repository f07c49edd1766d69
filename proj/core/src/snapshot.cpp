#include "burgers/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "burgers/error.hpp"
#include "burgers/io.hpp"

namespace burgers {

namespace {

template <class T>
void put(std::vector<std::uint8_t>& out, T value) {
  std::uint8_t raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
  out.insert(out.end(), raw, raw + sizeof(T));
}

template <class T>
T take(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw InputError("snapshot is truncated");
  std::uint8_t raw[sizeof(T)];
  std::memcpy(raw, in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
  pos += sizeof(T);
  T value;
  std::memcpy(&value, raw, sizeof(T));
  return value;
}

}  // namespace

std::vector<std::uint8_t> encode_snapshot(const VectorField& u) {
  const auto& g = u.grid();
  std::vector<std::uint8_t> out{'B', 'F', 'L', 'D', kSnapshotVersion};
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dimension()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.points()));
  put<double>(out, g.length());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(u.dimension()));
  out.reserve(out.size() + g.size() * static_cast<std::size_t>(u.dimension()) * 8);
  for (const auto& c : u.components()) {
    for (double v : c.values()) put<double>(out, v);
  }
  return out;
}

VectorField decode_snapshot(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 5 || std::memcmp(bytes.data(), "BFLD", 4) != 0) throw InputError("not a BFLD snapshot");
  if (bytes[4] != kSnapshotVersion) throw InputError("unsupported snapshot version");
  std::size_t pos = 5;
  const auto d = take<std::uint32_t>(bytes, pos);
  const auto n = take<std::uint32_t>(bytes, pos);
  const auto length = take<double>(bytes, pos);
  const auto count = take<std::uint32_t>(bytes, pos);
  const GridSpec grid(static_cast<int>(d), static_cast<int>(n), length);
  if (count != d) throw InputError("snapshot component count does not match dimension");
  std::vector<ScalarField> comps;
  for (std::uint32_t c = 0; c < count; ++c) {
    std::vector<double> v(grid.size());
    for (auto& x : v) x = take<double>(bytes, pos);
    comps.emplace_back(grid, std::move(v));
  }
  if (pos != bytes.size()) throw InputError("snapshot has trailing bytes");
  return VectorField(std::move(comps));
}

void write_snapshot(const std::filesystem::path& path, const VectorField& u) {
  const auto bytes = encode_snapshot(u);
  write_file_atomic(path, std::string(bytes.begin(), bytes.end()));
}

VectorField read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open snapshot " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

}  // namespace burgers
