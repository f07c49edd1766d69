#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "burgers/field.hpp"

namespace burgers {

/// Binary field snapshot: "BFLD", version byte, then little-endian
/// uint32 d, uint32 n, binary64 L, uint32 components, and the samples
/// as binary64, component-major, row-major within a component.
inline constexpr std::uint8_t kSnapshotVersion = 1;

std::vector<std::uint8_t> encode_snapshot(const VectorField& u);
VectorField decode_snapshot(const std::vector<std::uint8_t>& bytes);

void write_snapshot(const std::filesystem::path& path, const VectorField& u);
VectorField read_snapshot(const std::filesystem::path& path);

}  // namespace burgers
