#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace toxspan {

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

// 64-bit FNV-1a, chainable through `seed`.
constexpr std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = kFnvOffset) {
  std::uint64_t h = seed;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v);

// Digest of a whole file's bytes; throws std::runtime_error if unreadable.
std::uint64_t file_digest(const std::string& path);

}  // namespace toxspan
