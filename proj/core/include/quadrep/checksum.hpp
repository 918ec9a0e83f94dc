#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace quadrep {

// 64-bit FNV-1a, used for cache and checkpoint integrity.
class Fnv1a64 {
 public:
  void update(std::span<const unsigned char> bytes) noexcept {
    for (const unsigned char b : bytes) {
      state_ ^= b;
      state_ *= 0x100000001b3ULL;
    }
  }
  void update(std::string_view text) noexcept {
    update(std::span(reinterpret_cast<const unsigned char*>(text.data()), text.size()));
  }
  std::uint64_t digest() const noexcept { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

inline std::uint64_t fnv1a64(std::string_view text) noexcept {
  Fnv1a64 h;
  h.update(text);
  return h.digest();
}

}  // namespace quadrep
