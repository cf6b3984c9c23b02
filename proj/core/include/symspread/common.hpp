#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace symspread {

using u8 = std::uint8_t;
using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Thrown when an enumeration or closure would exceed a configured cap.
/// Carries the size that would have been required and the cap that stopped it,
/// so callers can degrade to a "skipped" outcome instead of aborting a run.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, u64 required, u64 cap)
      : std::runtime_error(what), required_(required), cap_(cap) {}

  u64 required() const { return required_; }
  u64 cap() const { return cap_; }

 private:
  u64 required_;
  u64 cap_;
};

}  // namespace symspread
