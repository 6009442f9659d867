#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace residua {

using u8 = uint8_t;
using u32 = uint32_t;
using u64 = uint64_t;
using i64 = int64_t;

// Thrown when a request would overflow fixed-width arithmetic or exceed the
// memory envelope of the chosen representation. CLI maps this to exit code 3.
class range_error : public std::runtime_error {
 public:
  explicit range_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

inline void require_range(bool ok, const std::string& msg) {
  if (!ok) throw range_error(msg);
}

}  // namespace residua
