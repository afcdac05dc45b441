#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace krontri {

inline constexpr const char* version_string = "krontri 0.1.0";

// 1-based vertex / row / column ids. Product vertex ids may need the full
// 64-bit range; factor ids are small.
using Index = std::uint64_t;

// Matrix entry values. Exact integer arithmetic only; overflow throws.
using Value = std::uint64_t;

// Accumulator type for totals that can exceed 2^64 (triangle totals of
// products of large factors).
using Wide = unsigned __int128;
using SignedWide = __int128;

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated preconditions, guard refusals, malformed inputs. CLI exit code 2.
class precondition_error : public error {
 public:
  using error::error;
};

// Data that fails a consistency check (checksum mismatch, oracle
// divergence). CLI exit code 1.
class validation_error : public error {
 public:
  using error::error;
};

// Internal invariants (divisibility, evenness) that can only fail on a bug.
class internal_error : public error {
 public:
  using error::error;
};

class arithmetic_overflow : public error {
 public:
  using error::error;
};

inline Value checked_add(Value a, Value b) {
  Value r;
  if (__builtin_add_overflow(a, b, &r)) throw arithmetic_overflow("integer addition overflow");
  return r;
}

inline Value checked_mul(Value a, Value b) {
  Value r;
  if (__builtin_mul_overflow(a, b, &r)) throw arithmetic_overflow("integer multiplication overflow");
  return r;
}

inline Value checked_sub(Value a, Value b) {
  if (b > a) throw arithmetic_overflow("integer subtraction underflow");
  return a - b;
}

inline std::string to_string(Wide v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  return std::string(s.rbegin(), s.rend());
}

inline Wide parse_wide(const std::string& s) {
  if (s.empty()) throw precondition_error("empty integer literal");
  Wide v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw precondition_error("bad integer literal: " + s);
    Wide next = v * 10 + static_cast<Wide>(c - '0');
    if (next < v) throw arithmetic_overflow("integer literal exceeds 128 bits: " + s);
    v = next;
  }
  return v;
}

}  // namespace krontri
