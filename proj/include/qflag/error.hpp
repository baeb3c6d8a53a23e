#pragma once

#include <stdexcept>
#include <string>

namespace qflag {

/// Input violates a documented precondition (bad shape, out-of-range index, ...).
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// An enumeration would exceed its configured cap.
class ResourceError : public std::runtime_error {
public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Caps for the brute-force oracles. Defaults match the CLI defaults.
struct Limits {
  /// Multiset permutations, multisets, ordered set partitions.
  unsigned long long word_cap = 1000000ULL;
  /// Subsets of [n] walked by the signed-subset oracles.
  unsigned long long subset_cap = 1ULL << 20;
  /// Vectors in F_p^n for flag enumeration (81 = 3^4).
  unsigned long long field_vector_cap = 81ULL;
};

}  // namespace qflag
