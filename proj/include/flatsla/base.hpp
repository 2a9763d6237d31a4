// include/flatsla/base.hpp

// Copyright 2026 The flatsla Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef FLATSLA_BASE_HPP_
#define FLATSLA_BASE_HPP_

#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flatsla {

/// All library failures are reported with this exception type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline void Append(std::ostringstream&) {}
template <typename T, typename... Rest>
void Append(std::ostringstream& os, const T& v, const Rest&... rest) {
  os << v;
  Append(os, rest...);
}
}  // namespace detail

/// Throws Error with the streamed concatenation of the arguments.
template <typename... Args>
[[noreturn]] void Fail(const Args&... args) {
  std::ostringstream os;
  detail::Append(os, args...);
  throw Error(os.str());
}

/// Seeded generator with portable distributions. The standard library
/// distributions are implementation-defined, so outputs that end up in files
/// go through these helpers instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t Below(std::size_t n) {
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
  }

  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[Below(i)]);
    }
  }

  template <typename T>
  const T& Pick(const std::vector<T>& v) {
    return v[Below(v.size())];
  }

 private:
  std::mt19937_64 engine_;
};

/// Mixes a base seed with a stream tag so sub-components draw independent
/// streams (splitmix64 finalizer).
inline std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Trims ASCII white space and lowercases ASCII plus the Latin-1 letters
/// encoded as two-byte UTF-8 (so "Käse" and "KÄSE" normalize alike).
std::string NormalizeWord(std::string_view word);

std::string_view Trim(std::string_view s);

/// Splits on a single delimiter character, keeping empty fields.
std::vector<std::string> Split(std::string_view s, char delim);

/// Splits on runs of white space.
std::vector<std::string> SplitWhitespace(std::string_view s);

/// Formats a double with the shortest representation that round-trips.
std::string FormatDouble(double v);

/// Formats with a fixed number of decimals, used for report files.
std::string FormatFixed(double v, int decimals);

double ParseDouble(std::string_view s, std::string_view what);
long long ParseInt(std::string_view s, std::string_view what);

}  // namespace flatsla

#endif  // FLATSLA_BASE_HPP_
