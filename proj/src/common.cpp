#include "common.hpp"

#include <limits>

namespace varkernel {

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

std::int64_t to_int64(const BigInt& v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw CapabilityError(std::string(what) + " does not fit in a 64-bit integer: " + v.str());
  }
  return v.convert_to<std::int64_t>();
}

std::string to_string(const BigInt& v) { return v.str(); }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace varkernel
