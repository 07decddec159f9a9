#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace finring {

/// Index of an element inside its ring's canonically ordered universe.
using Elem = std::uint32_t;

/// Size caps for ring construction and lattice enumeration.
///
/// Construction of a ring with more than `max_ring_size` elements fails, and
/// operations that enumerate the full ideal lattice refuse rings larger than
/// `max_ideal_enum`.
struct Caps {
    std::size_t max_ring_size = 4096;
    std::size_t max_ideal_enum = 512;

    /// Reads FINRING_MAX_RING_SIZE / FINRING_MAX_IDEAL_ENUM, falling back to
    /// the defaults for unset or unparsable values.
    static Caps from_env() {
        Caps caps;
        if (const char* v = std::getenv("FINRING_MAX_RING_SIZE")) {
            char* end = nullptr;
            unsigned long n = std::strtoul(v, &end, 10);
            if (end && *end == '\0' && n > 0) caps.max_ring_size = n;
        }
        if (const char* v = std::getenv("FINRING_MAX_IDEAL_ENUM")) {
            char* end = nullptr;
            unsigned long n = std::strtoul(v, &end, 10);
            if (end && *end == '\0' && n > 0) caps.max_ideal_enum = n;
        }
        return caps;
    }
};

class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A mathematically invalid input: bad descriptor arguments, a non-hom map,
/// a contraction mismatch, an improper ideal where a proper one is required.
class ValidationError : public Error {
  public:
    using Error::Error;
};

class CapExceededError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class ZeroRingError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class DegenerateLocalizationError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class LatticeTooLargeError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Two independent computation routes disagreed. This is never a legitimate
/// mathematical outcome; it indicates a bug in the engine itself.
class InternalCheckError : public Error {
  public:
    using Error::Error;
};

namespace detail {

inline std::uint64_t fnv1a(std::string_view s,
                           std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

/// Deterministic RNG wrapper. std::uniform_int_distribution is not pinned by
/// the standard, so bounded draws go through this instead.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        // splitmix64: tiny, standard-free, identical everywhere.
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform-ish draw in [0, n). Modulo bias is irrelevant at our scales.
    std::size_t below(std::size_t n) { return n ? static_cast<std::size_t>(next() % n) : 0; }

  private:
    std::uint64_t state_;
};

}  // namespace detail

}  // namespace finring
