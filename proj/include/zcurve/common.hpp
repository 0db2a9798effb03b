#pragma once

#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace zcurve {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 6.283185307179586476925286766559005768;
inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;
inline constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

// A diagnostic surfaced by a computation: never silently dropped, never fatal
// by itself.  The CLI maps a nonempty findings list to exit status 2.
struct Finding {
  std::string code;    // short machine-readable tag, e.g. "suspect-pair"
  std::string detail;  // human-readable explanation
  double t = 0.0;      // ordinate the finding refers to (0 when n/a)
};

// Compensated (Kahan) accumulator.  The extended-precision variant is used
// for the Riemann-Siegel sums, the double variant for quadrature reductions.
template <typename T>
struct Kahan {
  T sum = 0, c = 0;
  void add(T x) {
    T y = x - c;
    T t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  T value() const { return sum; }
};

// FNV-1a over a canonical string rendering; used to key caches and tag
// emitted artifacts with the options that produced them.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

// Round-trip decimal rendering of a double (deterministic across runs of the
// same binary; %.17g always round-trips).
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Display rendering for labels: drops the artifacts of decimal-to-binary
// conversion ("0.24" rather than "0.23999999999999999") at 15 digits.
inline std::string fmt_label(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline std::string fmt_hex(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Deterministic parallel loop: the index space is cut into fixed chunks that
// do not depend on the thread count; results must be written to disjoint
// slots by index.  With threads <= 1 it degenerates to a plain loop.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  unsigned hw = std::thread::hardware_concurrency();
  int nt = static_cast<int>(std::min<std::size_t>(
      std::min<unsigned>(static_cast<unsigned>(threads), hw ? hw : 1), n));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  std::mutex err_mutex;
  std::exception_ptr first_error;
  for (int w = 0; w < nt; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = static_cast<std::size_t>(w); i < n;
             i += static_cast<std::size_t>(nt))
          body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace zcurve
