#include "crancost/errors.hpp"
#include "crancost/parallel.hpp"
#include "crancost/seeding.hpp"

#include <cstdlib>
#include <string>

namespace crancost {

const char* category_name(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::kParameter: return "parameter";
    case ErrorCategory::kAssignment: return "assignment";
    case ErrorCategory::kNumerical: return "numerical";
    case ErrorCategory::kDomain: return "domain";
    case ErrorCategory::kConfig: return "config";
    case ErrorCategory::kEstimation: return "estimation";
    case ErrorCategory::kIo: return "io";
  }
  return "unknown";
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t counter) noexcept {
  return splitmix64(master ^ splitmix64((stream << 32) + counter));
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("CRANCOST_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return 1;
}

}  // namespace crancost
