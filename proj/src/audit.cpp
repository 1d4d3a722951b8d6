#include "succinct/audit.hpp"

#include <atomic>

#include "succinct/error.hpp"

namespace succinct::audit {

namespace {
std::atomic<std::size_t> failures{0};
}

std::size_t violations() { return failures.load(); }

void require(bool ok, const std::string& what) {
  if (ok) return;
  ++failures;
  throw InvariantViolation("audit failed: " + what);
}

}  // namespace succinct::audit
