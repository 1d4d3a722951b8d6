#pragma once

#include <cstddef>
#include <string>

namespace succinct::audit {

/// Number of internal audits that have failed in this process.
std::size_t violations();

/// Records and throws InvariantViolation when `ok` is false.
void require(bool ok, const std::string& what);

}  // namespace succinct::audit
