#pragma once

#include <cstdint>

#include "ncrl/report.hpp"

namespace ncrl {

/// Deterministic cross-module property battery. Identical seed gives
/// byte-identical serialized reports.
Report run_selftest(std::uint64_t seed);

} // namespace ncrl
