#pragma once

#include <cstddef>
#include <cstdint>

namespace wavrep {

/// Counter-based uniform variate in [0, 1) keyed by (seed, index, stream);
/// identical on every platform and independent of evaluation order.
double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t stream);

/// Worker count from WAVREP_THREADS (default 1).
std::size_t configured_threads();

}  // namespace wavrep
