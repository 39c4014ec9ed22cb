#pragma once

#include <array>
#include <cstdint>

namespace tqeval {

// Philox 4x32-10 counter-based generator, after Salmon et al.,
// "Parallel random numbers: as easy as 1, 2, 3" (SC 2011).
// A pure function of (counter, key): any (seed, stream, index) coordinate
// can be evaluated on its own, so parallel substreams are reproducible by
// construction rather than by scheduling discipline.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Uniform double in the open interval (0, 1) at substream coordinate
// (seed, stream, index).
double uniform_substream(std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t index);

// Standard normal draw at the same coordinates, by inverse-CDF transform.
double normal_substream(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t index);

// Inverse of the standard normal CDF. Acklam's rational approximation
// polished with one Halley step against std::erfc; accurate to a few ulp
// across (0, 1). Throws std::domain_error outside (0, 1).
double inverse_normal_cdf(double p);

}  // namespace tqeval
