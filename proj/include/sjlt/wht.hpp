#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sjlt {

using RealVector = std::vector<double>;

// Normalized Walsh-Hadamard transform H_n x, in place. H_n is symmetric and
// orthogonal with entries +-1/sqrt(n), so applying it twice is the identity.
// The length must be a power of 2. Each of the log2(n) stages is scaled by
// 1/sqrt(2). If `additions` is non-null it is incremented by the number of
// butterfly additions/subtractions performed (n per stage).
void wht_inplace(std::span<double> x, std::uint64_t* additions = nullptr);

RealVector wht_apply(RealVector x);

// Elementwise wht_apply; all vectors must share one length.
std::vector<RealVector> wht_apply_batch(std::vector<RealVector> xs);

}  // namespace sjlt
