#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "orbits.hpp"

namespace henondim {

// Delimited-text orbit cache. Comment lines (#) carry the map fingerprint and
// per-period completeness; the header row is
//   period,itinerary,z0_re,z0_im,w0_re,w0_im,log_mult_u,mult_u_arg,residual,tail
// where `tail` holds the remaining n-1 cycle points as space-separated
// z_re z_im w_re w_im quadruples. Decimals carry 17 significant digits, so a
// round trip is bit-exact.
void cache_write(const OrbitLibrary& lib, std::ostream& out);
OrbitLibrary cache_read(std::istream& in, std::uint64_t expected_fingerprint);

void cache_store(const OrbitLibrary& lib, const std::filesystem::path& path);
// Throws Error(fingerprint_mismatch) when the file was written for another
// map, Error(corrupt_cache) naming the first bad row otherwise.
OrbitLibrary cache_load(const std::filesystem::path& path, std::uint64_t expected_fingerprint);

}  // namespace henondim
