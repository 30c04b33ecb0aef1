#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "config.hpp"
#include "dimension.hpp"
#include "orbits.hpp"
#include "pressure.hpp"

namespace henondim {

// Enumerated orbits for a Hénon map, the synthetic library for a linear model.
OrbitLibrary build_library(const System& sys, int n_max, const OrbitOptions& opts = {});

std::filesystem::path cache_path(const std::filesystem::path& cache_dir, std::uint64_t fingerprint);

// Reuses a cached library when it covers n_max and was written for the same
// system; otherwise builds and (with a cache_dir) stores it. An empty
// cache_dir disables caching.
OrbitLibrary obtain_library(const System& sys, int n_max, const std::filesystem::path& cache_dir,
                            bool refresh = false, const OrbitOptions& opts = {});

DimensionOptions dimension_options(const RunConfig& cfg);

DimensionReport system_report(const OrbitLibrary& lib, const RunConfig& cfg);

// Maximizer-focused view of a report.
std::string maxdim_text(const DimensionReport& r);

// Runs the closed-form equivalence suite, one line per check, and returns
// the number of failures. Ends with `all-oracle-checks-passed` on success.
int oracle_selftest(std::ostream& out);

}  // namespace henondim
