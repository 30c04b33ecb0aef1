#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "errors.hpp"
#include "orbit_cache.hpp"
#include "oracle.hpp"

using namespace henondim;

namespace {

HenonMap quadratic(double c, cplx a) { return HenonMap({HenonFactor({c, 0.0, 1.0}, a)}); }

ErrorTag tag_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.tag();
  }
  FAIL("expected an Error");
  return ErrorTag::io;
}

}  // namespace

TEST_CASE("cache round trip is bit-exact") {
  const auto g = quadratic(-6.0, cplx(0.2, 0.05));
  const auto lib = enumerate_orbits(g, 7);
  std::stringstream buf;
  cache_write(lib, buf);
  const auto back = cache_read(buf, fingerprint(g));
  CHECK(back == lib);

  const auto synthetic = synthetic_library({{0.5, 1.5, 2.0}, -0.3}, 4);
  std::stringstream sbuf;
  cache_write(synthetic, sbuf);
  CHECK(cache_read(sbuf, synthetic.fingerprint) == synthetic);
}

TEST_CASE("cache header carries the orbit columns") {
  const auto lib = enumerate_orbits(quadratic(-6.0, 0.2), 3);
  std::stringstream buf;
  cache_write(lib, buf);
  const std::string text = buf.str();
  CHECK(text.find("period,itinerary,z0_re,z0_im,w0_re,w0_im,log_mult_u,mult_u_arg,residual") !=
        std::string::npos);
  CHECK(text.find("# fingerprint=") != std::string::npos);
}

TEST_CASE("loading against another map is a fingerprint mismatch") {
  const auto lib = enumerate_orbits(quadratic(-6.0, 0.2), 3);
  std::stringstream buf;
  cache_write(lib, buf);
  CHECK(tag_of([&] { cache_read(buf, fingerprint(quadratic(-6.0, 0.25))); }) ==
        ErrorTag::fingerprint_mismatch);
}

TEST_CASE("truncated cache names the first bad row") {
  const auto g = quadratic(-6.0, 0.2);
  const auto lib = enumerate_orbits(g, 5);
  std::stringstream buf;
  cache_write(lib, buf);
  std::string text = buf.str();

  SUBCASE("cut inside a row") {
    text.resize(text.size() - 40);
    std::stringstream in(text);
    try {
      cache_read(in, fingerprint(g));
      FAIL("expected corrupt-cache");
    } catch (const Error& e) {
      CHECK(e.tag() == ErrorTag::corrupt_cache);
      CHECK(std::string(e.what()).find("row ") != std::string::npos);
    }
  }
  SUBCASE("missing rows") {
    text.resize(text.rfind('\n', text.size() - 2) + 1);
    std::stringstream in(text);
    CHECK(tag_of([&] { cache_read(in, fingerprint(g)); }) == ErrorTag::corrupt_cache);
  }
  SUBCASE("garbage number") {
    const auto pos = text.find("\n1,");
    REQUIRE(pos != std::string::npos);
    text.replace(pos + 3, 1, "x");
    std::stringstream in(text);
    CHECK(tag_of([&] { cache_read(in, fingerprint(g)); }) == ErrorTag::corrupt_cache);
  }
}

TEST_CASE("store and load through the filesystem") {
  const auto dir = std::filesystem::temp_directory_path() / "henondim_cache_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto g = quadratic(-7.0, 0.3);
  const auto lib = enumerate_orbits(g, 6);
  const auto path = dir / "lib.csv";
  cache_store(lib, path);
  CHECK(cache_load(path, fingerprint(g)) == lib);
  CHECK(tag_of([&] { cache_load(dir / "missing.csv", fingerprint(g)); }) == ErrorTag::io);
  std::filesystem::remove_all(dir);
}
