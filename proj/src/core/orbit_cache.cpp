#include "orbit_cache.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "errors.hpp"
#include "text_format.hpp"

namespace henondim {

namespace {

constexpr std::string_view kMagic = "# henondim orbit cache v1";
constexpr std::string_view kHeader =
    "period,itinerary,z0_re,z0_im,w0_re,w0_im,log_mult_u,mult_u_arg,residual,tail";

[[noreturn]] void corrupt(long line, const std::string& what) {
  throw Error(ErrorTag::corrupt_cache, "row " + std::to_string(line) + ": " + what);
}

double field_double(std::string_view text, long line, const char* name) {
  double v = 0.0;
  if (!parse_double(text, v)) corrupt(line, std::string("bad ") + name + " '" + std::string(text) + "'");
  return v;
}

long long field_int(std::string_view text, long line, const char* name) {
  long long v = 0;
  if (!parse_int(text, v)) corrupt(line, std::string("bad ") + name + " '" + std::string(text) + "'");
  return v;
}

std::optional<ErrorTag> tag_from_name(std::string_view name) {
  for (int t = 0; t <= static_cast<int>(ErrorTag::invalid_argument); ++t) {
    const auto tag = static_cast<ErrorTag>(t);
    if (tag_name(tag) == name) return tag;
  }
  return std::nullopt;
}

}  // namespace

void cache_write(const OrbitLibrary& lib, std::ostream& out) {
  out << kMagic << '\n';
  out << "# fingerprint=" << hex64(lib.fingerprint) << '\n';
  out << "# degree=" << lib.degree << '\n';
  out << "# jac_mod=" << fmt17(lib.jac_mod) << '\n';
  out << "# n_max=" << lib.n_max << '\n';
  out << "# synthetic=" << (lib.synthetic ? 1 : 0) << '\n';
  for (const auto& [n, st] : lib.status) {
    out << "# status=" << n << ' ' << (st.complete ? 1 : 0) << ' ' << st.fixed_points << ' '
        << (st.failure ? tag_name(*st.failure) : std::string_view("-")) << '\n';
  }
  out << kHeader << '\n';
  for (const auto& [n, orbits] : lib.orbits) {
    for (const auto& o : orbits) {
      const auto& p0 = o.points.at(0);
      out << o.period << ',' << o.itinerary.to_string() << ',' << fmt17(p0.z.real()) << ','
          << fmt17(p0.z.imag()) << ',' << fmt17(p0.w.real()) << ',' << fmt17(p0.w.imag()) << ','
          << fmt17(o.log_mult_u) << ',' << fmt17(o.mult_u_arg) << ',' << fmt17(o.residual) << ',';
      for (std::size_t k = 1; k < o.points.size(); ++k) {
        const auto& p = o.points[k];
        if (k > 1) out << ' ';
        out << fmt17(p.z.real()) << ' ' << fmt17(p.z.imag()) << ' ' << fmt17(p.w.real()) << ' '
            << fmt17(p.w.imag());
      }
      out << '\n';
    }
  }
}

OrbitLibrary cache_read(std::istream& in, std::uint64_t expected_fingerprint) {
  OrbitLibrary lib;
  std::string line;
  long lineno = 0;
  bool have_fp = false, have_header = false;

  if (!std::getline(in, line) || trim(line) != kMagic) corrupt(1, "missing cache signature line");
  ++lineno;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const auto body = trim(text.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      const auto key = body.substr(0, eq);
      const auto value = body.substr(eq + 1);
      if (key == "fingerprint") {
        if (value != hex64(expected_fingerprint)) {
          throw Error(ErrorTag::fingerprint_mismatch,
                      "cache written for map " + std::string(value) + ", expected " +
                          hex64(expected_fingerprint));
        }
        lib.fingerprint = expected_fingerprint;
        have_fp = true;
      } else if (key == "degree") {
        lib.degree = static_cast<int>(field_int(value, lineno, "degree"));
      } else if (key == "jac_mod") {
        lib.jac_mod = field_double(value, lineno, "jac_mod");
      } else if (key == "n_max") {
        lib.n_max = static_cast<int>(field_int(value, lineno, "n_max"));
      } else if (key == "synthetic") {
        lib.synthetic = field_int(value, lineno, "synthetic") != 0;
      } else if (key == "status") {
        std::istringstream ss{std::string(value)};
        int n = 0, complete = 0;
        std::uint64_t fixed = 0;
        std::string tag;
        if (!(ss >> n >> complete >> fixed >> tag)) corrupt(lineno, "bad status line");
        PeriodStatus st;
        st.complete = complete != 0;
        st.fixed_points = fixed;
        if (tag != "-") {
          st.failure = tag_from_name(tag);
          if (!st.failure) corrupt(lineno, "unknown failure tag '" + tag + "'");
          st.message = tag;
        }
        lib.status[n] = st;
      }
      continue;
    }
    if (!have_header) {
      if (text != kHeader) corrupt(lineno, "unexpected header row");
      if (!have_fp) corrupt(lineno, "missing fingerprint line");
      have_header = true;
      continue;
    }

    const auto fields = split(text, ',');
    if (fields.size() != 10) {
      corrupt(lineno, "expected 10 fields, found " + std::to_string(fields.size()));
    }
    PeriodicOrbit o;
    o.period = static_cast<int>(field_int(fields[0], lineno, "period"));
    if (o.period < 1 || o.period > lib.n_max) corrupt(lineno, "period out of range");
    try {
      o.itinerary = Itinerary::parse(fields[1], lib.degree);
    } catch (const Error& e) {
      corrupt(lineno, e.what());
    }
    if (o.itinerary.length() != o.period || !o.itinerary.is_canonical()) {
      corrupt(lineno, "itinerary is not a canonical word of the stated period");
    }
    o.points.resize(o.period);
    o.points[0] = {{field_double(fields[2], lineno, "z0_re"), field_double(fields[3], lineno, "z0_im")},
                   {field_double(fields[4], lineno, "w0_re"), field_double(fields[5], lineno, "w0_im")}};
    o.log_mult_u = field_double(fields[6], lineno, "log_mult_u");
    o.mult_u_arg = field_double(fields[7], lineno, "mult_u_arg");
    o.residual = field_double(fields[8], lineno, "residual");
    const auto tail_text = trim(fields[9]);
    const auto tail = tail_text.empty() ? std::vector<std::string_view>{} : split(tail_text, ' ');
    if (tail.size() != 4 * static_cast<std::size_t>(o.period - 1)) {
      corrupt(lineno, "tail holds " + std::to_string(tail.size()) + " numbers, expected " +
                          std::to_string(4 * (o.period - 1)));
    }
    for (int k = 1; k < o.period; ++k) {
      const auto* q = &tail[4 * static_cast<std::size_t>(k - 1)];
      o.points[k] = {{field_double(q[0], lineno, "tail"), field_double(q[1], lineno, "tail")},
                     {field_double(q[2], lineno, "tail"), field_double(q[3], lineno, "tail")}};
    }
    auto& bucket = lib.orbits[o.period];
    if (!bucket.empty() && !(bucket.back().itinerary < o.itinerary)) {
      corrupt(lineno, "rows out of canonical order");
    }
    bucket.push_back(std::move(o));
  }
  if (!have_header) corrupt(lineno + 1, "missing header row");

  for (const auto& [n, st] : lib.status) {
    if (!st.complete) continue;
    const auto have = lib.orbits.count(n) ? lib.orbits.at(n).size() : 0;
    const auto want = primitive_orbit_count(lib.degree, n);
    if (have != want) {
      corrupt(lineno + 1, "period " + std::to_string(n) + " has " + std::to_string(have) +
                              " orbits, expected " + std::to_string(want) + " (file truncated?)");
    }
  }
  for (int n = 1; n <= lib.n_max; ++n) lib.orbits.try_emplace(n);
  return lib;
}

void cache_store(const OrbitLibrary& lib, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorTag::io, "cannot write " + tmp);
    cache_write(lib, out);
    if (!out) throw Error(ErrorTag::io, "write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

OrbitLibrary cache_load(const std::filesystem::path& path, std::uint64_t expected_fingerprint) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorTag::io, "cannot read " + path.string());
  return cache_read(in, expected_fingerprint);
}

}  // namespace henondim
