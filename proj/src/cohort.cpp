#include "srmab/cohort.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "srmab/whittle.hpp"

namespace srmab {

TransitionKernel sample_kernel(SeedStream& stream, int* attempts) {
  int tries = 0;
  while (true) {
    ++tries;
    TransitionKernel k;
    k.p01_p = stream.u01();
    k.p11_p = stream.u01();
    k.p01_a = stream.u01();
    k.p11_a = stream.u01();
    if (validate_kernel(k).ok()) {
      if (attempts) *attempts = tries;
      return k;
    }
  }
}

namespace {

double uniform_in(SeedStream& s, double lo, double hi) {
  return lo + (hi - lo) * s.u01();
}

}  // namespace

TransitionKernel make_archetype(Archetype kind, SeedStream& stream) {
  TransitionKernel k;
  if (kind == Archetype::NonRecoverable) {
    // Stuck in the bad state: tiny escape probability even when pulled.
    k.p01_p = uniform_in(stream, 0.005, 0.05);
    k.p01_a = uniform_in(stream, k.p01_p + 0.01, 0.10);
    k.p11_p = uniform_in(stream, 0.20, 0.60);
    k.p11_a = uniform_in(stream, k.p11_p + 0.02, 0.95);
  } else {
    // Bounces back to the good state on its own.
    k.p01_p = uniform_in(stream, 0.60, 0.85);
    k.p01_a = uniform_in(stream, k.p01_p + 0.01, 0.97);
    k.p11_p = uniform_in(stream, k.p01_p + 0.01, 0.98);
    k.p11_a = uniform_in(stream, std::max(k.p11_p, k.p01_a) + 0.005, 0.995);
  }
  return k;
}

ThresholdPattern classify_threshold_pattern(const TransitionKernel& k,
                                            int probe_horizon, double beta,
                                            double tol) {
  const double w0 = whittle_index_finite(k, 0.0, probe_horizon, beta, tol);
  const double wm = whittle_index_finite(k, 0.5, probe_horizon, beta, tol);
  const double w1 = whittle_index_finite(k, 1.0, probe_horizon, beta, tol);
  const double eps = 10.0 * tol;
  const bool decreasing = w0 >= wm - eps && wm >= w1 - eps && w0 > w1 + eps;
  const bool increasing = w1 >= wm - eps && wm >= w0 - eps && w1 > w0 + eps;
  if (decreasing) return ThresholdPattern::Forward;
  if (increasing) return ThresholdPattern::Reverse;
  return ThresholdPattern::Mixed;
}

Cohort sample_uniform_cohort(int size, int lifetime, std::uint64_t seed) {
  if (size < 1) throw std::invalid_argument("sample_uniform_cohort: size must be >= 1");
  Cohort cohort;
  cohort.rows.reserve(static_cast<std::size_t>(size));
  SeedStream stream{mix(seed, kCohortGenStream), 0};
  for (int i = 0; i < size; ++i) {
    cohort.rows.push_back({i, sample_kernel(stream), lifetime});
  }
  return cohort;
}

Cohort sample_threshold_fraction_cohort(int size, double forward_fraction,
                                        int lifetime, std::uint64_t seed,
                                        long max_attempts) {
  if (size < 1) throw std::invalid_argument("sample_threshold_fraction_cohort: size must be >= 1");
  if (forward_fraction < 0.0 || forward_fraction > 1.0) {
    throw std::invalid_argument("sample_threshold_fraction_cohort: fraction must be in [0,1]");
  }
  const int want_forward = static_cast<int>(std::lround(forward_fraction * size));

  Cohort cohort;
  cohort.rows.reserve(static_cast<std::size_t>(size));
  SeedStream stream{mix(seed, kCohortGenStream, 0x7F), 0};
  int have_forward = 0, have_other = 0;
  long attempts = 0;
  while (have_forward + have_other < size) {
    if (++attempts > max_attempts) {
      std::ostringstream os;
      os << "could not fill threshold-fraction cohort (" << have_forward << "/"
         << want_forward << " forward, " << have_other << "/"
         << (size - want_forward) << " other) in " << max_attempts << " draws";
      throw GenerationExhaustedError(os.str());
    }
    const TransitionKernel k = sample_kernel(stream);
    const bool forward = classify_threshold_pattern(k) == ThresholdPattern::Forward;
    if (forward && have_forward < want_forward) {
      cohort.rows.push_back({have_forward + have_other, k, lifetime});
      ++have_forward;
    } else if (!forward && have_other < size - want_forward) {
      cohort.rows.push_back({have_forward + have_other, k, lifetime});
      ++have_other;
    }
  }
  return cohort;
}

Cohort sample_archetype_mix_cohort(int size, double frac_nonrecoverable,
                                   double frac_self_correcting, int lifetime,
                                   std::uint64_t seed) {
  if (size < 1) throw std::invalid_argument("sample_archetype_mix_cohort: size must be >= 1");
  if (frac_nonrecoverable < 0.0 || frac_self_correcting < 0.0 ||
      frac_nonrecoverable + frac_self_correcting > 1.0 + 1e-12) {
    throw std::invalid_argument("sample_archetype_mix_cohort: fractions must be in [0,1] and sum <= 1");
  }
  const int n_nonrec = static_cast<int>(std::lround(frac_nonrecoverable * size));
  const int n_self = static_cast<int>(std::lround(frac_self_correcting * size));

  Cohort cohort;
  cohort.rows.reserve(static_cast<std::size_t>(size));
  SeedStream stream{mix(seed, kCohortGenStream, 0xA7), 0};
  for (int i = 0; i < size; ++i) {
    TransitionKernel k;
    if (i < n_nonrec) {
      k = make_archetype(Archetype::NonRecoverable, stream);
    } else if (i < n_nonrec + n_self) {
      k = make_archetype(Archetype::SelfCorrecting, stream);
    } else {
      k = sample_kernel(stream);
    }
    cohort.rows.push_back({i, k, lifetime});
  }
  return cohort;
}

namespace {

std::string format_probability(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool parse_double(const std::string& field, double* out) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0' || errno == ERANGE) return false;
  *out = v;
  return true;
}

bool parse_int(const std::string& field, long* out) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(field.c_str(), &end, 10);
  if (end == field.c_str() || *end != '\0' || errno == ERANGE) return false;
  *out = v;
  return true;
}

constexpr const char* kHeader = "id,p01_p,p11_p,p01_a,p11_a,lifetime";

}  // namespace

CohortLoadResult load_cohort_csv(const std::string& path) {
  CohortLoadResult result;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    result.errors.push_back({0, "cannot open " + path});
    return result;
  }

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kHeader) {
        result.errors.push_back({1, std::string("bad header, expected `") + kHeader + "`"});
        return result;
      }
      continue;
    }
    if (line.empty()) continue;

    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 6) {
      result.errors.push_back({line_no, "expected 6 fields, got " + std::to_string(fields.size())});
      continue;
    }

    long id = 0, lifetime = 0;
    TransitionKernel k;
    bool parsed = parse_int(fields[0], &id);
    parsed = parsed && parse_double(fields[1], &k.p01_p);
    parsed = parsed && parse_double(fields[2], &k.p11_p);
    parsed = parsed && parse_double(fields[3], &k.p01_a);
    parsed = parsed && parse_double(fields[4], &k.p11_a);
    parsed = parsed && parse_int(fields[5], &lifetime);
    if (!parsed || id < 0 || lifetime < 1) {
      result.errors.push_back({line_no, "malformed row"});
      continue;
    }

    KernelValidation validation;
    try {
      validation = validate_kernel(k);
    } catch (const std::invalid_argument& e) {
      result.errors.push_back({line_no, e.what()});
      continue;
    }
    if (!validation.ok()) {
      std::string message = "constraint violations:";
      for (const auto& v : validation.violations) message += " " + v;
      result.errors.push_back({line_no, message});
      continue;
    }
    result.cohort.rows.push_back({static_cast<int>(id), k, static_cast<int>(lifetime)});
  }

  if (result.cohort.empty() && result.errors.empty()) {
    result.errors.push_back({line_no, "no arms"});
  }
  return result;
}

void save_cohort_csv(const Cohort& cohort, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_cohort_csv: cannot open " + path);
  out << kHeader << "\n";
  for (const auto& row : cohort.rows) {
    out << row.id << ',' << format_probability(row.kernel.p01_p) << ','
        << format_probability(row.kernel.p11_p) << ','
        << format_probability(row.kernel.p01_a) << ','
        << format_probability(row.kernel.p11_a) << ',' << row.lifetime << "\n";
  }
  if (!out) throw std::runtime_error("save_cohort_csv: write failed for " + path);
}

}  // namespace srmab
