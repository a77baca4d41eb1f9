#pragma once

#include <cstdlib>

namespace quadlat::caps {

inline long env_cap(const char* name, long fallback) {
  const char* s = std::getenv(name);
  if (!s || !*s) return fallback;
  long v = std::atol(s);
  return v > 0 ? v : fallback;
}

// enumeration cap for discriminant groups (isotropic subgroups, gluings)
inline long disc() {
  static long v = env_cap("QUADLAT_CAP_DISC", 10000);
  return v;
}

// cap on emitted short vectors
inline long shortvec() {
  static long v = env_cap("QUADLAT_CAP_SHORTVEC", 1000000);
  return v;
}

// candidate cap for the isotropic-vector search in contains_u
inline long usearch() {
  static long v = env_cap("QUADLAT_CAP_USEARCH", 1000000);
  return v;
}

}  // namespace quadlat::caps
