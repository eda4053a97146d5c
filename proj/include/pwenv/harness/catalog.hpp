#pragma once

// Named test functions: the Fejer kernel, endpoint bumps of several widths and orders,
// a centred bump, and sums and modulations of these.

#include <string>
#include <utility>
#include <vector>

#include "pwenv/cayley.hpp"
#include "pwenv/error.hpp"
#include "pwenv/evaluate.hpp"
#include "pwenv/spectrum.hpp"

namespace pwenv::harness {

struct CatalogEntry {
  std::string name;
  BandLimitedFunction f;
};

inline std::string eps_label(double eps) {
  if (eps == 1.0) return "1";
  if (eps == 0.5) return "1/2";
  if (eps == 0.25) return "1/4";
  if (eps == 0.125) return "1/8";
  return std::to_string(eps);
}

inline std::vector<CatalogEntry> default_catalog() {
  std::vector<CatalogEntry> out;
  auto push = [&](std::string name, SpectralDensity s) { out.push_back({std::move(name), BandLimitedFunction(std::move(s))}); };
  push("fejer", make_fejer(kPi / 2));
  for (int k : {3, 5})
    for (double eps : {1.0, 0.5, 0.25, 0.125})
      push("bump[-pi,-pi+" + eps_label(eps) + "]k" + std::to_string(k), make_bump(-kPi, -kPi + eps, k));
  const SpectralDensity centred = make_bump(-kPi / 2, kPi / 2, 3);
  push("centred", centred);
  push("centred@pi/2", modulate(centred, kPi / 2));
  push("fejer+bump", add(make_fejer(kPi / 2), make_bump(-kPi, -kPi + 1.0, 3)));
  push("centred+i*bump", add(centred, scale(make_bump(-kPi, -kPi + 0.5, 5), cplx(0.0, 0.5))));
  return out;
}

inline const CatalogEntry& find_entry(const std::vector<CatalogEntry>& cat, const std::string& name) {
  for (const auto& e : cat)
    if (e.name == name) return e;
  fail(ErrorKind::invalid_argument, "unknown catalog function '" + name + "'");
}

/// Entries whose names are listed, in catalog order; all entries when the list is empty.
inline std::vector<CatalogEntry> select(const std::vector<CatalogEntry>& cat, const std::vector<std::string>& names) {
  if (names.empty()) return cat;
  std::vector<CatalogEntry> out;
  for (const auto& n : names) out.push_back(find_entry(cat, n));
  return out;
}

/// Whether int |f|^p converges, i.e. f lies in E^p.
inline bool in_ep(const BandLimitedFunction& f, double p) { return f.is_zero() || p * f.decay_order() > 1.0; }

struct DiskEntry {
  std::string name;
  DiskFunction g;
};

inline std::vector<DiskEntry> disk_catalog() {
  return {
      {"1", DiskFunction::power_series({1.0})},
      {"w", DiskFunction::power_series({0.0, 1.0})},
      {"w^2", DiskFunction::power_series({0.0, 0.0, 1.0})},
      {"(1-w)^(1/2)", DiskFunction::one_minus_power(0.5)},
      {"fejer@pi o c^-1", DiskFunction::transferred(BandLimitedFunction(modulate(make_fejer(kPi / 2), kPi)))},
  };
}

}  // namespace pwenv::harness
