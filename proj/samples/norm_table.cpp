// Quasi-norms of a few band-limited functions: E^p, Hardy sections and the envelope integral.

#include <cstdio>

#include "pwenv/pwenv.hpp"

using namespace pwenv;

int main() {
  const QuadratureSpec quad;
  struct Named {
    const char* name;
    SpectralDensity s;
  };
  const Named fs[] = {
      {"fejer", make_fejer(kPi / 2)},
      {"centred bump, k=3", make_bump(-kPi / 2, kPi / 2, 3)},
      {"edge bump [-pi,-pi+1/2], k=5", make_bump(-kPi, -kPi + 0.5, 5)},
  };
  std::printf("%-30s %12s %12s %12s %14s\n", "function", "E^1", "E^0.75", "H^0.75(C+)", "envelope p=.75");
  for (const auto& [name, s] : fs) {
    const BandLimitedFunction f(s);
    const auto pair = embed_j(f);
    const NormReport e1 = ep_norm(f, 1.0, quad);
    const NormReport e75 = ep_norm(f, 0.75, quad);
    const NormReport h = hardy_halfplane_norm(pair.plus, 0.75, HalfPlane::upper, quad);
    const NormReport env = envelope_integral_norm(f, EnvelopeParams{0.75, 1.0}, quad);
    std::printf("%-30s %12.8f %12.8f %12.8f %14.8f\n", name, e1.value, e75.value, h.value, env.value);
  }
}
