// Atomic decomposition of a sum of two atoms, compared with the envelope integral norm.

#include <cstdio>

#include "pwenv/pwenv.hpp"

using namespace pwenv;

int main() {
  const QuadratureSpec quad;
  const Dictionary dict = make_dictionary(0.75, 1.0, quad);
  std::printf("dictionary of %zu atoms\n", dict.size());

  const SpectralDensity s = add(dict.atoms[0].density(), scale(dict.atoms[3].density(), cplx(0.0, 0.5)));
  const BandLimitedFunction f(s);
  const DecompositionResult d = minkowski_norm(f, dict, quad);
  std::printf("Minkowski upper bound %.8f (grid residual %.2e, tolerance %.2e)\n", d.objective, d.residual, d.tolerance);
  for (const auto& [atom, lambda] : d.lambdas) std::printf("  %-40s %.8f\n", atom.c_str(), lambda);

  const NormReport env = envelope_integral_norm(f, EnvelopeParams{0.75, 1.0}, quad);
  std::printf("envelope integral norm %.8f +- %.1e\n", env.value, env.quadrature_error_estimate);
  std::printf("ratio %.6f\n", d.objective / env.value);
}
