#pragma once

// Verification suites. Each returns a VerificationReport; failures are rows, not throws.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pwenv/conformal.hpp"
#include "pwenv/envelope.hpp"
#include "pwenv/harness/catalog.hpp"
#include "pwenv/harness/config.hpp"
#include "pwenv/harness/report.hpp"
#include "pwenv/norms.hpp"

namespace pwenv::harness {

namespace detail {

inline CheckRecord error_row(const std::string& id, ojson inputs, const Error& e) {
  CheckRecord r{id, std::move(inputs), 0.0, 0.0, -std::numeric_limits<double>::infinity(), 0.0, Status::fail, e.what()};
  return r;
}

/// Relative-tolerance identity row: margin = tol * |rhs| + budget - |lhs - rhs|.
inline CheckRecord identity(std::string id, ojson inputs, double lhs, double rhs, double rel_tol, double budget,
                            std::string note = {}) {
  const double margin = rel_tol * std::abs(rhs) + budget - std::abs(lhs - rhs);
  return check(std::move(id), std::move(inputs), lhs, rhs, margin, budget, std::move(note));
}

inline double grid_max_error(const BandLimitedFunction& a, const BandLimitedFunction& b, double half_width, double step,
                             double* scale) {
  double err = 0.0, s = 0.0;
  const int n = static_cast<int>(std::lround(half_width / step));
  for (int i = -n; i <= n; ++i) {
    const cplx z(i * step, 0.0);
    const cplx fb = b(z);
    err = std::max(err, std::abs(a(z) - fb));
    s = std::max(s, std::abs(fb));
  }
  if (scale) *scale = s;
  return err;
}

}  // namespace detail

/// ep_norm and line means of the Fejer kernel against their closed forms.
inline VerificationReport check_closed_forms(const ExperimentConfig& cfg) {
  VerificationReport rep{"closed_forms", {}, {}};
  const BandLimitedFunction f(make_fejer(kPi / 2));
  const struct {
    double p, value;
  } cases[] = {{1.0, 2.0}, {2.0, std::sqrt(4.0 / 3.0)}};
  for (const auto& c : cases) {
    const ojson in{{"function", "fejer"}, {"p", c.p}};
    try {
      const NormReport r = ep_norm(f, c.p, cfg.quad);
      rep.add(detail::identity("closed_form.ep_norm", in, r.value, c.value, 1e-6, 0.0));
    } catch (const Error& e) {
      rep.add(detail::error_row("closed_form.ep_norm", in, e));
    }
  }
  const BandLimitedFunction fp(modulate(make_fejer(kPi / 2), kPi));
  for (double y : cfg.y_grid) {
    if (y == 0.0) continue;
    const double ay = std::abs(y);
    const ojson in{{"function", "fejer"}, {"p", 1.0}, {"y", y}};
    try {
      const NormReport r = lp_line_norm(f, 1.0, y, cfg.quad);
      rep.add(detail::identity("closed_form.line_mean", in, r.value, 2.0 * std::sinh(kPi * ay) / (kPi * ay), 1e-6, 0.0));
      if (y > 0.0) {
        const NormReport s = lp_line_norm(fp, 1.0, y, cfg.quad);
        const ojson in2{{"function", "fejer@pi"}, {"p", 1.0}, {"y", y}};
        rep.add(detail::identity("closed_form.line_mean", in2, s.value, (1.0 - std::exp(-kTwoPi * y)) / (kPi * y), 1e-6, 0.0));
      }
    } catch (const Error& e) {
      rep.add(detail::error_row("closed_form.line_mean", in, e));
    }
  }
  return rep;
}

/// int |f(x+iy)|^p dx <= e^{p pi |y|} int |f(x)|^p dx, with equality rows at y = 0.
inline VerificationReport check_plancherel_polya(const ExperimentConfig& cfg) {
  VerificationReport rep{"plancherel_polya", {}, {}};
  const auto cat = select(default_catalog(), cfg.catalog);
  for (const auto& e : cat) {
    for (double p : cfg.pp_p_grid) {
      if (!in_ep(e.f, p)) {
        rep.add(record("plancherel_polya.skipped", {{"function", e.name}, {"p", p}}, 0.0, 0.0, "not in E^p"));
        continue;
      }
      NormReport base;
      try {
        base = lp_line_norm(e.f, p, 0.0, cfg.quad);
      } catch (const Error& err) {
        rep.add(detail::error_row("plancherel_polya", {{"function", e.name}, {"p", p}}, err));
        continue;
      }
      for (double y : cfg.y_grid) {
        const ojson in{{"function", e.name}, {"p", p}, {"y", y}};
        try {
          const NormReport r = lp_line_norm(e.f, p, y, cfg.quad);
          if (y == 0.0) {
            rep.add(detail::identity("plancherel_polya.equality", in, r.value, base.value, 1e-9, 0.0));
            continue;
          }
          const double growth = std::exp(p * kPi * std::abs(y));
          const double rhs = growth * base.value;
          const double budget = r.quadrature_error_estimate + growth * base.quadrature_error_estimate;
          rep.add(check("plancherel_polya", in, r.value, rhs, rhs - r.value, budget));
        } catch (const Error& err) {
          rep.add(detail::error_row("plancherel_polya", in, err));
        }
      }
    }
  }
  return rep;
}

/// Q(j(f)) = f on a real grid and T(u, u) = u on a spectral grid.
inline VerificationReport check_projection(const ExperimentConfig& cfg) {
  VerificationReport rep{"projection", {}, {}};
  const PartitionOfUnity pu = make_partition(3);
  auto cat = select(default_catalog(), cfg.catalog);
  cat.push_back({"zero", BandLimitedFunction(SpectralDensity::zero())});
  for (const auto& e : cat) {
    const ojson in{{"function", e.name}, {"partition_k", pu.overlap_smoothness}};
    try {
      const BandLimitedFunction back = project_Q(embed_j(e.f), pu);
      double scale = 0.0;
      const double err = detail::grid_max_error(back, e.f, 64.0, 1.0 / 16.0, &scale);
      rep.add(check("projection.QJ", in, err, scale, 1e-8 * scale - err, 0.0));

      const SpectralDensity t = apply_T(e.f, e.f, pu);
      double dev = 0.0, sup = 0.0;
      const int n = 4096;
      for (int i = 0; i <= n; ++i) {
        const double x = -kTwoPi + kTwoPi * 2.0 * i / n;
        const cplx u = e.f.density()(x);
        dev = std::max(dev, std::abs(t(x) - u));
        sup = std::max(sup, std::abs(u));
      }
      rep.add(check("projection.T_uu", in, dev, sup, 1e-12 * sup - dev, 0.0));
    } catch (const Error& err) {
      rep.add(detail::error_row("projection", in, err));
    }
  }
  return rep;
}

/// Disk Bergman integral against its half-plane transfer.
inline VerificationReport check_conformal(const ExperimentConfig& cfg) {
  VerificationReport rep{"conformal", {}, {}};
  const std::pair<double, double> grid[] = {{1.0, 0.0}, {0.75, 1.0 / 0.75 - 2.0}, {1.0, 2.0 / 3.0}};
  auto cat = disk_catalog();
  cat.push_back({"0", DiskFunction::power_series({0.0})});
  for (const auto& [p, alpha] : grid) {
    for (const auto& d : cat) {
      const ojson in{{"function", d.name}, {"p", p}, {"alpha", alpha}};
      try {
        const TransferReport t = verify_transfer_identity(d.g, p, alpha, cfg.quad);
        if (d.name == "1" && p == 1.0 && alpha == 0.0) {
          const double dev = std::max(std::abs(t.lhs - kPi), std::abs(t.rhs - kPi));
          rep.add(check("conformal.closed_form", in, t.lhs, t.rhs, 1e-6 * kPi - dev, t.budget()));
        }
        // the tolerance is the combined budget itself, so the row budget is folded into the margin
        rep.add(check("conformal.transfer", in, t.lhs, t.rhs, t.budget() - std::abs(t.lhs - t.rhs), 0.0,
                      "budget " + format_real(t.budget())));
      } catch (const Error& err) {
        rep.add(detail::error_row("conformal.transfer", in, err));
      }
    }
  }
  return rep;
}

/// ||f + g||^q <= ||f||^q + ||g||^q for seeded random catalog pairs, and homogeneity.
inline VerificationReport check_q_envelope(const ExperimentConfig& cfg) {
  VerificationReport rep{"q_envelope", {}, {}};
  const EnvelopeParams params{cfg.envelope_p, cfg.envelope_q};
  std::vector<CatalogEntry> members;
  for (const auto& e : select(default_catalog(), cfg.catalog))
    if (in_ep(e.f, params.p)) members.push_back(e);
  if (members.size() < 2) return rep;

  std::map<std::string, NormReport> cache;
  auto norm_of = [&](const CatalogEntry& e) -> const NormReport& {
    auto it = cache.find(e.name);
    if (it == cache.end()) it = cache.emplace(e.name, envelope_integral_norm(e.f, params, cfg.quad)).first;
    return it->second;
  };
  const double q = params.q;
  auto qpow_err = [&](const NormReport& r) { return q * std::pow(r.value, q - 1.0) * r.quadrature_error_estimate; };

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) all.emplace_back(i, j);
  for (std::size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[rng() % i]);
  all.resize(std::min<std::size_t>(all.size(), static_cast<std::size_t>(cfg.pairs)));
  std::sort(all.begin(), all.end());

  for (const auto& [i, j] : all) {
    const auto& a = members[i];
    const auto& b = members[j];
    const ojson in{{"f", a.name}, {"g", b.name}, {"p", params.p}, {"q", q}};
    try {
      const NormReport& na = norm_of(a);
      const NormReport& nb = norm_of(b);
      const NormReport sum = envelope_integral_norm(BandLimitedFunction(add(a.f.density(), b.f.density())), params, cfg.quad);
      const double lhs = std::pow(sum.value, q);
      const double rhs = std::pow(na.value, q) + std::pow(nb.value, q);
      rep.add(check("q_envelope.triangle", in, lhs, rhs, rhs - lhs, qpow_err(sum) + qpow_err(na) + qpow_err(nb)));
    } catch (const Error& err) {
      rep.add(detail::error_row("q_envelope.triangle", in, err));
    }
  }

  const cplx scalars[] = {cplx(2.5, 0.0), cplx(0.0, -1.5)};
  for (std::size_t i = 0; i < std::min<std::size_t>(2, members.size()); ++i) {
    const auto& e = members[i];
    for (const cplx& c : scalars) {
      const ojson in{{"function", e.name}, {"c_re", c.real()}, {"c_im", c.imag()}, {"p", params.p}, {"q", q}};
      try {
        const NormReport scaled = envelope_integral_norm(BandLimitedFunction(scale(e.f.density(), c)), params, cfg.quad);
        rep.add(detail::identity("q_envelope.homogeneity", in, scaled.value, std::abs(c) * norm_of(e).value, 1e-10, 0.0));
      } catch (const Error& err) {
        rep.add(detail::error_row("q_envelope.homogeneity", in, err));
      }
    }
  }
  return rep;
}

/// Report-only: sup over (0, 2pi] of |s_pi(xi)| / xi^{1/p-1} for the plus section, its
/// Hardy norm, and their quotient.
inline VerificationReport check_spectral_growth(const ExperimentConfig& cfg) {
  VerificationReport rep{"spectral_growth", {}, {}};
  auto cat = select(default_catalog(), cfg.catalog);
  cat.push_back({"zero", BandLimitedFunction(SpectralDensity::zero())});
  for (const auto& e : cat) {
    for (double p : cfg.p_grid) {
      const ojson in{{"function", e.name}, {"p", p}};
      if (e.f.is_zero()) {
        rep.add(record("spectral_growth", in, 0.0, 0.0, "constant 0"));
        continue;
      }
      if (!in_ep(e.f, p)) {
        rep.add(record("spectral_growth.skipped", in, 0.0, 0.0, "not in E^p"));
        continue;
      }
      try {
        const SpectralDensity plus = modulate(e.f.density(), kPi);
        const double a = 1.0 / p - 1.0;
        double sup = 0.0;
        const int n = 8192;
        for (int i = 0; i < n; ++i) {
          const double xi = kTwoPi * (i + 0.5) / n;
          sup = std::max(sup, std::abs(plus(xi)) / std::pow(xi, a));
        }
        const NormReport h = hardy_halfplane_norm(BandLimitedFunction(plus), p, HalfPlane::upper, cfg.quad);
        rep.add(record("spectral_growth", in, sup, h.value, "constant " + format_real(sup / h.value)));
      } catch (const Error& err) {
        rep.add(detail::error_row("spectral_growth", in, err));
      }
    }
  }
  return rep;
}

/// Envelope (q = 1) to E^1 ratios of the counterexample family, asserted strictly
/// increasing as eps decreases, for each smoothness order.
inline VerificationReport run_counterexample_sweep(const ExperimentConfig& cfg) {
  VerificationReport rep{"counterexample", {}, {}};
  std::vector<double> eps = cfg.eps_grid;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  ojson table = ojson::array();
  int minimal_k = -1;
  for (int k : cfg.k_grid) {
    std::vector<CounterexampleRow> rows;
    bool ok = true;
    for (double e : eps) {
      const ojson in{{"eps", e}, {"k", k}, {"p", cfg.sweep_p}};
      try {
        rows.push_back(counterexample_row(e, cfg.sweep_p, k, cfg.quad));
        const auto& r = rows.back();
        rep.add(record("counterexample.ratio", in, r.envelope.value, r.e1.value, "ratio " + format_real(r.ratio)));
        table.push_back({{"k", k}, {"eps", e}, {"envelope", r.envelope.value}, {"e1", r.e1.value}, {"ratio", r.ratio},
                         {"ratio_error", r.ratio_error}});
      } catch (const Error& err) {
        rep.add(detail::error_row("counterexample.ratio", in, err));
        ok = false;
      }
    }
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      const ojson in{{"k", k}, {"p", cfg.sweep_p}, {"eps_from", rows[i].eps}, {"eps_to", rows[i + 1].eps}};
      CheckRecord c = check("counterexample.increasing", in, rows[i].ratio, rows[i + 1].ratio,
                            rows[i + 1].ratio - rows[i].ratio, rows[i].ratio_error + rows[i + 1].ratio_error);
      if (c.margin <= 0.0) c.status = Status::fail;
      ok = ok && c.status != Status::fail;
      rep.add(std::move(c));
    }
    if (rows.size() >= 2) {
      const ojson in{{"k", k}, {"p", cfg.sweep_p}, {"eps_from", rows.front().eps}, {"eps_to", rows.back().eps}};
      rep.add(record("counterexample.growth_factor", in, rows.back().ratio / rows.front().ratio, 0.0));
    }
    if (ok && (minimal_k < 0 || k < minimal_k)) minimal_k = k;
  }
  rep.extra["table"] = table;
  rep.extra["minimal_smoothness"] = minimal_k >= 0 ? ojson(minimal_k) : ojson(nullptr);
  return rep;
}

struct FamilyMember {
  std::string name;
  BandLimitedFunction f;
};

/// Seeded family: three single atoms, then combinations of two or three atoms.
inline std::vector<FamilyMember> equivalence_family(const Dictionary& dict, int size, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  auto uniform = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<FamilyMember> out;
  for (int m = 0; m < size; ++m) {
    const int terms = m < 3 ? 1 : 2 + static_cast<int>(rng() % 2);
    SpectralDensity acc = SpectralDensity::zero();
    std::string name;
    for (int t = 0; t < terms; ++t) {
      const std::size_t a = rng() % dict.size();
      const double r = m < 3 ? 1.0 : 0.25 + 1.75 * uniform();
      const cplx c = std::polar(r, m < 3 ? 0.0 : kTwoPi * uniform());
      acc = add(acc, scale(dict.atoms[a].density(), c));
      name += (t ? " + " : "") + format_real(c.real()) + (c.imag() >= 0 ? "+" : "") + format_real(c.imag()) + "i*" + dict.names[a];
    }
    out.push_back({name, BandLimitedFunction(acc)});
  }
  return out;
}

/// Minkowski upper bound over the dictionary against the envelope integral norm (q = 1).
inline VerificationReport run_equivalence_study(const ExperimentConfig& cfg) {
  VerificationReport rep{"equivalence", {}, {}};
  const Dictionary dict = make_dictionary(cfg.equivalence_p, 1.0, cfg.quad);
  const EnvelopeParams params{cfg.equivalence_p, 1.0};
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  ojson table = ojson::array();
  for (const auto& m : equivalence_family(dict, cfg.family_size, cfg.seed)) {
    const ojson in{{"function", m.name}, {"p", params.p}, {"q", 1.0}};
    try {
      const DecompositionResult d = minkowski_norm(m.f, dict, cfg.quad);
      const NormReport env = envelope_integral_norm(m.f, params, cfg.quad);
      const double ratio = d.objective / env.value;
      const double decades = std::log10(ratio);
      rep.add(check("equivalence.ratio_band", in, d.objective, env.value, std::min(decades + 3.0, 3.0 - decades), 0.0,
                    "ratio " + format_real(ratio) + ", grid residual " + format_real(d.residual)));
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      table.push_back({{"function", m.name}, {"minkowski_upper", d.objective}, {"envelope", env.value}, {"ratio", ratio},
                       {"atoms_used", d.lambdas.size()}, {"residual", d.residual}});
    } catch (const Error& err) {
      rep.add(detail::error_row("equivalence.ratio_band", in, err));
    }
  }
  rep.extra["dictionary_size"] = dict.size();
  rep.extra["table"] = table;
  rep.extra["empirical_constants"] = {{"min_ratio", number(lo)}, {"max_ratio", number(hi)}};
  rep.extra["caveat"] = "Minkowski values are upper bounds over a finite dictionary; no constants are known to compare with";
  return rep;
}

/// Report-only table of quasi-norms of the catalog.
inline VerificationReport run_norms(const ExperimentConfig& cfg) {
  VerificationReport rep{"norms", {}, {}};
  for (const auto& e : select(default_catalog(), cfg.catalog)) {
    for (double p : cfg.p_grid) {
      const ojson in{{"function", e.name}, {"p", p}};
      if (!in_ep(e.f, p)) {
        rep.add(record("norms.skipped", in, 0.0, 0.0, "not in E^p"));
        continue;
      }
      try {
        const NormReport ep = ep_norm(e.f, p, cfg.quad);
        rep.add(record("norms.ep", in, ep.value, ep.quadrature_error_estimate));
        const NormReport h = hardy_halfplane_norm(BandLimitedFunction(modulate(e.f.density(), kPi)), p, HalfPlane::upper, cfg.quad);
        rep.add(record("norms.hardy_plus", in, h.value, h.quadrature_error_estimate, "sup attained at y = " + format_real(h.attained_at)));
        for (double q : cfg.q_grid) {
          if (!(p < 1.0 && q > p)) continue;
          const ojson inq{{"function", e.name}, {"p", p}, {"q", q}};
          try {
            const NormReport env = envelope_integral_norm(e.f, EnvelopeParams{p, q}, cfg.quad);
            rep.add(record("norms.envelope", inq, env.value, env.quadrature_error_estimate));
          } catch (const Error& err) {
            rep.add(record("norms.envelope", inq, 0.0, 0.0, err.what()));
          }
        }
      } catch (const Error& err) {
        rep.add(detail::error_row("norms", in, err));
      }
    }
  }
  return rep;
}

inline VerificationReport run_verify(const ExperimentConfig& cfg) {
  VerificationReport rep{"verify", {}, {}};
  rep.merge(check_closed_forms(cfg));
  rep.merge(check_plancherel_polya(cfg));
  rep.merge(check_projection(cfg));
  rep.merge(check_conformal(cfg));
  rep.merge(check_q_envelope(cfg));
  rep.merge(check_spectral_growth(cfg));
  return rep;
}

}  // namespace pwenv::harness
