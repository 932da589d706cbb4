#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "epi/asymptotics.hpp"
#include "epi/discrimination.hpp"
#include "epi/epi.hpp"
#include "epi/errors.hpp"
#include "epi/moments.hpp"
#include "epi/polycert.hpp"
#include "report.hpp"

namespace {

using epi::Precision;
using epi::Rational;
using epi::Real;
using epi::report::json;
using epi::report::text;

constexpr int kExitIo = 1;
constexpr int kExitArgs = 2;
constexpr int kExitBudget = 3;
constexpr int kExitConsistency = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  int precision = epi::kDefaultDigits;
  std::string out = "-";
  std::string format;
};

struct Grid {
  std::vector<std::string> p;
  std::string p_min;
  std::string p_max;
  long steps = 0;
};

Precision prec_of(const Settings& s) { return Precision{s.precision}; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  epi::report::write_csv(out, header, rows);
  return out.str();
}

void emit(const Settings& s, const std::string& body) {
  if (s.out.empty() || s.out == "-") {
    std::cout << body << std::flush;
    return;
  }
  std::ofstream file(s.out, std::ios::binary);
  if (!file) throw IoError("cannot open '" + s.out + "' for writing");
  file << body;
  file.close();
  if (!file) throw IoError("failed writing '" + s.out + "'");
}

std::string format_of(const Settings& s, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = s.format.empty() ? fallback : s.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw epi::DomainError("format '" + f + "' is not available for this subcommand");
}

Real probability(const std::string& text, Precision prec) {
  const Real p = Real::parse(text, prec);
  if (!(p > 0L) || !(p < 1L)) throw epi::DomainError("p must lie strictly inside (0,1), got " + text);
  return p;
}

// Explicit --p values, or p_min + i (p_max - p_min)/(steps - 1), computed exactly.
std::vector<Real> p_values(const Grid& g, Precision prec) {
  std::vector<Real> out;
  for (const auto& p : g.p) out.push_back(probability(p, prec));
  if (!g.p_min.empty() || !g.p_max.empty() || g.steps > 1 || (g.steps == 1 && g.p.empty())) {
    if (g.steps < 1) throw epi::DomainError("--steps must be at least 1");
    const Rational lo = epi::parse_rational(g.p_min.empty() ? "0.01" : g.p_min);
    const Rational hi = epi::parse_rational(g.p_max.empty() ? "0.99" : g.p_max);
    if (g.steps > 1 && hi < lo) throw epi::DomainError("--p-max below --p-min");
    for (long i = 0; i < g.steps; ++i) {
      const Rational p = g.steps == 1 ? lo : Rational(lo + (hi - lo) * i / (g.steps - 1));
      if (p <= 0 || p >= 1) throw epi::DomainError("grid point " + epi::to_string(p) + " is outside (0,1)");
      out.push_back(epi::to_real(p, prec));
    }
  }
  if (out.empty()) throw epi::DomainError("no p given (use --p or --p-min/--p-max/--steps)");
  return out;
}

void add_grid(CLI::App* cmd, Grid& g) {
  cmd->add_option("--p", g.p, "Probability (repeatable)");
  cmd->add_option("--p-min", g.p_min, "Grid start");
  cmd->add_option("--p-max", g.p_max, "Grid end");
  cmd->add_option("--steps", g.steps, "Number of grid points");
}

int count_sign_changes(const std::vector<Real>& values, const Real& eps) {
  int changes = 0;
  int last = 0;
  for (const auto& v : values) {
    const int s = v > eps ? 1 : (v < -eps ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<long> geometric_range(long lo, long hi) {
  std::vector<long> out;
  for (long n = lo; n <= hi; n *= 2) out.push_back(n);
  return out;
}

epi::IntegerPmf parse_weights(const std::string& list, Precision prec) {
  std::vector<Real> weights;
  Rational total = 0;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    const Rational w = epi::parse_rational(item);
    total += w;
    weights.push_back(epi::to_real(w, prec));
  }
  if (total != 1) throw epi::DomainError("--weights must sum to exactly 1, got " + epi::to_string(total));
  return {0, std::move(weights)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete entropy power inequality toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Preset file (INI)");
  Settings settings;
  app.add_option("--precision", settings.precision, "Working precision, significant digits")
      ->check(CLI::Range(epi::kMinDigits, 100000));
  app.add_option("--out", settings.out, "Output path ('-' for stdout)");
  app.add_option("--format", settings.format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));

  long m = 1;
  long n = 2;
  long cap = 2000;
  int l = 1;
  long nu = 1;
  long n_min = 0;
  long n_max = 0;
  std::string sigma = "1e-3";
  std::string tol = "1e-20";
  std::string t_value;
  std::string sub = "A";
  std::string weights;
  std::vector<long> n_list;
  Grid grid;

  auto* gap = app.add_subcommand("gap", "f(m,n,p) for binomials");
  gap->add_option("--m", m)->check(CLI::NonNegativeNumber);
  gap->add_option("--n", n)->check(CLI::NonNegativeNumber);
  add_grid(gap, grid);

  auto* sweep = app.add_subcommand("sweep", "f(m,n,p) over a p grid");
  sweep->add_option("--m", m)->check(CLI::NonNegativeNumber);
  sweep->add_option("--n", n)->check(CLI::NonNegativeNumber);
  add_grid(sweep, grid);

  auto* threshold = app.add_subcommand("threshold", "Empirical and formula thresholds n0(p)");
  add_grid(threshold, grid);
  threshold->add_option("--t", t_value, "Use p = 1/2 + sqrt(t/(4(t+4))) for this omega");
  threshold->add_option("--cap", cap)->check(CLI::PositiveNumber);

  auto* grid_cmd = app.add_subcommand("grid", "Pairwise gap table for 1 <= m, n <= max");
  grid_cmd->add_option("--m", m)->check(CLI::PositiveNumber);
  grid_cmd->add_option("--n", n)->check(CLI::PositiveNumber);
  add_grid(grid_cmd, grid);

  auto* bound = app.add_subcommand("bound", "Moment and harmonic lower bounds on H[B(n,p)]");
  add_grid(bound, grid);
  bound->add_option("--n", n)->check(CLI::PositiveNumber);
  bound->add_option("--l", l)->check(CLI::PositiveNumber);

  auto* disc = app.add_subcommand("discrimination", "C^(p) and Delta_nu for B(n,p)+1 against B(n,p)");
  add_grid(disc, grid);
  disc->add_option("--n", n)->check(CLI::NonNegativeNumber);
  disc->add_option("--nu", nu)->check(CLI::PositiveNumber);

  auto* certify = app.add_subcommand("certify", "Exact positivity certificate for g(n,t)");
  certify->add_option("--sub", sub)->check(CLI::IsMember({"A", "A'", "B", "C", "control"}));

  auto* knessl = app.add_subcommand("knessl", "g(n) = H(X^(n)) - ln(2 pi e n sigma^2)/2 and its leading term");
  add_grid(knessl, grid);
  knessl->add_option("--weights", weights, "Base pmf on 0,1,... as exact fractions, e.g. 1/3,1/3,1/3");
  knessl->add_option("--n", n_list, "Values of n (repeatable)");
  knessl->add_option("--n-min", n_min)->check(CLI::PositiveNumber);
  knessl->add_option("--n-max", n_max)->check(CLI::PositiveNumber);

  auto* smooth = app.add_subcommand("smooth", "Differential entropy of B(n,p) + N(0, sigma^2)");
  add_grid(smooth, grid);
  smooth->add_option("--n", n)->check(CLI::NonNegativeNumber);
  smooth->add_option("--sigma", sigma);
  smooth->add_option("--tol", tol);

  auto* tulino = app.add_subcommand("tulino", "Increments of h(S^(n)) against ln(n/(n-1)) and its half");
  add_grid(tulino, grid);
  tulino->add_option("--sigma", sigma);
  tulino->add_option("--n-min", n_min)->check(CLI::PositiveNumber);
  tulino->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
  tulino->add_option("--tol", tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitArgs;
  }

  try {
    const Precision prec = prec_of(settings);
    const Real eps = epi::tolerance(prec);

    if (*gap) {
      const auto ps = p_values(grid, prec);
      const std::string f = format_of(settings, "json", {"json", "csv"});
      if (f == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& p : ps) {
          const auto r = epi::epi_gap(m, n, p);
          rows.push_back({text(p), text(r.gap), r.holds ? "true" : "false"});
        }
        emit(settings, csv({"p", "gap", "holds"}, rows));
      } else {
        json out = json::array();
        for (const auto& p : ps) out.push_back(epi::report::to_json(epi::epi_gap(m, n, p)));
        emit(settings, dump(out.size() == 1 ? out[0] : out));
      }
    } else if (*sweep) {
      const auto ps = p_values(grid, prec);
      std::vector<Real> gaps;
      for (const auto& p : ps) gaps.push_back(epi::epi_gap(m, n, p).gap);
      const std::string f = format_of(settings, "csv", {"csv", "json", "svg"});
      if (f == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < ps.size(); ++i) rows.push_back({text(ps[i]), text(gaps[i])});
        emit(settings, csv({"p", "gap"}, rows));
      } else if (f == "json") {
        json points = json::array();
        for (std::size_t i = 0; i < ps.size(); ++i) points.push_back({{"p", text(ps[i])}, {"gap", text(gaps[i])}});
        emit(settings, dump({{"m", m}, {"n", n}, {"precision", prec.digits}, {"points", std::move(points)},
                             {"sign_changes", count_sign_changes(gaps, eps)}}));
      } else {
        epi::report::Series series;
        for (std::size_t i = 0; i < ps.size(); ++i) {
          series.x.push_back(ps[i].to_double());
          series.y.push_back(gaps[i].to_double());
        }
        const std::string title = "f(" + std::to_string(m) + "," + std::to_string(n) + ",p)";
        emit(settings, epi::report::line_chart_svg(series, title, "p", "gap"));
      }
    } else if (*threshold) {
      std::vector<Real> ps;
      if (!t_value.empty()) {
        const Real t = Real::parse(t_value, prec);
        if (!(t > 0L)) throw epi::DomainError("--t must be positive");
        ps.push_back(Real::ratio(1, 2, prec) + sqrt(t / (4L * (t + 4L))));
      }
      if (!grid.p.empty() || grid.steps > 0 || ps.empty()) {
        for (auto& p : p_values(grid, prec)) ps.push_back(std::move(p));
      }
      std::vector<epi::ThresholdReport> reports;
      for (const auto& p : ps) reports.push_back(epi::empirical_threshold(p, cap));
      const std::string f = format_of(settings, "json", {"json", "csv"});
      if (f == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : reports) {
          rows.push_back({text(r.p), text(r.t), r.empirical_n0 ? std::to_string(*r.empirical_n0) : "none",
                          std::to_string(r.formula_a), std::to_string(r.formula_b), std::to_string(r.cap)});
        }
        emit(settings, csv({"p", "t", "empirical_n0", "formula_a", "formula_b", "cap"}, rows));
      } else {
        json out = json::array();
        for (const auto& r : reports) out.push_back(epi::report::to_json(r));
        emit(settings, dump(out.size() == 1 ? out[0] : out));
      }
    } else if (*grid_cmd) {
      const auto ps = p_values(grid, prec);
      if (ps.size() != 1) throw epi::DomainError("grid takes a single --p");
      const auto table = epi::epi_grid_check(m, n, ps[0]);
      const std::string f = format_of(settings, "json", {"json", "csv"});
      if (f == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& row : table) {
          for (const auto& cell : row) {
            rows.push_back({std::to_string(cell.m), std::to_string(cell.n), text(cell.gap), cell.holds ? "true" : "false"});
          }
        }
        emit(settings, csv({"m", "n", "gap", "holds"}, rows));
      } else {
        json rows = json::array();
        bool all = true;
        for (const auto& row : table) {
          json r = json::array();
          for (const auto& cell : row) {
            r.push_back(text(cell.gap));
            all = all && cell.holds;
          }
          rows.push_back(std::move(r));
        }
        emit(settings, dump({{"p", text(ps[0])}, {"m_max", m}, {"n_max", n}, {"gaps", std::move(rows)}, {"all_hold", all}}));
      }
    } else if (*bound) {
      format_of(settings, "json", {"json"});
      json out = json::array();
      for (const auto& p : p_values(grid, prec)) {
        const Real h = epi::entropy(epi::binomial_pmf(n, p));
        const Real gamma = epi::cumulative_gamma_bound(n, p, l);
        const Real harmonic = epi::harmonic_lower_bound(n, p, 2 * l);
        json c = json::array();
        for (int w = 1; w <= 2 * l; ++w) c.push_back(text(epi::c_coeff(w, p)));
        out.push_back({{"p", text(p)},
                       {"n", n},
                       {"l", l},
                       {"entropy", text(h)},
                       {"gamma_bound", text(gamma)},
                       {"harmonic_bound", text(harmonic)},
                       {"c", std::move(c)},
                       {"gamma_holds", gamma <= h + eps},
                       {"harmonic_holds", harmonic <= h + eps}});
      }
      emit(settings, dump(out.size() == 1 ? out[0] : out));
    } else if (*disc) {
      format_of(settings, "json", {"json"});
      json out = json::array();
      for (const auto& p : p_values(grid, prec)) {
        const auto base = epi::binomial_pmf(n, p);
        const auto shifted = epi::shift(base, 1);
        const auto series = epi::cap_via_series(shifted, base, p, eps);
        const auto h = epi::binomial_entropies(n + 1, p);
        out.push_back({{"p", text(p)},
                       {"n", n},
                       {"nu", nu},
                       {"increment", text(h[static_cast<std::size_t>(n + 1)] - h[static_cast<std::size_t>(n)])},
                       {"cap_shifted_first", text(epi::cap_discrimination(shifted, base, p))},
                       {"cap_base_first", text(epi::cap_discrimination(base, shifted, p))},
                       {"cap_series", text(series.partial_sum)},
                       {"series_terms", series.terms_used},
                       {"series_tail_bound", series.tail_bound.str(6)},
                       {"triangular", text(epi::tri_discrimination(shifted, base, p, nu))}});
      }
      emit(settings, dump(out.size() == 1 ? out[0] : out));
    } else if (*certify) {
      const auto report = epi::certify(sub);
      const std::string f = format_of(settings, "json", {"json", "csv"});
      if (f == "csv") {
        std::vector<std::vector<std::string>> rows;
        const json full = epi::report::to_json(report);
        for (const auto& c : full["coefficients"]) {
          rows.push_back({std::to_string(c[0].get<int>()), std::to_string(c[1].get<int>()), c[2].get<std::string>()});
        }
        emit(settings, csv({"deg_m", "deg_t", "coefficient"}, rows));
      } else {
        emit(settings, dump(epi::report::to_json(report)));
      }
    } else if (*knessl) {
      format_of(settings, "json", {"json"});
      std::vector<epi::IntegerPmf> bases;
      std::vector<std::string> labels;
      if (!weights.empty()) {
        bases.push_back(parse_weights(weights, prec));
        labels.push_back("weights " + weights);
      }
      if (!grid.p.empty() || grid.steps > 0 || bases.empty()) {
        for (const auto& p : p_values(grid, prec)) {
          bases.push_back(epi::binomial_pmf(1, p));
          labels.push_back("bernoulli " + text(p));
        }
      }
      std::vector<long> ns = n_list;
      if (ns.empty()) ns = geometric_range(n_min > 0 ? n_min : 256, n_max > 0 ? n_max : 4096);
      json out = json::array();
      for (std::size_t b = 0; b < bases.size(); ++b) {
        const auto profile = epi::knessl_profile(bases[b], ns, labels[b]);
        json j = epi::report::to_json(profile);
        const auto lead = epi::predicted_leading_term(bases[b]);
        j["predicted_constant"] = text(-lead.constant);
        j["predicted_exponent"] = lead.exponent;
        json scaled = json::array();
        for (const auto& [k, g] : profile.g_values) {
          scaled.push_back({{"n", k}, {"scaled_g", text(g * pow(Real(k, prec), lead.exponent))}});
        }
        j["scaled"] = std::move(scaled);
        if (ns.size() >= 4) {
          std::vector<Real> g;
          for (long k : ns) g.push_back(profile.g_values.at(k));
          const auto fit = epi::fit_power_law(ns, g);
          j["fit"] = {{"constant", -fit.constant}, {"exponent", fit.exponent}, {"monotone", fit.monotone}};
        }
        out.push_back(std::move(j));
      }
      emit(settings, dump(out.size() == 1 ? out[0] : out));
    } else if (*smooth) {
      format_of(settings, "json", {"json"});
      const Real s = Real::parse(sigma, prec);
      const Real tolerance = Real::parse(tol, prec);
      json out = json::array();
      for (const auto& p : p_values(grid, prec)) {
        auto result = epi::gaussian_smoothed_entropy(epi::binomial_pmf(n, p), s, tolerance);
        result.n = n;
        json j = epi::report::to_json(result);
        const Real gaussian = log(2L * Real::pi(prec) * exp(Real(1L, prec)) * s * s) / 2L;
        j["p"] = text(p);
        j["h_minus_gaussian"] = text(result.h_value - gaussian);
        j["discrete_entropy"] = text(epi::entropy(epi::binomial_pmf(n, p)));
        out.push_back(std::move(j));
      }
      emit(settings, dump(out.size() == 1 ? out[0] : out));
    } else if (*tulino) {
      const auto ps = p_values(grid, prec);
      if (ps.size() != 1) throw epi::DomainError("tulino takes a single --p");
      const auto rows = epi::tulino_verdu_compare(ps[0], Real::parse(sigma, prec), n_min > 0 ? n_min : 8,
                                                  n_max > 0 ? n_max : 64, Real::parse(tol, prec));
      const std::string f = format_of(settings, "json", {"json", "csv"});
      if (f == "csv") {
        std::vector<std::vector<std::string>> table;
        for (const auto& r : rows) {
          table.push_back({std::to_string(r.n), text(r.increment), text(r.half_log), text(r.full_log),
                           r.quadrature_error.str(6), r.half_holds ? "true" : "false", r.full_holds ? "true" : "false"});
        }
        emit(settings, csv({"n", "increment", "half_log", "full_log", "quadrature_error", "half_holds", "full_holds"}, table));
      } else {
        json out = json::array();
        for (const auto& r : rows) out.push_back(epi::report::to_json(r));
        emit(settings, dump({{"p", text(ps[0])}, {"sigma", sigma}, {"rows", std::move(out)}}));
      }
    }
  } catch (const IoError& e) {
    std::cerr << "epi: " << e.what() << '\n';
    return kExitIo;
  } catch (const epi::ConsistencyError& e) {
    std::cerr << "epi: internal consistency failure: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const epi::BudgetExceeded& e) {
    std::cerr << "epi: " << e.what() << '\n';
    return kExitBudget;
  } catch (const epi::TruncationError& e) {
    std::cerr << "epi: " << e.what() << '\n';
    return kExitBudget;
  } catch (const epi::InfiniteDivergence& e) {
    std::cerr << "epi: " << e.what() << '\n';
    return kExitArgs;
  } catch (const std::invalid_argument& e) {
    std::cerr << "epi: " << e.what() << '\n';
    return kExitArgs;
  }
  return 0;
}
