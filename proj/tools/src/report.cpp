#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace epi::report {

namespace {

std::string fixed(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string short_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string text(const Real& x) { return x.str(); }

json to_json(const EpiReport& r) {
  json j{{"m", r.m}, {"n", r.n}, {"gap", text(r.gap)}, {"holds", r.holds}, {"precision", r.precision}};
  if (r.p) j["p"] = text(*r.p);
  return j;
}

json to_json(const StepCheck& s) { return {{"n", s.n}, {"margin", text(s.margin)}, {"holds", s.holds}}; }

json to_json(const ThresholdReport& r) {
  json j{{"p", text(r.p)},       {"t", text(r.t)},     {"formula_a", r.formula_a},
         {"formula_b", r.formula_b}, {"cap", r.cap}};
  if (r.empirical_n0) {
    j["empirical_n0"] = *r.empirical_n0;
  } else {
    j["empirical_n0"] = "not found below cap";
  }
  return j;
}

json to_json(const SemiAsymptoticReport& r) {
  return {{"m", r.m}, {"entropy", text(r.entropy)}, {"gaussian", text(r.gaussian)}, {"holds", r.holds}};
}

json to_json(const CertificateReport& r) {
  json coefficients = json::array();
  std::vector<std::pair<BivarPoly::Key, Rational>> terms(r.polynomial.terms().begin(), r.polynomial.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (a.first.first != b.first.first) return a.first.first > b.first.first;
    return a.first.second < b.first.second;
  });
  for (const auto& [key, c] : terms) coefficients.push_back(json::array({key.first, key.second, to_string(c)}));
  return {{"substitution", r.substitution},
          {"description", r.description},
          {"coefficients", std::move(coefficients)},
          {"min_coefficient", to_string(r.min_coefficient)},
          {"all_nonneg", r.all_nonneg}};
}

json to_json(const SmoothedEntropy& s) {
  return {{"n", s.n}, {"sigma", text(s.sigma)}, {"h", text(s.h_value)}, {"quadrature_error", s.quadrature_error.str(6)}};
}

json to_json(const TulinoRow& row) {
  return {{"n", row.n},
          {"increment", text(row.increment)},
          {"half_log", text(row.half_log)},
          {"full_log", text(row.full_log)},
          {"quadrature_error", row.quadrature_error.str(6)},
          {"half_holds", row.half_holds},
          {"full_holds", row.full_holds}};
}

json to_json(const KnesslProfile& profile) {
  json g = json::array();
  for (const auto& [n, value] : profile.g_values) g.push_back({{"n", n}, {"g", text(value)}});
  json kappa = json::array();
  for (int i = 1; i <= profile.kappa.order(); ++i) kappa.push_back(text(profile.kappa(i)));
  json j{{"base", profile.base}, {"sigma2", text(profile.sigma2)}, {"kappa", std::move(kappa)}, {"g", std::move(g)}};
  if (profile.onset) {
    j["onset"] = *profile.onset;
  } else {
    j["onset"] = nullptr;
  }
  return j;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
}

std::string line_chart_svg(const Series& series, const std::string& title, const std::string& x_label,
                           const std::string& y_label) {
  constexpr double width = 640;
  constexpr double height = 400;
  constexpr double left = 70;
  constexpr double right = 20;
  constexpr double top = 40;
  constexpr double bottom = 50;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!series.x.empty()) {
    x0 = *std::min_element(series.x.begin(), series.x.end());
    x1 = *std::max_element(series.x.begin(), series.x.end());
    y0 = *std::min_element(series.y.begin(), series.y.end());
    y1 = *std::max_element(series.y.begin(), series.y.end());
  }
  if (x1 == x0) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 == y0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * (width - left - right); };
  auto sy = [&](double y) { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
      << escape(title) << "</text>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
      << height - bottom << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
      << "\" stroke=\"black\"/>\n";
  if (y0 < 0 && y1 > 0) {
    svg << "<line x1=\"" << left << "\" y1=\"" << fixed(sy(0)) << "\" x2=\"" << width - right << "\" y2=\""
        << fixed(sy(0)) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4;
    const double yv = y0 + (y1 - y0) * i / 4;
    svg << "<text x=\"" << fixed(sx(xv)) << "\" y=\"" << height - bottom + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << short_number(xv) << "</text>\n";
    svg << "<text x=\"" << left - 6 << "\" y=\"" << fixed(sy(yv) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << short_number(yv) << "</text>\n";
  }
  svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << escape(x_label) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << height / 2 << "\" transform=\"rotate(-90 16 " << height / 2
      << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << escape(y_label) << "</text>\n";
  svg << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < series.x.size(); ++i) {
    if (i) svg << ' ';
    svg << fixed(sx(series.x[i])) << ',' << fixed(sy(series.y[i]));
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

}  // namespace epi::report
