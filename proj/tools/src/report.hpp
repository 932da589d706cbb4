#pragma once

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <vector>

#include "epi/asymptotics.hpp"
#include "epi/epi.hpp"
#include "epi/polycert.hpp"
#include "epi/real.hpp"

namespace epi::report {

using nlohmann::json;

std::string text(const Real& x);

json to_json(const EpiReport& r);
json to_json(const StepCheck& s);
json to_json(const ThresholdReport& r);
json to_json(const SemiAsymptoticReport& r);
json to_json(const CertificateReport& r);
json to_json(const SmoothedEntropy& s);
json to_json(const TulinoRow& row);
json to_json(const KnesslProfile& profile);

/// Header row plus one line per row, comma separated, '\n' endings.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

struct Series {
  std::vector<double> x;
  std::vector<double> y;
};

/// Static line chart with axes, a y = 0 rule when it is in range, and labels.
std::string line_chart_svg(const Series& series, const std::string& title, const std::string& x_label,
                           const std::string& y_label);

}  // namespace epi::report
