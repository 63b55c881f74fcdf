#pragma once

#include <string>
#include <vector>

#include "cspde/oracles.hpp"
#include "cspde/statistics.hpp"

namespace cspde {

// CSV with '#' metadata lines (estimator, abscissa name, field count, config
// hash) followed by the header abscissa,estimate,std_error,n_samples.
void write_table(const StatsTable& t, const std::string& path);
std::string render_table(const StatsTable& t);
StatsTable read_table(const std::string& path);
StatsTable parse_table(const std::string& text);

// Plain numeric CSV with optional '#' comment lines.
struct Csv {
  std::vector<std::string> comments;  // without the leading '#'
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
std::string render_csv(const Csv& csv);
Csv parse_csv(const std::string& text);
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

// key=value lines.
std::string render_report(const OracleReport& r);

}  // namespace cspde
