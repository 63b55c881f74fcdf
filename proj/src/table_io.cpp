#include "cspde/table_io.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "cspde/errors.hpp"
#include "cspde/text.hpp"

namespace cspde {

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t p = line.find(sep, start);
    out.emplace_back(trim(line.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start)));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

}  // namespace

std::string render_csv(const Csv& csv) {
  std::string s;
  for (const auto& c : csv.comments) s += "#" + c + "\n";
  for (std::size_t i = 0; i < csv.header.size(); ++i) s += (i ? "," : "") + csv.header[i];
  s += "\n";
  for (const auto& row : csv.rows) {
    if (row.size() != csv.header.size()) throw ContractError("csv row width differs from the header");
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_double(row[i]);
    s += "\n";
  }
  return s;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (line[0] == '#') {
      csv.comments.push_back(line.substr(1));
      continue;
    }
    auto cells = split(line, ',');
    if (csv.header.empty()) {
      csv.header = std::move(cells);
      continue;
    }
    if (cells.size() != csv.header.size())
      throw FormatError("line " + std::to_string(lineno) + ": expected " + std::to_string(csv.header.size()) +
                        " columns, got " + std::to_string(cells.size()));
    std::vector<double> row(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (!parse_double(cells[i], row[i]))
        throw FormatError("line " + std::to_string(lineno) + ": bad number '" + cells[i] + "'");
    csv.rows.push_back(std::move(row));
  }
  if (csv.header.empty()) throw FormatError("csv has no header");
  return csv;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

std::string render_table(const StatsTable& t) {
  Csv csv;
  csv.comments = {" estimator=" + t.estimator, " abscissa_name=" + t.abscissa_name,
                  " n_fields=" + std::to_string(t.n_fields), " config_hash=" + t.config_hash};
  csv.header = {"abscissa", "estimate", "std_error", "n_samples"};
  for (std::size_t i = 0; i < t.rows(); ++i)
    csv.rows.push_back({t.abscissa[i], t.estimate[i], t.std_error[i], static_cast<double>(t.n_samples[i])});
  return render_csv(csv);
}

void write_table(const StatsTable& t, const std::string& path) { write_text(path, render_table(t)); }

StatsTable parse_table(const std::string& text) {
  const Csv csv = parse_csv(text);
  if (csv.header != std::vector<std::string>{"abscissa", "estimate", "std_error", "n_samples"})
    throw FormatError("table header must be abscissa,estimate,std_error,n_samples");
  StatsTable t;
  for (const auto& c : csv.comments) {
    const std::string_view s = trim(c);
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string key(trim(s.substr(0, eq)));
    const std::string val(trim(s.substr(eq + 1)));
    if (key == "estimator") t.estimator = val;
    else if (key == "abscissa_name") t.abscissa_name = val;
    else if (key == "config_hash") t.config_hash = val;
    else if (key == "n_fields" && !parse_u64(val, t.n_fields)) throw FormatError("bad n_fields '" + val + "'");
  }
  for (const auto& r : csv.rows) {
    t.abscissa.push_back(r[0]);
    t.estimate.push_back(r[1]);
    t.std_error.push_back(r[2]);
    if (!(r[3] >= 0.0) || r[3] != std::floor(r[3])) throw FormatError("n_samples must be a nonnegative integer");
    t.n_samples.push_back(static_cast<std::uint64_t>(r[3]));
  }
  return t;
}

StatsTable read_table(const std::string& path) { return parse_table(read_text(path)); }

std::string render_report(const OracleReport& r) {
  std::string s = "name=" + r.name + "\nmethod=" + to_string(r.method) + "\n";
  for (const auto& [k, v] : r.inputs) s += "input." + k + "=" + format_double(v) + "\n";
  for (const auto& [k, v] : r.values) s += "value." + k + "=" + format_double(v) + "\n";
  s += "error_estimate=" + format_double(r.error_estimate) + "\n";
  if (!r.units.empty()) s += "units=" + r.units + "\n";
  s += std::string("warning=") + (r.warning ? "1" : "0") + "\n";
  if (!r.note.empty()) s += "note=" + r.note + "\n";
  return s;
}

}  // namespace cspde
