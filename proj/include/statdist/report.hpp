#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "statdist/locc.hpp"

namespace statdist {

// Everything a run prints: a config echo sufficient to reproduce it, named
// numeric results in a fixed order, and (for protocol runs) the per-leaf
// table. Angles are entered once in radians; emit_report prints a matching
// degrees line after each entry whose name ends in "_rad".
struct Report {
  std::vector<std::pair<std::string, std::string>> config;  // echoed as "# key value"
  std::vector<std::pair<std::string, double>> values;       // "name <%.17g>"
  std::vector<LeafRecord> leaves;  // empty -> no CSV section

  void add_config(const std::string& key, const std::string& value);
  void add_value(const std::string& name, double value);
  // Adds name_rad; emit_report derives the degrees line from it.
  void add_angle(const std::string& name, double radians);
};

// Plain-text rendering: `# statdist <version>` and `# <key> <value>` config
// lines, then one `name value` line per scalar (17 significant digits,
// angles followed by a `name_deg` line), then -- if any leaves -- a CSV
// block `outcome,amp_re,amp_im,p1,p2` with dash-separated outcome strings.
// Rejects non-finite values. Byte-identical for identical reports.
void emit_report(const Report& r, std::ostream& out);
void emit_report_file(const Report& r, const std::string& path);

}  // namespace statdist
