#include "statdist/report.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "statdist/defaults.hpp"
#include "statdist/errors.hpp"
#include "statdist/io.hpp"

namespace statdist {

namespace {

bool ends_with_rad(const std::string& name) {
  return name.size() >= 4 && name.compare(name.size() - 4, 4, "_rad") == 0;
}

}  // namespace

void Report::add_config(const std::string& key, const std::string& value) {
  config.emplace_back(key, value);
}

void Report::add_value(const std::string& name, double value) {
  if (!std::isfinite(value)) {
    throw UsageError("non-finite report value " + name);
  }
  values.emplace_back(name, value);
}

void Report::add_angle(const std::string& name, double radians) {
  add_value(name + "_rad", radians);
}

void emit_report(const Report& r, std::ostream& out) {
  out << "# statdist " << kVersion << "\n";
  for (const auto& [key, value] : r.config) {
    out << "# " << key << " " << value << "\n";
  }
  for (const auto& [name, value] : r.values) {
    if (!std::isfinite(value)) {
      throw UsageError("non-finite report value " + name);
    }
    out << name << " " << format_double(value) << "\n";
    if (ends_with_rad(name)) {
      const std::string deg_name =
          name.substr(0, name.size() - 4) + "_deg";
      out << deg_name << " "
          << format_double(value * (180.0 / std::numbers::pi)) << "\n";
    }
  }
  if (!r.leaves.empty()) {
    out << "outcome,amp_re,amp_im,p1,p2\n";
    for (const LeafRecord& leaf : r.leaves) {
      for (std::size_t k = 0; k < leaf.outcome.size(); ++k) {
        if (k > 0) out << "-";
        out << leaf.outcome[k];
      }
      out << "," << format_double(leaf.amplitude.real()) << ","
          << format_double(leaf.amplitude.imag()) << ","
          << format_double(leaf.p1) << "," << format_double(leaf.p2) << "\n";
    }
  }
}

void emit_report_file(const Report& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw UsageError("cannot open " + path + " for writing");
  }
  emit_report(r, out);
  if (!out) {
    throw UsageError("failed writing " + path);
  }
}

}  // namespace statdist
