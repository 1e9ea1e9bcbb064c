#pragma once

#include <string>
#include <vector>

#include "thzchan/mediadb.hpp"
#include "thzchan/sweep.hpp"

namespace thzchan {

enum class OutputFormat { csv, json, svg };

OutputFormat output_format_from_name(const std::string& name);

/// Where and how a command writes its table. `path` of "-" means stdout.
struct OutputSpec {
  OutputFormat format = OutputFormat::csv;
  std::string path = "-";
  int precision = 9;  // significant digits, 3..17

  void validate() const;
};

/// Locale-independent shortest text for `value` at `precision` significant
/// digits ('.' decimal point, %g-style exponent switching).
std::string format_double(double value, int precision);

/// CSV tables. Column names and order are part of the public contract.
/// Rows are '\n'-separated, header always present.
std::string medium_table_csv(const std::vector<OpticalState>& rows, int precision);
std::string sweep_csv(const SweepResult& result, int precision);
std::string attribution_csv(SweepAxis axis, const std::vector<AttributionRow>& rows,
                            int precision);

/// JSON documents (serialized text, shortest round-trip numbers).
std::string medium_table_json(const std::string& medium_id,
                              const std::vector<OpticalState>& rows);
std::string sweep_json(const SweepResult& result);
std::string attribution_json(SweepAxis axis, const std::vector<AttributionRow>& rows);

/// Self-contained 800x600 SVG line plot of total loss against the swept
/// axis, one series per medium in request order, fixed palette, linear dB
/// y-axis.
std::string sweep_svg(const SweepResult& result, const std::string& title);

/// Writes `content` to `path`, or to stdout when path is "-". File writes
/// go through a temporary and a rename so a failed command never leaves a
/// partial file behind.
void write_output(const std::string& content, const std::string& path);

}  // namespace thzchan
