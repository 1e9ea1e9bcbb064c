#include "thzchan/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace thzchan {

namespace {

using nlohmann::ordered_json;

constexpr std::array<const char*, 6> palette = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Fixed two-decimal pixel coordinates keep the markup byte-deterministic.
std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// Largest "nice" step (1/2/5 x 10^k) not above `raw`.
double nice_step(double raw) {
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  if (frac >= 5.0) return 5.0 * mag;
  if (frac >= 2.0) return 2.0 * mag;
  return mag;
}

const char* convention_name(AbsorptionWavelength convention) {
  return convention == AbsorptionWavelength::guided ? "guided" : "free-space";
}

ordered_json optical_json(const OpticalState& s) {
  ordered_json j;
  j["f_hz"] = s.frequency.f;
  j["lambda0_m"] = s.frequency.lambda_0;
  j["eps_real"] = s.permittivity.eps_real;
  j["eps_imag"] = s.permittivity.eps_imag;
  j["n_real"] = s.index.n_real;
  j["n_imag"] = s.index.n_imag;
  j["lambda_g_m"] = s.lambda_g;
  j["mu_abs_per_m"] = s.mu_abs;
  return j;
}

}  // namespace

OutputFormat output_format_from_name(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  if (name == "svg") return OutputFormat::svg;
  throw std::invalid_argument("unknown format '" + name + "' (valid: csv, json, svg)");
}

void OutputSpec::validate() const {
  if (precision < 3 || precision > 17) {
    throw std::invalid_argument("precision must be in [3, 17]");
  }
}

std::string format_double(double value, int precision) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, precision);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return {buf, ptr};
}

std::string medium_table_csv(const std::vector<OpticalState>& rows, int precision) {
  std::string out =
      "f_hz,lambda0_m,eps_real,eps_imag,n_real,n_imag,lambda_g_m,mu_abs_per_m\n";
  for (const OpticalState& s : rows) {
    out += format_double(s.frequency.f, precision) + ',' +
           format_double(s.frequency.lambda_0, precision) + ',' +
           format_double(s.permittivity.eps_real, precision) + ',' +
           format_double(s.permittivity.eps_imag, precision) + ',' +
           format_double(s.index.n_real, precision) + ',' +
           format_double(s.index.n_imag, precision) + ',' +
           format_double(s.lambda_g, precision) + ',' +
           format_double(s.mu_abs, precision) + '\n';
  }
  return out;
}

std::string sweep_csv(const SweepResult& result, int precision) {
  std::string out =
      "medium,axis_value,f_hz,lambda0_m,distance_m,beam_width_rad,eps_real,eps_imag,"
      "n_real,n_imag,lambda_g_m,mu_abs_per_m,spreading_db,absorption_db,"
      "scattering_db,total_db\n";
  for (const SweepRow& row : result.rows) {
    const OpticalState& s = row.optical;
    out += row.medium_id + ',' + format_double(row.axis_value, precision) + ',' +
           format_double(s.frequency.f, precision) + ',' +
           format_double(s.frequency.lambda_0, precision) + ',' +
           format_double(row.geometry.distance, precision) + ',' +
           format_double(row.beam.delta_theta, precision) + ',' +
           format_double(s.permittivity.eps_real, precision) + ',' +
           format_double(s.permittivity.eps_imag, precision) + ',' +
           format_double(s.index.n_real, precision) + ',' +
           format_double(s.index.n_imag, precision) + ',' +
           format_double(s.lambda_g, precision) + ',' +
           format_double(s.mu_abs, precision) + ',' +
           format_double(row.loss.spreading_db, precision) + ',' +
           format_double(row.loss.absorption_db, precision) + ',' +
           format_double(row.loss.scattering_db, precision) + ',' +
           format_double(row.loss.total_db, precision) + '\n';
  }
  return out;
}

std::string attribution_csv(SweepAxis axis, const std::vector<AttributionRow>& rows,
                            int precision) {
  std::string out = "medium,axis,min_total_db,max_total_db,span_db\n";
  for (const AttributionRow& row : rows) {
    out += row.medium_id + ',' + to_string(axis) + ',' +
           format_double(row.min_total_db, precision) + ',' +
           format_double(row.max_total_db, precision) + ',' +
           format_double(row.span_db, precision) + '\n';
  }
  return out;
}

std::string medium_table_json(const std::string& medium_id,
                              const std::vector<OpticalState>& rows) {
  ordered_json doc;
  doc["medium"] = medium_id;
  doc["rows"] = ordered_json::array();
  for (const OpticalState& s : rows) doc["rows"].push_back(optical_json(s));
  return doc.dump(2) + "\n";
}

std::string sweep_json(const SweepResult& result) {
  const SweepRequest& req = result.request;
  ordered_json doc;
  ordered_json request;
  request["media"] = req.medium_ids;
  request["axis"] = to_string(req.axis);
  request["axis_unit"] = axis_unit(req.axis);
  request["grid"] = req.grid;
  ordered_json fixed = ordered_json::object();
  if (req.fixed.frequency) fixed["f_hz"] = req.fixed.frequency->f;
  if (req.fixed.geometry) fixed["distance_m"] = req.fixed.geometry->distance;
  if (req.fixed.beam) fixed["beam_width_rad"] = req.fixed.beam->delta_theta;
  request["fixed"] = fixed;
  request["absorption_wavelength"] = convention_name(req.absorption_wavelength);
  request["populations"] = ordered_json::array();
  for (const ParticlePopulation& pop : req.populations) {
    ordered_json p;
    p["radius_m"] = pop.radius;
    p["volume_fraction"] = pop.volume_fraction;
    p["sigma_abs_m2"] = pop.sigma_abs;
    p["size_class"] = pop.size_class == ParticleSizeClass::small ? "small" : "large";
    request["populations"].push_back(p);
  }
  doc["request"] = request;

  doc["rows"] = ordered_json::array();
  for (const SweepRow& row : result.rows) {
    ordered_json j;
    j["medium"] = row.medium_id;
    j["axis_value"] = row.axis_value;
    ordered_json optical = optical_json(row.optical);
    for (auto& item : optical.items()) j[item.key()] = item.value();
    j["distance_m"] = row.geometry.distance;
    j["beam_width_rad"] = row.beam.delta_theta;
    j["spreading_db"] = row.loss.spreading_db;
    j["absorption_db"] = row.loss.absorption_db;
    j["scattering_db"] = row.loss.scattering_db;
    j["total_db"] = row.loss.total_db;
    doc["rows"].push_back(j);
  }
  return doc.dump(2) + "\n";
}

std::string attribution_json(SweepAxis axis, const std::vector<AttributionRow>& rows) {
  ordered_json doc;
  doc["axis"] = to_string(axis);
  doc["axis_unit"] = axis_unit(axis);
  doc["rows"] = ordered_json::array();
  for (const AttributionRow& row : rows) {
    ordered_json j;
    j["medium"] = row.medium_id;
    j["min_total_db"] = row.min_total_db;
    j["max_total_db"] = row.max_total_db;
    j["span_db"] = row.span_db;
    doc["rows"].push_back(j);
  }
  return doc.dump(2) + "\n";
}

std::string sweep_svg(const SweepResult& result, const std::string& title) {
  if (result.rows.empty()) {
    throw std::invalid_argument("cannot plot an empty sweep result");
  }

  constexpr double width = 800.0, height = 600.0;
  constexpr double left = 80.0, right = 660.0, top = 50.0, bottom = 540.0;

  const std::vector<double>& grid = result.request.grid;
  double x_min = grid.front(), x_max = grid.back();
  double y_min = result.rows.front().loss.total_db;
  double y_max = y_min;
  for (const SweepRow& row : result.rows) {
    y_min = std::min(y_min, row.loss.total_db);
    y_max = std::max(y_max, row.loss.total_db);
  }
  if (y_max - y_min < 1e-9) {  // flat series still needs a drawable range
    y_min -= 1.0;
    y_max += 1.0;
  }
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  auto sx = [&](double x) {
    return left + (x - x_min) / (x_max - x_min) * (right - left);
  };
  auto sy = [&](double y) {
    return bottom - (y - y_min) / (y_max - y_min) * (bottom - top);
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + px(width) +
         " " + px(height) + "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + px(width) + "\" height=\"" + px(height) +
         "\" fill=\"white\"/>\n";
  svg += "<text x=\"" + px((left + right) / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + xml_escape(title) +
         "</text>\n";

  // grid lines and tick labels
  const double x_step = nice_step((x_max - x_min) / 5.0);
  const double y_step = nice_step((y_max - y_min) / 5.0);
  for (double x = std::ceil(x_min / x_step) * x_step; x <= x_max * (1 + 1e-12);
       x += x_step) {
    svg += "<line x1=\"" + px(sx(x)) + "\" y1=\"" + px(top) + "\" x2=\"" + px(sx(x)) +
           "\" y2=\"" + px(bottom) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + px(sx(x)) + "\" y=\"" + px(bottom + 18) +
           "\" text-anchor=\"middle\">" + xml_escape(format_double(x, 4)) +
           "</text>\n";
  }
  for (double y = std::ceil(y_min / y_step) * y_step; y <= y_max + 1e-12 * y_step;
       y += y_step) {
    svg += "<line x1=\"" + px(left) + "\" y1=\"" + px(sy(y)) + "\" x2=\"" + px(right) +
           "\" y2=\"" + px(sy(y)) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + px(left - 8) + "\" y=\"" + px(sy(y) + 4) +
           "\" text-anchor=\"end\">" + xml_escape(format_double(y, 4)) + "</text>\n";
  }

  // axes
  svg += "<line x1=\"" + px(left) + "\" y1=\"" + px(bottom) + "\" x2=\"" + px(right) +
         "\" y2=\"" + px(bottom) + "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  svg += "<line x1=\"" + px(left) + "\" y1=\"" + px(top) + "\" x2=\"" + px(left) +
         "\" y2=\"" + px(bottom) + "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  svg += "<text x=\"" + px((left + right) / 2) + "\" y=\"" + px(bottom + 42) +
         "\" text-anchor=\"middle\">" +
         xml_escape(std::string(to_string(result.request.axis)) + " [" +
                    axis_unit(result.request.axis) + "]") +
         "</text>\n";
  svg += "<text x=\"22\" y=\"" + px((top + bottom) / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 22 " +
         px((top + bottom) / 2) + ")\">total path loss [dB]</text>\n";

  // one polyline per medium, palette keyed by request order
  for (std::size_t m = 0; m < result.request.medium_ids.size(); ++m) {
    const std::string& id = result.request.medium_ids[m];
    const char* color = palette[m % palette.size()];
    std::string points;
    for (const SweepRow& row : result.rows) {
      if (row.medium_id != id) continue;
      points += px(sx(row.axis_value)) + "," + px(sy(row.loss.total_db)) + " ";
    }
    if (!points.empty()) points.pop_back();
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";

    const double ly = top + 10.0 + 22.0 * static_cast<double>(m);
    svg += "<line x1=\"" + px(right + 12) + "\" y1=\"" + px(ly) + "\" x2=\"" +
           px(right + 40) + "\" y2=\"" + px(ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + px(right + 46) + "\" y=\"" + px(ly + 4) + "\">" +
           xml_escape(id) + "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

void write_output(const std::string& content, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    std::fflush(stdout);
    return;
  }
  // Stage into a sibling temp file and rename so failures never leave a
  // partial output behind.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("failed writing output file " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move output into place at " + path + ": " +
                             ec.message());
  }
}

}  // namespace thzchan
