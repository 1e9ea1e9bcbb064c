#include "thzchan/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "thzchan/mediadb.hpp"
#include "thzchan/output.hpp"
#include "thzchan/sweep.hpp"

namespace thzchan {

namespace {

struct GlobalOptions {
  std::vector<std::string> data_paths;
  std::string format = "csv";
  std::string out = "-";
  int precision = 9;
  std::string absorption = "guided";

  OutputSpec output_spec() const {
    OutputSpec spec{output_format_from_name(format), out, precision};
    spec.validate();
    return spec;
  }

  AbsorptionWavelength convention() const {
    if (absorption == "guided") return AbsorptionWavelength::guided;
    if (absorption == "free-space") return AbsorptionWavelength::free_space;
    throw std::invalid_argument(
        "absorption-wavelength must be 'guided' or 'free-space'");
  }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      if (!current.empty()) parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) parts.push_back(current);
  return parts;
}

// Data source precedence: --data flags, then THZCHAN_DATA (':'-separated),
// then the bundled definitions.
MediumDatabase open_database(const GlobalOptions& global) {
  std::vector<std::string> sources = global.data_paths;
  if (sources.empty()) {
    if (const char* env = std::getenv("THZCHAN_DATA")) {
      sources = split(env, ':');
    }
  }
  if (sources.empty()) return MediumDatabase::bundled();
  std::vector<std::filesystem::path> paths(sources.begin(), sources.end());
  return load_database(paths);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (!(hi > lo)) throw std::invalid_argument("grid requires --to > --from");
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(n - 1);
  }
  grid.back() = hi;
  return grid;
}

struct MediumArgs {
  std::string id;
  std::vector<double> frequencies;
  std::vector<double> wavelengths;
  double from = 0.0, to = 0.0;
  std::size_t points = 0;
};

struct SweepArgs {
  std::string axis;
  double from = 0.0, to = 0.0;
  std::size_t points = 101;
  std::string media;
  double lambda0 = 0.0, f = 0.0, distance = 0.0, beam = -1.0;
  std::vector<std::string> populations;
};

SweepRequest build_sweep_request(const SweepArgs& args, const GlobalOptions& global,
                                 const MediumDatabase& db) {
  SweepRequest req;
  req.medium_ids = split(args.media, ',');
  req.absorption_wavelength = global.convention();

  if (args.axis == "frequency") {
    req.axis = SweepAxis::frequency;
  } else if (args.axis == "distance") {
    req.axis = SweepAxis::distance;
  } else if (args.axis == "beam_width") {
    req.axis = SweepAxis::beam_width;
  } else {
    throw std::invalid_argument("unknown axis '" + args.axis +
                                "' (valid: frequency, distance, beam_width)");
  }
  req.grid = linspace(args.from, args.to, args.points);

  if (args.f > 0.0 && args.lambda0 > 0.0) {
    throw std::invalid_argument("give either --f or --lambda0, not both");
  }
  if (req.axis != SweepAxis::frequency) {
    if (args.f > 0.0) {
      req.fixed.frequency = FrequencyPoint::from_frequency(args.f);
    } else if (args.lambda0 > 0.0) {
      req.fixed.frequency = FrequencyPoint::from_wavelength(args.lambda0);
    } else {
      throw std::invalid_argument("this axis requires a fixed --f or --lambda0");
    }
  }
  if (req.axis != SweepAxis::distance) {
    if (!(args.distance > 0.0)) {
      throw std::invalid_argument("this axis requires a fixed --distance");
    }
    req.fixed.geometry = ChannelGeometry{args.distance};
  }
  if (req.axis != SweepAxis::beam_width) {
    if (args.beam < 0.0) {
      throw std::invalid_argument("this axis requires a fixed --beam");
    }
    req.fixed.beam = BeamSpec{args.beam};
  }

  for (const std::string& id : args.populations) {
    req.populations.push_back(db.particle(id).population);
  }
  return req;
}

std::string sweep_title(const SweepRequest& req, const std::string& prefix) {
  return prefix + "total path loss vs " + to_string(req.axis);
}

void emit_sweep(const SweepResult& result, const OutputSpec& spec,
                const std::string& title) {
  switch (spec.format) {
    case OutputFormat::csv:
      write_output(sweep_csv(result, spec.precision), spec.path);
      break;
    case OutputFormat::json:
      write_output(sweep_json(result), spec.path);
      break;
    case OutputFormat::svg:
      write_output(sweep_svg(result, title), spec.path);
      break;
  }
}

int cmd_medium(const MediumArgs& args, const GlobalOptions& global) {
  const OutputSpec spec = global.output_spec();
  const MediumDatabase db = open_database(global);
  const MediumRecord& record = db.medium(args.id);

  std::vector<double> freqs;
  if (args.points > 0) {
    for (double f : linspace(args.from, args.to, args.points)) freqs.push_back(f);
  } else if (args.from != 0.0 || args.to != 0.0) {
    throw std::invalid_argument("--from/--to require --points");
  }
  for (double f : args.frequencies) freqs.push_back(f);
  for (double lambda : args.wavelengths) {
    freqs.push_back(FrequencyPoint::from_wavelength(lambda).f);
  }
  if (freqs.empty()) {
    throw std::invalid_argument(
        "no frequencies given (use --f, --lambda0 or --from/--to/--points)");
  }

  std::vector<OpticalState> rows;
  rows.reserve(freqs.size());
  for (double f : freqs) {
    rows.push_back(optical_state(record, FrequencyPoint::from_frequency(f),
                                 global.convention()));
  }

  switch (spec.format) {
    case OutputFormat::csv:
      write_output(medium_table_csv(rows, spec.precision), spec.path);
      break;
    case OutputFormat::json:
      write_output(medium_table_json(record.id, rows), spec.path);
      break;
    case OutputFormat::svg:
      throw std::invalid_argument("svg output is only available for sweeps");
  }
  return 0;
}

int cmd_sweep(const SweepArgs& args, const GlobalOptions& global) {
  const OutputSpec spec = global.output_spec();
  const MediumDatabase db = open_database(global);
  const SweepRequest req = build_sweep_request(args, global, db);
  const SweepResult result = run_sweep(req, db);
  emit_sweep(result, spec, sweep_title(req, ""));
  return 0;
}

int cmd_figure(const std::string& name, const GlobalOptions& global) {
  const OutputSpec spec = global.output_spec();
  const FigurePreset preset = figure_preset_from_name(name);
  const MediumDatabase db = open_database(global);
  SweepRequest req = figure_preset(preset);
  req.absorption_wavelength = global.convention();
  const SweepResult result = run_sweep(req, db);
  emit_sweep(result, spec, sweep_title(req, std::string(to_string(preset)) + ": "));
  return 0;
}

int cmd_attribution(const std::string& figure_name, const SweepArgs& args,
                    const GlobalOptions& global) {
  const OutputSpec spec = global.output_spec();
  const MediumDatabase db = open_database(global);

  SweepRequest req;
  if (!figure_name.empty()) {
    req = figure_preset(figure_preset_from_name(figure_name));
    req.absorption_wavelength = global.convention();
  } else {
    req = build_sweep_request(args, global, db);
  }
  const SweepResult result = run_sweep(req, db);
  const std::vector<AttributionRow> rows = component_attribution(result);

  switch (spec.format) {
    case OutputFormat::csv:
      write_output(attribution_csv(req.axis, rows, spec.precision), spec.path);
      break;
    case OutputFormat::json:
      write_output(attribution_json(req.axis, rows), spec.path);
      break;
    case OutputFormat::svg:
      throw std::invalid_argument("svg output is only available for sweeps");
  }
  return 0;
}

int cmd_validate(const GlobalOptions& global) {
  const MediumDatabase db = open_database(global);
  std::string report;
  report += "sources:\n";
  for (const std::string& source : db.source_paths()) {
    report += "  " + source + "\n";
  }
  if (db.source_paths().empty()) report += "  (none)\n";
  report += "media: " + std::to_string(db.medium_count()) + "\n";
  for (const std::string& id : db.medium_ids()) {
    const MediumRecord& rec = db.medium(id);
    report += "  " + id + " (" + rec.display_name + "), band [" +
              format_double(rec.valid_band.f_min, 6) + ", " +
              format_double(rec.valid_band.f_max, 6) + "] Hz\n";
  }
  report += "particles: " + std::to_string(db.particle_count()) + "\n";
  for (const std::string& id : db.particle_ids()) {
    report += "  " + id + "\n";
  }
  report += "ok\n";
  write_output(report, global.out);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"THz intrabody channel path-loss calculator"};
  app.name("thzchan");

  GlobalOptions global;
  app.add_option("--data", global.data_paths,
                 "Medium/particle data file (repeatable; replaces the bundled set)");
  app.add_option("--format", global.format, "Output format: csv, json or svg")
      ->capture_default_str();
  app.add_option("--out", global.out, "Output path, '-' for stdout")
      ->capture_default_str();
  app.add_option("--precision", global.precision,
                 "Significant digits for csv output (3..17)")
      ->capture_default_str();
  app.add_option("--absorption-wavelength", global.absorption,
                 "Absorption coefficient convention: guided or free-space")
      ->capture_default_str();
  app.require_subcommand(1);

  MediumArgs medium_args;
  CLI::App* medium_cmd =
      app.add_subcommand("medium", "Tabulate the optical state of one medium");
  medium_cmd->fallthrough();
  medium_cmd->add_option("id", medium_args.id, "Medium id")->required();
  medium_cmd->add_option("--f", medium_args.frequencies, "Frequency in Hz (repeatable)");
  medium_cmd->add_option("--lambda0", medium_args.wavelengths,
                         "Free-space wavelength in m (repeatable)");
  medium_cmd->add_option("--from", medium_args.from, "Grid start frequency, Hz");
  medium_cmd->add_option("--to", medium_args.to, "Grid end frequency, Hz");
  medium_cmd->add_option("--points", medium_args.points, "Grid point count");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Sweep total path loss along one axis");
  sweep_cmd->fallthrough();
  sweep_cmd->add_option("--axis", sweep_args.axis,
                        "Swept axis: frequency, distance or beam_width")
      ->required();
  sweep_cmd->add_option("--from", sweep_args.from, "Axis start (Hz | m | rad)")
      ->required();
  sweep_cmd->add_option("--to", sweep_args.to, "Axis end (Hz | m | rad)")->required();
  sweep_cmd->add_option("--points", sweep_args.points, "Grid point count")
      ->capture_default_str();
  sweep_cmd->add_option("--media", sweep_args.media, "Comma-separated medium ids")
      ->required();
  sweep_cmd->add_option("--lambda0", sweep_args.lambda0, "Fixed free-space wavelength, m");
  sweep_cmd->add_option("--f", sweep_args.f, "Fixed frequency, Hz");
  sweep_cmd->add_option("--distance", sweep_args.distance, "Fixed distance, m");
  sweep_cmd->add_option("--beam", sweep_args.beam, "Fixed Gaussian beam width, rad");
  sweep_cmd->add_option("--population", sweep_args.populations,
                        "Particle population id (repeatable)");

  std::string figure_name;
  CLI::App* figure_cmd =
      app.add_subcommand("figure", "Run a canned sweep preset (fig1..fig4)");
  figure_cmd->fallthrough();
  figure_cmd->add_option("name", figure_name, "Preset name: fig1..fig4")->required();

  std::string attribution_figure;
  SweepArgs attribution_args;
  CLI::App* attribution_cmd = app.add_subcommand(
      "attribution", "Per-medium dB span of the total loss over a sweep");
  attribution_cmd->fallthrough();
  attribution_cmd->add_option("figure", attribution_figure,
                              "Preset name fig1..fig4 (otherwise give sweep flags)");
  attribution_cmd->add_option("--axis", attribution_args.axis,
                              "Swept axis: frequency, distance or beam_width");
  attribution_cmd->add_option("--from", attribution_args.from, "Axis start");
  attribution_cmd->add_option("--to", attribution_args.to, "Axis end");
  attribution_cmd->add_option("--points", attribution_args.points, "Grid point count")
      ->capture_default_str();
  attribution_cmd->add_option("--media", attribution_args.media,
                              "Comma-separated medium ids");
  attribution_cmd->add_option("--lambda0", attribution_args.lambda0,
                              "Fixed free-space wavelength, m");
  attribution_cmd->add_option("--f", attribution_args.f, "Fixed frequency, Hz");
  attribution_cmd->add_option("--distance", attribution_args.distance, "Fixed distance, m");
  attribution_cmd->add_option("--beam", attribution_args.beam,
                              "Fixed Gaussian beam width, rad");

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Load the data files and report their contents");
  validate_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message to stderr
    return 2;
  }

  try {
    if (*medium_cmd) return cmd_medium(medium_args, global);
    if (*sweep_cmd) return cmd_sweep(sweep_args, global);
    if (*figure_cmd) return cmd_figure(figure_name, global);
    if (*attribution_cmd)
      return cmd_attribution(attribution_figure, attribution_args, global);
    if (*validate_cmd) return cmd_validate(global);
  } catch (const DataFileError& e) {
    std::cerr << "thzchan: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "thzchan: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "thzchan: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace thzchan
