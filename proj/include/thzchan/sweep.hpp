#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thzchan/mediadb.hpp"
#include "thzchan/pathloss.hpp"

namespace thzchan {

enum class SweepAxis { frequency, distance, beam_width };

const char* to_string(SweepAxis axis);

/// Unit of the swept quantity ("Hz", "m" or "rad").
const char* axis_unit(SweepAxis axis);

/// The two channel parameters that stay fixed while one axis is swept.
/// Exactly the two fields not covered by the axis must be set.
struct SweepFixed {
  std::optional<FrequencyPoint> frequency;
  std::optional<ChannelGeometry> geometry;
  std::optional<BeamSpec> beam;
};

struct SweepRequest {
  std::vector<std::string> medium_ids;
  SweepAxis axis = SweepAxis::frequency;
  std::vector<double> grid;  // strictly increasing, length >= 2, axis units
  SweepFixed fixed;
  std::vector<ParticlePopulation> populations;
  AbsorptionWavelength absorption_wavelength = AbsorptionWavelength::guided;
};

/// One evaluated grid point for one medium.
struct SweepRow {
  std::string medium_id;
  double axis_value = 0.0;
  ChannelGeometry geometry;
  BeamSpec beam;
  OpticalState optical;
  LossBreakdown loss;
};

struct SweepResult {
  SweepRequest request;
  std::vector<SweepRow> rows;  // (medium order) x (grid order)
};

enum class Execution { serial, parallel };

/// Evaluates the request over its grid. Rows come back in
/// (medium order) x (grid order) regardless of the execution mode; the two
/// modes produce identical values. Throws UnknownIdError for unresolvable
/// media and std::invalid_argument for invalid grids (the message names the
/// offending value).
SweepResult run_sweep(const SweepRequest& request, const MediumDatabase& db,
                      Execution mode = Execution::serial);

/// The four canned sweep scenarios shipped with the tool. All cover
/// {water, skin, epidermis} with no scatterer populations and 101 grid
/// points.
///   fig1: frequency in [0.1, 1] THz at d = 1 mm, beam 0.5 rad
///   fig2: frequency in [0.1, 1] THz at d = 2 mm, beam 0.5 rad
///   fig3: distance in [0.1, 2] mm at lambda_0 = 0.3 mm, beam 0.5 rad
///   fig4: beam width in [0.01, 3] rad at lambda_0 = 0.3 mm, d = 1 mm
enum class FigurePreset { fig1, fig2, fig3, fig4 };

const char* to_string(FigurePreset preset);

/// Parses "fig1".."fig4"; throws std::invalid_argument listing the valid
/// names otherwise.
FigurePreset figure_preset_from_name(const std::string& name);

SweepRequest figure_preset(FigurePreset preset);

/// Per-medium span of the total loss over the swept axis - the dB
/// "contribution" of that axis.
struct AttributionRow {
  std::string medium_id;
  double min_total_db = 0.0;
  double max_total_db = 0.0;
  double span_db = 0.0;
};

/// Computes the per-medium attribution table from a nonempty sweep result.
std::vector<AttributionRow> component_attribution(const SweepResult& result);

}  // namespace thzchan
