#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "thzchan/dielectrics.hpp"
#include "thzchan/pathloss.hpp"

namespace thzchan {

/// A data file could not be read, parsed or validated. Messages name the
/// file and, where applicable, the record id and the violated rule.
class DataFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lookup of an id that is not in the database. The message lists the ids
/// that are available.
class UnknownIdError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inclusive frequency validity band, Hz.
struct FrequencyBand {
  double f_min = 0.0;
  double f_max = 0.0;

  bool contains(double f_hz) const { return f_hz >= f_min && f_hz <= f_max; }
};

/// One medium definition: Debye constants plus the band they were fitted
/// over and the literature source the numbers were transcribed from.
struct MediumRecord {
  std::string id;  // lowercase [a-z0-9_]
  std::string display_name;
  DebyeParameters debye;
  FrequencyBand valid_band;
  std::string provenance;

  void validate() const;
};

/// One named scatterer population definition.
struct ParticleRecord {
  std::string id;
  ParticlePopulation population;

  void validate() const;
};

/// Immutable collection of medium and particle records. All records are
/// validated at load time; lookups never observe an invalid record.
class MediumDatabase {
 public:
  MediumDatabase() = default;

  /// The definitions compiled into the library (water, skin, epidermis and
  /// a red-blood-cell-like particle population).
  static MediumDatabase bundled();

  const MediumRecord& medium(const std::string& id) const;
  const ParticleRecord& particle(const std::string& id) const;
  bool has_medium(const std::string& id) const;

  std::vector<std::string> medium_ids() const;    // sorted
  std::vector<std::string> particle_ids() const;  // sorted

  const std::vector<std::string>& source_paths() const { return source_paths_; }
  std::size_t medium_count() const { return media_.size(); }
  std::size_t particle_count() const { return particles_.size(); }

  /// Parses one JSON document and merges its records. `source` names the
  /// origin in error messages. Duplicate ids are an error, never a shadow.
  void add_document(const std::string& json_text, const std::string& source);

 private:
  std::map<std::string, MediumRecord> media_;
  std::map<std::string, ParticleRecord> particles_;
  std::vector<std::string> source_paths_;
};

/// Loads and merges the given data files. An empty path list yields a valid
/// empty database.
MediumDatabase load_database(const std::vector<std::filesystem::path>& paths);

/// Canonical serialization of a database: fixed key order, records sorted by
/// id, two-space indent, shortest round-trip decimals, trailing newline.
/// Loading the output reproduces the database field for field.
std::string canonical_serialization(const MediumDatabase& db);

/// Band-checked optical state for a medium record. Throws
/// std::invalid_argument naming the frequency when it is outside the
/// record's validity band.
OpticalState optical_state(const MediumRecord& medium, const FrequencyPoint& freq,
                           AbsorptionWavelength convention = AbsorptionWavelength::guided);

/// Band-checked loss pipeline for a medium record.
LossBreakdown total_path_loss(
    const MediumRecord& medium, const FrequencyPoint& freq,
    const ChannelGeometry& geom, const BeamSpec& beam,
    std::span<const ParticlePopulation> populations = {},
    AbsorptionWavelength convention = AbsorptionWavelength::guided);

}  // namespace thzchan
