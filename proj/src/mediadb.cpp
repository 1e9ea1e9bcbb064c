#include "thzchan/mediadb.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bundled_data.hpp"
#include "json.hpp"

namespace thzchan {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// 1-based line of a byte offset, for parse error messages.
std::size_t line_of_byte(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

[[noreturn]] void record_error(const std::string& source, const std::string& kind,
                               const std::string& id, const std::string& what) {
  throw DataFileError(source + ": " + kind + " '" + id + "': " + what);
}

double require_number(const json& obj, const std::string& source,
                      const std::string& kind, const std::string& id,
                      const char* field) {
  if (!obj.contains(field)) record_error(source, kind, id, std::string("missing field '") + field + "'");
  const json& v = obj.at(field);
  if (!v.is_number()) record_error(source, kind, id, std::string("field '") + field + "' must be a number");
  return v.get<double>();
}

std::string require_string(const json& obj, const std::string& source,
                           const std::string& kind, const std::string& id,
                           const char* field) {
  if (!obj.contains(field)) record_error(source, kind, id, std::string("missing field '") + field + "'");
  const json& v = obj.at(field);
  if (!v.is_string()) record_error(source, kind, id, std::string("field '") + field + "' must be a string");
  return v.get<std::string>();
}

void reject_unknown_keys(const json& obj, const std::string& source,
                         const std::string& kind, const std::string& id,
                         std::initializer_list<const char*> known) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : known) {
      if (item.key() == k) { ok = true; break; }
    }
    if (!ok) record_error(source, kind, id, "unknown field '" + item.key() + "'");
  }
}

bool valid_id(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id) {
    if (!(std::islower(static_cast<unsigned char>(c)) ||
          std::isdigit(static_cast<unsigned char>(c)) || c == '_')) {
      return false;
    }
  }
  return true;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  return out.empty() ? "none" : out;
}

MediumRecord parse_medium(const json& obj, const std::string& source) {
  if (!obj.is_object()) throw DataFileError(source + ": medium entries must be objects");
  std::string id = obj.contains("id") && obj.at("id").is_string()
                       ? obj.at("id").get<std::string>()
                       : std::string("<missing id>");
  reject_unknown_keys(obj, source, "medium", id,
                      {"id", "display_name", "eps_inf", "eps_1", "eps_2", "tau_1_s",
                       "tau_2_s", "f_min_hz", "f_max_hz", "provenance"});
  MediumRecord rec;
  rec.id = require_string(obj, source, "medium", id, "id");
  rec.display_name = require_string(obj, source, "medium", id, "display_name");
  rec.debye.eps_inf = require_number(obj, source, "medium", id, "eps_inf");
  rec.debye.eps_1 = require_number(obj, source, "medium", id, "eps_1");
  rec.debye.eps_2 = require_number(obj, source, "medium", id, "eps_2");
  rec.debye.tau_1 = require_number(obj, source, "medium", id, "tau_1_s");
  rec.debye.tau_2 = require_number(obj, source, "medium", id, "tau_2_s");
  rec.valid_band.f_min = require_number(obj, source, "medium", id, "f_min_hz");
  rec.valid_band.f_max = require_number(obj, source, "medium", id, "f_max_hz");
  rec.provenance = require_string(obj, source, "medium", id, "provenance");
  try {
    rec.validate();
  } catch (const std::invalid_argument& e) {
    record_error(source, "medium", rec.id, e.what());
  }
  return rec;
}

ParticleRecord parse_particle(const json& obj, const std::string& source) {
  if (!obj.is_object()) throw DataFileError(source + ": particle entries must be objects");
  std::string id = obj.contains("id") && obj.at("id").is_string()
                       ? obj.at("id").get<std::string>()
                       : std::string("<missing id>");
  reject_unknown_keys(obj, source, "particle", id,
                      {"id", "radius_m", "volume_fraction", "sigma_abs_m2", "size_class"});
  ParticleRecord rec;
  rec.id = require_string(obj, source, "particle", id, "id");
  rec.population.radius = require_number(obj, source, "particle", id, "radius_m");
  rec.population.volume_fraction =
      require_number(obj, source, "particle", id, "volume_fraction");
  rec.population.sigma_abs = require_number(obj, source, "particle", id, "sigma_abs_m2");
  const std::string size_class = require_string(obj, source, "particle", id, "size_class");
  if (size_class == "small") {
    rec.population.size_class = ParticleSizeClass::small;
  } else if (size_class == "large") {
    rec.population.size_class = ParticleSizeClass::large;
  } else {
    record_error(source, "particle", rec.id, "size_class must be 'small' or 'large'");
  }
  try {
    rec.validate();
  } catch (const std::invalid_argument& e) {
    record_error(source, "particle", rec.id, e.what());
  }
  return rec;
}

ordered_json medium_to_json(const MediumRecord& rec) {
  ordered_json j;
  j["id"] = rec.id;
  j["display_name"] = rec.display_name;
  j["eps_inf"] = rec.debye.eps_inf;
  j["eps_1"] = rec.debye.eps_1;
  j["eps_2"] = rec.debye.eps_2;
  j["tau_1_s"] = rec.debye.tau_1;
  j["tau_2_s"] = rec.debye.tau_2;
  j["f_min_hz"] = rec.valid_band.f_min;
  j["f_max_hz"] = rec.valid_band.f_max;
  j["provenance"] = rec.provenance;
  return j;
}

ordered_json particle_to_json(const ParticleRecord& rec) {
  ordered_json j;
  j["id"] = rec.id;
  j["radius_m"] = rec.population.radius;
  j["volume_fraction"] = rec.population.volume_fraction;
  j["sigma_abs_m2"] = rec.population.sigma_abs;
  j["size_class"] =
      rec.population.size_class == ParticleSizeClass::small ? "small" : "large";
  return j;
}

}  // namespace

void MediumRecord::validate() const {
  if (!valid_id(id)) {
    throw std::invalid_argument("id must be nonempty lowercase [a-z0-9_]");
  }
  if (display_name.empty()) throw std::invalid_argument("display_name must be nonempty");
  if (provenance.empty()) throw std::invalid_argument("provenance must be nonempty");
  if (!(valid_band.f_min > 0.0) || !(valid_band.f_min < valid_band.f_max)) {
    throw std::invalid_argument("validity band requires 0 < f_min_hz < f_max_hz");
  }
  debye.validate();
}

void ParticleRecord::validate() const {
  if (!valid_id(id)) {
    throw std::invalid_argument("id must be nonempty lowercase [a-z0-9_]");
  }
  population.validate();
}

void MediumDatabase::add_document(const std::string& json_text,
                                  const std::string& source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DataFileError(source + ": parse error at line " +
                        std::to_string(line_of_byte(json_text, e.byte)) + ": " +
                        e.what());
  }
  if (!doc.is_object()) {
    throw DataFileError(source + ": top level must be an object");
  }
  for (const auto& item : doc.items()) {
    if (item.key() != "media" && item.key() != "particles") {
      throw DataFileError(source + ": unknown top-level key '" + item.key() + "'");
    }
    if (!item.value().is_array()) {
      throw DataFileError(source + ": '" + item.key() + "' must be an array");
    }
  }
  if (doc.contains("media")) {
    for (const json& entry : doc.at("media")) {
      MediumRecord rec = parse_medium(entry, source);
      if (media_.contains(rec.id)) {
        throw DataFileError(source + ": duplicate medium id '" + rec.id + "'");
      }
      media_.emplace(rec.id, std::move(rec));
    }
  }
  if (doc.contains("particles")) {
    for (const json& entry : doc.at("particles")) {
      ParticleRecord rec = parse_particle(entry, source);
      if (particles_.contains(rec.id)) {
        throw DataFileError(source + ": duplicate particle id '" + rec.id + "'");
      }
      particles_.emplace(rec.id, std::move(rec));
    }
  }
  source_paths_.push_back(source);
}

MediumDatabase MediumDatabase::bundled() {
  MediumDatabase db;
  db.add_document(detail::bundled_media_json, "bundled:media.json");
  db.add_document(detail::bundled_particles_json, "bundled:particles.json");
  return db;
}

const MediumRecord& MediumDatabase::medium(const std::string& id) const {
  auto it = media_.find(id);
  if (it == media_.end()) {
    throw UnknownIdError("unknown medium '" + id +
                         "' (available: " + join_ids(medium_ids()) + ")");
  }
  return it->second;
}

const ParticleRecord& MediumDatabase::particle(const std::string& id) const {
  auto it = particles_.find(id);
  if (it == particles_.end()) {
    throw UnknownIdError("unknown particle '" + id +
                         "' (available: " + join_ids(particle_ids()) + ")");
  }
  return it->second;
}

bool MediumDatabase::has_medium(const std::string& id) const {
  return media_.contains(id);
}

std::vector<std::string> MediumDatabase::medium_ids() const {
  std::vector<std::string> ids;
  ids.reserve(media_.size());
  for (const auto& [id, rec] : media_) ids.push_back(id);
  return ids;
}

std::vector<std::string> MediumDatabase::particle_ids() const {
  std::vector<std::string> ids;
  ids.reserve(particles_.size());
  for (const auto& [id, rec] : particles_) ids.push_back(id);
  return ids;
}

MediumDatabase load_database(const std::vector<std::filesystem::path>& paths) {
  MediumDatabase db;
  for (const std::filesystem::path& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw DataFileError(path.string() + ": cannot open data file");
    }
    std::ostringstream text;
    text << in.rdbuf();
    db.add_document(text.str(), path.string());
  }
  return db;
}

std::string canonical_serialization(const MediumDatabase& db) {
  ordered_json doc;
  doc["media"] = ordered_json::array();
  for (const std::string& id : db.medium_ids()) {
    doc["media"].push_back(medium_to_json(db.medium(id)));
  }
  doc["particles"] = ordered_json::array();
  for (const std::string& id : db.particle_ids()) {
    doc["particles"].push_back(particle_to_json(db.particle(id)));
  }
  return doc.dump(2) + "\n";
}

namespace {

void check_band(const MediumRecord& medium, const FrequencyPoint& freq) {
  if (!medium.valid_band.contains(freq.f)) {
    throw std::invalid_argument("frequency " + fmt_g(freq.f) +
                                " Hz outside validity band [" +
                                fmt_g(medium.valid_band.f_min) + ", " +
                                fmt_g(medium.valid_band.f_max) + "] Hz of medium '" +
                                medium.id + "'");
  }
}

}  // namespace

OpticalState optical_state(const MediumRecord& medium, const FrequencyPoint& freq,
                           AbsorptionWavelength convention) {
  check_band(medium, freq);
  return evaluate_optical_state(medium.debye, freq, convention);
}

LossBreakdown total_path_loss(const MediumRecord& medium, const FrequencyPoint& freq,
                              const ChannelGeometry& geom, const BeamSpec& beam,
                              std::span<const ParticlePopulation> populations,
                              AbsorptionWavelength convention) {
  check_band(medium, freq);
  return total_path_loss(medium.debye, freq, geom, beam, populations, convention);
}

}  // namespace thzchan
