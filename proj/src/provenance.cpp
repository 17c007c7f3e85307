#include "ecorelint/provenance.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ecorelint/errors.hpp"

namespace ecorelint {

void provenance_log_append(const std::filesystem::path& log_file, const ModelDelta& delta,
                           long long timestamp) {
  std::ofstream out(log_file, std::ios::binary | std::ios::app);
  if (!out) throw FormatError("cannot open provenance log for append: " + log_file.string());
  auto write = [&](const std::string& path, const char* kind) {
    nlohmann::ordered_json record;
    record["path"] = path;
    record["kind"] = kind;
    record["t"] = timestamp;
    out << record.dump() << "\n";
  };
  for (const std::string& p : delta.additions) write(p, "created");
  for (const std::string& p : delta.deletions) write(p, "deleted");
  std::set<std::string> modified;
  for (const FieldChange& c : delta.changes) {
    if (modified.insert(c.path).second) write(c.path, "modified");
  }
}

std::map<std::string, AgeInfo> element_ages(const std::filesystem::path& log_file,
                                            const EcoreModel& m, long long now,
                                            std::vector<std::string>* warnings) {
  (void)now;
  std::map<std::string, AgeInfo> ages;
  for (const auto& [path, _] : m.element_index) ages[path];

  std::ifstream in(log_file, std::ios::binary);
  if (!in) return ages;  // no log yet: every age is unknown

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
      if (!record.is_object() || !record.contains("path") || !record.contains("kind") ||
          !record.contains("t") || !record["path"].is_string() ||
          !record["kind"].is_string() || !record["t"].is_number())
        throw FormatError("missing fields");
    } catch (const std::exception&) {
      if (warnings)
        warnings->push_back("provenance log line " + std::to_string(line_no) +
                            " is corrupt, skipped");
      continue;
    }
    std::string path = record["path"].get<std::string>();
    std::string kind = record["kind"].get<std::string>();
    long long t = record["t"].get<long long>();
    auto it = ages.find(path);
    if (it == ages.end()) continue;  // element no longer in the model
    if (kind == "created") {
      if (!it->second.created || *it->second.created < t) it->second.created = t;
    } else if (kind == "modified") {
      if (!it->second.last_modified || *it->second.last_modified < t)
        it->second.last_modified = t;
    } else if (kind != "deleted") {
      if (warnings)
        warnings->push_back("provenance log line " + std::to_string(line_no) +
                            " has unknown kind '" + kind + "', skipped");
    }
  }
  return ages;
}

}  // namespace ecorelint
