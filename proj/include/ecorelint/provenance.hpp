#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ecorelint/compare.hpp"
#include "ecorelint/model.hpp"

namespace ecorelint {

/// Appends one newline-delimited JSON record per delta entry:
/// {"path":...,"kind":"created"|"modified"|"deleted","t":<unix seconds>}.
/// The log is append-only; callers must hold exclusive access.
void provenance_log_append(const std::filesystem::path& log_file,
                           const ModelDelta& delta, long long timestamp);

struct AgeInfo {
  std::optional<long long> created;        // latest creation timestamp
  std::optional<long long> last_modified;  // latest modification timestamp

  std::optional<long long> age(long long now) const {
    if (!created) return std::nullopt;
    return now - *created;
  }
};

/// One entry per model element; elements never seen in the log have empty
/// AgeInfo. Corrupt log lines are skipped and reported via `warnings`.
std::map<std::string, AgeInfo> element_ages(const std::filesystem::path& log_file,
                                            const EcoreModel& m, long long now,
                                            std::vector<std::string>* warnings = nullptr);

}  // namespace ecorelint
