#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "ecorelint/navigation.hpp"
#include "ecorelint/provenance.hpp"
#include "ecorelint/xmi.hpp"
#include "test_support.hpp"

using namespace ecorelint;
using namespace testsupport;

namespace {

struct TempFile {
  std::filesystem::path path;

  explicit TempFile(const char* name) {
    path = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove(path);
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("element age comes from the latest creation record") {
  EcoreModel m = parse_xmi(read_file(fixture_dir() / "models/minimal.ecore"));
  TempFile log("ecorelint_age_test.ndjson");
  write_file(log.path, "{\"path\":\"/pkg/Person\",\"kind\":\"created\",\"t\":100}\n");
  auto ages = element_ages(log.path, m, 130);
  REQUIRE(ages.count("/pkg/Person") == 1);
  CHECK(ages["/pkg/Person"].age(130) == 30);
  CHECK_FALSE(ages["/pkg/Person"].last_modified.has_value());
  // Element never logged: unknown.
  CHECK_FALSE(ages["/pkg/Person/fullName"].age(130).has_value());
}

TEST_CASE("empty or missing log leaves every age unknown") {
  EcoreModel m = parse_xmi(read_file(fixture_dir() / "models/minimal.ecore"));
  TempFile log("ecorelint_age_missing.ndjson");
  auto ages = element_ages(log.path, m, 50);
  CHECK(ages.size() == m.element_index.size());
  for (const auto& [path, info] : ages) {
    CAPTURE(path);
    CHECK_FALSE(info.age(50).has_value());
  }
}

TEST_CASE("create then modify: age from creation, last-modified from modification") {
  EcoreModel m = parse_xmi(read_file(fixture_dir() / "models/minimal.ecore"));
  TempFile log("ecorelint_age_mod.ndjson");
  write_file(log.path,
             "{\"path\":\"/pkg/Person\",\"kind\":\"created\",\"t\":100}\n"
             "{\"path\":\"/pkg/Person\",\"kind\":\"modified\",\"t\":120}\n");
  auto ages = element_ages(log.path, m, 130);
  CHECK(ages["/pkg/Person"].age(130) == 30);
  CHECK(ages["/pkg/Person"].last_modified == 120);
}

TEST_CASE("corrupt log lines are skipped with a warning") {
  EcoreModel m = parse_xmi(read_file(fixture_dir() / "models/minimal.ecore"));
  TempFile log("ecorelint_age_corrupt.ndjson");
  write_file(log.path,
             "{\"path\":\"/pkg/Person\",\"kind\":\"created\",\"t\":100}\n"
             "this is not json\n"
             "{\"path\":\"/pkg/Person\"}\n"
             "{\"path\":\"/pkg/Person\",\"kind\":\"modified\",\"t\":110}\n");
  std::vector<std::string> warnings;
  auto ages = element_ages(log.path, m, 200, &warnings);
  CHECK(warnings.size() == 2);
  CHECK(ages["/pkg/Person"].age(200) == 100);
  CHECK(ages["/pkg/Person"].last_modified == 110);
}

TEST_CASE("append writes one record per delta entry") {
  EcoreModel m = parse_xmi(read_file(fixture_dir() / "models/minimal.ecore"));
  TempFile log("ecorelint_age_append.ndjson");
  ModelDelta delta;
  delta.additions = {"/pkg/Person"};
  delta.deletions = {"/pkg/Gone"};
  delta.changes.push_back({"/pkg/Person/fullName", "upperBound",
                           std::optional<std::string>("1"), std::optional<std::string>("-1")});
  provenance_log_append(log.path, delta, 500);
  std::string content = read_file(log.path);
  CHECK(content.find("\"kind\":\"created\"") != std::string::npos);
  CHECK(content.find("\"kind\":\"deleted\"") != std::string::npos);
  CHECK(content.find("\"kind\":\"modified\"") != std::string::npos);
  CHECK(std::count(content.begin(), content.end(), '\n') == 3);

  // Appending again extends, never truncates.
  provenance_log_append(log.path, delta, 600);
  std::string longer = read_file(log.path);
  CHECK(longer.rfind(content, 0) == 0);
  CHECK(std::count(longer.begin(), longer.end(), '\n') == 6);

  auto ages = element_ages(log.path, m, 700);
  CHECK(ages["/pkg/Person"].age(700) == 100);  // latest creation wins
  CHECK(ages["/pkg/Person/fullName"].last_modified == 600);
}
