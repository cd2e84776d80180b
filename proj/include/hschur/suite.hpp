#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hschur/experiments.hpp"

namespace hschur {

struct SuiteConfig {
  std::string name;
  FieldDesc field;
  std::vector<ExperimentSpec> experiments;
  std::filesystem::path out_dir = "hschur_out";
  std::uint64_t seed = 0;
};

/// The bundled schema (schemas/suite_config.schema.json, compiled in).
const nlohmann::json& suite_schema();

/// Checks `doc` against the draft-07 subset used by the bundled schema ($ref to
/// local definitions, type, enum, required, properties, additionalProperties,
/// items, min/maxItems, minProperties, minLength, minimum, maximum,
/// exclusiveMinimum). Returns one message per violation.
std::vector<std::string> schema_errors(const nlohmann::json& doc, const nlohmann::json& schema);

/// Schema check, then semantic check of every experiment; nothing is computed.
/// Throws Error(ConfigInvalid) (or another config-level kind) on any problem.
SuiteConfig parse_suite(const nlohmann::json& doc, const std::filesystem::path& base_dir,
                        std::optional<std::uint64_t> seed_override = std::nullopt);
SuiteConfig load_suite(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override = std::nullopt);

/// Experiments run as independent jobs on up to `jobs` threads; reports keep config order.
std::vector<ExperimentReport> run_suite(const SuiteConfig& cfg, int jobs = 1);
std::vector<OracleReport> oracle_suite(const SuiteConfig& cfg, int jobs = 1);

/// Write to a temporary sibling, then rename over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// report.json, report.csv and <id>.svg under dir.
void write_run_outputs(const std::filesystem::path& dir, const SuiteConfig& cfg,
                       const std::vector<ExperimentReport>& reports);
/// oracle.json under dir.
void write_oracle_outputs(const std::filesystem::path& dir, const SuiteConfig& cfg,
                          const std::vector<OracleReport>& reports);

}  // namespace hschur
