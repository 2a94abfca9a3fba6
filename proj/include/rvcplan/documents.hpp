#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "rvcplan/error.hpp"
#include "rvcplan/plan.hpp"

namespace rvcplan {

/// JSON value with keys kept in insertion order, so written documents list
/// fields in a fixed, readable order.
using Document = nlohmann::ordered_json;

/// Version written to, and required in, every document's `format` field.
inline constexpr int kFormatVersion = 1;

/// A document that violates its schema. The message is prefixed with the
/// JSON path of the offending value, e.g. `requirements.Sc9`.
class SchemaError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Document kinds, stored in the `kind` field. Instance files may omit it.
inline constexpr const char* kInstanceKind = "instance";
inline constexpr const char* kRequirementsKind = "variant-requirements";
inline constexpr const char* kPlanKind = "plan";

/// Reads and parses a JSON file. Syntax errors name the file, line and column.
Document load_json_file(const std::filesystem::path& path);

/// Canonical text: two-space indent, fields in writing order, trailing newline.
std::string dump_document(const Document& doc);

PlanningInstance read_instance(const Document& doc);
Document write_instance(const PlanningInstance& instance);

VariantRequirements read_variant_requirements(const Document& doc);
Document write_variant_requirements(const VariantRequirements& requirements);

/// Accepts either an instance (translated on the fly) or a translation.
VariantRequirements read_requirements_source(const Document& doc);

/// Validates that `instances` and `distribution` agree with `coloring`.
DeploymentPlan read_plan(const Document& doc);
Document write_plan(const DeploymentPlan& plan);

}  // namespace rvcplan
