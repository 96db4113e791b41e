#pragma once

#include <string>

#include "cspk/classify.hpp"
#include "cspk/oracle.hpp"
#include "cspk/relation.hpp"
#include "cspk/sparsify.hpp"

#include <nlohmann/json_fwd.hpp>

namespace cspk {

// Malformed input; `line` is 1-based, 0 when no position applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Language files: `relation NAME K` directives followed by one member
// tuple per line as a K-character 0/1 string (coordinate 1 first);
// `#` comments; blocks separated by blank lines.
ConstraintLanguage parse_language_text(const std::string& text);
ConstraintLanguage parse_language(const std::string& path);
std::string write_language_text(const ConstraintLanguage& language);

// Instance files: header `csp N`, then `NAME v1 v2 ... vk` lines with
// 1-based variables; `#` comments.
CspInstance parse_instance_text(const std::string& text, const ConstraintLanguage& language);
CspInstance parse_instance(const std::string& path, const ConstraintLanguage& language);
std::string write_instance_text(const CspInstance& instance);
void write_instance(const CspInstance& instance, const std::string& path);

// Report serialization. All JSON documents carry "schema": 1 and are
// byte-deterministic for identical inputs.
nlohmann::ordered_json classification_to_json(const ClassificationReport& report);
nlohmann::ordered_json kernel_report_to_json(const KernelReport& report,
                                             const CspInstance& instance);
nlohmann::ordered_json balance_to_json(const BalanceResult& result, const BooleanRelation& r);
nlohmann::ordered_json cone_definition_to_json(const ConeDefinition& def);

std::string classification_to_text(const ClassificationReport& report);

std::string to_json_string(const nlohmann::ordered_json& j);
void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace cspk
