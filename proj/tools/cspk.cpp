// cspk: classify Boolean constraint languages and sparsify CSP instances
// with machine-checkable certificates.
//
// Exit codes: 0 success, 2 malformed input, 3 cap or budget exceeded.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cspk/classify.hpp"
#include "cspk/io.hpp"
#include "cspk/oracle.hpp"

namespace {

using nlohmann::ordered_json;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) std::cout << text;
  else cspk::write_text_file(out_path, text);
}

cspk::BooleanRelation resolve_target(const std::string& spec, const cspk::ConstraintLanguage& lang) {
  if (spec == "or1") return cspk::kor(1);
  if (spec == "or2") return cspk::kor(2);
  if (spec == "or3") return cspk::kor(3);
  return lang.at(spec);
}

int run_classify(const std::string& language_path, const std::string& out_path,
                 const std::string& format) {
  auto language = cspk::parse_language(language_path);
  auto report = cspk::classify_language(language);
  if (format == "text") emit(cspk::classification_to_text(report), out_path);
  else emit(cspk::to_json_string(cspk::classification_to_json(report)), out_path);
  return 0;
}

int run_sparsify(const std::string& language_path, const std::string& instance_path,
                 const std::string& out_path, const std::string& report_path) {
  auto language = cspk::parse_language(language_path);
  auto instance = cspk::parse_instance(instance_path, language);
  auto [kernel, report] = cspk::sparsify_instance(language, instance);
  emit(cspk::write_instance_text(kernel), out_path);
  if (!report_path.empty())
    cspk::write_text_file(report_path,
                          cspk::to_json_string(cspk::kernel_report_to_json(report, instance)));
  return 0;
}

int run_capture(const std::string& language_path, const std::string& relation,
                const std::string& out_path) {
  auto language = cspk::parse_language(language_path);
  const auto& r = language.at(relation);
  auto result = cspk::decide_balanced(r);
  emit(cspk::to_json_string(cspk::balance_to_json(result, r)), out_path);
  return 0;
}

int run_cone(const std::string& language_path, const std::string& target_spec,
             const std::string& out_path) {
  auto language = cspk::parse_language(language_path);
  cspk::BooleanRelation target = resolve_target(target_spec, language);

  ordered_json j;
  j["schema"] = 1;
  j["kind"] = "cone";
  j["target"] = target_spec;
  j["target_arity"] = target.arity();
  ordered_json results = ordered_json::array();
  bool capped = false;
  for (const auto& source : language.relations()) {
    auto res = cspk::search_cone_definition(target, source);
    ordered_json rj;
    rj["source"] = source.name();
    switch (res.status) {
      case cspk::ConeSearchStatus::Found:
        rj["status"] = "FOUND";
        rj["definition"] = cspk::cone_definition_to_json(*res.definition);
        break;
      case cspk::ConeSearchStatus::NoneExact:
        rj["status"] = "NONE";
        break;
      case cspk::ConeSearchStatus::Capped:
        rj["status"] = "CAPPED";
        capped = true;
        break;
    }
    results.push_back(std::move(rj));
  }
  j["results"] = std::move(results);
  emit(cspk::to_json_string(j), out_path);
  return capped ? 3 : 0;
}

int run_oracle(const std::string& language_path, const std::string& instance_path,
               const std::string& kernel_path, const std::string& out_path) {
  auto language = cspk::parse_language(language_path);
  auto instance = cspk::parse_instance(instance_path, language);

  ordered_json j;
  j["schema"] = 1;
  j["kind"] = "oracle";
  auto sat = cspk::brute_force_satisfiable(language, instance);
  j["satisfiable"] = sat.satisfiable;
  if (sat.witness) j["witness"] = cspk::tuple_to_string(*sat.witness);
  if (!kernel_path.empty()) {
    auto kernel = cspk::parse_instance(kernel_path, language);
    auto verdict = cspk::check_equivalence(language, instance, kernel);
    ordered_json ej;
    ej["equivalent"] = verdict.equivalent;
    ej["assignments_checked"] = verdict.assignments_checked;
    if (verdict.counterexample)
      ej["counterexample"] = cspk::tuple_to_string(*verdict.counterexample);
    j["equivalence"] = std::move(ej);
  }
  emit(cspk::to_json_string(j), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact classification and sparsification of Boolean CSPs"};
  app.require_subcommand(1);

  std::string language_path, instance_path, kernel_path, relation, target, out_path, report_path;
  std::string format = "json";

  auto* classify = app.add_subcommand("classify", "analyze a constraint language");
  classify->add_option("--language", language_path, "language file")->required();
  classify->add_option("--out", out_path, "output path (stdout when omitted)");
  classify->add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  auto* sparsify = app.add_subcommand("sparsify", "reduce an instance to an equivalent subset");
  sparsify->add_option("--language", language_path, "language file")->required();
  sparsify->add_option("--instance", instance_path, "instance file")->required();
  sparsify->add_option("--out", out_path, "kernel instance output (stdout when omitted)");
  sparsify->add_option("--report", report_path, "kernel report JSON output");

  auto* capture = app.add_subcommand("capture", "balancedness certificate for one relation");
  capture->add_option("--language", language_path, "language file")->required();
  capture->add_option("--relation", relation, "relation name")->required();
  capture->add_option("--out", out_path, "output path (stdout when omitted)");

  auto* cone = app.add_subcommand("cone", "search cone definitions of a target relation");
  cone->add_option("--language", language_path, "language file")->required();
  cone->add_option("--target", target, "or1, or2, or3, or a relation name")->required();
  cone->add_option("--out", out_path, "output path (stdout when omitted)");

  auto* oracle = app.add_subcommand("oracle", "brute-force satisfiability and equivalence");
  oracle->add_option("--language", language_path, "language file")->required();
  oracle->add_option("--instance", instance_path, "instance file")->required();
  oracle->add_option("--kernel", kernel_path, "second instance to compare against");
  oracle->add_option("--out", out_path, "output path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return run_classify(language_path, out_path, format);
    if (sparsify->parsed()) return run_sparsify(language_path, instance_path, out_path, report_path);
    if (capture->parsed()) return run_capture(language_path, relation, out_path);
    if (cone->parsed()) return run_cone(language_path, target, out_path);
    if (oracle->parsed()) return run_oracle(language_path, instance_path, kernel_path, out_path);
  } catch (const cspk::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cspk::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
