#ifndef MTOR_CORE_TEXTIO_HPP
#define MTOR_CORE_TEXTIO_HPP

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "core/decision.hpp"
#include "core/fixtures.hpp"

namespace mtor {

using Json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Parses either input format; a leading '{' selects the JSON mirror.
InputDocument parse_input(const std::string& text);

// Canonical text rendering; parse_input(render_input(doc)) reproduces doc.
std::string render_input(const InputDocument& doc);

Json input_to_json(const InputDocument& doc);
InputDocument input_from_json(const Json& j);

// --- reports (all carry "schema": 1) ----------------------------------------

Json check_report(const InputDocument& doc);

struct PullbackReportOptions {
  int max_depth = 1;
  bool with_dot = false;
  std::int64_t max_subdivision_darts = 1'000'000;
  std::int64_t max_pullback_darts = 4'000'000;
};
Json pullback_report(const InputDocument& doc, const PullbackReportOptions& options);

Json oracle_report(const InputDocument& doc, int max_len, int max_k, std::int64_t max_d);

Json verdict_to_json(const InputDocument& doc, const Verdict& v);

// Reconstructs a verdict from its JSON form for independent re-checking.
// Throws std::invalid_argument on malformed or irrecoverable data.
Verdict verdict_from_json(const GraphMap& f, const Json& j);

DecideBudgets budgets_from_json(const Json& j);

}  // namespace mtor

#endif  // MTOR_CORE_TEXTIO_HPP
