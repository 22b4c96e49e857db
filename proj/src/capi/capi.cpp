#include "mtor/mtor.h"

#include <cstring>
#include <new>
#include <string>

#include "core/decision.hpp"
#include "core/dot.hpp"
#include "core/textio.hpp"

struct mtor_input {
  mtor::InputDocument doc;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out == nullptr) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_message(char** slot, const std::string& message) {
  if (slot != nullptr) *slot = dup_string(message);
}

int fail(int code, char** slot, const std::string& message) {
  set_message(slot, message);
  return code;
}

bool is_immersion_failure(const std::string& message) {
  return message.find("not an immersion") != std::string::npos;
}

}  // namespace

extern "C" {

const char* mtor_version(void) { return "0.1.0"; }

const char* mtor_error_name(int code) {
  switch (code) {
    case MTOR_OK: return "ok";
    case MTOR_ERR_PARSE: return "parse_error";
    case MTOR_ERR_BAD_ARG: return "bad_argument";
    case MTOR_ERR_NOT_IMMERSION: return "not_immersion";
    case MTOR_ERR_UNSUPPORTED: return "unsupported";
    case MTOR_ERR_INTERNAL: return "internal_error";
    default: return "unknown";
  }
}

void mtor_string_free(char* s) { delete[] s; }

int mtor_input_parse(const char* text, mtor_input** out, char** error_message) {
  if (text == nullptr || out == nullptr) {
    return fail(MTOR_ERR_BAD_ARG, error_message, "null argument");
  }
  try {
    auto* input = new mtor_input{mtor::parse_input(text)};
    *out = input;
    return MTOR_OK;
  } catch (const mtor::ParseError& err) {
    return fail(MTOR_ERR_PARSE, error_message, err.what());
  } catch (const std::exception& err) {
    return fail(MTOR_ERR_INTERNAL, error_message, err.what());
  }
}

int mtor_input_builtin(const char* name, mtor_input** out, char** error_message) {
  if (name == nullptr || out == nullptr) {
    return fail(MTOR_ERR_BAD_ARG, error_message, "null argument");
  }
  try {
    auto doc = mtor::builtin_fixture(name);
    if (!doc.has_value()) {
      return fail(MTOR_ERR_BAD_ARG, error_message,
                  std::string("unknown fixture '") + name + "'");
    }
    *out = new mtor_input{std::move(*doc)};
    return MTOR_OK;
  } catch (const std::exception& err) {
    return fail(MTOR_ERR_INTERNAL, error_message, err.what());
  }
}

void mtor_input_free(mtor_input* input) { delete input; }

int mtor_input_kind(const mtor_input* input) {
  if (input == nullptr) return MTOR_ERR_BAD_ARG;
  return input->doc.is_endomorphism() ? MTOR_KIND_ENDOMORPHISM : MTOR_KIND_GRAPH_MAP;
}

int mtor_input_render(const mtor_input* input, char** text) {
  if (input == nullptr || text == nullptr) return MTOR_ERR_BAD_ARG;
  try {
    *text = dup_string(mtor::render_input(input->doc));
    return *text != nullptr ? MTOR_OK : MTOR_ERR_INTERNAL;
  } catch (const std::exception&) {
    return MTOR_ERR_INTERNAL;
  }
}

int mtor_builtin_names(char** text) {
  if (text == nullptr) return MTOR_ERR_BAD_ARG;
  std::string all;
  for (const std::string& name : mtor::builtin_fixture_names()) {
    if (!all.empty()) all += ",";
    all += name;
  }
  *text = dup_string(all);
  return *text != nullptr ? MTOR_OK : MTOR_ERR_INTERNAL;
}

int mtor_check_report(const mtor_input* input, char** json) {
  if (input == nullptr || json == nullptr) return MTOR_ERR_BAD_ARG;
  try {
    *json = dup_string(mtor::check_report(input->doc).dump(2));
    return *json != nullptr ? MTOR_OK : MTOR_ERR_INTERNAL;
  } catch (const std::exception&) {
    return MTOR_ERR_INTERNAL;
  }
}

int mtor_pullback_report(const mtor_input* input, int max_depth, int with_dot, char** json,
                         char** error_message) {
  if (input == nullptr || json == nullptr || max_depth < 1) {
    return fail(MTOR_ERR_BAD_ARG, error_message, "bad argument");
  }
  try {
    mtor::PullbackReportOptions options;
    options.max_depth = max_depth;
    options.with_dot = with_dot != 0;
    *json = dup_string(mtor::pullback_report(input->doc, options).dump(2));
    return *json != nullptr ? MTOR_OK : MTOR_ERR_INTERNAL;
  } catch (const std::invalid_argument& err) {
    int code = is_immersion_failure(err.what()) ? MTOR_ERR_NOT_IMMERSION : MTOR_ERR_BAD_ARG;
    return fail(code, error_message, err.what());
  } catch (const std::exception& err) {
    return fail(MTOR_ERR_INTERNAL, error_message, err.what());
  }
}

int mtor_pullback_dot(const mtor_input* input, int depth, char** dot, char** error_message) {
  if (input == nullptr || dot == nullptr || depth < 1) {
    return fail(MTOR_ERR_BAD_ARG, error_message, "bad argument");
  }
  try {
    mtor::GraphMap f = input->doc.realize_map();
    mtor::ImmersionCheck check = mtor::check_immersion(f);
    if (!check.ok()) {
      return fail(MTOR_ERR_NOT_IMMERSION, error_message, "input is not an immersion");
    }
    mtor::PullbackGraph p = mtor::pullback(f, depth);
    mtor::Classified cls = mtor::classify_components(p);
    *dot = dup_string(mtor::pullback_dot(input->doc, p, cls));
    return *dot != nullptr ? MTOR_OK : MTOR_ERR_INTERNAL;
  } catch (const std::invalid_argument& err) {
    return fail(MTOR_ERR_BAD_ARG, error_message, err.what());
  } catch (const std::exception& err) {
    return fail(MTOR_ERR_INTERNAL, error_message, err.what());
  }
}

int mtor_decide(const mtor_input* input, const char* budgets_json, int run_verify, char** json,
                int* verdict_out, char** error_message) {
  if (input == nullptr || json == nullptr) {
    return fail(MTOR_ERR_BAD_ARG, error_message, "bad argument");
  }
  try {
    mtor::DecideBudgets budgets;
    if (budgets_json != nullptr && budgets_json[0] != '\0') {
      mtor::Json parsed = mtor::Json::parse(budgets_json, nullptr, false);
      if (parsed.is_discarded()) {
        return fail(MTOR_ERR_BAD_ARG, error_message, "budgets are not valid JSON");
      }
      budgets = mtor::budgets_from_json(parsed);
    }
    mtor::GraphMap f = input->doc.realize_map();
    mtor::Verdict verdict = mtor::decide(f, budgets);
    mtor::Json out = mtor::verdict_to_json(input->doc, verdict);
    if (run_verify != 0) {
      if (verdict.kind == mtor::Verdict::Kind::inconclusive) {
        out["verified"] = nullptr;
      } else {
        out["verified"] = mtor::verify(f, verdict);
      }
    }
    if (verdict_out != nullptr) {
      switch (verdict.kind) {
        case mtor::Verdict::Kind::hyperbolic: *verdict_out = MTOR_VERDICT_HYPERBOLIC; break;
        case mtor::Verdict::Kind::not_hyperbolic: *verdict_out = MTOR_VERDICT_NOT_HYPERBOLIC; break;
        case mtor::Verdict::Kind::inconclusive: *verdict_out = MTOR_VERDICT_INCONCLUSIVE; break;
      }
    }
    *json = dup_string(out.dump(2));
    return *json != nullptr ? MTOR_OK : MTOR_ERR_INTERNAL;
  } catch (const std::invalid_argument& err) {
    int code = is_immersion_failure(err.what()) ? MTOR_ERR_NOT_IMMERSION : MTOR_ERR_BAD_ARG;
    return fail(code, error_message, err.what());
  } catch (const std::exception& err) {
    return fail(MTOR_ERR_INTERNAL, error_message, err.what());
  }
}

int mtor_verify_verdict(const mtor_input* input, const char* verdict_json, int* ok,
                        char** error_message) {
  if (input == nullptr || verdict_json == nullptr || ok == nullptr) {
    return fail(MTOR_ERR_BAD_ARG, error_message, "bad argument");
  }
  try {
    mtor::Json parsed = mtor::Json::parse(verdict_json, nullptr, false);
    if (parsed.is_discarded()) {
      return fail(MTOR_ERR_BAD_ARG, error_message, "verdict is not valid JSON");
    }
    mtor::GraphMap f = input->doc.realize_map();
    try {
      mtor::Verdict verdict = mtor::verdict_from_json(f, parsed);
      *ok = mtor::verify(f, verdict) ? 1 : 0;
    } catch (const std::exception&) {
      *ok = 0;  // malformed certificates verify as false
    }
    return MTOR_OK;
  } catch (const std::exception& err) {
    return fail(MTOR_ERR_INTERNAL, error_message, err.what());
  }
}

int mtor_oracle(const mtor_input* input, int max_len, int max_k, int64_t max_d, char** json,
                char** error_message) {
  if (input == nullptr || json == nullptr || max_len < 1 || max_k < 1 || max_d < 1) {
    return fail(MTOR_ERR_BAD_ARG, error_message, "bad argument");
  }
  if (!input->doc.is_endomorphism()) {
    return fail(MTOR_ERR_UNSUPPORTED, error_message,
                "the word oracle needs an endomorphism input");
  }
  try {
    *json = dup_string(mtor::oracle_report(input->doc, max_len, max_k, max_d).dump(2));
    return *json != nullptr ? MTOR_OK : MTOR_ERR_INTERNAL;
  } catch (const std::exception& err) {
    return fail(MTOR_ERR_INTERNAL, error_message, err.what());
  }
}

}  // extern "C"
