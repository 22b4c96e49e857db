// Command-line front end; talks to the library through the C interface only.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mtor/mtor.h"

namespace {

constexpr int kExitInputError = 2;

struct InputHandle {
  mtor_input* ptr = nullptr;
  ~InputHandle() { mtor_input_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { mtor_string_free(ptr); }
  std::string str() const { return ptr != nullptr ? std::string(ptr) : std::string(); }
};

struct InputOptions {
  std::string example;
  std::string file;
};

void add_input_options(CLI::App* cmd, InputOptions& opts) {
  auto* ex = cmd->add_option("--example", opts.example, "built-in example name");
  auto* in = cmd->add_option("--input", opts.file, "input file (text or JSON format)");
  ex->excludes(in);
}

int load_input(const InputOptions& opts, InputHandle& handle) {
  OwnedString err;
  int rc;
  if (!opts.example.empty()) {
    rc = mtor_input_builtin(opts.example.c_str(), &handle.ptr, &err.ptr);
  } else if (!opts.file.empty()) {
    std::ifstream in(opts.file);
    if (!in) {
      std::cerr << "error: cannot open '" << opts.file << "'\n";
      return kExitInputError;
    }
    std::ostringstream text;
    text << in.rdbuf();
    rc = mtor_input_parse(text.str().c_str(), &handle.ptr, &err.ptr);
  } else {
    std::ostringstream text;
    text << std::cin.rdbuf();
    rc = mtor_input_parse(text.str().c_str(), &handle.ptr, &err.ptr);
  }
  if (rc != MTOR_OK) {
    std::cerr << "error (" << mtor_error_name(rc) << "): " << err.str() << "\n";
    return kExitInputError;
  }
  return 0;
}

int run_check(const InputOptions& opts) {
  InputHandle input;
  if (int rc = load_input(opts, input); rc != 0) return rc;
  OwnedString json;
  if (mtor_check_report(input.ptr, &json.ptr) != MTOR_OK) {
    std::cerr << "error: check failed\n";
    return 1;
  }
  std::cout << json.str() << "\n";
  return 0;
}

int run_pullback(const InputOptions& opts, int depth, const std::string& dot_dir) {
  InputHandle input;
  if (int rc = load_input(opts, input); rc != 0) return rc;
  OwnedString json, err;
  int rc = mtor_pullback_report(input.ptr, depth, dot_dir.empty() ? 0 : 1, &json.ptr, &err.ptr);
  if (rc != MTOR_OK) {
    std::cerr << "error (" << mtor_error_name(rc) << "): " << err.str() << "\n";
    return kExitInputError;
  }
  if (!dot_dir.empty()) {
    for (int d = 1; d <= depth; ++d) {
      OwnedString dot, dot_err;
      if (mtor_pullback_dot(input.ptr, d, &dot.ptr, &dot_err.ptr) != MTOR_OK) break;
      std::string path = dot_dir + "/pullback_depth_" + std::to_string(d) + ".dot";
      std::ofstream out(path);
      if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return 1;
      }
      out << dot.str();
    }
  }
  std::cout << json.str() << "\n";
  return 0;
}

int run_decide(const InputOptions& opts, const std::string& budgets, bool verify) {
  InputHandle input;
  if (int rc = load_input(opts, input); rc != 0) return rc;
  OwnedString json, err;
  int verdict = MTOR_VERDICT_INCONCLUSIVE;
  int rc = mtor_decide(input.ptr, budgets.empty() ? nullptr : budgets.c_str(), verify ? 1 : 0,
                       &json.ptr, &verdict, &err.ptr);
  if (rc != MTOR_OK) {
    std::cerr << "error (" << mtor_error_name(rc) << "): " << err.str() << "\n";
    return kExitInputError;
  }
  std::cout << json.str() << "\n";
  return verdict;
}

int run_oracle(const InputOptions& opts, int max_len, int max_k, std::int64_t max_d) {
  InputHandle input;
  if (int rc = load_input(opts, input); rc != 0) return rc;
  OwnedString json, err;
  int rc = mtor_oracle(input.ptr, max_len, max_k, max_d, &json.ptr, &err.ptr);
  if (rc != MTOR_OK) {
    std::cerr << "error (" << mtor_error_name(rc) << "): " << err.str() << "\n";
    return kExitInputError;
  }
  std::cout << json.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decides word-hyperbolicity of mapping tori of graph immersions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mtor_version()));

  InputOptions check_opts;
  auto* check = app.add_subcommand("check", "certify or refute that the map is an immersion");
  add_input_options(check, check_opts);

  InputOptions pull_opts;
  int pull_depth = 3;
  std::string dot_dir;
  auto* pull = app.add_subcommand("pullback", "iterated fibered-product exploration");
  add_input_options(pull, pull_opts);
  pull->add_option("--depth", pull_depth, "maximum depth")->check(CLI::PositiveNumber);
  pull->add_option("--dot-dir", dot_dir, "write one Graphviz file per depth into this directory");

  InputOptions decide_opts;
  bool verify = false;
  int max_depth = -1, k_budget = -1;
  std::int64_t d_cap = -1, expansion_cap = -1;
  auto* dec = app.add_subcommand(
      "decide", "decide hyperbolicity; exit 0 hyperbolic, 10 not, 20 inconclusive, 2 input error");
  add_input_options(dec, decide_opts);
  dec->add_flag("--verify", verify, "rerun the independent certificate checker");
  dec->add_option("--max-depth", max_depth, "pullback depth budget");
  dec->add_option("--k-budget", k_budget, "iterate budget for loop certification");
  dec->add_option("--d-cap", d_cap, "largest degree tried for invariant loops");
  dec->add_option("--expansion-cap", expansion_cap, "search cap for the expansion exponent");

  InputOptions oracle_opts;
  int max_len = 6, max_k = 4;
  std::int64_t max_d = 64;
  auto* oracle = app.add_subcommand("oracle", "brute-force invariant-word search");
  add_input_options(oracle, oracle_opts);
  oracle->add_option("--max-len", max_len, "longest cyclic word tried")->check(CLI::PositiveNumber);
  oracle->add_option("--max-k", max_k, "largest iterate tried")->check(CLI::PositiveNumber);
  oracle->add_option("--max-d", max_d, "largest degree tried")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return run_check(check_opts);
  if (pull->parsed()) return run_pullback(pull_opts, pull_depth, dot_dir);
  if (dec->parsed()) {
    std::string budgets;
    {
      std::ostringstream os;
      bool any = false;
      os << "{";
      auto emit = [&](const char* key, std::int64_t value) {
        if (value < 0) return;
        if (any) os << ",";
        os << "\"" << key << "\":" << value;
        any = true;
      };
      emit("max_depth", max_depth);
      emit("k_budget", k_budget);
      emit("d_cap", d_cap);
      emit("expansion_cap", expansion_cap);
      os << "}";
      if (any) budgets = os.str();
    }
    return run_decide(decide_opts, budgets, verify);
  }
  if (oracle->parsed()) return run_oracle(oracle_opts, max_len, max_k, max_d);
  return 1;
}
