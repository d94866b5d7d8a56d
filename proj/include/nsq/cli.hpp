#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nsq/parser.hpp"
#include "nsq/suites.hpp"

namespace nsq {

enum ExitCode : int { exit_ok = 0, exit_verification_failed = 1, exit_usage = 2 };

namespace detail {

inline std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("NSQ_SEED");
  if (!s || !*s) return std::nullopt;
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used != std::string(s).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("NSQ_SEED is not an unsigned integer: ") + s);
  }
}

inline std::string show_generators(const Observable& f, bool reduced) {
  try {
    return format(reduced ? decompose_reduced(f) : decompose(f), reduced);
  } catch (const NotInGeneratorAlgebra&) {
    return f.debug_string();
  }
}

}  // namespace detail

/// Runs `nsq <subcommand> ...` with argv[0] omitted. Results go to out,
/// diagnostics to err.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomial observables, brackets and quantization on the frame bundle of R^n", "nsq"};
  app.require_subcommand(1);
  app.fallthrough();

  int n = 2;
  std::optional<std::uint64_t> seed;
  std::string fmt = "text";
  app.add_option("-n", n, "dimension of the base")->check(CLI::Range(1, 9));
  app.add_option("--seed", seed, "seed for randomized suites (falls back to NSQ_SEED)");
  app.add_option("--format", fmt, "output format")->check(CLI::IsMember({"text", "json"}));

  std::string e1, e2, map_name = "q1", suite;
  bool gauge_b1 = false;

  auto* bracket_cmd = app.add_subcommand("bracket", "Poisson bracket of two observables");
  bracket_cmd->add_option("f", e1)->required();
  bracket_cmd->add_option("g", e2)->required();

  auto* hamvf_cmd = app.add_subcommand("hamvf", "canonical Hamiltonian vector field");
  hamvf_cmd->add_option("f", e1)->required();
  hamvf_cmd->add_flag("--gauge-b1", gauge_b1, "use the representative tangent to B_1");

  auto* quantize_cmd = app.add_subcommand("quantize", "image under a quantization map");
  quantize_cmd->add_option("--map", map_name)->check(CLI::IsMember({"q1", "q2"}));
  quantize_cmd->add_option("f", e1)->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "restriction to B_1");
  reduce_cmd->add_option("f", e1)->required();

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("--suite", suite)->required()->description("one of: " + [] {
    std::string s;
    for (const auto& name : suite_names()) s += (s.empty() ? "" : ", ") + name;
    return s;
  }());

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "nsq: " << e.what() << "\n";
    return exit_usage;
  }

  auto emit = [&](const std::string& command, const std::string& result) {
    if (fmt == "json") {
      nlohmann::ordered_json j;
      j["command"] = command;
      j["n"] = n;
      j["result"] = result;
      out << j.dump(2) << "\n";
    } else {
      out << result << "\n";
    }
  };

  try {
    Dimension dim(n);
    if (bracket_cmd->parsed()) {
      Observable f = parse_observable(e1, dim);
      Observable g = parse_observable(e2, dim);
      emit("bracket", detail::show_generators(bracket(f, g), false));
    } else if (hamvf_cmd->parsed()) {
      Observable f = parse_observable(e1, dim);
      emit("hamvf", (gauge_b1 ? gauge_fix_for_B1(f) : ham_vf(f)).to_string());
    } else if (quantize_cmd->parsed()) {
      Observable f = parse_observable(e1, dim);
      emit("quantize", quantize(map_name == "q1" ? q1_map() : q2_map(), f).to_string());
    } else if (reduce_cmd->parsed()) {
      Observable f = parse_observable(e1, dim);
      emit("reduce", detail::show_generators(reduce_observable(f), true));
    } else if (verify_cmd->parsed()) {
      SuiteOptions o;
      o.n = dim;
      if (seed) {
        o.seed = *seed;
      } else if (auto s = detail::env_seed()) {
        o.seed = *s;
      }
      VerificationReport r = run_suite(suite, o);
      if (fmt == "json") {
        out << r.to_json().dump(2) << "\n";
      } else {
        out << r.to_text();
      }
      return r.ok() ? exit_ok : exit_verification_failed;
    }
  } catch (const ParseError& e) {
    err << "nsq: " << e.what() << "\n";
    return exit_usage;
  } catch (const UnknownSuite& e) {
    err << "nsq: " << e.what() << "\n";
    return exit_usage;
  } catch (const NotInGeneratorAlgebra& e) {
    err << "nsq: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "nsq: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_ok;
}

}  // namespace nsq
