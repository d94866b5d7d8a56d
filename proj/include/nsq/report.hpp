#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace nsq {

struct Failure {
  std::string case_name;
  std::string expected;
  std::string actual;
};

/// Pass/fail record of one verification suite. Cases whose outcome the
/// checker cannot decide are listed under undetermined and count as neither.
struct VerificationReport {
  std::string suite;
  int n = 0;
  std::uint64_t seed = 0;
  int cases = 0;
  int passed = 0;
  int failed = 0;
  std::vector<Failure> failures;
  std::vector<std::string> undetermined;
  std::vector<std::string> notes;
  std::int64_t millis = 0;

  void record(const std::string& case_name, bool ok, const std::string& expected = "",
              const std::string& actual = "") {
    ++cases;
    if (ok) {
      ++passed;
    } else {
      ++failed;
      failures.push_back({case_name, expected, actual});
    }
  }

  void merge(const VerificationReport& other) {
    cases += other.cases;
    passed += other.passed;
    failed += other.failed;
    for (const auto& f : other.failures) failures.push_back({other.suite + "/" + f.case_name, f.expected, f.actual});
    for (const auto& u : other.undetermined) undetermined.push_back(other.suite + "/" + u);
    for (const auto& s : other.notes) notes.push_back(s);
  }

  bool ok() const { return failed == 0; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["n"] = n;
    j["seed"] = seed;
    j["cases"] = cases;
    j["passed"] = passed;
    j["failed"] = failed;
    j["failures"] = nlohmann::ordered_json::array();
    for (const auto& f : failures) {
      j["failures"].push_back({{"case", f.case_name}, {"expected", f.expected}, {"actual", f.actual}});
    }
    j["undetermined"] = undetermined;
    j["notes"] = notes;
    j["millis"] = millis;
    return j;
  }

  std::string to_text() const {
    std::string out = suite + " (n=" + std::to_string(n) + ", seed=" + std::to_string(seed) + "): " +
                      std::to_string(passed) + "/" + std::to_string(cases) + " passed";
    if (!undetermined.empty()) out += ", " + std::to_string(undetermined.size()) + " undetermined";
    out += ", " + std::to_string(millis) + " ms\n";
    for (const auto& f : failures) {
      out += "  FAIL " + f.case_name + "\n    expected: " + f.expected + "\n    actual:   " + f.actual + "\n";
    }
    for (const auto& u : undetermined) out += "  UNDETERMINED " + u + "\n";
    for (const auto& s : notes) out += "  note: " + s + "\n";
    return out;
  }
};

/// Runs body(report) and stamps the wall time.
template <class Body>
VerificationReport timed_report(const std::string& suite, int n, std::uint64_t seed, Body&& body) {
  VerificationReport r;
  r.suite = suite;
  r.n = n;
  r.seed = seed;
  auto start = std::chrono::steady_clock::now();
  body(r);
  r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace nsq
