#pragma once

// Run reports for the command-line tool. Everything except the first line
// (timestamp and timings) is deterministic for fixed inputs and flags.

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace bsset {

// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_digest(std::string_view data);

class RunReport {
 public:
  using Json = nlohmann::ordered_json;

  explicit RunReport(std::string command);

  void add_input(const std::string& label, std::string_view contents);
  // Sections keep insertion order.
  Json& section(const std::string& name);
  void verdict(const std::string& name, const std::string& status, const std::string& reason = "");
  void timing(const std::string& step, double milliseconds);

  bool any_failed() const;
  const Json& verdicts() const noexcept { return verdicts_; }

  std::string text() const;
  std::string json() const;

 private:
  std::string header() const;

  std::string command_;
  std::string started_;
  Json inputs_ = Json::array();
  Json sections_ = Json::object();
  Json verdicts_ = Json::array();
  std::vector<std::pair<std::string, double>> timings_;
};

// Times a scope into a report.
class StepTimer {
 public:
  StepTimer(RunReport& report, std::string step);
  ~StepTimer();
  StepTimer(const StepTimer&) = delete;
  StepTimer& operator=(const StepTimer&) = delete;

 private:
  RunReport& report_;
  std::string step_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace bsset
