#pragma once

// Built-in verification suite: one entry per acceptance criterion.

#include <string>
#include <vector>

#include "json.hpp"

namespace rotor {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;  // wall-clock budget, checked by the acceptance harness only
  CriterionResult (*run)();
};

const std::vector<Criterion>& criteria();

/// Runs one criterion, turning any exception into a failed result.
CriterionResult run_criterion(const Criterion& c);

/// {"suite": ..., "criteria": [...], "passed": ...}; contains no timings or thread counts.
nlohmann::ordered_json suite_report(const std::vector<CriterionResult>& results);

}  // namespace rotor
