#pragma once

// Declarative scenario files: sections of key = value lines describing
// generators, words, measures and the analyses to run on them.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "rotor/measures.hpp"

namespace rotor {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

struct Section {
  std::string kind;  // tolerances, generator, annulus, word, measure, analysis
  std::string name;
  int line = 0;
  std::vector<Entry> entries;
};

/// Syntax-level parse; throws ConfigError.
std::vector<Section> parse_sections(std::string_view text);

using ParamValue = std::variant<std::int64_t, double, bool, std::string, std::vector<std::string>, std::vector<double>,
                                std::vector<std::int64_t>>;

struct Analysis {
  std::string name;
  std::string type;  // classify, rotation-set, invariant-measure, fixed-points, rotev, klein, verify
  int line = 0;
  std::map<std::string, ParamValue> params;
  std::vector<Entry> raw;  // as written, for the report
};

struct Tolerances {
  double defect = 1e-9;
  double fixed = 1e-10;
  double rotev = 1e-8;
  double hull = 2e-2;
  double rotation = 1e-8;
  double sigma = 1e-9;
};

/// A validated scenario: every name resolves, every generator is usable.
class Scenario {
 public:
  /// Throws ConfigError with the offending line and field.
  static Scenario parse(std::string_view text);
  static Scenario load(const std::filesystem::path& path);

  const MapGroup& group() const { return group_; }
  const Tolerances& tolerances() const { return tol_; }
  const std::vector<Analysis>& analyses() const { return analyses_; }

  /// Words by name; a bare generator name is the one-letter word.
  const LiftedWord& word(const std::string& name) const;
  /// Measures are built on first use and cached.
  const EmpiricalMeasure& measure(const std::string& name) const;

 private:
  MapGroup group_;
  Tolerances tol_;
  std::map<std::string, LiftedWord> words_;
  std::map<std::string, Section> measure_specs_;
  mutable std::map<std::string, std::shared_ptr<EmpiricalMeasure>> measure_cache_;
  std::vector<Analysis> analyses_;

  void add_measure_spec(const Section& s);
  void add_analysis(const Section& s);
};

struct AnalysisOutcome {
  std::string name;
  std::string type;
  std::string status;  // ok, failed (an expectation did not hold), error
  std::vector<std::filesystem::path> files;
};

/// Runs one analysis and writes <out>/<name>.json plus any tables.
AnalysisOutcome run_analysis(const Scenario& s, const Analysis& a, const std::filesystem::path& out);

/// Runs the analyses of the given type (all when empty). Returns the process exit
/// code: 0 when everything passed, 1 when an analysis failed.
int run_scenario(const Scenario& s, const std::string& type, const std::filesystem::path& out, std::ostream& log);

/// Runs the built-in suite (selected criteria, all when empty) and writes <out>/<file>.
int run_verify(const std::vector<std::int64_t>& ids, const std::filesystem::path& out, const std::string& file,
               std::ostream& log);

struct ExampleScenario {
  std::string file;
  std::string description;
  std::string text;
};

/// Ready-to-run scenarios covering the built-in catalog.
const std::vector<ExampleScenario>& example_scenarios();

/// JSON text as written to report files: two-space indent, trailing newline.
std::string render_json(const nlohmann::ordered_json& j);

}  // namespace rotor
