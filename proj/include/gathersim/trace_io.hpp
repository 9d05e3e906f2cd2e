// Text serialization of executions and bit-exact replay.
//
// A trace file is line-oriented: the first token of each line names the
// record, the rest are key=value pairs.  All floating-point values are
// written in shortest round-trip form, so importing a trace and re-running
// the recorded choices through a fresh engine reproduces every position
// bit for bit.  Blank lines and lines starting with '#' are ignored.
#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gathersim/engine.hpp"

namespace gathersim {

// Malformed trace text, or a replay that asks for a choice the trace does
// not contain.  line() is 1-based; 0 means the error is not tied to a line.
class TraceFormatError : public std::runtime_error {
 public:
  TraceFormatError(long line, const std::string& message);
  long line() const noexcept { return line_; }

 private:
  long line_;
};

void export_trace(std::ostream& out, const Execution& ex);
std::string trace_to_string(const Execution& ex);
void export_trace_file(const std::string& path, const Execution& ex);

// Parses setup, events, and outcome.  Derived per-tick data (configurations,
// settled flags) is not stored in the file; configs holds only the initial
// configuration until the trace is replayed.
Execution import_trace(std::istream& in);
Execution import_trace_string(const std::string& text);
Execution import_trace_file(const std::string& path);

// Adversary that re-issues the choices recorded in an execution: activation
// sets, deviations, scales, per-tick progress, and close decisions.
class ReplayPolicy : public AdversaryPolicy {
 public:
  explicit ReplayPolicy(const Execution& recorded);

  std::vector<int> choose_activations(const EngineView& view) override;
  double choose_deviation(int robot, const EngineView& view) override;
  double choose_scale(int robot, const EngineView& view) override;
  double choose_progress(const CycleView& cycle, const EngineView& view) override;
  bool choose_close(const CycleView& cycle, const EngineView& view) override;

 private:
  double lookup(const std::map<std::pair<long, int>, double>& table, long tick, int robot,
                const char* what) const;

  CompassMode compass_mode_;
  std::array<double, 2> static_deviations_ = {0.0, 0.0};
  std::map<long, std::vector<int>> activations_;
  std::map<std::pair<long, int>, double> deviations_;
  std::map<std::pair<long, int>, double> scales_;
  std::map<std::pair<long, int>, double> progress_;
  std::set<std::pair<long, int>> closes_;
};

// Re-runs a finished execution from its recorded setup and choices, and
// returns the fresh execution (with configs and settled flags rebuilt).
Execution replay(const Execution& recorded);

// True when setup, recorded choices, events, and outcome agree bitwise.
// Per-tick configurations are derived data and are not consulted.
bool trace_equal(const Execution& a, const Execution& b);

}  // namespace gathersim
