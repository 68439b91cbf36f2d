#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pathcast/pipeline.hpp"
#include "pathcast/simulator.hpp"
#include "pathcast/tracker.hpp"

namespace pathcast {

// JSON-lines codecs for every stream the pipeline reads or writes. One JSON
// object per line, LF-terminated UTF-8. Readers throw ParseError naming the
// source and line on malformed input. Writers are deterministic: identical
// values produce identical bytes.

void write_detection_stream(std::ostream& out, std::span<const DetectionFrame> frames);
std::vector<DetectionFrame> read_detection_stream(std::istream& in, const std::string& source);

void write_frame_reports(std::ostream& out, std::span<const FrameReport> reports);
std::vector<FrameReport> read_frame_reports(std::istream& in, const std::string& source);

void write_truth_events(std::ostream& out, std::span<const GroundTruthEvent> events);
std::vector<GroundTruthEvent> read_truth_events(std::istream& in, const std::string& source);

/// Noiseless per-frame vehicle centers plus the scenario meta values needed
/// to interpret them.
struct StateLog {
  double frame_rate = 20.0;
  double frame_size = 2048.0;
  std::vector<TrueState> states;
};

void write_state_log(std::ostream& out, const StateLog& log);
StateLog read_state_log(std::istream& in, const std::string& source);

/// Reads a scenario config file (a single JSON object; schema in the README).
/// Missing keys fall back to ScenarioConfig defaults.
ScenarioConfig read_scenario_config(const std::filesystem::path& file);
void write_scenario_config(const ScenarioConfig& config, const std::filesystem::path& file);

void write_metrics(std::ostream& out, const EvaluationResult& result);

}  // namespace pathcast
