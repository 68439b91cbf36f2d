#include "pathcast/serialization.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "pathcast/errors.hpp"

namespace pathcast {

using nlohmann::json;

namespace {

json point_to_json(PixelPoint p) { return json::array({p.x, p.y}); }

PixelPoint point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw json::type_error::create(302, "expected a [x, y] pair", &j);
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

template <typename Fn>
void for_each_line(std::istream& in, const std::string& source, Fn&& fn) {
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      throw ParseError(source, line_number, e.what());
    }
  }
}

}  // namespace

void write_detection_stream(std::ostream& out, std::span<const DetectionFrame> frames) {
  for (const DetectionFrame& frame : frames) {
    json dets = json::array();
    for (const Detection& d : frame.detections) {
      dets.push_back({{"bbox", json::array({d.bbox.x1, d.bbox.y1, d.bbox.x2, d.bbox.y2})}});
    }
    out << json{{"frame", frame.frame}, {"detections", std::move(dets)}}.dump() << '\n';
  }
}

std::vector<DetectionFrame> read_detection_stream(std::istream& in, const std::string& source) {
  std::vector<DetectionFrame> frames;
  for_each_line(in, source, [&](const json& j) {
    DetectionFrame frame;
    frame.frame = j.at("frame").get<std::int64_t>();
    for (const json& d : j.at("detections")) {
      const json& bbox = d.at("bbox");
      if (!bbox.is_array() || bbox.size() != 4) {
        throw json::type_error::create(302, "bbox must hold [x1, y1, x2, y2]", &bbox);
      }
      frame.detections.push_back({frame.frame,
                                  {bbox[0].get<double>(), bbox[1].get<double>(),
                                   bbox[2].get<double>(), bbox[3].get<double>()}});
    }
    frames.push_back(std::move(frame));
  });
  return frames;
}

namespace {

json collision_to_json(const CollisionReport& c) {
  return {{"pair", json::array({c.vehicle1, c.vehicle2})},
          {"probability", c.probability},
          {"n_comb", c.n_comb},
          {"n_col", c.n_col},
          {"example",
           {{"paths", json::array({c.example.path1, c.example.path2})},
            {"t", c.example.t_mid},
            {"x", json::array({c.example.x_mid, c.example.y_mid})}}}};
}

CollisionReport collision_from_json(const json& j) {
  CollisionReport c;
  c.vehicle1 = j.at("pair")[0].get<int>();
  c.vehicle2 = j.at("pair")[1].get<int>();
  c.probability = j.at("probability").get<double>();
  c.n_comb = j.at("n_comb").get<int>();
  c.n_col = j.at("n_col").get<int>();
  const json& ex = j.at("example");
  c.example.path1 = ex.at("paths")[0].get<std::string>();
  c.example.path2 = ex.at("paths")[1].get<std::string>();
  c.example.t_mid = ex.at("t").get<double>();
  c.example.x_mid = ex.at("x")[0].get<long>();
  c.example.y_mid = ex.at("x")[1].get<long>();
  return c;
}

}  // namespace

void write_frame_reports(std::ostream& out, std::span<const FrameReport> reports) {
  for (const FrameReport& report : reports) {
    json tracks = json::array();
    for (const TrackSnapshot& t : report.tracks) {
      json associations = json::array();
      for (const PathAssociation& a : t.associations) {
        associations.push_back(
            {{"path", a.path_id}, {"index", a.index}, {"distance", a.distance}});
      }
      tracks.push_back({{"id", t.vehicle_id},
                        {"centroid", point_to_json(t.centroid)},
                        {"associations", std::move(associations)}});
    }
    json predictions = json::array();
    for (const PredictionSummary& p : report.predictions) {
      predictions.push_back({{"vehicle", p.vehicle},
                             {"path", p.path_id},
                             {"index_velocity", p.index_velocity},
                             {"n_points", p.n_points},
                             {"low_confidence", p.low_confidence},
                             {"first", point_to_json(p.first)},
                             {"last", point_to_json(p.last)}});
    }
    json collisions = json::array();
    for (const CollisionReport& c : report.collisions) {
      collisions.push_back(collision_to_json(c));
    }
    out << json{{"frame", report.frame},
                {"tracks", std::move(tracks)},
                {"predictions", std::move(predictions)},
                {"collisions", std::move(collisions)}}
               .dump()
        << '\n';
  }
}

std::vector<FrameReport> read_frame_reports(std::istream& in, const std::string& source) {
  std::vector<FrameReport> reports;
  for_each_line(in, source, [&](const json& j) {
    FrameReport report;
    report.frame = j.at("frame").get<std::int64_t>();
    for (const json& t : j.at("tracks")) {
      TrackSnapshot snapshot;
      snapshot.vehicle_id = t.at("id").get<int>();
      snapshot.centroid = point_from_json(t.at("centroid"));
      for (const json& a : t.at("associations")) {
        snapshot.associations.push_back({a.at("path").get<std::string>(),
                                         a.at("index").get<std::size_t>(),
                                         a.at("distance").get<double>()});
      }
      report.tracks.push_back(std::move(snapshot));
    }
    for (const json& p : j.at("predictions")) {
      report.predictions.push_back({p.at("vehicle").get<int>(), p.at("path").get<std::string>(),
                                    p.at("index_velocity").get<double>(),
                                    p.at("n_points").get<std::size_t>(),
                                    p.at("low_confidence").get<bool>(),
                                    point_from_json(p.at("first")),
                                    point_from_json(p.at("last"))});
    }
    for (const json& c : j.at("collisions")) {
      report.collisions.push_back(collision_from_json(c));
    }
    reports.push_back(std::move(report));
  });
  return reports;
}

void write_truth_events(std::ostream& out, std::span<const GroundTruthEvent> events) {
  for (const GroundTruthEvent& e : events) {
    out << json{{"pair", json::array({e.vehicle_a, e.vehicle_b})},
                {"frame", e.frame},
                {"location", point_to_json(e.location)}}
               .dump()
        << '\n';
  }
}

std::vector<GroundTruthEvent> read_truth_events(std::istream& in, const std::string& source) {
  std::vector<GroundTruthEvent> events;
  for_each_line(in, source, [&](const json& j) {
    GroundTruthEvent e;
    e.vehicle_a = j.at("pair")[0].get<int>();
    e.vehicle_b = j.at("pair")[1].get<int>();
    e.frame = j.at("frame").get<std::int64_t>();
    e.location = point_from_json(j.at("location"));
    events.push_back(e);
  });
  return events;
}

void write_state_log(std::ostream& out, const StateLog& log) {
  out << json{{"meta", {{"frame_rate", log.frame_rate}, {"frame_size", log.frame_size}}}}.dump()
      << '\n';
  std::size_t i = 0;
  while (i < log.states.size()) {
    const std::int64_t frame = log.states[i].frame;
    json vehicles = json::array();
    while (i < log.states.size() && log.states[i].frame == frame) {
      vehicles.push_back(
          {{"id", log.states[i].vehicle}, {"center", point_to_json(log.states[i].center)}});
      ++i;
    }
    out << json{{"frame", frame}, {"vehicles", std::move(vehicles)}}.dump() << '\n';
  }
}

StateLog read_state_log(std::istream& in, const std::string& source) {
  StateLog log;
  bool meta_seen = false;
  for_each_line(in, source, [&](const json& j) {
    if (!meta_seen) {
      const json& meta = j.at("meta");
      log.frame_rate = meta.at("frame_rate").get<double>();
      log.frame_size = meta.at("frame_size").get<double>();
      meta_seen = true;
      return;
    }
    const std::int64_t frame = j.at("frame").get<std::int64_t>();
    for (const json& v : j.at("vehicles")) {
      log.states.push_back({frame, v.at("id").get<int>(), point_from_json(v.at("center"))});
    }
  });
  if (!meta_seen) {
    throw ParseError(source, 1, "missing meta record");
  }
  return log;
}

ScenarioConfig read_scenario_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_scenario_config: cannot open '" + file.string() + "'");
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(file.string(), 1, e.what());
  }
  try {
    ScenarioConfig config;
    config.seed = j.value("seed", config.seed);
    config.frame_rate = j.value("frame_rate", config.frame_rate);
    config.duration = j.value("duration", config.duration);
    config.frame_size = j.value("frame_size", config.frame_size);
    config.noise_sigma = j.value("noise_sigma", config.noise_sigma);
    config.dropout_prob = j.value("dropout_prob", config.dropout_prob);
    config.collision_distance = j.value("collision_distance", config.collision_distance);
    config.false_positive_rate = j.value("false_positive_rate", config.false_positive_rate);
    for (const json& v : j.at("vehicles")) {
      VehicleSpec spec;
      spec.path_id = v.at("path").get<std::string>();
      spec.spawn_frame = v.value("spawn_frame", spec.spawn_frame);
      spec.speed = v.at("speed").get<double>();
      if (v.contains("size")) {
        spec.length = v["size"][0].get<double>();
        spec.width = v["size"][1].get<double>();
      }
      config.vehicles.push_back(std::move(spec));
    }
    return config;
  } catch (const json::exception& e) {
    throw ParseError(file.string(), 1, e.what());
  }
}

void write_scenario_config(const ScenarioConfig& config, const std::filesystem::path& file) {
  json vehicles = json::array();
  for (const VehicleSpec& v : config.vehicles) {
    vehicles.push_back({{"path", v.path_id},
                        {"spawn_frame", v.spawn_frame},
                        {"speed", v.speed},
                        {"size", json::array({v.length, v.width})}});
  }
  const json j{{"seed", config.seed},
               {"frame_rate", config.frame_rate},
               {"duration", config.duration},
               {"frame_size", config.frame_size},
               {"noise_sigma", config.noise_sigma},
               {"dropout_prob", config.dropout_prob},
               {"collision_distance", config.collision_distance},
               {"false_positive_rate", config.false_positive_rate},
               {"vehicles", std::move(vehicles)}};
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_scenario_config: cannot open '" + file.string() + "'");
  }
  out << j.dump(2) << '\n';
}

void write_metrics(std::ostream& out, const EvaluationResult& result) {
  const json j{{"true_positives", result.true_positives},
               {"false_positives", result.false_positives},
               {"false_negatives", result.false_negatives},
               {"recall", result.recall},
               {"precision", result.precision},
               {"mean_lead_time", result.mean_lead_time}};
  out << j.dump(2) << '\n';
}

}  // namespace pathcast
