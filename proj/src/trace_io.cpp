#include "gathersim/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <system_error>

#include "gathersim/algorithms.hpp"

namespace gathersim {

namespace {

constexpr int kTraceVersion = 1;

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

const char* mode_tag(SchedulerMode m) {
  return m == SchedulerMode::SemiSynchronous ? "semi-sync" : "async";
}

const char* compass_tag(CompassMode m) { return m == CompassMode::Static ? "static" : "dynamic"; }

const char* kind_tag(EventKind k) {
  switch (k) {
    case EventKind::Activate:
      return "activate";
    case EventKind::Look:
      return "look";
    case EventKind::Progress:
      return "progress";
    case EventKind::CycleEnd:
      return "cycle-end";
    case EventKind::Terminate:
      return "terminate";
  }
  return "?";
}

const char* status_tag(RunStatus s) {
  switch (s) {
    case RunStatus::Gathered:
      return "gathered";
    case RunStatus::Stuck:
      return "stuck";
    case RunStatus::HorizonReached:
      return "horizon";
  }
  return "?";
}

// One parsed line: the leading record name plus its key=value fields.
struct Record {
  long line = 0;
  std::string name;
  std::map<std::string, std::string> fields;

  const std::string& get(const char* key) const {
    auto it = fields.find(key);
    if (it == fields.end()) {
      throw TraceFormatError(line, "record '" + name + "' is missing field '" + key + "'");
    }
    return it->second;
  }
  bool has(const char* key) const { return fields.count(key) > 0; }

  double get_double(const char* key) const {
    const std::string& raw = get(key);
    double value = 0.0;
    const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (res.ec != std::errc() || res.ptr != raw.data() + raw.size()) {
      throw TraceFormatError(line, "field '" + std::string(key) + "' is not a number: " + raw);
    }
    return value;
  }
  long get_long(const char* key) const {
    const std::string& raw = get(key);
    long value = 0;
    const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (res.ec != std::errc() || res.ptr != raw.data() + raw.size()) {
      throw TraceFormatError(line, "field '" + std::string(key) + "' is not an integer: " + raw);
    }
    return value;
  }
  unsigned long long get_ull(const char* key) const {
    const std::string& raw = get(key);
    unsigned long long value = 0;
    const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (res.ec != std::errc() || res.ptr != raw.data() + raw.size()) {
      throw TraceFormatError(line, "field '" + std::string(key) + "' is not an integer: " + raw);
    }
    return value;
  }
  bool get_bool(const char* key) const {
    const std::string& raw = get(key);
    if (raw == "0") return false;
    if (raw == "1") return true;
    throw TraceFormatError(line, "field '" + std::string(key) + "' must be 0 or 1");
  }
  int get_robot() const {
    const long r = get_long("robot");
    if (r != 0 && r != 1) {
      throw TraceFormatError(line, "robot must be 0 or 1");
    }
    return static_cast<int>(r);
  }
};

Record parse_record(const std::string& text, long line) {
  Record rec;
  rec.line = line;
  std::istringstream tokens(text);
  std::string token;
  if (!(tokens >> rec.name)) {
    throw TraceFormatError(line, "empty record");
  }
  while (tokens >> token) {
    const std::size_t eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw TraceFormatError(line, "expected key=value, got '" + token + "'");
    }
    const std::string key = token.substr(0, eq);
    if (!rec.fields.emplace(key, token.substr(eq + 1)).second) {
      throw TraceFormatError(line, "duplicate field '" + key + "'");
    }
  }
  return rec;
}

TraceEvent parse_event(const Record& rec) {
  TraceEvent ev;
  ev.tick = rec.get_long("tick");
  ev.robot = rec.get_robot();
  const std::string& kind = rec.get("kind");
  if (kind == "activate") {
    ev.kind = EventKind::Activate;
    ev.deviation = rec.get_double("deviation");
    ev.scale = rec.get_double("scale");
  } else if (kind == "look") {
    ev.kind = EventKind::Look;
    ev.observed = LocalPoint{rec.get_double("ox"), rec.get_double("oy")};
    const std::string& st = rec.get("state");
    std::optional<RobotState> state =
        st.size() == 1 ? parse_state_letter(st[0]) : std::nullopt;
    if (!state) {
      throw TraceFormatError(rec.line, "unknown state '" + st + "'");
    }
    ev.state = *state;
    ev.target = GlobalPoint{rec.get_double("tx"), rec.get_double("ty")};
  } else if (kind == "progress") {
    ev.kind = EventKind::Progress;
    ev.moved = rec.get_double("moved");
    ev.position = GlobalPoint{rec.get_double("x"), rec.get_double("y")};
  } else if (kind == "cycle-end") {
    ev.kind = EventKind::CycleEnd;
    ev.displaced = rec.get_double("displaced");
    ev.position = GlobalPoint{rec.get_double("x"), rec.get_double("y")};
  } else if (kind == "terminate") {
    ev.kind = EventKind::Terminate;
  } else {
    throw TraceFormatError(rec.line, "unknown event kind '" + kind + "'");
  }
  return ev;
}

}  // namespace

TraceFormatError::TraceFormatError(long line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

void export_trace(std::ostream& out, const Execution& ex) {
  const RunSetup& s = ex.setup;
  out << "trace format=gathersim version=" << kTraceVersion << "\n";
  out << "algorithm id=" << algorithm_tag(s.algorithm) << " phi=" << fmt(s.phi)
      << " terminate=" << (s.terminate_variant ? 1 : 0)
      << " override=" << (s.allow_out_of_validity ? 1 : 0) << "\n";
  out << "compass mode=" << compass_tag(s.compass.mode) << " bound=" << fmt(s.compass.bound)
      << "\n";
  out << "schedule mode=" << mode_tag(s.engine.mode) << " delta=" << fmt(s.engine.delta)
      << " fairness=" << s.engine.fairness_bound << " cycle_ticks=" << s.engine.max_cycle_ticks
      << " horizon=" << s.engine.horizon << " scale_min=" << fmt(s.engine.scale_min)
      << " scale_max=" << fmt(s.engine.scale_max) << "\n";
  out << "seed value=" << s.seed << "\n";
  out << "initial r0x=" << fmt(s.initial.r0.x) << " r0y=" << fmt(s.initial.r0.y)
      << " r1x=" << fmt(s.initial.r1.x) << " r1y=" << fmt(s.initial.r1.y) << "\n";
  if (s.compass.mode == CompassMode::Static) {
    out << "static dev0=" << fmt(s.static_deviations[0]) << " dev1=" << fmt(s.static_deviations[1])
        << "\n";
  }
  for (const TraceEvent& ev : ex.events) {
    out << "event tick=" << ev.tick << " robot=" << ev.robot << " kind=" << kind_tag(ev.kind);
    switch (ev.kind) {
      case EventKind::Activate:
        out << " deviation=" << fmt(ev.deviation) << " scale=" << fmt(ev.scale);
        break;
      case EventKind::Look:
        out << " ox=" << fmt(ev.observed.x) << " oy=" << fmt(ev.observed.y)
            << " state=" << state_letter(ev.state) << " tx=" << fmt(ev.target.x)
            << " ty=" << fmt(ev.target.y);
        break;
      case EventKind::Progress:
        out << " moved=" << fmt(ev.moved) << " x=" << fmt(ev.position.x)
            << " y=" << fmt(ev.position.y);
        break;
      case EventKind::CycleEnd:
        out << " displaced=" << fmt(ev.displaced) << " x=" << fmt(ev.position.x)
            << " y=" << fmt(ev.position.y);
        break;
      case EventKind::Terminate:
        break;
    }
    out << "\n";
  }
  out << "status result=" << status_tag(ex.status) << " end_tick=" << ex.end_tick;
  if (ex.gathered_tick) {
    out << " gathered_tick=" << *ex.gathered_tick;
  }
  out << "\n";
}

std::string trace_to_string(const Execution& ex) {
  std::ostringstream out;
  export_trace(out, ex);
  return out.str();
}

void export_trace_file(const std::string& path, const Execution& ex) {
  std::ofstream out(path);
  if (!out) {
    throw TraceFormatError(0, "cannot open '" + path + "' for writing");
  }
  export_trace(out, ex);
  if (!out) {
    throw TraceFormatError(0, "failed while writing '" + path + "'");
  }
}

Execution import_trace(std::istream& in) {
  Execution ex;
  std::string raw;
  long line = 0;
  // Header records arrive in a fixed order; events follow; status closes.
  enum class Stage { Trace, Algorithm, Compass, Schedule, Seed, Initial, Events, Done };
  Stage stage = Stage::Trace;
  bool saw_status = false;

  while (std::getline(in, raw)) {
    ++line;
    std::string_view sv(raw);
    while (!sv.empty() && (sv.back() == '\r' || sv.back() == ' ')) sv.remove_suffix(1);
    while (!sv.empty() && sv.front() == ' ') sv.remove_prefix(1);
    if (sv.empty() || sv.front() == '#') {
      continue;
    }
    const Record rec = parse_record(std::string(sv), line);

    switch (stage) {
      case Stage::Trace: {
        if (rec.name != "trace") {
          throw TraceFormatError(line, "expected 'trace' header, got '" + rec.name + "'");
        }
        if (rec.get("format") != "gathersim") {
          throw TraceFormatError(line, "unknown trace format '" + rec.get("format") + "'");
        }
        if (rec.get_long("version") != kTraceVersion) {
          throw TraceFormatError(line, "unsupported trace version " + rec.get("version"));
        }
        stage = Stage::Algorithm;
        break;
      }
      case Stage::Algorithm: {
        if (rec.name != "algorithm") {
          throw TraceFormatError(line, "expected 'algorithm', got '" + rec.name + "'");
        }
        const std::optional<AlgorithmId> id = parse_algorithm_tag(rec.get("id"));
        if (!id) {
          throw TraceFormatError(line, "unknown algorithm id '" + rec.get("id") + "'");
        }
        ex.setup.algorithm = *id;
        ex.setup.phi = rec.get_double("phi");
        ex.setup.terminate_variant = rec.get_bool("terminate");
        ex.setup.allow_out_of_validity = rec.get_bool("override");
        stage = Stage::Compass;
        break;
      }
      case Stage::Compass: {
        if (rec.name != "compass") {
          throw TraceFormatError(line, "expected 'compass', got '" + rec.name + "'");
        }
        const std::string& mode = rec.get("mode");
        if (mode == "static") {
          ex.setup.compass.mode = CompassMode::Static;
        } else if (mode == "dynamic") {
          ex.setup.compass.mode = CompassMode::Dynamic;
        } else {
          throw TraceFormatError(line, "unknown compass mode '" + mode + "'");
        }
        ex.setup.compass.bound = rec.get_double("bound");
        stage = Stage::Schedule;
        break;
      }
      case Stage::Schedule: {
        if (rec.name != "schedule") {
          throw TraceFormatError(line, "expected 'schedule', got '" + rec.name + "'");
        }
        const std::string& mode = rec.get("mode");
        if (mode == "semi-sync") {
          ex.setup.engine.mode = SchedulerMode::SemiSynchronous;
        } else if (mode == "async") {
          ex.setup.engine.mode = SchedulerMode::Asynchronous;
        } else {
          throw TraceFormatError(line, "unknown scheduler mode '" + mode + "'");
        }
        ex.setup.engine.delta = rec.get_double("delta");
        ex.setup.engine.fairness_bound = rec.get_long("fairness");
        ex.setup.engine.max_cycle_ticks = rec.get_long("cycle_ticks");
        ex.setup.engine.horizon = rec.get_long("horizon");
        ex.setup.engine.scale_min = rec.get_double("scale_min");
        ex.setup.engine.scale_max = rec.get_double("scale_max");
        stage = Stage::Seed;
        break;
      }
      case Stage::Seed: {
        if (rec.name != "seed") {
          throw TraceFormatError(line, "expected 'seed', got '" + rec.name + "'");
        }
        ex.setup.seed = rec.get_ull("value");
        stage = Stage::Initial;
        break;
      }
      case Stage::Initial: {
        if (rec.name != "initial") {
          throw TraceFormatError(line, "expected 'initial', got '" + rec.name + "'");
        }
        ex.setup.initial.r0 = GlobalPoint{rec.get_double("r0x"), rec.get_double("r0y")};
        ex.setup.initial.r1 = GlobalPoint{rec.get_double("r1x"), rec.get_double("r1y")};
        stage = Stage::Events;
        break;
      }
      case Stage::Events: {
        if (rec.name == "static") {
          if (ex.setup.compass.mode != CompassMode::Static) {
            throw TraceFormatError(line, "'static' record with a dynamic compass");
          }
          if (!ex.events.empty()) {
            throw TraceFormatError(line, "'static' record must precede events");
          }
          ex.setup.static_deviations = {rec.get_double("dev0"), rec.get_double("dev1")};
        } else if (rec.name == "event") {
          ex.events.push_back(parse_event(rec));
        } else if (rec.name == "status") {
          const std::string& result = rec.get("result");
          if (result == "gathered") {
            ex.status = RunStatus::Gathered;
          } else if (result == "stuck") {
            ex.status = RunStatus::Stuck;
          } else if (result == "horizon") {
            ex.status = RunStatus::HorizonReached;
          } else {
            throw TraceFormatError(line, "unknown status '" + result + "'");
          }
          ex.end_tick = rec.get_long("end_tick");
          if (rec.has("gathered_tick")) {
            ex.gathered_tick = rec.get_long("gathered_tick");
          }
          saw_status = true;
          stage = Stage::Done;
        } else {
          throw TraceFormatError(line, "unexpected record '" + rec.name + "'");
        }
        break;
      }
      case Stage::Done:
        throw TraceFormatError(line, "content after the status record");
    }
  }
  if (!saw_status) {
    throw TraceFormatError(line, "trace ended without a status record");
  }
  ex.configs = {ex.setup.initial};
  return ex;
}

Execution import_trace_string(const std::string& text) {
  std::istringstream in(text);
  return import_trace(in);
}

Execution import_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw TraceFormatError(0, "cannot open '" + path + "' for reading");
  }
  return import_trace(in);
}

ReplayPolicy::ReplayPolicy(const Execution& recorded)
    : compass_mode_(recorded.setup.compass.mode),
      static_deviations_(recorded.setup.static_deviations) {
  for (const TraceEvent& ev : recorded.events) {
    const std::pair<long, int> key{ev.tick, ev.robot};
    switch (ev.kind) {
      case EventKind::Activate:
        activations_[ev.tick].push_back(ev.robot);
        deviations_[key] = ev.deviation;
        scales_[key] = ev.scale;
        break;
      case EventKind::Progress:
        progress_[key] = ev.moved;
        break;
      case EventKind::CycleEnd:
        closes_.insert(key);
        break;
      case EventKind::Look:
      case EventKind::Terminate:
        break;
    }
  }
}

double ReplayPolicy::lookup(const std::map<std::pair<long, int>, double>& table, long tick,
                            int robot, const char* what) const {
  const auto it = table.find({tick, robot});
  if (it == table.end()) {
    throw TraceFormatError(0, std::string("replay: no recorded ") + what + " for robot " +
                                  std::to_string(robot) + " at tick " + std::to_string(tick));
  }
  return it->second;
}

std::vector<int> ReplayPolicy::choose_activations(const EngineView& view) {
  const auto it = activations_.find(view.tick);
  return it == activations_.end() ? std::vector<int>{} : it->second;
}

double ReplayPolicy::choose_deviation(int robot, const EngineView& view) {
  if (compass_mode_ == CompassMode::Static) {
    return static_deviations_[static_cast<std::size_t>(robot)];
  }
  return lookup(deviations_, view.tick, robot, "deviation");
}

double ReplayPolicy::choose_scale(int robot, const EngineView& view) {
  return lookup(scales_, view.tick, robot, "scale");
}

double ReplayPolicy::choose_progress(const CycleView& cycle, const EngineView& view) {
  return lookup(progress_, view.tick, cycle.robot, "progress");
}

bool ReplayPolicy::choose_close(const CycleView& cycle, const EngineView& view) {
  return closes_.count({view.tick, cycle.robot}) > 0;
}

Execution replay(const Execution& recorded) {
  const AlgorithmSpec alg =
      region_table(recorded.setup.algorithm, recorded.setup.phi, recorded.setup.terminate_variant,
                   recorded.setup.allow_out_of_validity);
  ReplayPolicy policy(recorded);
  return run(alg, recorded.setup.compass, recorded.setup.engine, recorded.setup.initial, policy,
             recorded.setup.seed);
}

bool trace_equal(const Execution& a, const Execution& b) {
  const RunSetup& x = a.setup;
  const RunSetup& y = b.setup;
  if (x.algorithm != y.algorithm || x.phi != y.phi || x.terminate_variant != y.terminate_variant ||
      x.allow_out_of_validity != y.allow_out_of_validity || x.compass.mode != y.compass.mode ||
      x.compass.bound != y.compass.bound || x.engine.mode != y.engine.mode ||
      x.engine.delta != y.engine.delta || x.engine.fairness_bound != y.engine.fairness_bound ||
      x.engine.max_cycle_ticks != y.engine.max_cycle_ticks ||
      x.engine.horizon != y.engine.horizon || x.engine.scale_min != y.engine.scale_min ||
      x.engine.scale_max != y.engine.scale_max || x.initial.r0 != y.initial.r0 ||
      x.initial.r1 != y.initial.r1 || x.seed != y.seed ||
      x.static_deviations != y.static_deviations) {
    return false;
  }
  if (a.status != b.status || a.end_tick != b.end_tick || a.gathered_tick != b.gathered_tick) {
    return false;
  }
  if (a.events.size() != b.events.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    const TraceEvent& p = a.events[i];
    const TraceEvent& q = b.events[i];
    if (p.tick != q.tick || p.robot != q.robot || p.kind != q.kind ||
        p.deviation != q.deviation || p.scale != q.scale || p.observed != q.observed ||
        p.state != q.state || p.target != q.target || p.moved != q.moved ||
        p.position != q.position || p.displaced != q.displaced) {
      return false;
    }
  }
  return true;
}

}  // namespace gathersim
