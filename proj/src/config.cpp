#include "jlp/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace jlp {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += "\n  " + s;
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "channel", "code", "n", "dv", "dc", "code_seed", "allow_four_cycles", "alist",
      "codeword", "codeword_seed", "start_state", "include_p0", "decoder", "k1", "k2",
      "inner_rounds", "outer_max", "schedule", "metric_scale", "snr_db", "max_trials",
      "max_errors", "max_seconds", "seed", "workers", "harvest_snr_db",
      "stationary_window", "harvest_max_errors", "harvest_max_trials", "output",
      "spectrum", "trace"};
  return keys;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid configuration:" + join(problems)),
      problems_(std::move(problems)) {}

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::vector<std::string> problems;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
      continue;
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) {
      problems.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    kv[key] = trim(line.substr(eq + 1));
  }
  if (!problems.empty()) throw ConfigError(problems);
  return kv;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

RunConfig build_run_config(const KeyValues& kv) {
  RunConfig rc;
  auto& ex = rc.experiment;
  std::vector<std::string> problems;

  for (const auto& [k, v] : kv) {
    if (!known_keys().count(k)) problems.push_back(k + ": unknown key");
  }

  auto get = [&](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto as_long = [&](const std::string& key, long lo, auto setter) {
    if (auto v = get(key)) {
      long x = 0;
      auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
      if (ec != std::errc() || p != v->data() + v->size() || x < lo) {
        problems.push_back(key + ": expected an integer >= " + std::to_string(lo) + ", got '" + *v + "'");
      } else {
        setter(x);
      }
    }
  };
  auto as_u64 = [&](const std::string& key, std::uint64_t& out) {
    if (auto v = get(key)) {
      std::uint64_t x = 0;
      auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
      if (ec != std::errc() || p != v->data() + v->size()) {
        problems.push_back(key + ": expected an unsigned integer, got '" + *v + "'");
      } else {
        out = x;
      }
    }
  };
  auto as_double = [&](const std::string& key, bool positive, double& out) {
    if (auto v = get(key)) {
      try {
        std::size_t used = 0;
        const double x = std::stod(*v, &used);
        if (used != v->size() || !std::isfinite(x) || (positive && !(x > 0.0)) || (!positive && x < 0.0)) {
          throw std::invalid_argument("range");
        }
        out = x;
      } catch (const std::exception&) {
        problems.push_back(key + ": expected a " + std::string(positive ? "positive" : "non-negative") +
                           " number, got '" + *v + "'");
      }
    }
  };
  auto as_bool = [&](const std::string& key, bool& out) {
    if (auto v = get(key)) {
      if (*v == "1" || *v == "true" || *v == "yes") {
        out = true;
      } else if (*v == "0" || *v == "false" || *v == "no") {
        out = false;
      } else {
        problems.push_back(key + ": expected true|false, got '" + *v + "'");
      }
    }
  };

  if (auto v = get("channel")) {
    const auto names = channel_names();
    if (std::find(names.begin(), names.end(), *v) == names.end()) {
      problems.push_back("channel: expected dic|pdic|pr2, got '" + *v + "'");
    } else {
      ex.channel = *v;
    }
  }
  if (auto v = get("code")) {
    if (*v != "random" && *v != "spc" && *v != "alist") {
      problems.push_back("code: expected random|spc|alist, got '" + *v + "'");
    } else {
      ex.code_source = *v;
    }
  }
  as_long("n", 1, [&](long x) { ex.n = static_cast<int>(x); });
  as_long("dv", 1, [&](long x) { ex.dv = static_cast<int>(x); });
  as_long("dc", 2, [&](long x) { ex.dc = static_cast<int>(x); });
  as_u64("code_seed", ex.code_seed);
  as_bool("allow_four_cycles", ex.allow_four_cycles);
  if (auto v = get("alist")) ex.alist_path = *v;
  if (ex.code_source == "alist" && ex.alist_path.empty()) problems.push_back("alist: required when code = alist");
  if (auto v = get("codeword")) {
    const bool bits = !v->empty() && std::all_of(v->begin(), v->end(), [](char c) { return c == '0' || c == '1'; });
    if (*v != "zero" && *v != "random" && !bits) {
      problems.push_back("codeword: expected zero|random|bit string, got '" + *v + "'");
    } else {
      ex.codeword = *v;
    }
  }
  as_u64("codeword_seed", ex.codeword_seed);
  if (auto v = get("start_state")) {
    if (*v != "random") {
      as_long("start_state", 0, [&](long x) { ex.start_state = static_cast<int>(x); });
    }
  }
  as_bool("include_p0", ex.include_p0);
  if (auto v = get("decoder")) {
    try {
      ex.decoder = decoder_from_name(*v);
    } catch (const std::exception& e) {
      problems.push_back(std::string("decoder: ") + e.what());
    }
  }
  as_double("k1", true, ex.params.k1);
  as_double("k2", true, ex.params.k2);
  as_long("inner_rounds", 1, [&](long x) { ex.params.inner_rounds = static_cast<int>(x); });
  as_long("outer_max", 1, [&](long x) { ex.params.outer_max = static_cast<int>(x); });
  if (auto v = get("schedule")) {
    if (*v == "simultaneous") {
      ex.params.schedule = Schedule::simultaneous;
    } else if (*v == "cyclic") {
      ex.params.schedule = Schedule::cyclic;
    } else {
      problems.push_back("schedule: expected simultaneous|cyclic, got '" + *v + "'");
    }
  }
  if (auto v = get("metric_scale")) {
    if (*v == "auto") {
      ex.metric_scale = MetricScale::automatic;
    } else if (*v == "unscaled") {
      ex.metric_scale = MetricScale::unscaled;
    } else if (*v == "scaled") {
      ex.metric_scale = MetricScale::scaled;
    } else {
      problems.push_back("metric_scale: expected auto|unscaled|scaled, got '" + *v + "'");
    }
  }
  if (auto v = get("snr_db")) {
    try {
      ex.snr_db = parse_number_list(*v);
      if (ex.snr_db.empty()) problems.push_back("snr_db: list is empty");
    } catch (const std::exception&) {
      problems.push_back("snr_db: expected a comma-separated list of numbers, got '" + *v + "'");
    }
  }
  as_long("max_trials", 1, [&](long x) { ex.max_trials = x; });
  as_long("max_errors", 1, [&](long x) { ex.max_errors = x; });
  as_double("max_seconds", false, ex.max_seconds);
  as_u64("seed", ex.seed);
  as_long("workers", 0, [&](long x) { ex.workers = static_cast<int>(x); });
  if (auto v = get("harvest_snr_db")) {
    try {
      std::size_t used = 0;
      rc.harvest.snr_db = std::stod(*v, &used);
      if (used != v->size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      problems.push_back("harvest_snr_db: expected a number, got '" + *v + "'");
    }
  }
  as_long("stationary_window", 1, [&](long x) { rc.harvest.stationary_window = x; });
  as_long("harvest_max_errors", 1, [&](long x) { rc.harvest.max_errors = x; });
  as_long("harvest_max_trials", 1, [&](long x) { rc.harvest.max_trials = x; });
  if (auto v = get("output")) rc.output = *v;
  if (auto v = get("spectrum")) rc.spectrum = *v;
  as_bool("trace", rc.trace);

  if (ex.code_source == "random" && ex.dc > 0 && (ex.n * ex.dv) % ex.dc != 0) {
    problems.push_back("n: n*dv must be divisible by dc");
  }
  if (!problems.empty()) throw ConfigError(problems);
  return rc;
}

KeyValues describe(const RunConfig& rc) {
  const auto& ex = rc.experiment;
  auto num = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  std::string snr;
  for (std::size_t i = 0; i < ex.snr_db.size(); ++i) snr += (i ? "," : "") + num(ex.snr_db[i]);
  KeyValues kv;
  kv["channel"] = ex.channel;
  kv["code"] = ex.code_source;
  kv["n"] = std::to_string(ex.n);
  kv["dv"] = std::to_string(ex.dv);
  kv["dc"] = std::to_string(ex.dc);
  kv["code_seed"] = std::to_string(ex.code_seed);
  kv["allow_four_cycles"] = ex.allow_four_cycles ? "true" : "false";
  kv["alist"] = ex.alist_path;
  kv["codeword"] = ex.codeword;
  kv["codeword_seed"] = std::to_string(ex.codeword_seed);
  kv["start_state"] = ex.start_state ? std::to_string(*ex.start_state) : "random";
  kv["include_p0"] = ex.include_p0 ? "true" : "false";
  kv["decoder"] = decoder_name(ex.decoder);
  kv["k1"] = num(ex.params.k1);
  kv["k2"] = num(ex.params.k2);
  kv["inner_rounds"] = std::to_string(ex.params.inner_rounds);
  kv["outer_max"] = std::to_string(ex.params.outer_max);
  kv["schedule"] = ex.params.schedule == Schedule::cyclic ? "cyclic" : "simultaneous";
  kv["metric_scale"] = ex.metric_scale == MetricScale::scaled     ? "scaled"
                       : ex.metric_scale == MetricScale::unscaled ? "unscaled"
                                                                  : "auto";
  kv["snr_db"] = snr;
  kv["max_trials"] = std::to_string(ex.max_trials);
  kv["max_errors"] = std::to_string(ex.max_errors);
  kv["max_seconds"] = num(ex.max_seconds);
  kv["seed"] = std::to_string(ex.seed);
  kv["workers"] = std::to_string(ex.workers);
  kv["harvest_snr_db"] = num(rc.harvest.snr_db);
  kv["stationary_window"] = std::to_string(rc.harvest.stationary_window);
  kv["harvest_max_errors"] = std::to_string(rc.harvest.max_errors);
  kv["harvest_max_trials"] = std::to_string(rc.harvest.max_trials);
  kv["output"] = rc.output;
  kv["spectrum"] = rc.spectrum;
  kv["trace"] = rc.trace ? "true" : "false";
  return kv;
}

}  // namespace jlp
