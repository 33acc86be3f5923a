#pragma once

// Run configuration files (JSON).
//
//   {"g1t": 1.0, "g2t": 0.5, "g3t": 0.5, "gamma_t": [0, 0, 0, 0],
//    "n_d": [0, 0, 0, 0], "steps": 2000, "log_base": "natural"}
//
// Every key is optional; unknown keys are rejected.

#include <array>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fourmode/entanglement.hpp"
#include "fourmode/error.hpp"
#include "fourmode/model.hpp"

namespace fourmode {

struct RunConfigFile {
  SystemConfig system;
  LogBase log_base = LogBase::natural;
};

inline LogBase parse_log_base(const std::string& s) {
  if (s == "natural") return LogBase::natural;
  if (s == "two") return LogBase::two;
  throw Error(ErrorKind::invalid_config, "log_base must be \"natural\" or \"two\", got \"" + s + "\"");
}

inline std::string_view to_string(LogBase b) { return b == LogBase::two ? "two" : "natural"; }

inline RunConfigFile parse_run_config(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_config, std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::invalid_config, "config must be a JSON object");

  RunConfigFile out;
  auto number = [](const json& v, const std::string& key) {
    if (!v.is_number()) throw Error(ErrorKind::invalid_config, key + " must be a number");
    return v.get<double>();
  };
  auto quad = [&](const json& v, const std::string& key) {
    if (!v.is_array() || v.size() != 4) throw Error(ErrorKind::invalid_config, key + " must be an array of 4 numbers");
    std::array<double, 4> a{};
    for (std::size_t k = 0; k < 4; ++k) a[k] = number(v[k], key);
    return a;
  };
  for (const auto& [key, v] : doc.items()) {
    if (key == "g1t") out.system.g1t = number(v, key);
    else if (key == "g2t") out.system.g2t = number(v, key);
    else if (key == "g3t") out.system.g3t = number(v, key);
    else if (key == "gamma_t") out.system.gamma_t = quad(v, key);
    else if (key == "n_d") out.system.n_d = quad(v, key);
    else if (key == "steps") {
      if (!v.is_number_integer()) throw Error(ErrorKind::invalid_config, "steps must be an integer");
      out.system.steps = v.get<int>();
    } else if (key == "log_base") {
      if (!v.is_string()) throw Error(ErrorKind::invalid_config, "log_base must be a string");
      out.log_base = parse_log_base(v.get<std::string>());
    } else {
      throw Error(ErrorKind::invalid_config, "unknown config key '" + key + "'");
    }
  }
  validate(out.system);
  return out;
}

inline RunConfigFile load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_config, "cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

}  // namespace fourmode
