#pragma once

// Record of how a CLI run was invoked, written next to its outputs.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

namespace hawkins {

struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> parameters;
  std::string config_path;
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;
  std::string tool_version;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;

  // Identifies the run independently of where results were written and how
  // many workers were used; reports carry this id.
  std::string id() const {
    nlohmann::ordered_json j;
    j["subcommand"] = subcommand;
    nlohmann::ordered_json params;
    for (const auto& [k, v] : parameters)
      if (k != "workers" && k != "out") params[k] = v;
    j["parameters"] = params;
    j["seed"] = seed;
    j["tool_version"] = tool_version;
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char ch : j.dump()) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }
};

inline void to_json(nlohmann::json& j, const RunManifest& m) {
  j = nlohmann::json{{"id", m.id()},
                     {"subcommand", m.subcommand},
                     {"parameters", m.parameters},
                     {"config_path", m.config_path},
                     {"outputs", m.outputs},
                     {"seed", m.seed},
                     {"tool_version", m.tool_version}};
}

inline void from_json(const nlohmann::json& j, RunManifest& m) {
  j.at("subcommand").get_to(m.subcommand);
  j.at("parameters").get_to(m.parameters);
  j.at("config_path").get_to(m.config_path);
  j.at("outputs").get_to(m.outputs);
  j.at("seed").get_to(m.seed);
  j.at("tool_version").get_to(m.tool_version);
}

}  // namespace hawkins
