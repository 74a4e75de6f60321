#include "jlt/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "jlt/errors.hpp"

namespace jlt {

namespace {

using nlohmann::json;

Index read_offset(const json& j, const char* key) {
  if (!j.contains(key)) return 0;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ValidationError(std::string("\"") + key + "\" must be an integer");
  return v.get<Index>();
}

std::vector<double> read_values(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  const json& v = j.at(key);
  if (!v.is_array()) throw ValidationError(std::string("\"") + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw ValidationError(std::string("\"") + key + "\"[" + std::to_string(i) + "] is not a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

}  // namespace

Perturbation parse_instance(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("instance parse error: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("instance must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "a_offset" && key != "a" && key != "b_offset" && key != "b") {
      throw ValidationError("unknown instance key \"" + key + "\"");
    }
  }
  return make_perturbation(read_offset(j, "a_offset"), read_values(j, "a"),
                           read_offset(j, "b_offset"), read_values(j, "b"));
}

Perturbation read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string serialize_instance(const Perturbation& p) {
  // ordered_json keeps the documented key order
  nlohmann::ordered_json j;
  j["a_offset"] = p.a_offset();
  j["a"] = std::vector<double>(p.a().begin(), p.a().end());
  j["b_offset"] = p.b_offset();
  j["b"] = std::vector<double>(p.b().begin(), p.b().end());
  return j.dump();
}

}  // namespace jlt
