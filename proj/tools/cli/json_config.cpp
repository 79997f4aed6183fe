#include "json_config.hpp"

namespace laserent::cli {

namespace {

using nlohmann::json;

std::string scalar_input(const json& j, const std::string& name) {
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number()) return j.dump();
  if (j.is_string()) return j.get<std::string>();
  throw CLI::ConversionError("config value for '" + name + "' must be a scalar or array");
}

}  // namespace

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool,
                                  std::string) const {
  json j = json::object();
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
    const std::string name = opt->get_lnames().front();
    if (opt->count() > 0) {
      j[name] = opt->as<std::string>();
    } else if (default_also && !opt->get_default_str().empty()) {
      j[name] = opt->get_default_str();
    }
  }
  return j.dump(2);
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  json j;
  try {
    input >> j;
  } catch (const json::parse_error& e) {
    throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
  const std::string active = active_section_ ? active_section_() : std::string();
  std::vector<CLI::ConfigItem> items;
  auto add = [&items](const std::vector<std::string>& parents, const std::string& key,
                      const json& value) {
    CLI::ConfigItem item;
    item.parents = parents;
    item.name = key;
    if (value.is_array()) {
      for (const auto& v : value) item.inputs.push_back(scalar_input(v, key));
    } else {
      item.inputs.push_back(scalar_input(value, key));
    }
    items.push_back(std::move(item));
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      for (auto sub = it->begin(); sub != it->end(); ++sub) add({it.key()}, sub.key(), *sub);
    } else {
      add(active.empty() ? std::vector<std::string>{} : std::vector<std::string>{active}, it.key(),
          *it);
    }
  }
  return items;
}

}  // namespace laserent::cli
