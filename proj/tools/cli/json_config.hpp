#pragma once

// JSON configuration files for CLI11: an object whose keys are long option
// names, e.g. {"alpha": 2, "gamma": 1, "beta": 2e-4}. Top-level keys apply to
// the subcommand being run; an object-valued key names a subcommand section,
// e.g. {"laser": {"alpha": 2}, "bec": {"n": 1000}}.

#include <functional>
#include <istream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace laserent::cli {

class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(std::function<std::string()> active_section)
      : active_section_(std::move(active_section)) {}

  std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                        std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;

 private:
  std::function<std::string()> active_section_;
};

}  // namespace laserent::cli
