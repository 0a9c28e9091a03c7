#pragma once

// Layered run configuration: defaults <- SPINPHASE_CONFIG file <- --config
// file <- command-line flags, rightmost wins.  Files hold "key = value" lines
// with '#' comments; keys are long flag names without the leading dashes.

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "spinphase/errors.hpp"

namespace spinphase {

/// Bad flag value, unknown key, unreadable config file.  Maps to exit code 1.
class ConfigError : public DomainError
{
  public:
    using DomainError::DomainError;
};

using ConfigLayer = std::map<std::string, std::string>;

/// Throws ConfigError naming origin and line for malformed lines.
ConfigLayer parse_config_text(std::string_view text, std::string_view origin);
ConfigLayer load_config_file(std::filesystem::path const& path);

/// Later layers override earlier ones key by key.
ConfigLayer merge_layers(std::span<ConfigLayer const> layers);

class RunConfig
{
  public:
    RunConfig() = default;
    explicit RunConfig(ConfigLayer values) : values_(std::move(values)) {}

    ConfigLayer const& values() const noexcept { return values_; }
    bool has(std::string const& key) const { return values_.count(key) != 0; }

    // Conversion failures name the offending flag, e.g. "--k".
    std::string const& get_string(std::string const& key) const;
    double get_double(std::string const& key) const;
    long get_long(std::string const& key) const;
    bool get_bool(std::string const& key) const;

  private:
    ConfigLayer values_;
};

}  // namespace spinphase
