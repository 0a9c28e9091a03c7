#include "spinphase/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace spinphase {
namespace {

std::string trim(std::string_view s)
{
    auto const first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
    {
        return {};
    }
    auto const last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace

ConfigLayer parse_config_text(std::string_view text, std::string_view origin)
{
    ConfigLayer layer;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        auto const hash = line.find('#');
        if (hash != std::string::npos)
        {
            line.erase(hash);
        }
        std::string const body = trim(line);
        if (body.empty())
        {
            continue;
        }
        auto const eq = body.find('=');
        if (eq == std::string::npos)
        {
            throw ConfigError(std::string(origin) + ":" + std::to_string(lineno)
                              + ": expected 'key = value'");
        }
        std::string key = trim(std::string_view(body).substr(0, eq));
        std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.starts_with("--"))
        {
            key.erase(0, 2);
        }
        if (key.empty())
        {
            throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) + ": empty key");
        }
        layer[std::move(key)] = std::move(value);
    }
    return layer;
}

ConfigLayer load_config_file(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError("cannot read config file '" + path.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

ConfigLayer merge_layers(std::span<ConfigLayer const> layers)
{
    ConfigLayer merged;
    for (auto const& layer : layers)
    {
        for (auto const& [key, value] : layer)
        {
            merged[key] = value;
        }
    }
    return merged;
}

std::string const& RunConfig::get_string(std::string const& key) const
{
    auto const it = values_.find(key);
    if (it == values_.end())
    {
        throw ConfigError("missing value for --" + key);
    }
    return it->second;
}

double RunConfig::get_double(std::string const& key) const
{
    std::string const& text = get_string(key);
    std::size_t used = 0;
    double value = 0.0;
    try
    {
        value = std::stod(text, &used);
    }
    catch (std::exception const&)
    {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(value))
    {
        throw ConfigError("invalid number for --" + key + ": '" + text + "'");
    }
    return value;
}

long RunConfig::get_long(std::string const& key) const
{
    std::string const& text = get_string(key);
    std::size_t used = 0;
    long value = 0;
    try
    {
        value = std::stol(text, &used);
    }
    catch (std::exception const&)
    {
        used = 0;
    }
    if (used == 0 || used != text.size())
    {
        throw ConfigError("invalid integer for --" + key + ": '" + text + "'");
    }
    return value;
}

bool RunConfig::get_bool(std::string const& key) const
{
    std::string const& text = get_string(key);
    if (text == "true" || text == "1" || text == "yes" || text == "on")
    {
        return true;
    }
    if (text == "false" || text == "0" || text == "no" || text == "off")
    {
        return false;
    }
    throw ConfigError("invalid boolean for --" + key + ": '" + text + "'");
}

}  // namespace spinphase
