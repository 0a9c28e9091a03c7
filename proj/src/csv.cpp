#include "spinphase/csv.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "spinphase/errors.hpp"

namespace spinphase {
namespace {

constexpr double rad_to_deg = 180.0 / std::numbers::pi;

std::string trim(std::string const& s)
{
    auto const first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
    {
        return {};
    }
    auto const last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_commas(std::string const& line)
{
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
    {
        fields.push_back(trim(field));
    }
    return fields;
}

double parse_field(std::string const& text)
{
    if (text == "nan" || text == "-nan")
    {
        return std::nan("");
    }
    std::size_t used = 0;
    double value = 0.0;
    try
    {
        value = std::stod(text, &used);
    }
    catch (std::exception const&)
    {
        throw DomainError("malformed CSV number '" + text + "'");
    }
    if (used != text.size())
    {
        throw DomainError("malformed CSV number '" + text + "'");
    }
    return value;
}

}  // namespace

std::string format_number(double value)
{
    if (std::isnan(value))
    {
        return "nan";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::vector<std::string> sweep_columns(SweepVariable variable)
{
    return {std::string(to_string(variable)),
            "gamma_s",
            "total_phase",
            "connection",
            "visibility",
            "re_overlap",
            "abs_t_up_a",
            "abs_t_up_b",
            "abs_t_down_a",
            "abs_t_down_b",
            "phi_up_b",
            "phi_down_b",
            "cos_theta_b",
            "converged"};
}

void write_sweep_csv(std::ostream& out,
                     std::vector<SweepRow> const& rows,
                     SweepVariable variable,
                     CsvMetadata const& metadata,
                     bool degrees)
{
    for (auto const& [key, value] : metadata)
    {
        out << "# " << key << " = " << value << '\n';
    }
    out << "# angle_unit = " << (degrees ? "degrees" : "radians") << '\n';

    auto const cols = sweep_columns(variable);
    for (std::size_t i = 0; i < cols.size(); ++i)
    {
        out << (i ? "," : "") << cols[i];
    }
    out << '\n';

    double const scale = degrees ? rad_to_deg : 1.0;
    for (auto const& r : rows)
    {
        out << format_number(r.value) << ',' << format_number(scale * r.gamma_s) << ','
            << format_number(scale * r.total_phase) << ',' << format_number(scale * r.connection) << ','
            << format_number(r.visibility) << ',' << format_number(r.re_overlap) << ','
            << format_number(r.abs_t_up_a) << ',' << format_number(r.abs_t_up_b) << ','
            << format_number(r.abs_t_down_a) << ',' << format_number(r.abs_t_down_b) << ','
            << format_number(scale * r.phi_up_b) << ',' << format_number(scale * r.phi_down_b) << ','
            << format_number(r.cos_theta_b) << ',' << (r.converged ? 1 : 0) << '\n';
    }
}

ParsedSweepCsv read_sweep_csv(std::istream& in)
{
    ParsedSweepCsv parsed;
    bool degrees = false;
    std::string line;
    while (std::getline(in, line))
    {
        if (line.empty())
        {
            continue;
        }
        if (line[0] == '#')
        {
            auto const eq = line.find('=');
            if (eq == std::string::npos)
            {
                continue;
            }
            std::string key = trim(line.substr(1, eq - 1));
            std::string value = trim(line.substr(eq + 1));
            if (key == "angle_unit")
            {
                degrees = value == "degrees";
                continue;
            }
            parsed.metadata.emplace_back(std::move(key), std::move(value));
            continue;
        }
        auto fields = split_commas(line);
        if (parsed.header.empty())
        {
            parsed.header = std::move(fields);
            continue;
        }
        if (fields.size() != parsed.header.size() || fields.size() != 14)
        {
            throw DomainError("CSV row has " + std::to_string(fields.size()) + " fields, expected 14");
        }
        double const scale = degrees ? 1.0 / rad_to_deg : 1.0;
        SweepRow r;
        r.value = parse_field(fields[0]);
        r.gamma_s = scale * parse_field(fields[1]);
        r.total_phase = scale * parse_field(fields[2]);
        r.connection = scale * parse_field(fields[3]);
        r.visibility = parse_field(fields[4]);
        r.re_overlap = parse_field(fields[5]);
        r.abs_t_up_a = parse_field(fields[6]);
        r.abs_t_up_b = parse_field(fields[7]);
        r.abs_t_down_a = parse_field(fields[8]);
        r.abs_t_down_b = parse_field(fields[9]);
        r.phi_up_b = scale * parse_field(fields[10]);
        r.phi_down_b = scale * parse_field(fields[11]);
        r.cos_theta_b = parse_field(fields[12]);
        r.converged = fields[13] == "1";
        parsed.rows.push_back(r);
    }
    if (parsed.header.empty())
    {
        throw DomainError("CSV has no header row");
    }
    return parsed;
}

}  // namespace spinphase
