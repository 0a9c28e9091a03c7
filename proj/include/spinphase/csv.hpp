#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "spinphase/sweep.hpp"

namespace spinphase {

using CsvMetadata = std::vector<std::pair<std::string, std::string>>;

/// 12 significant digits, the precision every emitted float uses.
std::string format_number(double value);

/// Header names; the first column is named after the swept variable.
std::vector<std::string> sweep_columns(SweepVariable variable);

/// "# key = value" metadata block, header row, one row per sweep point.
/// With degrees set, angle columns are converted on output only.
void write_sweep_csv(std::ostream& out,
                     std::vector<SweepRow> const& rows,
                     SweepVariable variable,
                     CsvMetadata const& metadata,
                     bool degrees = false);

struct ParsedSweepCsv
{
    CsvMetadata metadata;
    std::vector<std::string> header;
    std::vector<SweepRow> rows; // angles back in radians
};

/// Inverse of write_sweep_csv.  Throws DomainError on malformed input.
ParsedSweepCsv read_sweep_csv(std::istream& in);

}  // namespace spinphase
