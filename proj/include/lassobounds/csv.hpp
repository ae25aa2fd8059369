#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lassobounds/runner.hpp"

namespace lassobounds {

/// Shortest-safe decimal: 17 significant digits, so doubles round-trip.
std::string format_double(double value);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_replicates_csv(std::ostream& out, const std::vector<ReplicateRecord>& rows);

/// Parsers for the two files above. Throw IoError on a malformed file.
std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path);
std::vector<ReplicateRecord> read_replicates_csv(const std::filesystem::path& path);

void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows);
void write_replicates_csv(const std::filesystem::path& path, const std::vector<ReplicateRecord>& rows);

}  // namespace lassobounds
