#pragma once

#include "remknap/batch.hpp"

#include <iosfwd>

namespace remknap {

// 17 significant digits: exact round trip for binary64.
std::string format_double(double value);

// Instance files are JSON lines: one object per line with fields name,
// capacity and sizes; '#'-prefixed lines are comments.
void write_instances(std::ostream& out, const std::vector<Instance>& instances);
std::vector<Instance> read_instances(std::istream& in);
void write_instances_file(const std::string& path, const std::vector<Instance>& instances);
std::vector<Instance> read_instances_file(const std::string& path);

// Result tables are CSV with a header row, '.' decimal separator and LF line
// endings. advice_bits_max, when present, adds a constant extra column.
void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows,
                       std::optional<std::size_t> advice_bits_max = std::nullopt);
std::vector<ResultRow> read_results_csv(std::istream& in);

} // namespace remknap
