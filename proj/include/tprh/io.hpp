#ifndef TPRH_IO_HPP
#define TPRH_IO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tprh {
namespace io {

inline constexpr const char* kToolVersion = "0.1.0";

/// One CSV cell: either empty or a double rendered with 17 significant
/// digits (round-trip exact).
using Cell = std::optional<double>;

std::string format_double(double v);

/// RFC-4180 field quoting (only applied when the text needs it).
std::string csv_escape(const std::string& field);

/// Write a CSV file: header row, then data rows. Optional comment lines
/// are emitted first, prefixed with "# ".
void write_csv(const std::string& path,
               const std::vector<std::string>& comment_lines,
               const std::vector<std::string>& header,
               const std::vector<std::vector<Cell>>& rows);

std::string sha256_file(const std::string& path);

/// Writes <output>.manifest.json next to an output file: command name,
/// full parameter set, tool version, timestamp, and the output digest.
/// The data sections of outputs are deterministic; only the manifest
/// timestamp varies between reruns.
void write_manifest(const std::string& output_path,
                    const std::string& command,
                    const std::map<std::string, std::string>& parameters);

}  // namespace io
}  // namespace tprh

#endif
