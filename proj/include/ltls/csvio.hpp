#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace ltls {

/// Provenance block written at the top of every output file. The timestamp
/// line is informational and excluded from reproducibility comparisons.
struct OutputHeader {
    std::string tool_version;
    std::string config_hash;
    std::uint64_t seed = 0;
};

void write_output(std::ostream& os, const OutputHeader& header, const std::string& column_row,
                  const std::string& body);

void write_output_file(const std::string& path, const OutputHeader& header,
                       const std::string& column_row, const std::string& body);

/// Strips `# generated:` comment lines; what remains must be byte-identical
/// across reruns with the same seed.
std::string reproducible_part(const std::string& file_contents);

std::uint64_t fnv1a64(const std::string& s);

}  // namespace ltls
