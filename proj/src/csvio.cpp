#include "ltls/csvio.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "ltls/errors.hpp"

namespace ltls {

void write_output(std::ostream& os, const OutputHeader& header, const std::string& column_row,
                  const std::string& body) {
    const auto now = std::chrono::system_clock::now();
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
    os << "# tool: ltls " << header.tool_version << "\n";
    os << "# config_hash: " << header.config_hash << "\n";
    os << "# seed: " << header.seed << "\n";
    os << "# generated: unix " << secs.count() << "\n";
    os << column_row << "\n";
    os << body;
}

void write_output_file(const std::string& path, const OutputHeader& header,
                       const std::string& column_row, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    write_output(out, header, column_row, body);
}

std::string reproducible_part(const std::string& file_contents) {
    std::istringstream in(file_contents);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# generated:", 0) == 0) continue;
        out << line << "\n";
    }
    return out.str();
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace ltls
