#include "json_reader.hpp"

#include <fstream>
#include <sstream>

namespace ontolearn::detail {

json parse_document(std::string_view text, const std::string& origin) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, origin + ": " + e.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
    return buffer.str();
}

json read_document(const std::string& path) { return parse_document(read_text_file(path), path); }

void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
}

}  // namespace ontolearn::detail
