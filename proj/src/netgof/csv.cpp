#include "netgof/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "netgof/common.hpp"

namespace netgof {

std::string fmt_g10(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double_field(const std::string& field, int line_no) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    while (pos < field.size() && (field[pos] == ' ' || field[pos] == '\t'))
        ++pos;
    if (field.empty() || pos != field.size())
        fail(errc::parse, "line " + std::to_string(line_no) + ": bad numeric field '" + field + "'");
    return v;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            fail(errc::io, "cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out)
            fail(errc::io, "short write to '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
        fail(errc::io, "cannot rename '" + tmp.string() + "' to '" + target.string() + "': " + ec.message());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(errc::io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace netgof
