#include "hbee/enron.hpp"

#include <zlib.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hbee {

namespace {

std::string slurp(const std::string& path) {
    if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
        gzFile gz = gzopen(path.c_str(), "rb");
        if (!gz) throw std::runtime_error("snap_out_degrees: cannot open '" + path + "'");
        std::string out;
        char buf[1 << 16];
        int got;
        while ((got = gzread(gz, buf, sizeof(buf))) > 0) out.append(buf, static_cast<std::size_t>(got));
        gzclose(gz);
        return out;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("snap_out_degrees: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

EnronDegrees snap_out_degrees(const std::string& path) {
    const std::string content = slurp(path);

    std::map<long long, std::int64_t> degree; // node -> out-degree; map keeps ids ordered
    std::int64_t rows = 0;

    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t end = content.find('\n', pos);
        if (end == std::string::npos) end = content.size();
        if (end > pos && content[pos] != '#') {
            const char* s = content.data() + pos;
            char* after = nullptr;
            const long long src = std::strtoll(s, &after, 10);
            if (after != s) {
                const char* s2 = after;
                char* after2 = nullptr;
                const long long dst = std::strtoll(s2, &after2, 10);
                if (after2 != s2) {
                    ++degree[src];
                    degree.try_emplace(dst, 0);
                    ++rows;
                }
            }
        }
        pos = end + 1;
    }

    EnronDegrees out;
    out.out_degrees.reserve(degree.size());
    for (const auto& [_, d] : degree) out.out_degrees.push_back(d);
    out.node_count = static_cast<std::int64_t>(degree.size());
    out.edge_rows = rows;
    return out;
}

} // namespace hbee
