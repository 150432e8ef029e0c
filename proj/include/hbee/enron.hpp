#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hbee {

// SNAP plain-text edge list: whitespace-separated "src dst" pairs, '#'
// comment lines. Returns the out-degree of every node that appears as a
// source or destination, ordered by node id. Supports .gz input.
struct EnronDegrees {
    std::vector<std::int64_t> out_degrees; // one entry per distinct node
    std::int64_t node_count = 0;
    std::int64_t edge_rows = 0;
};

EnronDegrees snap_out_degrees(const std::string& path);

} // namespace hbee
