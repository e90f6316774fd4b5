#pragma once

#include <string>
#include <string_view>

#include "wakeford/errors.hpp"
#include "wakeford/group.hpp"
#include "wakeford/group_set.hpp"

namespace wakeford {

/// Parses a comma-separated element list: items are "INT" or "INT..INT"
/// (inclusive index range). Duplicates collapse.
inline GroupSet parse_set_literal(const Group& g, std::string_view text) {
    GroupSet out(g.order());
    std::size_t pos = 0;

    auto parse_int = [&](std::string_view item, std::size_t& at) {
        std::size_t start = at;
        long long value = 0;
        while (at < item.size() && item[at] >= '0' && item[at] <= '9') {
            value = value * 10 + (item[at] - '0');
            if (value > kMaxGroupOrder) break;
            ++at;
        }
        if (at == start) throw ParseError("expected integer in set item '" + std::string(item) + "'");
        return value;
    };

    auto add_checked = [&](long long x, std::string_view item) {
        if (x < 0 || x >= g.order())
            throw DomainError("element " + std::to_string(x) + " in item '" + std::string(item) +
                              "' is out of range for group of order " + std::to_string(g.order()));
        out.add(static_cast<int>(x));
    };

    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                 : comma - pos);
        if (item.empty()) throw ParseError("empty item in set literal");
        std::size_t at = 0;
        long long lo = parse_int(item, at);
        if (at == item.size()) {
            add_checked(lo, item);
        } else if (item.substr(at, 2) == "..") {
            at += 2;
            long long hi = parse_int(item, at);
            if (at != item.size())
                throw ParseError("trailing characters in set item '" + std::string(item) + "'");
            if (hi < lo) throw ParseError("descending range in set item '" + std::string(item) + "'");
            for (long long x = lo; x <= hi; ++x) add_checked(x, item);
        } else {
            throw ParseError("unexpected character in set item '" + std::string(item) + "'");
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

} // namespace wakeford
