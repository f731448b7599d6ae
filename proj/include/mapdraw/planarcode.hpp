#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mapdraw/map.hpp"

namespace mapdraw {

inline constexpr std::string_view kPlanarcodeHeader = ">>planar_code<<";

struct MapStream {
    std::vector<CombinatorialMap> maps;
};

namespace detail {

/// Reads one raw record from binary planarcode. Values are single bytes
/// unless the record starts with 0, which switches every value in the
/// record (including the vertex count) to 2-byte little-endian.
inline RawMap read_binary_record(const std::vector<std::uint8_t>& bytes, std::size_t& pos) {
    auto need = [&](std::size_t k) {
        if (pos + k > bytes.size()) throw MapError("truncated planarcode record");
    };
    bool wide = false;
    need(1);
    if (bytes[pos] == 0) {
        wide = true;
        ++pos;
    }
    auto read_value = [&]() -> int {
        if (wide) {
            need(2);
            int v = bytes[pos] | (bytes[pos + 1] << 8);
            pos += 2;
            return v;
        }
        need(1);
        return bytes[pos++];
    };
    int n = read_value();
    if (n < 1) throw MapError("planarcode record with vertex count " + std::to_string(n));
    RawMap raw;
    raw.adj.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        for (;;) {
            int w = read_value();
            if (w == 0) break;
            raw.adj[static_cast<std::size_t>(v)].push_back(w - 1);
        }
    }
    return raw;
}

inline CombinatorialMap build_checked(RawMap raw) {
    ValidationReport report = validate(raw);
    if (!report.empty()) throw MapError("invalid map: " + report.front().message);
    return CombinatorialMap::from_raw(std::move(raw));
}

} // namespace detail

/// Binary planarcode; the ">>planar_code<<" header is optional on input.
inline MapStream parse_binary(const std::vector<std::uint8_t>& bytes) {
    std::size_t pos = 0;
    std::string_view head(reinterpret_cast<const char*>(bytes.data()),
                          std::min(bytes.size(), kPlanarcodeHeader.size()));
    if (head == kPlanarcodeHeader) pos = kPlanarcodeHeader.size();
    MapStream stream;
    while (pos < bytes.size()) {
        RawMap raw = detail::read_binary_record(bytes, pos);
        stream.maps.push_back(detail::build_checked(std::move(raw)));
    }
    return stream;
}

/// Whitespace-separated decimal planarcode with the same record structure.
inline MapStream parse_ascii(std::string_view text) {
    std::vector<long> values;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        bool neg = text[i] == '-';
        std::size_t j = i + (neg ? 1 : 0);
        long v = 0;
        bool any = false;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
            v = v * 10 + (text[j] - '0');
            any = true;
            ++j;
        }
        if (!any) throw MapError("unexpected character '" + std::string(1, text[i]) +
                                 "' in ascii planarcode");
        values.push_back(neg ? -v : v);
        i = j;
    }

    MapStream stream;
    std::size_t pos = 0;
    auto next_value = [&]() -> int {
        if (pos >= values.size()) throw MapError("truncated planarcode record");
        long v = values[pos++];
        if (v < 0 || v > 1 << 20) throw MapError("planarcode value out of range");
        return static_cast<int>(v);
    };
    while (pos < values.size()) {
        int n = next_value();
        if (n < 1) throw MapError("planarcode record with vertex count " + std::to_string(n));
        RawMap raw;
        raw.adj.resize(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            for (;;) {
                int w = next_value();
                if (w == 0) break;
                raw.adj[static_cast<std::size_t>(v)].push_back(w - 1);
            }
        }
        stream.maps.push_back(detail::build_checked(std::move(raw)));
    }
    return stream;
}

/// Binary writer; always emits the header. Records with more than 255
/// vertices switch to the 0-prefixed 2-byte little-endian form.
inline std::vector<std::uint8_t> write_binary(const MapStream& stream) {
    std::vector<std::uint8_t> out(kPlanarcodeHeader.begin(), kPlanarcodeHeader.end());
    for (const CombinatorialMap& m : stream.maps) {
        const RawMap& raw = m.raw();
        int n = raw.vertex_count();
        bool wide = n > 255;
        auto put = [&](int v) {
            if (wide) {
                out.push_back(static_cast<std::uint8_t>(v & 0xff));
                out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
            } else {
                out.push_back(static_cast<std::uint8_t>(v));
            }
        };
        if (wide) out.push_back(0);
        put(n);
        for (int v = 0; v < n; ++v) {
            for (int w : raw.adj[static_cast<std::size_t>(v)]) put(w + 1);
            put(0);
        }
    }
    return out;
}

/// One record per line, single-space separated.
inline std::string write_ascii(const MapStream& stream) {
    std::string out;
    for (const CombinatorialMap& m : stream.maps) {
        const RawMap& raw = m.raw();
        out += std::to_string(raw.vertex_count());
        for (int v = 0; v < raw.vertex_count(); ++v) {
            for (int w : raw.adj[static_cast<std::size_t>(v)]) {
                out += ' ';
                out += std::to_string(w + 1);
            }
            out += " 0";
        }
        out += '\n';
    }
    return out;
}

/// Heuristic used when no format flag is given: a stream that is entirely
/// digits and whitespace is read as ascii, anything else as binary.
inline bool looks_like_ascii(const std::vector<std::uint8_t>& bytes) {
    if (bytes.empty()) return true;
    for (std::uint8_t b : bytes) {
        if (std::isdigit(b) || std::isspace(b)) continue;
        return false;
    }
    return true;
}

} // namespace mapdraw
