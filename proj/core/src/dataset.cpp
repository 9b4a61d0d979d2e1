#include "harmspace/dataset.hpp"

#include "harmspace/errors.hpp"
#include "internal/text.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace harmspace {

namespace {

constexpr const char* kManifestHeader = "path,bearing_id,class,speed_rpm,load_nm,run,channel";

std::filesystem::path channel_file(const std::filesystem::path& stem, std::size_t index) {
    std::filesystem::path p = stem;
    p += ".ch" + std::to_string(index + 1) + ".f32";
    return p;
}

std::filesystem::path header_file(const std::filesystem::path& stem) {
    std::filesystem::path p = stem;
    p += ".hdr";
    return p;
}

} // namespace

std::string channel_set_label(unsigned channels) {
    std::string label;
    for (unsigned c = 1; c <= channels; ++c) {
        if (!label.empty()) label += '+';
        label += "A" + std::to_string(c);
    }
    return label;
}

void write_recording(const Recording& rec, const std::filesystem::path& stem) {
    if (rec.channels.empty()) throw std::invalid_argument("write_recording: no channels");
    const std::size_t length = rec.length();
    for (const auto& ch : rec.channels)
        if (ch.size() != length)
            throw std::invalid_argument("write_recording: channel lengths differ");

    {
        std::ofstream hdr(header_file(stem));
        if (!hdr) throw data_error("write_recording: cannot open " + header_file(stem).string());
        hdr << "fs " << detail::format_double(rec.fs) << '\n'
            << "channels " << rec.channels.size() << '\n'
            << "length " << length << '\n';
        if (!hdr) throw data_error("write_recording: write failed for " + header_file(stem).string());
    }

    for (std::size_t c = 0; c < rec.channels.size(); ++c) {
        std::ofstream out(channel_file(stem, c), std::ios::binary);
        if (!out)
            throw data_error("write_recording: cannot open " + channel_file(stem, c).string());
        std::vector<float> buf(length);
        for (std::size_t i = 0; i < length; ++i) buf[i] = static_cast<float>(rec.channels[c][i]);
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size() * sizeof(float)));
        if (!out)
            throw data_error("write_recording: write failed for " + channel_file(stem, c).string());
    }
}

Recording read_recording(const std::filesystem::path& stem) {
    std::ifstream hdr(header_file(stem));
    if (!hdr) throw data_error("read_recording: cannot open " + header_file(stem).string());

    Recording rec;
    std::size_t channels = 0;
    std::size_t length = 0;
    std::string key;
    std::string value;
    while (hdr >> key >> value) {
        if (key == "fs") rec.fs = detail::parse_double(value);
        else if (key == "channels") channels = static_cast<std::size_t>(detail::parse_int(value));
        else if (key == "length") length = static_cast<std::size_t>(detail::parse_int(value));
        else throw data_error("read_recording: unknown header key '" + key + "'");
    }
    if (rec.fs <= 0.0 || channels == 0)
        throw data_error("read_recording: malformed header " + header_file(stem).string());

    rec.channels.resize(channels);
    for (std::size_t c = 0; c < channels; ++c) {
        std::ifstream in(channel_file(stem, c), std::ios::binary);
        if (!in) throw data_error("read_recording: cannot open " + channel_file(stem, c).string());
        std::vector<float> buf(length);
        in.read(reinterpret_cast<char*>(buf.data()),
                static_cast<std::streamsize>(length * sizeof(float)));
        if (static_cast<std::size_t>(in.gcount()) != length * sizeof(float))
            throw data_error("read_recording: short read from " + channel_file(stem, c).string());
        for (float v : buf)
            if (!std::isfinite(v))
                throw data_error("read_recording: non-finite sample in " +
                                 channel_file(stem, c).string());
        rec.channels[c].assign(buf.begin(), buf.end());
    }
    return rec;
}

void write_manifest(const Manifest& manifest, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw data_error("write_manifest: cannot open " + path.string());

    if (!manifest.held_out.empty()) {
        out << "# held_out=";
        for (std::size_t i = 0; i < manifest.held_out.size(); ++i) {
            if (i) out << ';';
            out << detail::format_double(manifest.held_out[i].speed_rpm) << ':'
                << detail::format_double(manifest.held_out[i].load_nm);
        }
        out << '\n';
    }
    out << kManifestHeader << '\n';
    for (const ManifestRow& r : manifest.rows) {
        out << r.path << ',' << r.bearing_id << ',' << to_string(r.label) << ','
            << detail::format_double(r.condition.speed_rpm) << ','
            << detail::format_double(r.condition.load_nm) << ',' << r.run << ',' << r.channel
            << '\n';
    }
    if (!out) throw data_error("write_manifest: write failed for " + path.string());
}

Manifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw data_error("read_manifest: cannot open " + path.string());

    Manifest manifest;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        const std::string_view trimmed = detail::trim(line);
        if (trimmed.empty()) continue;
        if (trimmed.front() == '#') {
            const std::string_view tag = "# held_out=";
            if (trimmed.rfind(tag, 0) == 0) {
                for (const std::string& cell : detail::split(trimmed.substr(tag.size()), ';')) {
                    const auto parts = detail::split(cell, ':');
                    if (parts.size() != 2)
                        throw data_error("read_manifest: malformed held_out flag in " + path.string());
                    manifest.held_out.push_back(
                        {detail::parse_double(parts[0]), detail::parse_double(parts[1])});
                }
            }
            continue;
        }
        if (!header_seen) {
            if (trimmed != kManifestHeader)
                throw data_error("read_manifest: unexpected header '" + std::string(trimmed) +
                                 "' in " + path.string());
            header_seen = true;
            continue;
        }
        const auto fields = detail::split(trimmed, ',');
        if (fields.size() != 7)
            throw data_error("read_manifest: expected 7 fields, got " +
                             std::to_string(fields.size()) + " in " + path.string());
        ManifestRow row;
        row.path = fields[0];
        row.bearing_id = fields[1];
        row.label = health_class_from_string(fields[2]);
        row.condition.speed_rpm = detail::parse_double(fields[3]);
        row.condition.load_nm = detail::parse_double(fields[4]);
        row.run = static_cast<int>(detail::parse_int(fields[5]));
        row.channel = fields[6];
        manifest.rows.push_back(std::move(row));
    }
    if (!header_seen) throw data_error("read_manifest: missing header in " + path.string());
    return manifest;
}

} // namespace harmspace
