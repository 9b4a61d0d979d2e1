#pragma once

#include "harmspace/features.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace harmspace {

// Multi-channel vibration record.
struct Recording {
    std::vector<std::vector<double>> channels; // equal lengths
    double fs = 0.0;

    std::size_t length() const { return channels.empty() ? 0 : channels.front().size(); }
};

// One manifest entry, pointing at a recording stem on disk. `channel` names
// the channel set stored for that recording (e.g. "A1+A2").
struct ManifestRow {
    std::string path; // stem, relative to the manifest's directory
    std::string bearing_id;
    HealthClass label = HealthClass::healthy;
    Condition condition;
    int run = 0;
    std::string channel;
};

struct Manifest {
    std::vector<ManifestRow> rows;
    std::vector<Condition> held_out; // informational flag written as a comment
};

// Channel-set label for k channels: "A1", "A1+A2", ...
std::string channel_set_label(unsigned channels);

// Recording files: one raw little-endian float32 file per channel
// (<stem>.ch<k>.f32) plus a text sidecar (<stem>.hdr) with fs, channels and
// length.
void write_recording(const Recording& rec, const std::filesystem::path& stem);
Recording read_recording(const std::filesystem::path& stem);

// Manifest CSV with columns path,bearing_id,class,speed_rpm,load_nm,run,channel.
// Held-out conditions are flagged in a leading comment line.
void write_manifest(const Manifest& manifest, const std::filesystem::path& path);
Manifest read_manifest(const std::filesystem::path& path);

} // namespace harmspace
