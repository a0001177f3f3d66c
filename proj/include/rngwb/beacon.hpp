#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "rngwb/bitstring.hpp"

namespace rngwb {

/// One randomness-beacon pulse. output_value always decodes from exactly 128
/// hex characters, i.e. 512 bits.
struct BeaconPulse {
    std::uint64_t pulse_index = 0;
    BitString output_value;
    std::string timestamp;
};

/// Parses a version-2 pulse document. Accepts either the bare pulse object
/// or the {"pulse": {...}} wrapper; requires pulseIndex, outputValue and
/// timeStamp.
BeaconPulse parse_pulse_document(const std::string& json_text);

/// Pulse client with two backends: HTTP against a beacon endpoint
/// (GET <endpoint>/pulse/last, <endpoint>/pulse/<index>) or playback of a
/// recorded fixture file (a JSON array of pulse documents) so pipelines run
/// offline.
class BeaconClient {
public:
    explicit BeaconClient(std::string endpoint);
    static BeaconClient from_fixture(const std::filesystem::path& fixture);
    ~BeaconClient();
    BeaconClient(BeaconClient&&) noexcept;
    BeaconClient& operator=(BeaconClient&&) noexcept;

    BeaconPulse fetch_last();
    BeaconPulse fetch(std::uint64_t pulse_index);

    /// Concatenates consecutive pulses until the requested number of bits is
    /// available, then truncates. Fixture mode walks the recording forward;
    /// HTTP mode starts at the latest pulse and walks backwards in index.
    BitString collect_bits(std::size_t bits);

private:
    BeaconClient();  // fixture-backed construction goes through from_fixture
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace rngwb
