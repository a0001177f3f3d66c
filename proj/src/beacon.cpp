#include "rngwb/beacon.hpp"

#include <fstream>
#include <stdexcept>
#include <vector>

#include <httplib.h>
#include <json.hpp>

namespace rngwb {

namespace {

BeaconPulse pulse_from_json(const nlohmann::json& doc) {
    const nlohmann::json& body = doc.contains("pulse") ? doc.at("pulse") : doc;
    if (!body.contains("pulseIndex") || !body.contains("outputValue") ||
        !body.contains("timeStamp"))
        throw std::runtime_error("malformed pulse document: missing required fields");

    BeaconPulse pulse;
    if (body.at("pulseIndex").is_string())
        pulse.pulse_index = std::stoull(body.at("pulseIndex").get<std::string>());
    else
        pulse.pulse_index = body.at("pulseIndex").get<std::uint64_t>();

    const auto hex = body.at("outputValue").get<std::string>();
    if (hex.size() != 128)
        throw std::runtime_error("malformed pulse document: outputValue must be 128 hex chars, got " +
                                 std::to_string(hex.size()));
    pulse.output_value = BitString::from_hex(hex);
    pulse.timestamp = body.at("timeStamp").get<std::string>();
    return pulse;
}

}  // namespace

BeaconPulse parse_pulse_document(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed pulse document: ") + e.what());
    }
    return pulse_from_json(doc);
}

struct BeaconClient::Impl {
    // HTTP backend
    std::string scheme_host;
    std::string path_prefix;

    // Fixture backend
    std::vector<BeaconPulse> fixture;
    std::size_t fixture_cursor = 0;

    bool is_fixture() const { return !fixture.empty() || scheme_host.empty(); }

    BeaconPulse http_get(const std::string& path) {
        httplib::Client client(scheme_host);
        client.set_connection_timeout(10);
        client.set_read_timeout(30);
        auto res = client.Get(path_prefix + path);
        if (!res)
            throw std::runtime_error("beacon HTTP request failed: " + scheme_host + path_prefix +
                                     path);
        if (res->status != 200)
            throw std::runtime_error("beacon HTTP status " + std::to_string(res->status) + " for " +
                                     path);
        return parse_pulse_document(res->body);
    }
};

BeaconClient::BeaconClient(std::string endpoint) : impl_(std::make_unique<Impl>()) {
    // Split scheme://host[:port] from the path prefix.
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos)
        throw std::invalid_argument("beacon endpoint must include a scheme: " + endpoint);
    const auto path_start = endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        impl_->scheme_host = endpoint;
    } else {
        impl_->scheme_host = endpoint.substr(0, path_start);
        impl_->path_prefix = endpoint.substr(path_start);
        while (!impl_->path_prefix.empty() && impl_->path_prefix.back() == '/')
            impl_->path_prefix.pop_back();
    }
}

BeaconClient BeaconClient::from_fixture(const std::filesystem::path& fixture) {
    std::ifstream in(fixture);
    if (!in) throw std::runtime_error("cannot open beacon fixture: " + fixture.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed beacon fixture: ") + e.what());
    }
    if (!doc.is_array() || doc.empty())
        throw std::runtime_error("beacon fixture must be a non-empty JSON array");

    BeaconClient client;
    for (const auto& entry : doc) client.impl_->fixture.push_back(pulse_from_json(entry));
    return client;
}

BeaconClient::BeaconClient() : impl_(std::make_unique<Impl>()) {}

BeaconClient::~BeaconClient() = default;
BeaconClient::BeaconClient(BeaconClient&&) noexcept = default;
BeaconClient& BeaconClient::operator=(BeaconClient&&) noexcept = default;

BeaconPulse BeaconClient::fetch_last() {
    if (impl_->is_fixture()) {
        if (impl_->fixture.empty()) throw std::runtime_error("beacon fixture is empty");
        return impl_->fixture.back();
    }
    return impl_->http_get("/pulse/last");
}

BeaconPulse BeaconClient::fetch(std::uint64_t pulse_index) {
    if (impl_->is_fixture()) {
        for (const auto& p : impl_->fixture)
            if (p.pulse_index == pulse_index) return p;
        throw std::runtime_error("pulse " + std::to_string(pulse_index) + " not in fixture");
    }
    return impl_->http_get("/pulse/" + std::to_string(pulse_index));
}

BitString BeaconClient::collect_bits(std::size_t bits) {
    if (bits == 0) throw std::invalid_argument("collect_bits: bits must be >= 1");
    BitString out;
    if (impl_->is_fixture()) {
        while (out.size() < bits) {
            if (impl_->fixture_cursor >= impl_->fixture.size())
                throw std::runtime_error("beacon fixture exhausted after " +
                                         std::to_string(out.size()) + " bits");
            out.append(impl_->fixture[impl_->fixture_cursor++].output_value);
        }
    } else {
        BeaconPulse pulse = fetch_last();
        out.append(pulse.output_value);
        while (out.size() < bits) {
            if (pulse.pulse_index == 0)
                throw std::runtime_error("beacon history exhausted before seed was filled");
            pulse = fetch(pulse.pulse_index - 1);
            out.append(pulse.output_value);
        }
    }
    return out.slice(0, bits);
}

}  // namespace rngwb
