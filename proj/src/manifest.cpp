#include "gravcorr/manifest.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gravcorr/config.hpp"

namespace gravcorr {

namespace {
std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}
} // namespace

nlohmann::json manifest_json(const std::string& command, const SystemParams& sys,
                             std::uint64_t seed, const std::vector<std::string>& outputs) {
    nlohmann::json m;
    m["command"] = command;
    m["version"] = kVersion;
    m["seed"] = seed;
    m["timestamp"] = iso_timestamp();
    m["params_echo"] = config_echo(sys);
    m["outputs"] = outputs;
    return m;
}

std::string manifest_csv_header(const nlohmann::json& manifest) {
    std::ostringstream os;
    os << "# manifest: " << manifest.dump() << "\n";
    os << "# spectral densities are double-sided, frequencies in Hz, vacuum level 1/2\n";
    return os.str();
}

} // namespace gravcorr
