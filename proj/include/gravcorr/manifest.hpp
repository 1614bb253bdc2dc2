#ifndef GRAVCORR_MANIFEST_HPP
#define GRAVCORR_MANIFEST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gravcorr/params.hpp"

namespace gravcorr {

inline constexpr const char* kVersion = "0.1.0";

// Provenance block attached to every output: command, complete parameter
// echo, tool version, seed, timestamp and the produced files. Everything
// except the timestamp is reproducible input; re-running with the echo
// yields the same numeric payload.
nlohmann::json manifest_json(const std::string& command, const SystemParams& sys,
                             std::uint64_t seed, const std::vector<std::string>& outputs = {});

// '#'-prefixed header lines carrying the manifest, for CSV emission.
std::string manifest_csv_header(const nlohmann::json& manifest);

} // namespace gravcorr

#endif
