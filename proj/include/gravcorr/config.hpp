#ifndef GRAVCORR_CONFIG_HPP
#define GRAVCORR_CONFIG_HPP

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "gravcorr/params.hpp"

namespace gravcorr {

// Raised on malformed or invalid configuration; message names the field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Reads a system description from TOML or JSON (sniffed from content).
// Sections: [mechanical_a], [mechanical_b], [optical_a], [optical_b],
// [gravity], [model]; a missing B side mirrors the A side. Frequencies are
// given in Hz and converted to angular units internally. Unknown keys are
// hard errors.
SystemParams parse_config_file(const std::string& path);
SystemParams parse_config_text(const std::string& text);

// Full parameter echo with the exact config schema (both sides explicit);
// parse_config_text(echo.dump()) reproduces the system bit for bit.
nlohmann::json config_echo(const SystemParams& sys);

// Applies a dotted key like "mechanical_a.omega_m_hz" or "gravity.lambda_form"
// onto an echo-style JSON object; unknown paths raise ConfigError.
void set_config_value(nlohmann::json& config, const std::string& dotted_key, double value);

SystemParams system_from_echo(const nlohmann::json& config);

} // namespace gravcorr

#endif
