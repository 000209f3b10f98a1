#pragma once

#include <string>

#include <json.hpp>

namespace mmq {

// Model variants: base (driftless, no impact), drift (dS = mu dt + sigma dW),
// impact (each fill displaces the reference price by +-xi).
enum class Variant { base, drift, impact };

const char* to_string(Variant v);
Variant variant_from_string(const std::string& s);

// Market and preference constants. Units are Ticks and seconds throughout:
// sigma [Tick s^-1/2], mu [Tick/s], A [1/s], k [1/Tick], gamma [1/Tick],
// xi [Tick], T [s], Q [unit trade sizes]. alpha/eta/beta are derived by
// validate_params() and must not be set by hand.
struct ModelParams {
    double sigma = 0.0;
    double mu = 0.0;
    double A = 0.0;
    double k = 0.0;
    double gamma = 0.0;
    double xi = 0.0;
    double T = 0.0;
    int Q = 0;

    double alpha = 0.0;  // (k/2) gamma sigma^2
    double eta = 0.0;    // A (1 + gamma/k)^-(1 + k/gamma)
    double beta = 0.0;   // k mu
};

// Checks ranges (sigma, A, k, gamma, T > 0; xi >= 0; Q >= 1) and fills the
// derived constants. Throws DomainError naming the offending field.
// Q = 0 is rejected: with no inventory headroom no quote is ever admissible.
ModelParams validate_params(ModelParams raw);

// Flat JSON object {sigma, mu, A, k, gamma, xi, T, Q}. mu and xi default to
// zero, everything else is required; unknown keys are rejected.
ModelParams params_from_json(const nlohmann::json& j);
ModelParams load_params(const std::string& path);
nlohmann::json params_to_json(const ModelParams& p);

}  // namespace mmq
