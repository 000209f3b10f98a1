#include "mmq/params.hpp"

#include <cmath>
#include <fstream>

#include "mmq/errors.hpp"

namespace mmq {

const char* to_string(Variant v) {
    switch (v) {
        case Variant::base: return "base";
        case Variant::drift: return "drift";
        case Variant::impact: return "impact";
    }
    return "?";
}

Variant variant_from_string(const std::string& s) {
    if (s == "base") return Variant::base;
    if (s == "drift") return Variant::drift;
    if (s == "impact") return Variant::impact;
    throw DomainError("variant", "unknown variant '" + s + "'");
}

ModelParams validate_params(ModelParams p) {
    auto positive = [](const char* name, double v) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError(name, "must be strictly positive");
    };
    positive("sigma", p.sigma);
    positive("A", p.A);
    positive("k", p.k);
    positive("gamma", p.gamma);
    positive("T", p.T);
    if (!std::isfinite(p.mu)) throw DomainError("mu", "must be finite");
    if (!(p.xi >= 0.0) || !std::isfinite(p.xi))
        throw DomainError("xi", "must be nonnegative");
    if (p.Q < 1)
        throw DomainError("Q", "must be a positive integer (Q = 0 admits no quotes)");

    p.alpha = 0.5 * p.k * p.gamma * p.sigma * p.sigma;
    // exp/log form avoids overflow of (1 + gamma/k)^(1 + k/gamma) for small
    // gamma/k.
    p.eta = p.A * std::exp(-(1.0 + p.k / p.gamma) * std::log1p(p.gamma / p.k));
    p.beta = p.k * p.mu;
    return p;
}

ModelParams params_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw DomainError("params", "expected a JSON object");
    static const char* known[] = {"sigma", "mu", "A", "k", "gamma", "xi", "T", "Q"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* name : known) ok = ok || it.key() == name;
        if (!ok) throw DomainError(it.key(), "unknown parameter key");
    }
    auto need = [&](const char* name) -> double {
        if (!j.contains(name)) throw DomainError(name, "missing required key");
        if (!j[name].is_number()) throw DomainError(name, "must be a number");
        return j[name].get<double>();
    };
    ModelParams p;
    p.sigma = need("sigma");
    p.A = need("A");
    p.k = need("k");
    p.gamma = need("gamma");
    p.T = need("T");
    p.mu = j.contains("mu") ? need("mu") : 0.0;
    p.xi = j.contains("xi") ? need("xi") : 0.0;
    double q = need("Q");
    if (q != std::floor(q)) throw DomainError("Q", "must be an integer");
    p.Q = static_cast<int>(q);
    return validate_params(p);
}

ModelParams load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config", "cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("config", std::string("invalid JSON: ") + e.what());
    }
    return params_from_json(j);
}

nlohmann::json params_to_json(const ModelParams& p) {
    return {{"sigma", p.sigma}, {"mu", p.mu},       {"A", p.A}, {"k", p.k},
            {"gamma", p.gamma}, {"xi", p.xi},       {"T", p.T}, {"Q", p.Q}};
}

}  // namespace mmq
