#include "mmq/manifest.hpp"

#include <fstream>

#include "mmq/errors.hpp"

namespace mmq {

nlohmann::json manifest_to_json(const RunManifest& m) {
    return {{"command", m.command},
            {"argv", m.argv},
            {"config", m.resolved_config},
            {"seed", m.seed},
            {"version", m.version},
            {"outputs", m.outputs}};
}

void write_manifest(const std::string& path, const RunManifest& m) {
    std::ofstream out(path);
    if (!out) throw DomainError("manifest", "cannot write '" + path + "'");
    out << manifest_to_json(m).dump(2) << '\n';
}

}  // namespace mmq
