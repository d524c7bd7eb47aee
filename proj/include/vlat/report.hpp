#pragma once

#include <json.hpp>
#include <string>

#include "vlat/clifford.hpp"
#include "vlat/fq.hpp"
#include "vlat/ggp.hpp"
#include "vlat/lattice.hpp"
#include "vlat/quadspace.hpp"
#include "vlat/strata.hpp"

namespace vlat {

using Json = nlohmann::json;

// rationals travel as strings "a/b"
Json rat_to_json(const Rat& x);
Rat rat_from_json(const Json& j);

Json qmat_to_json(const QMat& m);
QMat qmat_from_json(const Json& j);

Json quadspace_to_json(const QuadSpace& q);
QuadSpace quadspace_from_json(const Json& j);

Json lattice_to_json(const Lattice& L);

Json fqelt_to_json(const FqElt& x);
Json subspace_to_json(const FqSubspace& L);

Json clifford_to_json(const CliffordElt& a);

Json classification_to_json(const Classification& cls);
Json ggp_report_to_json(const GGPReport& rep);
Json cross_check_to_json(const CrossCheck& cc);

// FNV-1a over the canonical dump; canonical because nlohmann::json objects
// keep keys sorted and the library never emits floats.
std::string determinism_hash(const Json& payload);

// {"schema_version", "command", "inputs", "outputs", "determinism_hash"}
Json make_report(const std::string& command, Json inputs, Json outputs);

}  // namespace vlat

// forward declaration lives here so the CLI and bindings share one entry point
namespace vlat {
struct CliResult {
    int exit_code = 0;
    Json report;
};
// argv-style interface; does not print, does not exit.
CliResult run_command(const std::vector<std::string>& args);
}  // namespace vlat
