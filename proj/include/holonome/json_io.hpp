#pragma once

// JSON encodings: exact matrices as row-major arrays of "p/q" strings, complex
// numbers as [re, im], connection specs, and a file cache of representations.

#include "holonome/cmatrix.hpp"
#include "holonome/connections.hpp"
#include "holonome/liecore.hpp"
#include "holonome/rational.hpp"

#include <json.hpp>

#include <string>

namespace holonome {

using json = nlohmann::json;

json to_json(const QMatrix& m);
/// Accepts strings "p/q" and integers. Throws std::invalid_argument on ragged or malformed input.
QMatrix qmatrix_from_json(const json& j);

json to_json(cplx z);
/// Accepts [re, im] or a plain number.
cplx cplx_from_json(const json& j);
json to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const json& j);
json to_json(const std::vector<cplx>& v);

/// {base_dim, forms, residues, h}; h is the coupling of the first weight class.
json connection_to_json(const FlatConnection& conn);
/// Rebuilds a single-class connection with the residues exact.
FlatConnection connection_from_json(const json& j);

json representation_to_json(const Representation& rep);
/// Rebuilds the root system from its name and normalization and re-derives the weights.
Representation representation_from_json(const json& j);

/// build_rep memoized in the directory named by HOLONOME_CACHE (no caching when unset).
/// Cache files are written atomically; unreadable cache entries are rebuilt.
Representation cached_build_rep(const RootSystem& rs, const RepKind& kind);

/// Writes text to path via a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace holonome
