// SPDX-License-Identifier: Apache-2.0
#pragma once

// JSON configuration parsing and text formatting shared by the command line
// tool and the tests.

#include "ctdiam/body.hpp"
#include "ctdiam/cheb.hpp"
#include "ctdiam/mesh.hpp"
#include "ctdiam/tdiam.hpp"
#include "ctdiam/vdm.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace ctdiam {

using Json = nlohmann::json;

/// {"dim": N, "halfspaces": [{"a": ["1", "1/2"], "b": "1"}, ...]}. Entries
/// may be integers, rational strings or decimals, which are read exactly
/// from their decimal text. The shortcuts {"kind": "simplex", "dim": N} and
/// {"kind": "box", "sides": [...]} are accepted too.
ConvexBody parse_body(const Json& j);

/// Mesh descriptions such as
///   {"kind": "circle", "center": [0, 0], "radius": 1, "count": 256,
///    "weight": {"kind": "one"}}.
/// Relative CSV paths of explicit meshes resolve against `base`.
MeshSpec parse_mesh_spec(const Json& j, const std::filesystem::path& base = {});

/// Reads an explicit mesh file: 2N numeric columns (re, im per coordinate)
/// and an optional trailing log-weight column. A non-numeric first line is
/// treated as a header.
ExplicitSpec read_mesh_csv(const std::filesystem::path& path, int dim = 0);

Exponent parse_exponent(const Json& j);
RationalVector parse_rational_vector(const Json& j);

VdmOptions parse_vdm_options(const Json& j);

/// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double x);

/// Finite doubles as JSON numbers, the others as the strings above.
Json json_number(double x);

Json to_json(const Exponent& alpha);
Json to_json(const ChebyshevRecord& rec);
Json to_json(const DaggerReport& dagger);

}  // namespace ctdiam
