#pragma once

#include <optional>
#include <variant>

#include "dyndeg/projective.hpp"
#include "dyndeg/sturm.hpp"

namespace dyndeg {

/// Monomial self-map of projective d-space: an integer matrix acting on
/// exponents of the torus coordinates. Dominance means det != 0.
struct MonomialMap {
    int dim = 0;
    IMatrix matrix;
};

struct ProjectiveMap {
    int dim = 0;
    std::vector<std::string> vars;
    std::variant<ProjQ, ProjFp> tuple;
    std::optional<Int> top_degree;

    bool is_rational_field() const { return std::holds_alternative<ProjQ>(tuple); }
};

struct MapSpec {
    std::variant<MonomialMap, ProjectiveMap> data;
    std::string canonical_json;
    std::string fingerprint;

    int dim() const;
    bool is_monomial() const { return std::holds_alternative<MonomialMap>(data); }
};

/// Parse the JSON map format:
///   {"kind":"monomial","dim":2,"matrix":[[2,1],[1,1]]}
///   {"kind":"projective","dim":2,"field":{"kind":"Q"},"vars":["x","y","z"],
///    "components":["x*z","y*z+2*x*y","z^2"],"top_degree":2}
/// Integer entries may be JSON numbers or strings. Projective components are
/// content-freed and must pass the dominance certificate.
MapSpec parse_map_json(const std::string& text);

MapSpec make_monomial_map(const IMatrix& a);
MapSpec make_projective_map_q(int dim, const std::vector<std::string>& vars,
                              const std::vector<std::string>& components,
                              std::optional<Int> top_degree = std::nullopt);
MapSpec make_projective_map_fp(std::uint64_t p, int dim, const std::vector<std::string>& vars,
                               const std::vector<std::string>& components,
                               std::optional<Int> top_degree = std::nullopt);

/// Homogenization of a monomial map for cross-backend checks: each coordinate
/// monomial is cleared of negative exponents and padded with powers of the
/// extra variable to a common degree, then the content is removed.
MapSpec homogenize_monomial_map(const MonomialMap& m);

/// FNV-1a hash of the canonical serialization, as 16 hex digits.
std::string fingerprint_of(const std::string& canonical);

}  // namespace dyndeg
