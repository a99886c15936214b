#include "dyndeg/mapspec.hpp"

#include <json.hpp>

namespace dyndeg {

using nlohmann::json;

namespace {

Int json_int(const json& j, const char* what) {
    try {
        if (j.is_string()) return Int(j.get<std::string>());
        if (j.is_number_integer()) return Int(j.get<long>());
    } catch (...) {
    }
    throw std::invalid_argument(std::string("map file: bad integer for ") + what);
}

std::uint64_t map_validation_seed(const std::string& canonical) {
    // deterministic: derived from the canonical serialization
    std::uint64_t h = 14695981039346656037ull;
    for (char c : canonical) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

template <class F>
ProjTuple<F> build_tuple(const F& fld, int dim, const std::vector<std::string>& vars,
                         const std::vector<std::string>& components) {
    if (static_cast<int>(vars.size()) != dim + 1)
        throw std::invalid_argument("map file: need dim+1 variables");
    if (static_cast<int>(components.size()) != dim + 1)
        throw std::invalid_argument("map file: need dim+1 components");
    ProjTuple<F> t;
    t.field = fld;
    t.dim = dim;
    for (const auto& s : components) t.comps.push_back(parse_poly(fld, vars, s));
    validate_tuple(t);
    t = content_free(t);
    if (t.degree() < 1) throw std::invalid_argument("map file: degree < 1 after content removal");
    return t;
}

json canonical_of(const MapSpec& m) {
    json j;
    if (m.is_monomial()) {
        const auto& mm = std::get<MonomialMap>(m.data);
        j["kind"] = "monomial";
        j["dim"] = mm.dim;
        json rows = json::array();
        for (int i = 0; i < mm.dim; ++i) {
            json row = json::array();
            for (int k = 0; k < mm.dim; ++k) row.push_back(mm.matrix.at(i, k).get_str());
            rows.push_back(row);
        }
        j["matrix"] = rows;
    } else {
        const auto& pm = std::get<ProjectiveMap>(m.data);
        j["kind"] = "projective";
        j["dim"] = pm.dim;
        j["vars"] = pm.vars;
        json comps = json::array();
        if (pm.is_rational_field()) {
            j["field"] = {{"kind", "Q"}};
            const auto& t = std::get<ProjQ>(pm.tuple);
            for (const auto& c : t.comps) comps.push_back(poly_to_string(t.field, c, pm.vars));
        } else {
            const auto& t = std::get<ProjFp>(pm.tuple);
            j["field"] = {{"kind", "Fp"}, {"p", std::to_string(t.field.p)}};
            for (const auto& c : t.comps) comps.push_back(poly_to_string(t.field, c, pm.vars));
        }
        j["components"] = comps;
        if (pm.top_degree) j["top_degree"] = pm.top_degree->get_str();
    }
    return j;
}

void finalize(MapSpec& m) {
    m.canonical_json = canonical_of(m).dump();
    m.fingerprint = fingerprint_of(m.canonical_json);
    if (!m.is_monomial()) {
        auto& pm = std::get<ProjectiveMap>(m.data);
        std::uint64_t seed = map_validation_seed(m.canonical_json);
        bool ok = pm.is_rational_field() ? certify_dominant(std::get<ProjQ>(pm.tuple), seed)
                                         : certify_dominant(std::get<ProjFp>(pm.tuple), seed);
        if (!ok)
            throw std::invalid_argument(
                "map file: dominance certificate failed (no sampled point had an invertible "
                "affine Jacobian; the map may still be dominant, but it is rejected here)");
    }
}

}  // namespace

int MapSpec::dim() const {
    if (is_monomial()) return std::get<MonomialMap>(data).dim;
    return std::get<ProjectiveMap>(data).dim;
}

std::string fingerprint_of(const std::string& canonical) {
    std::uint64_t h = 14695981039346656037ull;
    for (char c : canonical) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

MapSpec make_monomial_map(const IMatrix& a) {
    if (a.n < 1) throw std::invalid_argument("monomial map: empty matrix");
    if (mat_det(a) == 0) throw std::invalid_argument("monomial map: singular matrix (not dominant)");
    MapSpec m;
    m.data = MonomialMap{a.n, a};
    finalize(m);
    return m;
}

MapSpec make_projective_map_q(int dim, const std::vector<std::string>& vars,
                              const std::vector<std::string>& components,
                              std::optional<Int> top_degree) {
    MapSpec m;
    ProjectiveMap pm;
    pm.dim = dim;
    pm.vars = vars;
    pm.top_degree = std::move(top_degree);
    pm.tuple = build_tuple(QField{}, dim, vars, components);
    m.data = std::move(pm);
    finalize(m);
    return m;
}

MapSpec make_projective_map_fp(std::uint64_t p, int dim, const std::vector<std::string>& vars,
                               const std::vector<std::string>& components,
                               std::optional<Int> top_degree) {
    if (!is_prime_u64(p) || p >= (1ull << 31))
        throw std::invalid_argument("map file: p must be a prime below 2^31");
    MapSpec m;
    ProjectiveMap pm;
    pm.dim = dim;
    pm.vars = vars;
    pm.top_degree = std::move(top_degree);
    pm.tuple = build_tuple(FpField{p}, dim, vars, components);
    m.data = std::move(pm);
    finalize(m);
    return m;
}

MapSpec parse_map_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("map file: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("map file: expected an object with a 'kind' field");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "monomial") {
        int dim = static_cast<int>(json_int(j.at("dim"), "dim").get_si());
        if (dim < 1) throw std::invalid_argument("map file: dim must be >= 1");
        const json& rows = j.at("matrix");
        if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
            throw std::invalid_argument("map file: matrix must have dim rows");
        IMatrix a(dim);
        for (int i = 0; i < dim; ++i) {
            if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != dim)
                throw std::invalid_argument("map file: matrix must be square");
            for (int k = 0; k < dim; ++k) a.at(i, k) = json_int(rows[i][k], "matrix entry");
        }
        return make_monomial_map(a);
    }
    if (kind == "projective") {
        int dim = static_cast<int>(json_int(j.at("dim"), "dim").get_si());
        if (dim < 1) throw std::invalid_argument("map file: dim must be >= 1");
        std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
        std::vector<std::string> comps = j.at("components").get<std::vector<std::string>>();
        std::optional<Int> topdeg;
        if (j.contains("top_degree")) topdeg = json_int(j["top_degree"], "top_degree");
        const json& fld = j.at("field");
        std::string fk = fld.at("kind").get<std::string>();
        if (fk == "Q") return make_projective_map_q(dim, vars, comps, topdeg);
        if (fk == "Fp") {
            Int p = json_int(fld.at("p"), "p");
            return make_projective_map_fp(p.get_ui(), dim, vars, comps, topdeg);
        }
        throw std::invalid_argument("map file: field kind must be Q or Fp");
    }
    throw std::invalid_argument("map file: kind must be 'monomial' or 'projective'");
}

MapSpec homogenize_monomial_map(const MonomialMap& m) {
    int d = m.dim;
    int nv = d + 1;
    // exponent of variable j in coordinate i (coordinate 0 is the constant 1)
    std::vector<std::vector<long>> expo(nv, std::vector<long>(d, 0));
    for (int i = 1; i <= d; ++i)
        for (int j = 0; j < d; ++j) expo[i][j] = m.matrix.at(i - 1, j).get_si();
    // clear negative exponents per variable
    for (int j = 0; j < d; ++j) {
        long mn = 0;
        for (int i = 0; i < nv; ++i) mn = std::min(mn, expo[i][j]);
        for (int i = 0; i < nv; ++i) expo[i][j] -= mn;
    }
    long maxdeg = 0;
    std::vector<long> degs(nv, 0);
    for (int i = 0; i < nv; ++i) {
        for (int j = 0; j < d; ++j) degs[i] += expo[i][j];
        maxdeg = std::max(maxdeg, degs[i]);
    }
    std::vector<std::string> vars;
    vars.push_back("x0");
    for (int j = 1; j <= d; ++j) vars.push_back("x" + std::to_string(j));
    std::vector<std::string> comps;
    for (int i = 0; i < nv; ++i) {
        std::string s;
        long pad = maxdeg - degs[i];
        auto add_factor = [&](const std::string& v, long e) {
            if (e == 0) return;
            if (!s.empty()) s += "*";
            s += v;
            if (e > 1) s += "^" + std::to_string(e);
        };
        add_factor("x0", pad);
        for (int j = 0; j < d; ++j) add_factor("x" + std::to_string(j + 1), expo[i][j]);
        if (s.empty()) s = "1";
        comps.push_back(s);
    }
    return make_projective_map_q(d, vars, comps, Int(::abs(mat_det(m.matrix))));
}

}  // namespace dyndeg
