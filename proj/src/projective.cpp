#include "dyndeg/projective.hpp"

namespace dyndeg {

ProjFp reduce_mod_p(const ProjQ& t, std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::domain_error("reduce_mod_p: p must be prime");
    ProjFp out;
    out.field = FpField{p};
    out.dim = t.dim;
    for (const auto& c : t.comps) {
        std::vector<Poly<FpField>::Term> raw;
        for (const auto& tm : c.terms()) {
            auto e = out.field.from_rational(tm.coef);
            if (e != 0) raw.push_back({tm.exp, e});
        }
        out.comps.push_back(Poly<FpField>::from_terms(out.field, c.nvars(), std::move(raw)));
    }
    bool all_zero = true;
    for (const auto& c : out.comps) all_zero &= c.is_zero();
    if (all_zero) throw DegenerateMapError("reduce_mod_p: map vanishes mod p");
    return content_free(out);
}

}  // namespace dyndeg
