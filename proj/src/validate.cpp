#include "dyndeg/validate.hpp"

#include <random>
#include <sstream>

namespace dyndeg {

namespace {

// all checks compare exact rationals built from oracle integers
Rational ratio(const Int& a, const Int& b) { return Rational(a, b); }

bool query_supported(MixedDegreeOracle& o, const MixedDegreeQuery& q) {
    return o.capabilities(q).supported;
}

bool degree_supported(MixedDegreeOracle& o, int i, long n) {
    if (i == 0) return true;
    return query_supported(o, MixedDegreeQuery::degree(i, n, o.dim()));
}

struct Sampler {
    std::mt19937_64 rng;
    long pick(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

void check_sandwich(MixedDegreeOracle& o, Sampler& s, ValidationReport& rep) {
    int d = o.dim();
    int parts = static_cast<int>(s.pick(1, std::min(3, d)));
    // exponents r_1..r_parts >= 1 summing to d
    std::vector<int> r(parts, 1);
    for (int extra = 0; extra < d - parts; ++extra) ++r[s.pick(0, parts - 1)];
    // iterates strictly decreasing, small
    std::vector<long> m(parts);
    long cur = s.pick(0, 2);
    for (int i = parts - 1; i >= 0; --i) {
        m[i] = cur;
        cur += s.pick(1, 2);
    }
    std::vector<std::pair<long, int>> entries;
    for (int i = 0; i < parts; ++i) entries.emplace_back(m[i], r[i]);
    MixedDegreeQuery q = MixedDegreeQuery::make(entries, d);
    if (!query_supported(o, q)) {
        ++rep.skipped_unsupported;
        return;
    }
    std::vector<long> l(parts);
    l[0] = r[0];
    for (int i = 1; i < parts; ++i) l[i] = l[i - 1] + r[i];
    for (int i = 0; i < parts; ++i) {
        long gap_up = m[i] - (i + 1 < parts ? m[i + 1] : 0);
        if (!degree_supported(o, static_cast<int>(l[i]), gap_up) ||
            !degree_supported(o, static_cast<int>(l[i]), m[0] - (i + 1 < parts ? m[i + 1] : 0))) {
            ++rep.skipped_unsupported;
            return;
        }
    }
    if (!degree_supported(o, d, m[0])) {
        ++rep.skipped_unsupported;
        return;
    }

    Int value = o.mixed_degree(q);
    Rational upper(1);
    for (int i = 0; i < parts; ++i) {
        long gap = m[i] - (i + 1 < parts ? m[i + 1] : 0);
        upper *= Rational(binomial(d, l[i]));
        upper *= Rational(o.degree(static_cast<int>(l[i]), gap));
    }
    Rational lower{o.degree(d, m[0])};
    for (int i = 0; i + 1 < parts; ++i) {
        long gap = m[0] - m[i + 1];
        lower /= Rational(binomial(d - l[i], r[i + 1]));
        lower *= ratio(o.degree(static_cast<int>(l[i]), gap),
                       o.degree(static_cast<int>(l[i + 1]), gap));
    }
    ++rep.checks_run;
    if (!(lower <= Rational(value) && Rational(value) <= upper)) {
        std::ostringstream w;
        w << "query (" << q.key() << ") = " << value.get_str() << ", bounds [" << lower.str()
          << ", " << upper.str() << "]";
        rep.issues.push_back({"sandwich", w.str()});
    }
}

void check_exchange(MixedDegreeOracle& o, Sampler& s, ValidationReport& rep) {
    int d = o.dim();
    int r1 = static_cast<int>(s.pick(1, d));
    int r2 = static_cast<int>(s.pick(0, d - r1));
    int rest = d - r1 - r2;
    int sh = static_cast<int>(s.pick(1, r1));
    long n1 = s.pick(0, 5), n2 = s.pick(0, 5), n3 = s.pick(0, 2);
    MixedDegreeQuery lhs = MixedDegreeQuery::make({{n1, r1}, {n2, r2}, {n3, rest}}, d);
    MixedDegreeQuery rhs = MixedDegreeQuery::make({{n1, r1 - sh}, {n2, r2 + sh}, {n3, rest}}, d);
    int ri = n1 >= n2 ? r1 : d - r1;
    long gap = n1 >= n2 ? n1 - n2 : n2 - n1;
    int ri2 = n1 >= n2 ? r1 - sh : d - r1 + sh;
    if (!query_supported(o, lhs) || !query_supported(o, rhs) || !degree_supported(o, ri, gap) ||
        !degree_supported(o, ri2, gap)) {
        ++rep.skipped_unsupported;
        return;
    }
    Int left = o.mixed_degree(lhs);
    Rational right = Rational(binomial(d - r1 - r2 + sh, sh)) *
                     ratio(o.degree(ri, gap), o.degree(ri2, gap)) * Rational(o.mixed_degree(rhs));
    ++rep.checks_run;
    if (!(Rational(left) <= right)) {
        std::ostringstream w;
        w << "(" << lhs.key() << ") = " << left.get_str() << " > bound " << right.str()
          << " from (" << rhs.key() << "), s=" << sh;
        rep.issues.push_back({"exchange", w.str()});
    }
}

void check_submultiplicative(MixedDegreeOracle& o, Sampler& s, ValidationReport& rep) {
    int d = o.dim();
    int i = static_cast<int>(s.pick(1, d));
    long m = s.pick(0, 4), n = s.pick(0, 4);
    if (!degree_supported(o, i, m + n) || !degree_supported(o, i, m) ||
        !degree_supported(o, i, n)) {
        ++rep.skipped_unsupported;
        return;
    }
    Int lhs = o.degree(i, m + n);
    Int rhs = binomial(d, i) * o.degree(i, m) * o.degree(i, n);
    ++rep.checks_run;
    if (!(lhs <= rhs)) {
        std::ostringstream w;
        w << "deg_" << i << "(f^" << (m + n) << ") = " << lhs.get_str() << " > binom * deg_" << i
          << "(f^" << m << ") * deg_" << i << "(f^" << n << ") = " << rhs.get_str();
        rep.issues.push_back({"submultiplicative", w.str()});
    }
}

}  // namespace

ValidationReport validate_oracle(MixedDegreeOracle& oracle, long trials, std::uint64_t seed) {
    ValidationReport rep;
    rep.trials_requested = trials;
    Sampler s{std::mt19937_64(seed)};
    for (long t = 0; t < trials; ++t) {
        try {
            check_sandwich(oracle, s, rep);
            check_exchange(oracle, s, rep);
            check_submultiplicative(oracle, s, rep);
        } catch (const BudgetError&) {
            ++rep.skipped_unsupported;
        } catch (const CapabilityError&) {
            ++rep.skipped_unsupported;
        }
    }
    return rep;
}

}  // namespace dyndeg
