#include "dyndeg/seqlab.hpp"

namespace dyndeg {

ExponentSequence counterexample_sequence(long n_max) {
    if (n_max < 1) throw std::invalid_argument("counterexample_sequence: n_max must be >= 1");
    std::vector<Rational> a(static_cast<size_t>(n_max) + 1);  // 1-indexed
    auto fact = [](long n) {
        Int f(1);
        for (long i = 2; i <= n; ++i) f *= i;
        return f;
    };
    for (long i = 1; i <= std::min<long>(6, n_max); ++i) a[i] = Rational(1);
    for (long i = 7; i <= std::min<long>(9, n_max); ++i) a[i] = Rational(0);
    Rational value(1);
    for (long r = 1;; ++r) {
        Int f2 = fact(r + 2), f3 = fact(r + 3);
        Int c0 = f2 + r + 3;  // constant block starts just past the zero block
        if (c0 > n_max) break;
        value *= Rational(1) - Rational(Int(1), fact(r + 1));
        for (Int i = c0; i <= f3 && i <= n_max; ++i) a[i.get_ui()] = value;
        for (Int i = f3 + 1; i <= f3 + r + 3 && i <= n_max; ++i) a[i.get_ui()] = Rational(0);
    }
    ExponentSequence s;
    s.increments.reserve(n_max);
    s.exponents.reserve(n_max + 1);
    s.exponents.push_back(Rational(0));
    for (long i = 1; i <= n_max; ++i) {
        s.increments.push_back(a[i]);
        s.exponents.push_back(s.exponents.back() + a[i]);
    }
    return s;
}

SubmultReport check_submultiplicative(const ExponentSequence& s) {
    SubmultReport rep;
    long n_max = static_cast<long>(s.exponents.size()) - 1;
    for (long m = 1; m <= n_max && rep.ok; ++m)
        for (long n = m; m + n <= n_max; ++n)
            if (s.exponents[m + n] > s.exponents[m] + s.exponents[n]) {
                rep.ok = false;
                rep.witness = {m, n};
                break;
            }
    return rep;
}

SubmultReport check_submultiplicative(const SeqSample& s) {
    SubmultReport rep;
    long n_max = static_cast<long>(s.values.size()) - 1;
    for (long m = 1; m <= n_max && rep.ok; ++m)
        for (long n = m; m + n <= n_max; ++n)
            if (s.values[m + n] > s.values[m] * s.values[n]) {
                rep.ok = false;
                rep.witness = {m, n};
                break;
            }
    return rep;
}

bool check_averaging_bound(const ExponentSequence& s, long* first_violation) {
    // a_{n+1} <= e_n / n
    long count = static_cast<long>(s.increments.size());
    for (long n = 1; n + 1 <= count; ++n)
        if (s.increments[n] * Rational(n) > s.exponents[n]) {
            if (first_violation) *first_violation = n;
            return false;
        }
    return true;
}

Rational fekete_estimate(const ExponentSequence& s, const Rational& tol) {
    long n_max = static_cast<long>(s.exponents.size()) - 1;
    if (n_max < 1) throw std::domain_error("fekete_estimate: empty sample");
    if (!check_submultiplicative(s).ok)
        throw std::domain_error("fekete_estimate: sample is not submultiplicative");
    Rational best = s.exponents[1];
    for (long n = 2; n <= n_max; ++n) {
        Rational avg = s.exponents[n] / Rational(n);
        if (avg < best) best = avg;
    }
    if (best.sign() < 0) throw std::domain_error("fekete_estimate: decreasing sequence");
    return pow_rational_exponent_enclosure(Int(2), best, tol).upper;
}

Rational fekete_estimate(const SeqSample& s, const Rational& tol) {
    long n_max = static_cast<long>(s.values.size()) - 1;
    if (n_max < 1) throw std::domain_error("fekete_estimate: empty sample");
    if (!check_submultiplicative(s).ok)
        throw std::domain_error("fekete_estimate: sample is not submultiplicative");
    Rational best;
    bool have = false;
    for (long n = 1; n <= n_max; ++n) {
        Rational u = nth_root_enclosure(s.values[n], n, tol).upper;
        if (!have || u < best) {
            best = u;
            have = true;
        }
    }
    return best;
}

std::vector<long> flat_windows(const ExponentSequence& s, long m, long limit) {
    std::vector<long> out;
    long n_max = static_cast<long>(s.exponents.size()) - 1;
    for (long n = 1; m * (n + 1) <= n_max; ++n) {
        if (s.exponents[m * (n + 1)] == s.exponents[m * n]) {
            out.push_back(n);
            if (static_cast<long>(out.size()) >= limit) break;
        }
    }
    return out;
}

}  // namespace dyndeg
