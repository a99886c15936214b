#include "dyndeg/certificate.hpp"

#include <json.hpp>

namespace dyndeg {

using nlohmann::json;

void CandidateParams::validate(int dim) const {
    if (i < 1 || i > dim) throw std::invalid_argument("candidate: i out of range");
    if (static_cast<int>(alphas.size()) != dim)
        throw std::invalid_argument("candidate: need d alphas");
    for (const auto& a : alphas)
        if (a.sign() <= 0) throw std::invalid_argument("candidate: alphas must be positive");
    for (size_t k = 1; k < alphas.size(); ++k)
        if (alphas[k] > alphas[k - 1])
            throw std::invalid_argument("candidate: alphas must be non-increasing");
    auto in01 = [](const Rational& x) { return x.sign() > 0 && x < Rational(1); };
    if (!in01(gamma) || !in01(eps))
        throw std::invalid_argument("candidate: gamma and epsilon must lie in (0,1)");
    if (m < 1) throw std::invalid_argument("candidate: m must be >= 1");
}

Rational CandidateParams::beta(int j) const {
    Rational b(1);
    for (int k = 0; k < j; ++k) b *= alphas[k];
    return b;
}

namespace {

// sum_{k=0..p} binom(p,k) t^(p-k) (L_{2m}^k . L_m^q . L^(d-k-q))
Rational binomial_expansion(MixedDegreeOracle& oracle, long m, int p, int q, const Rational& t) {
    int d = oracle.dim();
    Rational sum(0);
    for (int k = 0; k <= p; ++k) {
        MixedDegreeQuery query =
            MixedDegreeQuery::make({{2 * m, k}, {m, q}, {0, d - k - q}}, d);
        sum += Rational(binomial(p, k)) * t.pow_int(p - k) * Rational(oracle.mixed_degree(query));
    }
    return sum;
}

}  // namespace

ConditionResult eval_condition_I(MixedDegreeOracle& oracle, const CandidateParams& p) {
    int d = oracle.dim();
    p.validate(d);
    ConditionResult res;
    res.holds = true;
    for (int j = 0; j < p.i; ++j) {
        Rational t = (p.alphas[j] * p.alphas[p.i - 1] * p.gamma).pow_int(p.m);
        Rational num = binomial_expansion(oracle, p.m, d - p.i + j + 1, p.i - j - 1, t);
        Rational den =
            p.alphas[j].pow_int(p.m) * binomial_expansion(oracle, p.m, d - p.i + j, p.i - j, t);
        Rational rhs = Rational(d - p.i + j + 1) * p.eps.pow_int(p.m) * den;
        bool holds = num > rhs;
        res.transcript.push_back({"I", j, num, rhs, holds});
        res.holds = res.holds && holds;
    }
    return res;
}

Rational eval_B(MixedDegreeOracle& oracle, const CandidateParams& p) {
    int d = oracle.dim();
    p.validate(d);
    Rational sum(0);
    Int degi1 = oracle.degree(p.i - 1, p.m);
    Rational ag = (p.alphas[p.i - 1] * p.gamma).pow_int(p.m);
    for (int j = 0; j < p.i; ++j) {
        Rational coef = Rational(binomial(d, j)) * Rational(binomial(d, p.i - 1));
        Rational scal = ag / (p.eps.pow_int(p.m * (j + 1)) * p.beta(j).pow_int(p.m));
        sum += coef * scal * Rational(oracle.degree(j, p.m)) * Rational(degi1);
    }
    return sum;
}

ConditionResult eval_condition_J(MixedDegreeOracle& oracle, const CandidateParams& p) {
    Rational b = eval_B(oracle, p);
    Rational rhs = p.eps.pow_int(2 * p.m * p.i) * p.beta(p.i).pow_int(p.m) *
                   (Rational(1) - p.eps.pow_int(p.m * p.i));
    ConditionResult res;
    res.holds = b < rhs;
    res.transcript.push_back({"J", 0, b, rhs, res.holds});
    return res;
}

ConditionResult eval_condition_K(MixedDegreeOracle& oracle, const CandidateParams& p, long N) {
    if (N < 0) throw std::invalid_argument("condition K: N must be >= 0");
    Rational b = eval_B(oracle, p);
    Rational lhs{oracle.degree(p.i, p.m * (N + 1))};
    Rational rhs =
        b * p.eps.pow_int(-p.m * p.i) * Rational(oracle.degree(p.i, p.m * N));
    ConditionResult res;
    res.holds = lhs > rhs;
    res.transcript.push_back({"K", N, lhs, rhs, res.holds});
    return res;
}

std::optional<Certificate> certify_lower_bound(MixedDegreeOracle& oracle,
                                               const CandidateParams& p) {
    ConditionResult ci = eval_condition_I(oracle, p);
    ConditionResult cj = eval_condition_J(oracle, p);
    ConditionResult ck = eval_condition_K(oracle, p, 0);
    if (!(ci.holds && cj.holds && ck.holds)) return std::nullopt;
    Certificate cert;
    cert.params = p;
    cert.bound = p.bound();
    cert.transcript = ci.transcript;
    cert.transcript.insert(cert.transcript.end(), cj.transcript.begin(), cj.transcript.end());
    cert.transcript.insert(cert.transcript.end(), ck.transcript.begin(), ck.transcript.end());
    cert.map_fingerprint = oracle.fingerprint();
    return cert;
}

std::vector<std::string> verify_certificate(MixedDegreeOracle& oracle, const Certificate& cert) {
    std::vector<std::string> problems;
    if (cert.map_fingerprint != oracle.fingerprint())
        problems.push_back("map fingerprint mismatch: certificate " + cert.map_fingerprint +
                           " vs oracle " + oracle.fingerprint());
    if (cert.bound != cert.params.bound())
        problems.push_back("stated bound does not equal eps^(2i) * beta_i");
    ConditionResult ci = eval_condition_I(oracle, cert.params);
    ConditionResult cj = eval_condition_J(oracle, cert.params);
    ConditionResult ck = eval_condition_K(oracle, cert.params, 0);
    std::vector<TranscriptEntry> fresh = ci.transcript;
    fresh.insert(fresh.end(), cj.transcript.begin(), cj.transcript.end());
    fresh.insert(fresh.end(), ck.transcript.begin(), ck.transcript.end());
    if (fresh.size() != cert.transcript.size()) {
        problems.push_back("transcript length mismatch");
        return problems;
    }
    for (size_t k = 0; k < fresh.size(); ++k) {
        const auto& a = cert.transcript[k];
        const auto& b = fresh[k];
        if (a.cond != b.cond || a.index != b.index || a.lhs != b.lhs || a.rhs != b.rhs ||
            a.holds != b.holds) {
            problems.push_back("transcript entry " + std::to_string(k) + " (" + b.cond +
                               ") does not re-evaluate identically");
        }
        if (!b.holds) problems.push_back("condition " + b.cond + " does not hold");
    }
    return problems;
}

std::string certificate_to_json(const Certificate& cert) {
    json j;
    j["i"] = cert.params.i;
    json alphas = json::array();
    for (const auto& a : cert.params.alphas) alphas.push_back(a.str());
    j["alphas"] = alphas;
    j["gamma"] = cert.params.gamma.str();
    j["epsilon"] = cert.params.eps.str();
    j["m"] = cert.params.m;
    j["bound"] = cert.bound.str();
    json tr = json::array();
    for (const auto& t : cert.transcript)
        tr.push_back({{"cond", t.cond},
                      {"index", t.index},
                      {"lhs", t.lhs.str()},
                      {"rhs", t.rhs.str()},
                      {"holds", t.holds}});
    j["transcript"] = tr;
    j["map_fingerprint"] = cert.map_fingerprint;
    return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
    json j = json::parse(text);
    Certificate cert;
    cert.params.i = j.at("i").get<int>();
    for (const auto& a : j.at("alphas"))
        cert.params.alphas.push_back(Rational::parse(a.get<std::string>()));
    cert.params.gamma = Rational::parse(j.at("gamma").get<std::string>());
    cert.params.eps = Rational::parse(j.at("epsilon").get<std::string>());
    cert.params.m = j.at("m").get<long>();
    cert.bound = Rational::parse(j.at("bound").get<std::string>());
    for (const auto& t : j.at("transcript"))
        cert.transcript.push_back({t.at("cond").get<std::string>(), t.at("index").get<long>(),
                                   Rational::parse(t.at("lhs").get<std::string>()),
                                   Rational::parse(t.at("rhs").get<std::string>()),
                                   t.at("holds").get<bool>()});
    cert.map_fingerprint = j.at("map_fingerprint").get<std::string>();
    return cert;
}

GrowthVerdict recursive_growth_bound(const std::vector<Rational>& a, const Rational& alpha,
                                     const Rational& beta, const Rational& gamma) {
    if (a.size() < 3)
        throw std::invalid_argument("recursive_growth_bound: need at least three terms");
    for (const auto& x : a)
        if (x.sign() < 0)
            throw std::invalid_argument("recursive_growth_bound: terms must be non-negative");
    GrowthVerdict v;
    if (alpha.sign() < 0) return v;
    if (gamma < alpha + beta) return v;
    if (!(a[1] > beta * a[0])) return v;
    for (size_t n = 0; n + 2 < a.size(); ++n)
        if (a[n + 2] + alpha * beta * a[n] < gamma * a[n + 1]) return v;
    v.holds = true;
    v.certified_lower = alpha;
    return v;
}

}  // namespace dyndeg
