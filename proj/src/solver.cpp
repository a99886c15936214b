#include "dyndeg/solver.hpp"

#include <json.hpp>
#include <thread>

#include "dyndeg/roots.hpp"

namespace dyndeg {

using nlohmann::json;

Rational upper_bound(MixedDegreeOracle& oracle, int i, long n, int precision_bits) {
    if (n < 1) throw std::invalid_argument("upper_bound: n must be >= 1");
    Int c = binomial(oracle.dim(), i) * oracle.degree(i, n);
    Rational tol = Rational(1, 2).pow_int(precision_bits + 2);
    return nth_root_enclosure(Rational(c), n, tol).upper;
}

namespace {

Rational two_pow_neg(int l) { return Rational(1, 2).pow_int(l); }

// smallest m with d * eps^m < 1 (exact integer search)
long min_step_for(const Rational& eps, int d) {
    auto ok = [&](long m) { return Rational(d) * eps.pow_int(m) < Rational(1); };
    long hi = 1;
    while (!ok(hi)) {
        hi *= 2;
        if (hi > (1L << 24)) throw std::logic_error("min_step_for: eps too close to 1");
    }
    long lo = hi / 2;  // ok(lo) is false or lo == 0
    while (lo + 1 < hi) {
        long mid = lo + (hi - lo) / 2;
        if (ok(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

/// Seeded candidates: rationalized degree-ratio estimates for the alphas,
/// epsilon marching toward 1 on a dyadic grid, gamma = eps^(3d)/2, and the
/// iterate step chosen just past the point where (d * eps^m) drops below 1.
class SeededCandidates {
public:
    SeededCandidates(MixedDegreeOracle& oracle, int i, const SolverConfig& cfg)
        : oracle_(oracle), cfg_(cfg) {
        int d = oracle.dim();
        try {
            long n0 = cfg.pilot_iterate;
            for (int j = 1; j <= d; ++j)
                ratios_.emplace_back(oracle_.degree(j, n0), oracle_.degree(j - 1, n0));
            usable_ = true;
        } catch (const std::exception&) {
            usable_ = false;
        }
        (void)i;
    }

    bool usable() const { return usable_; }

    bool next(OmegaTuple& out) {
        if (!usable_) return false;
        while (queue_.empty()) {
            if (!fill_level()) return false;
        }
        out = queue_.front();
        queue_.erase(queue_.begin());
        return true;
    }

private:
    bool fill_level() {
        int d = oracle_.dim();
        long e = level_++;
        if (e > 40) return false;
        Rational den = Rational(2).pow_int(e + 1);
        Rational eps = (den - Rational(1)) / den;
        Rational gamma = eps.pow_int(3 * d) / Rational(2);
        long m1 = min_step_for(eps, d);
        long m2 = m1 + m1 / 4 + 1;
        if (2 * m1 > cfg_.max_iterate) return false;  // no later level can fit either
        std::vector<long> ms = {m1};
        if (2 * m2 <= cfg_.max_iterate && m2 != m1) ms.push_back(m2);
        std::vector<long> ns = {std::min(cfg_.max_iterate, 2L << e),
                                std::min(cfg_.max_iterate, 3L << e)};
        if (ns[1] == ns[0]) ns.pop_back();
        // alphas: upper endpoints of pilot-ratio root enclosures at a
        // precision that sharpens with the level
        std::vector<Rational> alphas;
        Rational tol = two_pow_neg(static_cast<int>(e) + 3);
        for (const auto& r : ratios_) {
            Enclosure enc = nth_root_enclosure(r, cfg_.pilot_iterate, tol);
            Rational a = enc.upper;
            if (!alphas.empty() && a > alphas.back()) a = alphas.back();
            alphas.push_back(a);
        }
        for (long m : ms)
            for (long n : ns) queue_.push_back(OmegaTuple{alphas, gamma, eps, m, n});
        return true;
    }

    MixedDegreeOracle& oracle_;
    SolverConfig cfg_;
    std::vector<Rational> ratios_;
    bool usable_ = false;
    long level_ = 0;
    std::vector<OmegaTuple> queue_;
};

struct CandidateOutcome {
    bool unsupported = false;
    bool theta = false;
    std::optional<Certificate> cert;  // present when I, J, K(0) all hold
};

CandidateOutcome eval_candidate(MixedDegreeOracle& oracle, int i, int l, const OmegaTuple& w,
                                long max_iterate) {
    CandidateOutcome out;
    if (2 * w.m > max_iterate || w.n > max_iterate) return out;
    try {
        CandidateParams p = w.params(i);
        auto cert = certify_lower_bound(oracle, p);
        if (!cert) return out;
        out.cert = std::move(cert);
        Int c = binomial(oracle.dim(), i) * oracle.degree(i, w.n);
        out.theta = lt_pow(Rational(c), out.cert->bound + two_pow_neg(l), w.n);
    } catch (const CapabilityError&) {
        out.unsupported = true;
    } catch (const BudgetError&) {
        out.unsupported = true;
    }
    return out;
}

void note_sample(LambdaReport& rep, long n, const Int& v) {
    for (const auto& [a, b] : rep.degree_samples)
        if (a == n) return;
    rep.degree_samples.emplace_back(n, v.get_str());
}

}  // namespace

LambdaReport compute_lambda(MixedDegreeOracle& oracle, int i, const SolverConfig& cfg) {
    int d = oracle.dim();
    if (i < 0 || i > d) throw std::invalid_argument("compute_lambda: i out of range");
    int l = cfg.precision_bits;
    LambdaReport rep;
    rep.i = i;
    if (i == 0) {
        rep.enclosure = Enclosure(Rational(1), Rational(1));
        rep.status = "certified";
        rep.provenance = "deg_0 is identically (L^d) = 1, so lambda_0 = 1 exactly";
        return rep;
    }

    FairEnumeration fair(d);
    SeededCandidates seeds(oracle, i, cfg);
    bool use_seeds = cfg.heuristic_seeding && seeds.usable();

    Rational best_lower(1);
    std::optional<Certificate> best_cert;
    bool unsupported = false;
    long index = 0;

    auto draw = [&](OmegaTuple& w) -> bool {
        // interleave 1:1, seeded first; fall back to the fair stream alone
        if (use_seeds && (index % 2 == 0)) {
            if (seeds.next(w)) return true;
            use_seeds = false;
        }
        w = fair.next();
        return true;
    };

    int workers = std::max(1, cfg.workers);
    while (index < cfg.max_candidates && !unsupported) {
        long block = std::min<long>(workers, cfg.max_candidates - index);
        std::vector<OmegaTuple> ws(block);
        for (long b = 0; b < block; ++b) draw(ws[b]);
        std::vector<CandidateOutcome> outs(block);
        if (block == 1) {
            outs[0] = eval_candidate(oracle, i, l, ws[0], cfg.max_iterate);
        } else {
            std::vector<std::thread> pool;
            for (long b = 0; b < block; ++b)
                pool.emplace_back([&, b] { outs[b] = eval_candidate(oracle, i, l, ws[b],
                                                                    cfg.max_iterate); });
            for (auto& t : pool) t.join();
        }
        for (long b = 0; b < block; ++b) {
            const auto& out = outs[b];
            ++rep.candidates_tried;
            if (out.unsupported) {
                unsupported = true;
                break;
            }
            if (out.cert) {
                if (out.cert->bound > best_lower) {
                    best_lower = out.cert->bound;
                    best_cert = out.cert;
                }
                if (out.theta) {
                    // smallest index in the block wins; blocks are committed in order
                    rep.candidate_index = index + b;
                    rep.status = "certified";
                    rep.certificate = out.cert;
                    Rational lo = out.cert->bound;
                    rep.enclosure = Enclosure(lo, lo + two_pow_neg(l), true, true);
                    note_sample(rep, ws[b].n, oracle.degree(i, ws[b].n));
                    rep.provenance =
                        "both endpoints open by the output convention; the certificate itself "
                        "witnesses lambda_i >= lower";
                    return rep;
                }
            }
        }
        index += block;
    }

    // partial report: best certified lower bound plus the cheapest upper bounds
    rep.status = "partial";
    Rational up;
    bool have_up = false;
    try {
        for (long n = 1; n <= std::min<long>(64, cfg.max_iterate); n *= 2) {
            Rational u = upper_bound(oracle, i, n, l);
            note_sample(rep, n, oracle.degree(i, n));
            if (!have_up || u < up) {
                up = u;
                have_up = true;
            }
        }
    } catch (const std::exception&) {
    }
    if (!have_up) {
        // no computable upper bound: report the trivial certified range
        up = best_lower + Rational(1);
        rep.provenance = "no upper bound within budget; upper endpoint not certified";
    }
    if (up < best_lower) up = best_lower;
    rep.enclosure = Enclosure(best_lower, up);
    rep.certificate = best_cert;
    if (rep.provenance.empty())
        rep.provenance = unsupported
                             ? "backend does not support the certificate queries; bounds only"
                             : "candidate budget exhausted; bounds are certified but wide";
    return rep;
}

LambdaReport surface_lambda1(MixedDegreeOracle& oracle, const SolverConfig& cfg) {
    if (oracle.dim() != 2)
        throw std::invalid_argument("surface_lambda1: the surface path needs dimension 2");
    int l = cfg.precision_bits;
    LambdaReport rep;
    rep.i = 1;
    Rational target = two_pow_neg(l);
    Rational tol = two_pow_neg(l + 3);
    Rational best_lo(1), best_hi;
    bool have_hi = false;

    std::vector<long> ks;
    if (cfg.surface_k) {
        ks.push_back(*cfg.surface_k);
    } else {
        for (long k = 1; 2 * k <= cfg.max_iterate; k *= 2) ks.push_back(k);
    }
    for (long k : ks) {
        if (2 * k > cfg.max_iterate) break;
        SurfaceStep step;
        step.k = k;
        DegreeBounds bk, b2k;
        try {
            bk = oracle.degree_bounds(1, k);
            b2k = oracle.degree_bounds(1, 2 * k);
        } catch (const std::exception&) {
            break;
        }
        step.deg_k = bk.upper;
        step.deg_2k_lower = b2k.lower;
        step.deg_2k_upper = b2k.upper;
        step.deg_2k_exact = b2k.exact;
        if (!bk.exact) break;  // the denominator and the upper bound need the exact degree

        // lambda_1 >= deg_1(f^2k) / (4 deg_1(f^k)), taken through f^k and
        // clipped at the trivial bound 1
        Rational ratio = Rational(b2k.lower) / (Rational(4) * Rational(bk.upper));
        Rational lo(1);
        if (ratio > Rational(1)) lo = nth_root_enclosure(ratio, k, tol).lower;
        Rational hi = nth_root_enclosure(Rational(2) * Rational(bk.upper), k, tol).upper;
        step.lower = lo;
        step.upper = hi;
        rep.surface_trace.push_back(step);
        note_sample(rep, k, bk.upper);
        note_sample(rep, 2 * k, b2k.lower);

        if (lo > best_lo) best_lo = lo;
        if (!have_hi || hi < best_hi) {
            best_hi = hi;
            have_hi = true;
        }
        if (have_hi && best_hi - best_lo < target) break;
    }
    if (!have_hi) {
        best_hi = best_lo + Rational(1);
        rep.status = "partial";
        rep.provenance = "no degree data within budget; upper endpoint not certified";
        rep.enclosure = Enclosure(best_lo, best_hi);
        return rep;
    }
    if (best_hi < best_lo) best_hi = best_lo;
    rep.enclosure = Enclosure(best_lo, best_hi);
    rep.status = (best_hi - best_lo < target) ? "certified" : "partial";
    rep.provenance = rep.status == "certified"
                         ? "two-sided bounds from the doubling inequality and the root of the "
                           "degree sequence"
                         : "budget stopped the doubling before the target width";
    return rep;
}

Enclosure reference_perron_root(const IMatrix& a, int i, const Rational& tol) {
    if (i == 1) {
        for (const auto& e : a.a)
            if (e < 0)
                throw std::invalid_argument(
                    "reference_perron_root: i = 1 needs an entrywise-nonnegative matrix");
        IntPoly p = char_poly(a);
        return largest_real_root(p, tol);
    }
    if (i == a.n) {
        Int det = mat_det(a);
        Rational v{::abs(det)};
        return Enclosure(v, v);
    }
    throw std::invalid_argument("reference_perron_root: only i = 1 and i = d are supported");
}

UniformGrowthReport uniform_growth_report(MixedDegreeOracle& oracle, int i, long m, long n_max,
                                          const Rational& delta, const Enclosure& lambda) {
    if (m < 1) throw std::invalid_argument("uniform_growth_report: m must be >= 1");
    if (!(delta.sign() > 0 && delta < Rational(1)))
        throw std::invalid_argument("uniform_growth_report: delta must lie in (0,1)");
    UniformGrowthReport rep;
    rep.m = m;
    rep.delta = delta;
    rep.lambda = lambda;
    rep.lo_bound = delta.pow_int(m) * lambda.lower.pow_int(m);
    rep.hi_bound = delta.pow_int(-m) * lambda.upper.pow_int(m);
    for (long n = 0; n <= n_max; ++n) {
        UniformGrowthRow row;
        row.n = n;
        row.ratio = Rational(oracle.degree(i, m * (n + 1))) / Rational(oracle.degree(i, m * n));
        row.inside = rep.lo_bound <= row.ratio && row.ratio <= rep.hi_bound;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::string lambda_report_to_json(const LambdaReport& rep) {
    json j;
    j["i"] = rep.i;
    j["lower"] = rep.enclosure.lower.str();
    j["upper"] = rep.enclosure.upper.str();
    j["lower_open"] = rep.enclosure.lower_open;
    j["upper_open"] = rep.enclosure.upper_open;
    j["status"] = rep.status;
    j["candidates_tried"] = rep.candidates_tried;
    if (rep.candidate_index) j["candidate_index"] = *rep.candidate_index;
    if (rep.certificate)
        j["certificate"] = json::parse(certificate_to_json(*rep.certificate));
    else
        j["certificate"] = nullptr;
    json samples = json::array();
    for (const auto& [n, v] : rep.degree_samples) samples.push_back({{"n", n}, {"deg", v}});
    j["degree_samples"] = samples;
    if (!rep.surface_trace.empty()) {
        json tr = json::array();
        for (const auto& s : rep.surface_trace)
            tr.push_back({{"k", s.k},
                          {"deg_k", s.deg_k.get_str()},
                          {"deg_2k_lower", s.deg_2k_lower.get_str()},
                          {"deg_2k_upper", s.deg_2k_upper.get_str()},
                          {"deg_2k_exact", s.deg_2k_exact},
                          {"lower", s.lower.str()},
                          {"upper", s.upper.str()}});
        j["surface_trace"] = tr;
    }
    j["provenance"] = rep.provenance;
    return j.dump(2) + "\n";
}

std::string uniform_growth_to_json(const UniformGrowthReport& rep) {
    json j;
    j["m"] = rep.m;
    j["delta"] = rep.delta.str();
    j["lambda_lower"] = rep.lambda.lower.str();
    j["lambda_upper"] = rep.lambda.upper.str();
    j["window_lower"] = rep.lo_bound.str();
    j["window_upper"] = rep.hi_bound.str();
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"n", r.n}, {"ratio", r.ratio.str()}, {"inside", r.inside}});
    j["rows"] = rows;
    j["all_inside"] = rep.all_inside();
    return j.dump(2) + "\n";
}

}  // namespace dyndeg
