#include "dyndeg/enumeration.hpp"

namespace dyndeg {

namespace {

// canonical rationals with numerator and denominator up to h, sorted by
// (numerator, denominator)
std::vector<Rational> rationals_up_to(long h, bool unit_interval) {
    std::vector<Rational> out;
    for (long p = 1; p <= h; ++p)
        for (long q = unit_interval ? p + 1 : 1; q <= h; ++q) {
            Int g;
            mpz_gcd(g.get_mpz_t(), Int(p).get_mpz_t(), Int(q).get_mpz_t());
            if (g != 1) continue;
            out.emplace_back(p, q);
        }
    // already ordered by (p, q) by construction
    return out;
}

Int tuple_height(const OmegaTuple& t) {
    Int h = t.gamma.height();
    auto upd = [&h](const Int& x) {
        if (x > h) h = x;
    };
    upd(t.eps.height());
    for (const auto& a : t.alphas) upd(a.height());
    upd(Int(t.m));
    upd(Int(t.n));
    return h;
}

}  // namespace

FairEnumeration::FairEnumeration(int d) : d_(d) {
    if (d < 1) throw std::invalid_argument("FairEnumeration: dimension must be >= 1");
    start_height();
}

void FairEnumeration::start_height() {
    ++height_;
    positives_ = rationals_up_to(height_, false);
    unit_ = rationals_up_to(height_, true);
    idx_.assign(d_ + 4, 0);
    fresh_ = true;
}

bool FairEnumeration::advance_odometer() {
    // mixed radix: alphas over positives_, gamma/eps over unit_, m/n over 1..H
    for (int pos = d_ + 3; pos >= 0; --pos) {
        size_t radix;
        if (pos < d_)
            radix = positives_.size();
        else if (pos < d_ + 2)
            radix = unit_.size();
        else
            radix = static_cast<size_t>(height_);
        if (++idx_[pos] < radix) return true;
        idx_[pos] = 0;
    }
    return false;
}

OmegaTuple FairEnumeration::current() const {
    OmegaTuple t;
    t.alphas.reserve(d_);
    for (int k = 0; k < d_; ++k) t.alphas.push_back(positives_[idx_[k]]);
    t.gamma = unit_[idx_[d_]];
    t.eps = unit_[idx_[d_ + 1]];
    t.m = static_cast<long>(idx_[d_ + 2]) + 1;
    t.n = static_cast<long>(idx_[d_ + 3]) + 1;
    return t;
}

bool FairEnumeration::current_valid() const {
    // alphas non-increasing by value
    for (int k = 1; k < d_; ++k)
        if (positives_[idx_[k]] > positives_[idx_[k - 1]]) return false;
    // height exactly height_ (smaller tuples were emitted at earlier heights)
    return tuple_height(current()) == height_;
}

OmegaTuple FairEnumeration::next() {
    while (true) {
        if (unit_.empty()) {
            start_height();
            continue;
        }
        if (fresh_) {
            fresh_ = false;
        } else if (!advance_odometer()) {
            start_height();
            continue;
        }
        if (current_valid()) return current();
    }
}

OmegaTuple enumerate_omega(int d, std::uint64_t index) {
    FairEnumeration e(d);
    OmegaTuple t = e.next();
    for (std::uint64_t k = 0; k < index; ++k) t = e.next();
    return t;
}

}  // namespace dyndeg
