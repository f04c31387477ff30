#include "rota/constants.hpp"

#include <algorithm>
#include <cctype>

namespace rota {

namespace {

constexpr unsigned kBits = 256;           // default dyadic compression
constexpr std::uint32_t kMaxEll = 1 << 16; // truncation-length budget

void check_c(const Rat& c) {
    if (c <= 0 || c >= 1)
        throw Error("c must lie strictly between 0 and 1");
}

// Up-rounded c^k, maintained incrementally by the scanning searches.
struct PowUp {
    Rat c, cur = 1;
    std::uint32_t k = 0;
    void step(unsigned bits) {
        cur = round_dyadic_up(cur * c, bits);
        ++k;
    }
};

} // namespace

CertifiedValue c_prime_partial(const Rat& c, std::uint32_t ell) {
    check_c(c);
    Interval prod = iv_point(1);
    Interval ck = iv_point(1); // c^i as a genuine interval: both endpoints matter
    for (std::uint32_t i = 1; i <= ell; ++i) {
        ck = iv_mul(ck, iv_point(c), kBits + 64);
        prod = iv_mul(prod, iv_one_minus(ck), kBits);
    }
    // Tail: 1 - c^{ell+1}/(1-c) <= ∏_{i>ell}(1-c^i) <= 1, by Weierstrass on
    // the geometric sum.  ck.hi over-covers c^ell.
    Rat tail_lo = 1 - round_dyadic_up(ck.hi * c / (1 - c), kBits + 64);
    Interval out = iv_mul(prod, {tail_lo, Rat(1)}, kBits);
    // The true product is also at most the partial product itself.
    out.hi = std::min(out.hi, prod.hi);
    return out;
}

CertifiedValue c_prime(const Rat& c, const Rat& eps) {
    check_c(c);
    if (eps <= 0)
        throw Error("eps must be positive");
    for (std::uint32_t ell = 1; ell <= kMaxEll; ell *= 2) {
        CertifiedValue v = c_prime_partial(c, ell);
        if (v.width() <= eps)
            return v;
    }
    throw Error("c_prime did not converge within the truncation budget");
}

CertifiedValue alpha(const CertifiedValue& c_prime_val, const Rat& c, std::uint32_t k) {
    check_c(c);
    if (k < 1)
        throw Error("alpha index starts at 1");
    if (c_prime_val.lo <= 0)
        throw Error("alpha needs a positive lower bound on c'");
    Rat ck = 1;
    for (std::uint32_t i = 0; i < k; ++i)
        ck *= c;
    Rat t = (1 - ck) / ck; // >= 0, exact
    // α is increasing in c', so endpoints swap.
    Interval a{1 / (1 + (c_prime_val.hi / 2) * t), 1 / (1 + (c_prime_val.lo / 2) * t)};
    // The closed form forces α_k < (2/c') c^k, so the certified endpoints
    // must too; fails only on an implementation bug, never on valid input.
    if (!(a.hi < 2 / c_prime_val.lo * ck))
        throw Error("alpha bound violated; interval arithmetic is broken");
    return a;
}

CertifiedValue delta(const Rat& c, const Rat& eps) {
    check_c(c);
    if (eps <= 0)
        throw Error("eps must be positive");
    bool tail_ever_positive = false;
    for (Rat cp_eps = eps / 16;; cp_eps /= 16) {
        CertifiedValue cp = c_prime(c, cp_eps);
        if (cp.lo <= 0)
            continue; // not yet tight enough to certify positivity
        for (std::uint32_t ell = 4; ell <= kMaxEll; ell *= 2) {
            Interval prod = iv_point(Rat(1) / 3);
            for (std::uint32_t k = 1; k <= ell; ++k)
                prod = iv_mul(prod, iv_one_minus(alpha(cp, c, k)), kBits);
            // Tail factor: ∏_{k>ell}(1-α_k) >= 1 - (2/c'_lo) c^{ell+1}/(1-c).
            Rat ck = 1;
            for (std::uint32_t i = 0; i <= ell; ++i)
                ck = round_dyadic_up(ck * c, kBits + 64);
            Rat tail_lo = 1 - round_dyadic_up(2 / cp.lo * ck / (1 - c), kBits + 64);
            if (tail_lo <= 0)
                continue;
            tail_ever_positive = true;
            Interval out = iv_mul(prod, {tail_lo, Rat(1)}, kBits);
            out.hi = std::min(out.hi, prod.hi);
            if (out.width() <= eps)
                return out;
        }
        if (!tail_ever_positive)
            throw TailDiverges("no truncation length made the delta tail factor positive");
        if (cp_eps * (Int(1) << 80) < eps)
            throw Error("delta did not converge within the precision budget");
    }
}

std::uint64_t choose_L(const CertifiedValue& delta_val) {
    const Rat& dlo = delta_val.lo;
    if (dlo <= 0 || delta_val.hi >= Rat(1, 3))
        throw Error("choose_L needs 0 < delta < 1/3 certified");
    Rat base = 1 - 3 * dlo; // in (0,1)
    Rat target = dlo / 2;
    // Adaptive precision: rounding slack must stay far below 3*delta per
    // step or near-1 bases lose monotonicity.
    unsigned bits = kBits;
    for (Rat g = dlo; g < 1; g *= 65536)
        bits += 16;
    // Exponential bracket with up-rounded powers, then binary search.
    auto pow_up = [&](std::uint64_t e) {
        Rat acc = 1, b = base;
        while (e) {
            if (e & 1)
                acc = round_dyadic_up(acc * b, bits);
            b = round_dyadic_up(b * b, bits);
            e >>= 1;
        }
        return acc;
    };
    std::uint64_t hi = 1;
    while (pow_up(hi) > target) {
        hi *= 2;
        if (hi > (std::uint64_t(1) << 50))
            throw Error("choose_L bracket exceeded 2^50");
    }
    std::uint64_t lo = hi / 2; // pow_up(lo) > target (or lo == 0)
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (pow_up(mid) <= target)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::uint64_t choose_K(const Rat& c, const CertifiedValue& c_prime_val,
                       const CertifiedValue& delta_val, std::uint64_t L) {
    check_c(c);
    if (c_prime_val.lo <= 0 || delta_val.lo <= 0)
        throw Error("choose_K needs positive certified lower bounds");
    // c^K <= delta_lo (1-c) c'_lo / (4 L), scanned with up-rounded powers.
    Rat rhs = delta_val.lo * (1 - c) * c_prime_val.lo / (4 * Rat(L));
    unsigned bits = kBits;
    for (Rat g = rhs; g < 1; g *= 65536)
        bits += 16;
    PowUp p{c};
    for (std::uint64_t K = 1; K <= 10'000'000; ++K) {
        p.step(bits);
        if (p.cur <= rhs)
            return K;
    }
    throw Error("choose_K exceeded its scan budget");
}

std::uint64_t min_n(const Rat& c, std::uint64_t K) {
    check_c(c);
    Rat rhs = (1 - c) / 2;
    rhs *= rhs; // compare c^n against ((1-c)/2)^2 to avoid square roots
    unsigned bits = kBits;
    for (Rat g = rhs; g < 1; g *= 65536)
        bits += 16;
    PowUp p{c};
    for (std::uint64_t n = 1; n <= 10'000'000; ++n) {
        p.step(bits);
        if (p.cur <= rhs)
            return std::max(n, 2 * K);
    }
    throw Error("min_n exceeded its scan budget");
}

ConstantsReport constants_report(const Rat& c, const Rat& eps, std::uint32_t alpha_count) {
    ConstantsReport rep;
    rep.c = c;
    rep.c_prime = c_prime(c, eps);
    if (!(rep.c_prime.lo > 0 && rep.c_prime.hi < 1))
        throw Error("certified c' escaped (0,1); tighten eps");
    for (std::uint32_t k = 1; k <= alpha_count; ++k)
        rep.alpha.push_back(alpha(rep.c_prime, c, k));
    rep.delta = delta(c, eps);
    if (!(rep.delta.lo > 0 && rep.delta.hi < Rat(1, 3)))
        throw Error("certified delta escaped (0,1/3); tighten eps");
    rep.L = choose_L(rep.delta);
    rep.K = choose_K(c, rep.c_prime, rep.delta, rep.L);
    rep.n0 = min_n(c, rep.K);
    return rep;
}

Rat parse_rational(const std::string& s) {
    auto bad = [&] { return Error("cannot parse rational '" + s + "'"); };
    if (s.empty())
        throw bad();
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        if (slash == 0 || slash + 1 == s.size())
            throw bad();
        try {
            Int num(s.substr(0, slash));
            Int den(s.substr(slash + 1));
            if (den == 0)
                throw bad();
            if (den < 0) {
                num = -num;
                den = -den;
            }
            return Rat(num, den);
        } catch (const std::exception&) {
            throw bad();
        }
    }
    std::string t = s;
    bool neg = !t.empty() && t[0] == '-';
    if (neg || (!t.empty() && t[0] == '+'))
        t.erase(0, 1);
    auto dot = t.find('.');
    std::string ip = dot == std::string::npos ? t : t.substr(0, dot);
    std::string fp = dot == std::string::npos ? "" : t.substr(dot + 1);
    if (ip.empty() && fp.empty())
        throw bad();
    for (char ch : ip + fp)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw bad();
    Int num = 0;
    for (char ch : ip + fp)
        num = num * 10 + (ch - '0');
    Int den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i)
        den *= 10;
    Rat r(num, den);
    return neg ? Rat(-r) : r;
}

} // namespace rota
