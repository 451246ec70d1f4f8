#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace modtrace {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct not_prime_error : error { using error::error; };
struct no_root_error : error { using error::error; };
struct size_cap_error : error { using error::error; };
struct shape_error : error { using error::error; };
struct not_invertible_error : error { using error::error; };
struct axiom_error : error { using error::error; };
struct domain_error : error { using error::error; };
struct not_idempotent_error : error { using error::error; };
struct not_frobenius_error : error { using error::error; };
struct not_pivotal_error : error { using error::error; };
struct not_grouplike_error : error { using error::error; };
struct not_divisor_error : error { using error::error; };
struct parse_error : error { using error::error; };

/* Prime field F_p carrying a distinguished root of unity omega of exact
 * multiplicative order n. Elements are canonical representatives in [0, p). */
class Fp {
public:
    /* Smallest omega in [1, p) of exact order n; requires p prime and
     * p = 1 (mod n) (n = 1 gives omega = 1). */
    static Fp make(std::uint64_t p, std::uint64_t n) {
        if (p < 2 || !is_prime(p))
            throw not_prime_error("modulus " + std::to_string(p) + " is not prime");
        if (n == 0 || (p - 1) % n != 0)
            throw no_root_error("no element of order " + std::to_string(n) +
                                " in F_" + std::to_string(p));
        Fp f;
        f.p_ = p;
        f.n_ = n;
        for (std::uint64_t w = 1; w < p; ++w) {
            if (has_exact_order(f, w, n)) {
                f.omega_ = w;
                return f;
            }
        }
        throw no_root_error("no element of order " + std::to_string(n) +
                            " in F_" + std::to_string(p));
    }

    std::uint64_t p() const { return p_; }
    std::uint64_t root_order() const { return n_; }
    std::uint64_t omega() const { return omega_; }

    std::uint64_t reduce(std::uint64_t a) const { return a % p_; }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p_; }

    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        a %= p_;
        for (; e; e >>= 1) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
        }
        return r;
    }

    std::uint64_t inv(std::uint64_t a) const {
        a %= p_;
        if (a == 0) throw not_invertible_error("division by zero in F_" + std::to_string(p_));
        return pow(a, p_ - 2);
    }

    /* omega^e with e allowed negative. */
    std::uint64_t omega_pow(std::int64_t e) const {
        std::int64_t m = static_cast<std::int64_t>(n_);
        std::int64_t r = ((e % m) + m) % m;
        return pow(omega_, static_cast<std::uint64_t>(r));
    }

    bool operator==(const Fp& o) const { return p_ == o.p_ && n_ == o.n_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

private:
    Fp() = default;

    static bool is_prime(std::uint64_t x) {
        if (x < 2) return false;
        for (std::uint64_t d = 2; d * d <= x; ++d)
            if (x % d == 0) return false;
        return true;
    }

    /* w has exact order n iff w^n = 1 and w^(n/q) != 1 for every prime q | n. */
    static bool has_exact_order(const Fp& f, std::uint64_t w, std::uint64_t n) {
        if (f.pow(w, n) != 1) return false;
        std::uint64_t m = n;
        for (std::uint64_t q = 2; q * q <= m; ++q) {
            if (m % q == 0) {
                if (f.pow(w, n / q) == 1) return false;
                while (m % q == 0) m /= q;
            }
        }
        if (m > 1 && f.pow(w, n / m) == 1) return false;
        return true;
    }

    std::uint64_t p_ = 0, n_ = 0, omega_ = 0;
};

}  // namespace modtrace
