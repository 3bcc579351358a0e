#ifndef SPANLAB_COMMON_HPP
#define SPANLAB_COMMON_HPP

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace spanlab {

using Vertex = std::uint32_t;
using Weight = std::uint64_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr Weight kInf = std::numeric_limits<Weight>::max();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
// Enforced input bounds: any path weight then fits in 64 bits.
inline constexpr Weight kMaxEdgeWeight = Weight{1} << 40;
inline constexpr std::uint32_t kMaxVertices = 1u << 20;

// Bad input (files, flags, parameters). The CLI maps this to exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A query for a pair the structure does not support.
struct UnsupportedPair : std::runtime_error {
    explicit UnsupportedPair(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed; always a construction bug, never user error.
struct CheckError : std::logic_error {
    explicit CheckError(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& msg)
{
    if (!cond)
        throw InputError(msg);
}

inline void check(bool cond, const std::string& msg)
{
    if (!cond)
        throw CheckError(msg);
}

// Distance arithmetic saturates at the infinity sentinel.
inline Weight sat_add(Weight a, Weight b)
{
    if (a == kInf || b == kInf || a > kInf - b)
        return kInf;
    return a + b;
}

//--------------------------- exact rationals ---------------------------

// Non-negative rational, always normalized. Stretch comparisons go through
// cross-multiplication in 128 bits so audits never touch floating point.
struct Rat {
    u64 num = 0;
    u64 den = 1;

    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
};

inline Rat make_rat(u64 num, u64 den)
{
    require(den != 0, "rational with zero denominator");
    u64 g = std::gcd(num, den);
    if (g == 0)
        g = 1;
    return Rat{num / g, den / g};
}

inline bool rat_le(const Rat& a, const Rat& b)
{
    return (u128)a.num * b.den <= (u128)b.num * a.den;
}

inline bool rat_lt(const Rat& a, const Rat& b)
{
    return (u128)a.num * b.den < (u128)b.num * a.den;
}

inline Rat rat_max(const Rat& a, const Rat& b) { return rat_le(a, b) ? b : a; }

inline Rat rat_mul(const Rat& a, const Rat& b)
{
    // cross-reduce first so u64*u64 products stay in range
    u64 g1 = std::gcd(a.num, b.den);
    u64 g2 = std::gcd(b.num, a.den);
    u128 n = (u128)(a.num / (g1 ? g1 : 1)) * (b.num / (g2 ? g2 : 1));
    u128 d = (u128)(a.den / (g2 ? g2 : 1)) * (b.den / (g1 ? g1 : 1));
    check(n <= std::numeric_limits<u64>::max() && d <= std::numeric_limits<u64>::max(),
          "rational overflow in rat_mul");
    return make_rat((u64)n, (u64)d);
}

inline Rat rat_add(const Rat& a, const Rat& b)
{
    // reduce in 128 bits before narrowing
    u128 n = (u128)a.num * b.den + (u128)b.num * a.den;
    u128 d = (u128)a.den * b.den;
    u128 x = n, y = d;
    while (y != 0) {
        u128 t = x % y;
        x = y;
        y = t;
    }
    if (x == 0)
        x = 1;
    n /= x;
    d /= x;
    check(n <= std::numeric_limits<u64>::max() && d <= std::numeric_limits<u64>::max(),
          "rational overflow in rat_add");
    return Rat{(u64)n, (u64)d};
}

inline u64 rat_ceil(const Rat& a) { return (u64)(((u128)a.num + a.den - 1) / a.den); }

// w <= alpha * d, exactly; infinite d makes any w admissible, infinite w only matches infinite d.
inline bool weight_within(Weight w, const Rat& alpha, Weight d)
{
    if (d == kInf)
        return true;
    if (w == kInf)
        return false;
    return (u128)w * alpha.den <= (u128)alpha.num * d;
}

inline std::string to_string(const Rat& r)
{
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

inline Rat parse_rat(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return make_rat(std::stoull(s), 1);
        return make_rat(std::stoull(s.substr(0, slash)), std::stoull(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw InputError("malformed rational: " + s);
    }
}

//--------------------------- deterministic randomness ---------------------------

inline u64 splitmix64(u64 x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stateless draw: identical (seed, stream, index) always yields the same value,
// independent of evaluation order. Used for all per-item sampling decisions.
inline u64 hash_rand(u64 seed, u64 stream, u64 index = 0)
{
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

// Sequential generator for shuffles and rejection loops.
struct Rng {
    u64 state;

    explicit Rng(u64 seed) : state(splitmix64(seed ^ 0x6a09e667f3bcc908ULL)) {}

    u64 next()
    {
        state = splitmix64(state);
        return state;
    }

    // unbiased value in [0, bound)
    u64 below(u64 bound)
    {
        check(bound > 0, "Rng::below(0)");
        u64 min = (0 - bound) % bound; // 2^64 mod bound
        u64 r = next();
        while (r < min)
            r = next();
        return r % bound;
    }
};

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng)
{
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.below(i)]);
}

//--------------------------- parallelism ---------------------------

inline unsigned thread_budget()
{
    if (const char* env = std::getenv("SPANLAB_THREADS")) {
        long v = std::atol(env);
        if (v >= 1)
            return (unsigned)v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Index-parallel loop; bodies must only write to disjoint, pre-sized slots.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn)
{
    unsigned threads = thread_budget();
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    if (threads > count)
        threads = (unsigned)count;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t lo = (std::size_t)t * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i)
                fn(i);
        });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace spanlab

#endif
