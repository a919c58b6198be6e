#include "mlslab/sampling/rng.hpp"

#include <cmath>
#include <numbers>

namespace mlslab::sampling {

namespace {

// splitmix64 finalizer (Steele, Lea, Flood; public domain reference code)
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t Rng::derive(std::uint64_t master_seed,
                          std::initializer_list<std::uint64_t> tags) {
    // fold each tag with a position marker so (a,b) and (b,a) differ; the
    // empty tag list is the identity, which makes Rng(derive(m, {t...}))
    // and Rng(m, {t...}) the same stream
    std::uint64_t h = master_seed;
    std::uint64_t pos = 1;
    for (std::uint64_t t : tags) {
        h = mix64(h ^ mix64(t + 0x632be59bd9b4e019ULL * pos));
        ++pos;
    }
    return h;
}

Rng::Rng(std::uint64_t master_seed, std::initializer_list<std::uint64_t> tags) {
    // xoshiro256++ seeded by four splitmix64 draws, per the authors' guidance
    std::uint64_t z = derive(master_seed, tags);
    for (auto& s : s_) {
        z += 0x9e3779b97f4a7c15ULL;
        std::uint64_t w = z;
        w = (w ^ (w >> 30)) * 0xbf58476d1ce4e5b9ULL;
        w = (w ^ (w >> 27)) * 0x94d049bb133111ebULL;
        s = w ^ (w >> 31);
    }
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    // Box-Muller; u strictly positive to keep the log finite
    double u = 0.0;
    do {
        u = uniform();
    } while (u <= 0.0);
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 2.0 * std::numbers::pi * v;
    cached_normal_ = r * std::sin(a);
    has_cached_normal_ = true;
    return r * std::cos(a);
}

std::vector<double> Rng::uniform_in_box(const std::vector<double>& lo,
                                        const std::vector<double>& hi) {
    std::vector<double> x(lo.size());
    for (std::size_t j = 0; j < lo.size(); ++j) x[j] = uniform(lo[j], hi[j]);
    return x;
}

}  // namespace mlslab::sampling
