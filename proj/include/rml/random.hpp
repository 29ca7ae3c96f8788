#pragma once

#include <cstdint>
#include <random>

#include "rml/rational.hpp"

namespace rml {

/// Seeded generator built on mt19937_64, whose output sequence is fixed by
/// the standard. Only the raw engine output is consumed; the
/// implementation-defined std distributions are never used, so streams are
/// reproducible across standard libraries.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    std::uint64_t seed() const { return seed_; }

    /// Independent child stream, a pure function of (seed, stream).
    Rng split(std::uint64_t stream) const { return Rng(mix(seed_ ^ mix(stream + 0x632be59bd9b4e019ULL))); }

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound)
    {
        if (bound <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do x = engine_();
        while (x >= limit);
        return x % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Exact Bernoulli draw: the 53-bit dyadic sample is compared to p as a
    /// rational, so p = 0 never fires and p = 1 always does.
    bool bernoulli(const Rational& p)
    {
        if (p <= 0) return false;
        if (p >= 1) return true;
        const std::uint64_t bits = engine_() >> 11;
        Rational u(Integer(bits), Integer(1) << 53);
        return u < p;
    }

    template <class Container>
    void shuffle(Container& items)
    {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    static std::uint64_t mix(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace rml
