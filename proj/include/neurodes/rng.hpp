#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace neurodes {

// splitmix64: stateless mixing used for seed derivation, plus a small
// counter-based generator. Hand-rolled so that traces are bit-identical
// across standard libraries and platforms.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_string(const std::string& s) {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

/// Seed for an independent stream, e.g. one per trial or per neuron.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 1));
}

inline std::uint64_t derive_seed(std::uint64_t master, const std::string& name) {
    return derive_seed(master, hash_string(name));
}

/// Deterministic stream of standard normal deviates (xorshift + Box-Muller).
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : state_(splitmix64(seed)) {
        if (state_ == 0) state_ = 0x9E3779B97F4A7C15ull;
    }

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // Box-Muller on two uniforms in (0,1).
        double u1 = next_uniform();
        double u2 = next_uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    double next_uniform() {
        // xorshift64*; top 53 bits -> (0,1]
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        std::uint64_t z = state_ * 0x2545F4914F6CDD1Dull;
        return (double)((z >> 11) + 1) * (1.0 / 9007199254740993.0);
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace neurodes
