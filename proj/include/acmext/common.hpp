#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace acmext {

using u64 = std::uint64_t;
using i64 = std::int64_t;

enum class Err {
    NotPrime,
    TooSmall,
    NonResidue,
    AmbientMismatch,
    Inconsistent,
    DegreeMismatch,
    NotLinear,
    ArityMismatch,
    ShapeMismatch,
    NotMinimal,
    NoLinearStrand,
    ConeSuspected,
    TrivialNotContained,
    ProductNonzero,
    CharTwo,
    RankTooHigh,
    NoSplittableElement,
    ExtensionTooDeep,
    NotFiniteUnion,
    RankDrop,
    DegenerateDraw,
    InterpolationUnstable,
    TooLarge,
    ParseError,
    SaturationDivergent,
    PipelineError,
    Internal,
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::NotPrime: return "NotPrime";
        case Err::TooSmall: return "TooSmall";
        case Err::NonResidue: return "NonResidue";
        case Err::AmbientMismatch: return "AmbientMismatch";
        case Err::Inconsistent: return "Inconsistent";
        case Err::DegreeMismatch: return "DegreeMismatch";
        case Err::NotLinear: return "NotLinear";
        case Err::ArityMismatch: return "ArityMismatch";
        case Err::ShapeMismatch: return "ShapeMismatch";
        case Err::NotMinimal: return "NotMinimal";
        case Err::NoLinearStrand: return "NoLinearStrand";
        case Err::ConeSuspected: return "ConeSuspected";
        case Err::TrivialNotContained: return "TrivialNotContained";
        case Err::ProductNonzero: return "ProductNonzero";
        case Err::CharTwo: return "CharTwo";
        case Err::RankTooHigh: return "RankTooHigh";
        case Err::NoSplittableElement: return "NoSplittableElement";
        case Err::ExtensionTooDeep: return "ExtensionTooDeep";
        case Err::NotFiniteUnion: return "NotFiniteUnion";
        case Err::RankDrop: return "RankDrop";
        case Err::DegenerateDraw: return "DegenerateDraw";
        case Err::InterpolationUnstable: return "InterpolationUnstable";
        case Err::TooLarge: return "TooLarge";
        case Err::ParseError: return "ParseError";
        case Err::SaturationDivergent: return "SaturationDivergent";
        case Err::PipelineError: return "PipelineError";
        case Err::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
    Err code() const { return code_; }

  private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Err code, const std::string& what) {
    if (!ok) fail(code, what);
}

// Internal consistency check; never expected to fire on valid inputs.
inline void check(bool ok, const std::string& what) {
    if (!ok) fail(Err::Internal, what);
}

// Deterministic seeded generator. std::mt19937_64 is fully specified by the
// standard; the distributions are not, so uniform draws are hand-rolled.
class Rng {
  public:
    explicit Rng(u64 seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    u64 next() {
        // xorshift* (Marsaglia); period 2^64-1, deterministic everywhere
        u64 x = s_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        s_ = x;
        return x * 0x2545F4914F6CDD1DULL;
    }

    // uniform in [0, n) by rejection
    u64 below(u64 n) {
        if (n <= 1) return 0;
        u64 lim = ~u64(0) - (~u64(0) % n);
        u64 x;
        do { x = next(); } while (x >= lim);
        return x % n;
    }

  private:
    u64 s_;
};

// stable 64-bit string hash (FNV-1a) for deriving per-stage child seeds
inline u64 hash_tag(const std::string& tag) {
    u64 h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline u64 child_seed(u64 seed, const std::string& tag) {
    u64 h = hash_tag(tag) ^ (seed + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
    // splitmix64 finalizer
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebULL;
    h ^= h >> 31;
    return h ? h : 1;
}

} // namespace acmext
