#ifndef WEX_VERSION_HPP
#define WEX_VERSION_HPP

namespace wex {

inline constexpr const char* kVersion = "wex 1.0.0";
inline constexpr const char* kRngAlgorithm = "philox4x32-10";
inline constexpr const char* kSeedDerivation =
    "splitmix64: mix(base_seed + (trial+1) * 0x9E3779B97F4A7C15)";

} // namespace wex

#endif // WEX_VERSION_HPP
