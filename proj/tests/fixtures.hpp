// Generated by tests/oracle/make_fixtures.py; do not edit.
#pragma once

#include <array>
#include <cstdint>

namespace fixtures {

struct RootPrefix {
    long b, c, d;
    const char* hex;  // first 256 bits, MSB-first
};

inline constexpr std::array<RootPrefix, 12> kRootPrefixes{{
    {0, 1, -1, "aead08f297c4cbca5493527337542e59db85a340391e3f470d9eb90b20ec5ad6"},
    {0, 2, -1, "7411de55589de02366508bbb15e7cb150a7f65920394b4da2190f9ece9f11908"},
    {1, 2, -1, "64847fde4ae0da59589411b3e6aa4d9d23d3d7dda21234d845851d5bad6b3d81"},
    {-1, 2, -1, "91e10da5c79e7b1cd438a0a8e6c9c0fc163afa9a8413336e3109c3c038673f88"},
    {2, 3, -5, "e501c4f491e328c8ebc1386cfb2af4434e3311c9a10e20c6973da75a72d3b217"},
    {3, 3, -1, "428a2f98d728ae223ddab715be250d0c288f10291631fbc061800cc36fa2dd3a"},
    {0, 5, -3, "9068d7110924fad1958e7cb7f54cb75b6c86f6aebb43d046798c0733aa64f98b"},
    {0, 1001, -1, "004178749d77605adfd6ecac30e0d03f34528d65e0a3526994846e24d7b467f4"},
    {0, 1001, -500, "7fd71c8c5a04233d61a766f4699a27e927bbf025db8822b6d43c925d81bfe1bd"},
    {0, 1001, -1001, "ffbeb993666ee1e5b390089e3f7ed749976e4d6ef23435538e07b92104f3f63d"},
    {-3, 4, -1, "5152f70d683b3435ab6cad8cc8abd1a6247a5cbfc6e1c0b8f26146f4df13a529"},
    {7, 17, -20, "d898b9e705e3056a6be99082f339da7765debd959c0b8aeb2b9c114f0f1e82ce"},
}};

inline constexpr const char* kState64[3] = {"37760179114775307102", "815559409180909561822159152884572090924", "-269438773130040852833683944558732728088"};

struct GammaPoint {
    double a, x, q;
};

inline constexpr std::array<GammaPoint, 14> kIgamc{{
    {0.5, 0.1, 0.65472084601857702044},
    {0.5, 2.0, 0.045500263896358414401},
    {1.0, 1.0, 0.3678794411714423216},
    {2.5, 0.3, 0.9880032427940937345},
    {3.0, 10.0, 0.0027693957155115759437},
    {8.0, 6.5, 0.67275778013056726616},
    {64.0, 60.0, 0.68043322453568183991},
    {64.0, 80.0, 0.029048874802733248447},
    {512.0, 500.0, 0.6983879893929984265},
    {3906.0, 3950.0, 0.23986876550930305412},
    {16384.0, 16500.0, 0.18227674031392937596},
    {32768.0, 32000.0, 0.99999041744898908818},
    {1.5, 40.0, 0.000000000000000030692774861724171289},
    {100.0, 1.0, 1.0},
}};

inline constexpr std::uint32_t kCubicCrc32 = 0x479f38c4u;
inline constexpr std::uint64_t kCubicOnes = 500714;
inline constexpr std::array<double, 9> kCubicPValues{{
    0.15329185852126695,
    0.8560566274872733,
    0.7656727934641194,
    0.01993443399546478,
    0.3506132729522812,
    0.4099086123433029,
    0.26929293136640853,
    0.11226640655296326,
    0.5256927432637903,
}};

inline constexpr std::uint32_t kMtCrc32 = 0x149f656du;
inline constexpr std::uint64_t kMtOnes = 499562;
inline constexpr std::array<double, 9> kMtPValues{{
    0.3810300337775978,
    0.30931199277697424,
    0.9273076972073373,
    0.8378804368407636,
    0.6053242581384307,
    0.44293253800290794,
    0.5314184552823593,
    0.6726843427330894,
    0.3458416051359629,
}};

}  // namespace fixtures
