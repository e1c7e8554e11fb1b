#pragma once

// Built-in channels. The same data ships as data/example1.json and data/example2.json.

#include <string_view>

#include "mimoic/io.hpp"

namespace mimoic::fixtures {

/// Real SISO channel H11=45, H12=25, H21=3, H22=30 at unit power.
inline constexpr std::string_view kExample1Json = R"({
  "dims": [1, 1, 1, 1],
  "H11": [[45.0, 0.0]],
  "H12": [[25.0, 0.0]],
  "H21": [[3.0, 0.0]],
  "H22": [[30.0, 0.0]],
  "rho_db": [0.0, 0.0, 0.0, 0.0]
}
)";

/// (2,3,2,2) channel at rho_db = [20, 8, 12, 20].
inline constexpr std::string_view kExample2Json = R"({
  "dims": [2, 3, 2, 2],
  "H11": [[1.1975, -0.4385], [-0.0902, 0.1895],
          [0.3234, -1.3614], [0.1330, -0.2564],
          [0.7546, -1.0080], [-0.3205, -0.6958]],
  "H12": [[0.9652, -0.8085], [-0.3033, 0.0055],
          [0.6130, 1.4479], [0.6872, 0.5280]],
  "H21": [[0.3816, -0.8508], [0.4450, -0.4386],
          [-0.4892, -0.2179], [-0.5346, -0.1519],
          [0.7665, -1.0875], [0.1689, 0.7651]],
  "H22": [[-0.1209, -0.4575], [-0.0040, 0.0921],
          [-0.5730, 1.1118], [-0.8223, -0.5687]],
  "rho_db": [20.0, 8.0, 12.0, 20.0]
}
)";

inline ChannelSpec example1() { return parse_channel_text(std::string(kExample1Json)); }
inline ChannelSpec example2() { return parse_channel_text(std::string(kExample2Json)); }

/// SISO parameters of example 1: snr_i = |H_ii|^2, inr_i = power of the
/// interference reaching receiver i.
inline SisoParams example1_siso() { return {2025.0, 900.0, 9.0, 625.0}; }

}  // namespace mimoic::fixtures
