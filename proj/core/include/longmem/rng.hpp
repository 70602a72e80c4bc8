#pragma once

#include <cstdint>
#include <string_view>

namespace longmem {

// xoshiro256++ seeded through splitmix64, with Box-Muller normals.
// Substreams are derived from the root seed so Monte Carlo replicas stay
// independent of scheduling; the algorithm name travels in output metadata.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "xoshiro256++/splitmix64/box-muller:v1";

  explicit Rng(std::uint64_t seed);

  // Independent stream keyed by (root seed, stream index).
  Rng substream(std::uint64_t stream) const;

  std::uint64_t next_u64();
  double next_unit();      // uniform on (0, 1]
  double next_gaussian();  // standard normal

 private:
  std::uint64_t state_[4];
  std::uint64_t root_seed_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace longmem
