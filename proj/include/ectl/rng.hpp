#ifndef ECTL_RNG_HPP
#define ECTL_RNG_HPP

#include <cstdint>

namespace ectl {

// Counter-based 64-bit generator (splitmix64 finalizer over key^counter).
// Fixed algorithm so seeded runs reproduce bit-exactly across platforms.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : key_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (key_ + 0x9e3779b97f4a7c15ull * ++counter_);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace ectl

#endif
