#ifndef SAW_TEST_SUPPORT_HPP
#define SAW_TEST_SUPPORT_HPP

#include <cstdint>
#include <string>

#include "saw/graph_io.hpp"

namespace saw::test {

// deterministic pseudo-random stream (tests must be reproducible)
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

inline std::string data_path(const std::string& name) {
    return std::string(SAW_DATA_DIR) + "/" + name;
}

inline InputDoc load_data(const std::string& name) {
    return load_input(data_path(name));
}

} // namespace saw::test

#endif
