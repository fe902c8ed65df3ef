#include "ltls/rng.hpp"

#include "ltls/stats.hpp"

namespace ltls {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t rep) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    s ^= cell;
    h ^= splitmix64(s);
    s ^= rep;
    h ^= splitmix64(s);
    return h;
}

double RngStream::normal() {
    return normal_quantile(uniform01());
}

}  // namespace ltls
