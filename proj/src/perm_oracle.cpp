#include "spinhurwitz/perm_oracle.hpp"

#include "spinhurwitz/fock.hpp"

#include <array>
#include <cstdint>
#include <unordered_map>

namespace spinhurwitz {

namespace {

constexpr int max_d = perm_oracle_max_degree;
using Perm = std::array<std::uint8_t, max_d>;

// 3 bits per point for the permutation and 3 bits per point for the orbit label.
std::uint64_t encode(const Perm& p, const Perm& orbit, int d)
{
    std::uint64_t key = 0;
    for (int i = 0; i < d; ++i) key = key << 6 | static_cast<std::uint64_t>(p[i]) << 3 | orbit[i];
    return key;
}

void decode(std::uint64_t key, Perm& p, Perm& orbit, int d)
{
    for (int i = d - 1; i >= 0; --i) {
        orbit[i] = key & 7u;
        p[i] = key >> 3 & 7u;
        key >>= 6;
    }
}

// Relabel orbits by first occurrence so equal set partitions share a key.
void canonical(Perm& orbit, int d)
{
    std::array<int, max_d> relabel;
    relabel.fill(-1);
    int next = 0;
    for (int i = 0; i < d; ++i) {
        if (relabel[orbit[i]] < 0) relabel[orbit[i]] = next++;
        orbit[i] = static_cast<std::uint8_t>(relabel[orbit[i]]);
    }
}

bool all_cycles_of_length(const Perm& p, int d, int q)
{
    std::array<bool, max_d> seen{};
    for (int i = 0; i < d; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            ++len;
        }
        if (len != q) return false;
    }
    return true;
}

} // namespace

Rational perm_oracle(int q, int g, const Partition& mu)
{
    const int d = mu.weight();
    if (d > max_d) throw SizeLimitError("perm_oracle: |mu| = " + std::to_string(d) + " exceeds " + std::to_string(max_d));
    if (d == 0) throw Error("perm_oracle: empty partition");
    const long b = branch_count(q, 1, g, mu);

    // Fix pi to one representative of its class; the class size cancels against d!/Aut(mu)
    // leaving a division by prod mu_i.
    Perm pi{}, orbit{};
    int pos = 0;
    for (int part : mu.parts()) {
        for (int j = 0; j < part; ++j) {
            pi[pos + j] = static_cast<std::uint8_t>(pos + (j + 1) % part);
            orbit[pos + j] = static_cast<std::uint8_t>(pos);
        }
        pos += part;
    }
    canonical(orbit, d);

    std::unordered_map<std::uint64_t, Integer> states{{encode(pi, orbit, d), 1}};
    for (long step = 0; step < b; ++step) {
        std::unordered_map<std::uint64_t, Integer> next;
        next.reserve(states.size() * 2);
        for (const auto& [key, count] : states) {
            Perm p, o;
            decode(key, p, o, d);
            for (int a = 0; a < d; ++a)
                for (int c = a + 1; c < d; ++c) {
                    // left multiplication by the transposition (a c)
                    Perm np = p;
                    for (int i = 0; i < d; ++i) {
                        if (np[i] == a) np[i] = static_cast<std::uint8_t>(c);
                        else if (np[i] == c) np[i] = static_cast<std::uint8_t>(a);
                    }
                    Perm no = o;
                    const std::uint8_t from = o[c], to = o[a];
                    if (from != to)
                        for (int i = 0; i < d; ++i)
                            if (no[i] == from) no[i] = to;
                    canonical(no, d);
                    next[encode(np, no, d)] += count;
                }
        }
        states = std::move(next);
    }

    Integer total = 0;
    for (const auto& [key, count] : states) {
        Perm p, o;
        decode(key, p, o, d);
        bool transitive = true;
        for (int i = 0; i < d; ++i) transitive = transitive && o[i] == 0;
        if (transitive && all_cycles_of_length(p, d, q)) total += count;
    }
    Integer prod = 1;
    for (int part : mu.parts()) prod *= part;
    Rational out(total, prod);
    out.canonicalize();
    return out;
}

} // namespace spinhurwitz
