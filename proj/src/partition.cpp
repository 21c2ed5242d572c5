#include "spinhurwitz/partition.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>

namespace spinhurwitz {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts))
{
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
    for (int p : parts_) {
        if (p < 1) throw Error("Partition: parts must be positive");
        weight_ += p;
    }
}

Integer Partition::automorphisms() const
{
    Integer a = 1;
    std::size_t i = 0;
    while (i < parts_.size()) {
        std::size_t j = i;
        while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
        a *= factorial(static_cast<long>(j - i));
        i = j;
    }
    return a;
}

std::string Partition::to_string() const
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ")";
    return os.str();
}

std::vector<Partition> partitions_of(int d)
{
    std::vector<Partition> out;
    if (d < 0) return out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(d, d);
    return out;
}

const std::vector<std::vector<std::vector<int>>>& set_partitions(int n)
{
    static std::mutex mutex;
    static std::map<int, std::vector<std::vector<std::vector<int>>>> memo;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;

    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> blocks;
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            out.push_back(blocks);
            return;
        }
        // index loop: the recursion appends to `blocks`
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            blocks[b].push_back(i);
            rec(i + 1);
            blocks[b].pop_back();
        }
        blocks.push_back({i});
        rec(i + 1);
        blocks.pop_back();
    };
    rec(0);
    return memo.emplace(n, std::move(out)).first->second;
}

} // namespace spinhurwitz
