#include "spinhurwitz/records.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace spinhurwitz {

std::string HurwitzRecord::to_json() const
{
    nlohmann::json j{{"q", q},
                     {"r", r},
                     {"g", g},
                     {"mu", mu},
                     {"b", b},
                     {"num", value.get_num().get_str()},
                     {"den", value.get_den().get_str()},
                     {"method", method},
                     {"connected", connected}};
    return j.dump();
}

HurwitzRecord HurwitzRecord::from_json(const std::string& line)
{
    HurwitzRecord rec;
    try {
        const auto j = nlohmann::json::parse(line);
        rec.q = j.at("q").get<int>();
        rec.r = j.at("r").get<int>();
        rec.g = j.at("g").get<int>();
        rec.mu = j.at("mu").get<std::vector<int>>();
        rec.b = j.at("b").get<long>();
        rec.value = rational_from_strings(j.at("num").get<std::string>(), j.at("den").get<std::string>());
        rec.method = j.at("method").get<std::string>();
        rec.connected = j.at("connected").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed record: ") + e.what());
    }
    std::sort(rec.mu.begin(), rec.mu.end(), std::greater<int>());
    return rec;
}

std::string HurwitzRecord::csv_header()
{
    return "q,r,g,mu,b,value,method";
}

std::string HurwitzRecord::csv_row() const
{
    std::ostringstream os;
    os << q << "," << r << "," << g << ",\"";
    for (std::size_t j = 0; j < mu.size(); ++j) os << (j ? "," : "") << mu[j];
    os << "\"," << b << "," << value.get_str() << "," << method;
    return os.str();
}

RecordKey key_of(const HurwitzRecord& rec)
{
    return {rec.q, rec.r, rec.g, rec.mu, rec.method};
}

RecordCache RecordCache::load(const std::string& path)
{
    RecordCache cache;
    std::ifstream in(path);
    if (!in) return cache;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            cache.merge(HurwitzRecord::from_json(line));
        } catch (const IoError& e) {
            throw IoError(path + ":" + std::to_string(lineno) + ": " + e.what());
        } catch (const CacheConflictError& e) {
            throw CacheConflictError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (in.bad()) throw IoError(path + ": read error");
    return cache;
}

void RecordCache::save(const std::string& path) const
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw IoError(tmp + ": cannot open for writing");
        for (const auto& [key, rec] : rows_) out << rec.to_json() << "\n";
        out.flush();
        if (!out) throw IoError(tmp + ": write error");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw IoError(path + ": cannot replace file");
}

void RecordCache::merge(const HurwitzRecord& rec)
{
    HurwitzRecord r = rec;
    std::sort(r.mu.begin(), r.mu.end(), std::greater<int>());
    const RecordKey key = key_of(r);
    auto it = rows_.find(key);
    if (it == rows_.end()) {
        rows_.emplace(key, std::move(r));
        return;
    }
    const HurwitzRecord& old = it->second;
    if (old.value != r.value || old.b != r.b || old.connected != r.connected)
        throw CacheConflictError("conflicting records:\n  " + old.to_json() + "\n  " + r.to_json());
}

void RecordCache::merge(const RecordCache& other)
{
    for (const auto& [key, rec] : other.rows_) merge(rec);
}

const HurwitzRecord* RecordCache::find(const RecordKey& key) const
{
    auto it = rows_.find(key);
    return it == rows_.end() ? nullptr : &it->second;
}

std::vector<HurwitzRecord> RecordCache::rows() const
{
    std::vector<HurwitzRecord> out;
    out.reserve(rows_.size());
    for (const auto& [key, rec] : rows_) out.push_back(rec);
    return out;
}

std::string to_csv(const std::vector<HurwitzRecord>& rows)
{
    std::string out = HurwitzRecord::csv_header() + "\n";
    for (const auto& rec : rows) out += rec.csv_row() + "\n";
    return out;
}

} // namespace spinhurwitz
