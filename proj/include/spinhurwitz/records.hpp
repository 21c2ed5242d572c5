#pragma once

#include "spinhurwitz/rational.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace spinhurwitz {

class CacheConflictError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

struct HurwitzRecord {
    int q = 1;
    int r = 1;
    int g = 0;
    std::vector<int> mu; ///< weakly decreasing
    long b = 0;
    Rational value;
    std::string method;
    bool connected = true;

    std::string to_json() const;
    static HurwitzRecord from_json(const std::string& line);
    std::string csv_row() const;
    static std::string csv_header();
};

using RecordKey = std::tuple<int, int, int, std::vector<int>, std::string>;

RecordKey key_of(const HurwitzRecord& rec);

/// Newline-delimited JSON store of records, keyed by (q, r, g, mu, method).
class RecordCache {
public:
    /// Missing file gives an empty cache.
    static RecordCache load(const std::string& path);
    void save(const std::string& path) const;

    /// Adds a record. Re-adding an identical value is a no-op; a different
    /// value for an existing key throws CacheConflictError naming both rows.
    void merge(const HurwitzRecord& rec);
    void merge(const RecordCache& other);

    const HurwitzRecord* find(const RecordKey& key) const;
    std::vector<HurwitzRecord> rows() const;
    std::size_t size() const { return rows_.size(); }

private:
    std::map<RecordKey, HurwitzRecord> rows_;
};

std::string to_csv(const std::vector<HurwitzRecord>& rows);

} // namespace spinhurwitz
