#include "spinhurwitz/records.hpp"
#include "spinhurwitz/suites.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace spinhurwitz;

namespace {

HurwitzRecord record(int g, std::vector<int> mu, Rational v, const std::string& method = "fock")
{
    HurwitzRecord rec;
    rec.q = 1;
    rec.r = 2;
    rec.g = g;
    rec.mu = std::move(mu);
    rec.b = 1;
    rec.value = v;
    rec.method = method;
    return rec;
}

std::string temp_path(const std::string& name)
{
    const auto p = std::filesystem::temp_directory_path() / ("spinhurwitz_test_" + name);
    std::filesystem::remove(p);
    return p.string();
}

} // namespace

TEST(Records, JsonRoundTrip)
{
    const HurwitzRecord rec = record(1, {3, 1}, make_rational(-7, 12));
    const HurwitzRecord back = HurwitzRecord::from_json(rec.to_json());
    EXPECT_EQ(back.to_json(), rec.to_json());
    EXPECT_EQ(back.value, rec.value);
    EXPECT_EQ(back.mu, rec.mu);
    EXPECT_NE(rec.to_json().find("\"num\":\"-7\""), std::string::npos);
    EXPECT_NE(rec.to_json().find("\"den\":\"12\""), std::string::npos);
}

TEST(Records, MalformedInput)
{
    EXPECT_THROW(HurwitzRecord::from_json("{not json"), IoError);
    EXPECT_THROW(HurwitzRecord::from_json("{\"q\":1}"), IoError);
}

TEST(Records, CacheUnionAndIdempotence)
{
    const std::string path = temp_path("union.ndjson");
    RecordCache a;
    a.merge(record(0, {3}, make_rational(1, 3)));
    a.merge(record(0, {3}, make_rational(1, 3)));
    a.merge(record(0, {3}, make_rational(1, 3), "cutjoin"));
    EXPECT_EQ(a.size(), 2u);
    a.save(path);

    RecordCache b = RecordCache::load(path);
    EXPECT_EQ(b.size(), 2u);
    RecordCache c;
    c.merge(record(1, {2}, make_rational(1, 2)));
    b.merge(c);
    b.merge(c);
    EXPECT_EQ(b.size(), 3u);
    ASSERT_NE(b.find(key_of(record(1, {2}, 0))), nullptr);
    EXPECT_EQ(b.find(key_of(record(1, {2}, 0)))->value, make_rational(1, 2));
    EXPECT_EQ(RecordCache::load(temp_path("missing.ndjson")).size(), 0u);
    std::filesystem::remove(path);
}

TEST(Records, ConflictListsBothRows)
{
    RecordCache cache;
    const HurwitzRecord first = record(0, {3}, make_rational(1, 3));
    const HurwitzRecord second = record(0, {3}, make_rational(2, 3));
    cache.merge(first);
    try {
        cache.merge(second);
        FAIL() << "conflict not detected";
    } catch (const CacheConflictError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find(first.to_json()), std::string::npos);
        EXPECT_NE(what.find(second.to_json()), std::string::npos);
    }
    EXPECT_EQ(cache.find(key_of(first))->value, first.value);
}

TEST(Records, Csv)
{
    EXPECT_EQ(HurwitzRecord::csv_header(), "q,r,g,mu,b,value,method");
    EXPECT_EQ(record(0, {2, 1}, make_rational(1, 3)).csv_row(), "1,2,0,\"2,1\",1,1/3,fock");
}

TEST(Records, LoadReportsLine)
{
    const std::string path = temp_path("bad.ndjson");
    {
        std::ofstream out(path);
        out << record(0, {3}, 1).to_json() << "\n" << "garbage\n";
    }
    try {
        RecordCache::load(path);
        FAIL() << "malformed line accepted";
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
    }
    std::filesystem::remove(path);
}

TEST(Engine, ComputesAndValidates)
{
    Engine engine;
    EXPECT_EQ(engine.compute(1, 2, 0, {3}, Method::fock).value, make_rational(1, 3));
    EXPECT_EQ(engine.compute(1, 2, 0, {3}, Method::cutjoin).value, make_rational(1, 3));
    EXPECT_EQ(engine.compute(1, 1, 1, {2}, Method::toprec).value, make_rational(1, 2));
    EXPECT_THROW(engine.compute(2, 2, 0, {1, 1}, Method::fock), UsageError);
    EXPECT_THROW(engine.compute(1, 1, 0, {2}, Method::toprec), UsageError);
    EXPECT_THROW(engine.compute(1, 1, 0, {0, 2}, Method::fock), UsageError);
}
