#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "bibsonic/event_log.hpp"
#include "bibsonic/records.hpp"
#include "support/corpus.hpp"
#include "support/util.hpp"

using namespace bibsonic;

TEST_CASE("csv row parses into a record") {
    const auto records = parse_records(
        "id,year,month,mncs,citations,categories,oa,title\n"
        "WOS:A1996UQ23300009,1996,,0.8,,,0,\n",
        RecordFormat::Csv);
    REQUIRE(records.size() == 1);
    CHECK(records[0].id == "WOS:A1996UQ23300009");
    CHECK(records[0].year == 1996);
    CHECK(!records[0].month.has_value());
    CHECK(records[0].mncs == 0.8);
    CHECK(records[0].oa == false);
    CHECK(records[0].categories.empty());
}

TEST_CASE("header-only input yields an empty list") {
    CHECK(parse_records("id,year,month,mncs,citations,categories,oa,title\n", RecordFormat::Csv)
              .empty());
    CHECK(parse_records("[]", RecordFormat::Json).empty());
}

TEST_CASE("negative mncs is a range error") {
    CHECK_THROWS_AS(parse_records("id,year,oa,mncs\nX,2000,0,-1.0\n", RecordFormat::Csv),
                    RangeError);
    CHECK_THROWS_AS(parse_records(R"([{"id":"X","year":2000,"oa":false,"mncs":-1.0}])",
                                  RecordFormat::Json),
                    RangeError);
}

TEST_CASE("full field set round-trips from csv") {
    const auto records = parse_records(
        "id,year,month,mncs,citations,categories,oa,title\n"
        "\"WOS:1\",2019,3,,12,\"Information Science; Computer Science\",true,\"On citations, a study\"\n",
        RecordFormat::Csv);
    REQUIRE(records.size() == 1);
    const PublicationRecord& r = records[0];
    CHECK(r.month == 3);
    CHECK(!r.mncs.has_value());
    CHECK(r.citations == 12);
    CHECK(r.categories == std::vector<std::string>{"Information Science", "Computer Science"});
    CHECK(r.oa == true);
    CHECK(r.title == "On citations, a study");
}

TEST_CASE("missing required fields are named") {
    CHECK_THROWS_WITH(parse_records("year,oa\n2000,0\n", RecordFormat::Csv),
                      Catch::Matchers::ContainsSubstring("'id'"));
    CHECK_THROWS_WITH(parse_records("id,year\nX,2000\n", RecordFormat::Csv),
                      Catch::Matchers::ContainsSubstring("'oa'"));
    CHECK_THROWS_WITH(parse_records("id,year,oa,mncs\nX,,0,1.0\n", RecordFormat::Csv),
                      Catch::Matchers::ContainsSubstring("'year'"));
    CHECK_THROWS_WITH(parse_records(R"([{"id":"X","year":2000}])", RecordFormat::Json),
                      Catch::Matchers::ContainsSubstring("'oa'"));
}

TEST_CASE("ingest error paths") {
    // unbalanced quote names the line
    CHECK_THROWS_WITH(
        parse_records("id,year,oa,mncs\nX,2000,0,1.0\n\"Y,2000,0,1.0\n", RecordFormat::Csv),
        Catch::Matchers::ContainsSubstring("line 3"));
    // month out of range
    CHECK_THROWS_AS(parse_records("id,year,month,oa,mncs\nX,2000,13,0,1.0\n", RecordFormat::Csv),
                    ValidationError);
    // duplicate id
    CHECK_THROWS_WITH(
        parse_records("id,year,oa,mncs\nX,2000,0,1.0\nX,2001,0,2.0\n", RecordFormat::Csv),
        Catch::Matchers::ContainsSubstring("duplicate"));
    // neither mncs nor citations+categories
    CHECK_THROWS_AS(parse_records("id,year,oa,citations\nX,2000,0,5\n", RecordFormat::Csv),
                    ValidationError);
    // malformed JSON
    CHECK_THROWS_AS(parse_records("{", RecordFormat::Json), ParseError);
    CHECK_THROWS_AS(parse_records("[1]", RecordFormat::Json), ParseError);
    CHECK_THROWS_AS(parse_records(R"({"id":"X"})", RecordFormat::Json), ParseError);
}

TEST_CASE("oa cell accepts 1/0/true/false/blank") {
    const auto records = parse_records(
        "id,year,oa,mncs\nA,2000,1,1\nB,2000,true,1\nC,2000,0,1\nD,2000,false,1\nE,2000,,1\n",
        RecordFormat::Csv);
    REQUIRE(records.size() == 5);
    CHECK(records[0].oa);
    CHECK(records[1].oa);
    CHECK(!records[2].oa);
    CHECK(!records[3].oa);
    CHECK(!records[4].oa);
    CHECK_THROWS_AS(parse_records("id,year,oa,mncs\nX,2000,maybe,1\n", RecordFormat::Csv),
                    ValidationError);
}

TEST_CASE("chronological sort orders by year then month") {
    auto rec = [](std::string id, int year, std::optional<int> month) {
        PublicationRecord r;
        r.id = std::move(id);
        r.year = year;
        r.month = month;
        r.mncs = 1.0;
        return r;
    };

    SECTION("basic ordering") {
        const auto sorted = sort_chronological({rec("a", 2019, 3), rec("b", 1996, 1), rec("c", 2019, 1)});
        CHECK(sorted[0].id == "b");
        CHECK(sorted[1].id == "c");
        CHECK(sorted[2].id == "a");
    }
    SECTION("already sorted input is unchanged") {
        const std::vector<PublicationRecord> in = {rec("a", 1996, 1), rec("b", 2019, 1),
                                                   rec("c", 2019, 3)};
        CHECK(sort_chronological(in) == in);
    }
    SECTION("equal keys keep input order") {
        const auto sorted = sort_chronological({rec("A", 2018, 5), rec("B", 2018, 5)});
        CHECK(sorted[0].id == "A");
        CHECK(sorted[1].id == "B");
    }
    SECTION("absent month sorts after any dated record of the year") {
        const auto sorted = sort_chronological({rec("undated", 2018, std::nullopt), rec("dec", 2018, 12),
                                                rec("jan", 2018, 1)});
        CHECK(sorted[0].id == "jan");
        CHECK(sorted[1].id == "undated"); // ties with month 12, input order preserved
        CHECK(sorted[2].id == "dec");
    }
}

namespace {

PublicationRecord random_record(std::mt19937& rng, int index) {
    PublicationRecord r;
    r.id = "WOS:" + std::to_string(1000 + index);
    r.year = 1980 + static_cast<int>(rng() % 40);
    if (rng() % 2) r.month = 1 + static_cast<int>(rng() % 12);
    if (rng() % 2) {
        r.mncs = static_cast<double>(rng() % 500) / 10.0;
    } else {
        r.citations = static_cast<long long>(rng() % 100);
        r.categories = {"cat" + std::to_string(rng() % 5)};
    }
    r.oa = rng() % 2 == 0;
    if (rng() % 3 == 0) r.title = "Title " + std::to_string(index);
    return r;
}

} // namespace

TEST_CASE("sort is an idempotent permutation") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PublicationRecord> records;
        for (int i = 0; i < 20; ++i) records.push_back(random_record(rng, i));
        const auto once = sort_chronological(records);
        CHECK(sort_chronological(once) == once);
        CHECK(std::is_permutation(once.begin(), once.end(), records.begin()));
        CHECK(std::is_sorted(once.begin(), once.end(),
                             [](const PublicationRecord& a, const PublicationRecord& b) {
                                 const auto ka = std::pair(a.year, a.month.value_or(kMonthFallback));
                                 const auto kb = std::pair(b.year, b.month.value_or(kMonthFallback));
                                 return ka < kb;
                             }));
    }
}

TEST_CASE("records survive a json round trip") {
    std::mt19937 rng(11);
    std::vector<PublicationRecord> records;
    for (int i = 0; i < 30; ++i) records.push_back(random_record(rng, i));

    const std::string json = records_to_json(records).dump();
    CHECK(parse_records(json, RecordFormat::Json) == records);
}

TEST_CASE("the shipped corpus parses cleanly") {
    const auto early = parse_records(testutil::read_fixture("early_phase.csv"), RecordFormat::Csv);
    const auto late = parse_records(testutil::read_fixture("late_phase.csv"), RecordFormat::Csv);
    REQUIRE(early.size() == corpus::kEarlyPhase.size());
    REQUIRE(late.size() == corpus::kLatePhase.size());

    // fixture rows and golden expectations must agree field by field
    for (std::size_t i = 0; i < early.size(); ++i) {
        CHECK(early[i].id == corpus::kEarlyPhase[i].id);
        CHECK(early[i].mncs == corpus::kEarlyPhase[i].mncs);
        CHECK(early[i].oa == corpus::kEarlyPhase[i].oa);
    }
    for (std::size_t i = 0; i < late.size(); ++i) {
        CHECK(late[i].id == corpus::kLatePhase[i].id);
        CHECK(late[i].mncs == corpus::kLatePhase[i].mncs);
        CHECK(late[i].oa == corpus::kLatePhase[i].oa);
    }

    // years were assigned nondecreasing, so the stable sort keeps table order
    CHECK(sort_chronological(early) == early);
    CHECK(sort_chronological(late) == late);

    const auto json_round_trip = parse_records(records_to_json(early).dump(), RecordFormat::Json);
    CHECK(json_round_trip == early);
}
