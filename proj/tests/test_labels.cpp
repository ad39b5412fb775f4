#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mdgemm/bench.hpp"
#include "mdgemm/case_label.hpp"
#include "mdgemm/dispatch.hpp"

#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace mdgemm;

TEST_CASE("labels round-trip through parse and str") {
    for (const char* s : {"dddd", "zcsd", "ssss", "zzzd", "cczs", "sdzd"}) {
        CaseLabel l = CaseLabel::parse(s);
        CHECK(l.str() == s);
    }
    CaseLabel l = CaseLabel::parse("zcsd");
    CHECK(l.c == dt_z);
    CHECK(l.a == dt_c);
    CHECK(l.b == dt_s);
    CHECK(l.comp == Precision::Double);
    CHECK(l.case_id() == CaseId::C2ac);
}

TEST_CASE("malformed labels are rejected") {
    CHECK_THROWS_AS(CaseLabel::parse(""), Error);
    CHECK_THROWS_AS(CaseLabel::parse("ddd"), Error);
    CHECK_THROWS_AS(CaseLabel::parse("ddddd"), Error);
    CHECK_THROWS_AS(CaseLabel::parse("xddd"), Error);
    CHECK_THROWS_AS(CaseLabel::parse("ddxd"), Error);
    CHECK_THROWS_AS(CaseLabel::parse("dddz"), Error); // comp slot is s or d
}

TEST_CASE("the full grid has 128 distinct labels") {
    std::vector<CaseLabel> all = CaseLabel::all();
    CHECK(all.size() == 128);
    std::set<std::string> seen;
    for (const CaseLabel& l : all)
        seen.insert(l.str());
    CHECK(seen.size() == 128);
    CHECK(seen.count("dddd") == 1);
    CHECK(seen.count("zzzs") == 1);
}

TEST_CASE("every domain triple appears in the grid") {
    std::set<CaseId> ids;
    for (const CaseLabel& l : CaseLabel::all())
        ids.insert(l.case_id());
    CHECK(ids.size() == 8);
}

TEST_CASE("csv output is stable and well-formed") {
    CHECK(csv_header() == "case,m,n,k,trials,best_seconds,gflops");

    BenchResult r;
    r.label = CaseLabel::parse("zcsd");
    r.m = 40;
    r.n = 41;
    r.k = 42;
    r.trials = 3;
    r.best_seconds = 0.001234;
    r.gflops = 5.6789;
    std::string line = csv_line(r);

    std::istringstream in(line);
    std::vector<std::string> fields;
    std::string f;
    while (std::getline(in, f, ','))
        fields.push_back(f);
    REQUIRE(fields.size() == 7);
    CHECK(fields[0] == "zcsd");
    CHECK(fields[1] == "40");
    CHECK(fields[2] == "41");
    CHECK(fields[3] == "42");
    CHECK(fields[4] == "3");
    CHECK(std::stod(fields[5]) == doctest::Approx(0.001234));
    CHECK(std::stod(fields[6]) == doctest::Approx(5.6789).epsilon(1e-3));
}

TEST_CASE("timing a tiny case produces a consistent rate") {
    CaseLabel label = CaseLabel::parse("zcsd");
    BenchResult r = run_bench(label, 16, 16, 16, 2, Config::defaults(), 99);
    CHECK(r.m == 16);
    CHECK(r.trials == 2);
    CHECK(r.best_seconds > 0.0);
    const double expect =
        static_cast<double>(flops_of_case(label.case_id(), 16, 16, 16)) /
        r.best_seconds / 1e9;
    CHECK(r.gflops == doctest::Approx(expect).epsilon(1e-6));
}
