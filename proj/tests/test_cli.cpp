#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "moebius/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "moebius");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = moebius::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        out.push_back(line);
    }
    return out;
}

} // namespace

TEST_CASE("census csv rows")
{
    const auto r = run({"census", "--x", "16", "--method", "identity"});
    CHECK(r.code == 0);
    CHECK(r.out == "x,m,n_plus,n_minus,n_zero,q,freq_plus,freq_minus,freq_zero\r\n"
                   "16,-1,5,6,5,11,0.3125000000,0.3750000000,0.3125000000\r\n");

    CHECK(run({"census", "--x", "1", "--method", "delta"}).out
          == "x,m,n_plus,n_minus,n_zero,q,freq_plus,freq_minus,freq_zero\r\n"
             "1,1,1,0,0,1,1.0000000000,0.0000000000,0.0000000000\r\n");

    CHECK(lines(run({"census", "--x", "10", "--method", "oracle"}).out)[1]
          == "10,-1,3,4,3,7,0.3000000000,0.4000000000,0.3000000000");
}

TEST_CASE("census methods agree and keep input order")
{
    std::vector<std::string> outs;
    for (const char* m : {"identity", "delta", "sieve", "oracle"}) {
        const auto r = run({"census", "--x", "1000,16,1,9999", "--method", m});
        REQUIRE(r.code == 0);
        outs.push_back(r.out);
    }
    for (const auto& o : outs)
        CHECK(o == outs.front());
    const auto rows = lines(outs.front());
    REQUIRE(rows.size() == 5);
    CHECK(rows[1].rfind("1000,2,", 0) == 0);
    CHECK(rows[2].rfind("16,", 0) == 0);
    CHECK(rows[3].rfind("1,", 0) == 0);
}

TEST_CASE("census json")
{
    const auto r = run({"census", "--x", "16", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["method"] == "identity");
    CHECK(doc["rows"][0]["n_zero"] == 5);
    CHECK(doc["rows"][0]["freq_minus"] == "0.3750000000");
}

TEST_CASE("census usage errors exit 2 and name the value")
{
    auto r = run({"census", "--x", "0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("'0'") != std::string::npos);
    r = run({"census", "--x", "12,abc"});
    CHECK(r.code == 2);
    CHECK(r.err.find("abc") != std::string::npos);
    CHECK(run({"census", "--x", "-5"}).code == 2);
    CHECK(run({"census", "--x", "2000000", "--method", "oracle"}).code == 2);
    CHECK(run({"census", "--x", "16", "--method", "magic"}).code == 2);
    CHECK(run({"census", "--x", "16", "--format", "xml"}).code == 2);
    CHECK(run({"census"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("verify exit codes")
{
    auto r = run({"verify", "--x-max", "100"});
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["all_passed"] == true);
    CHECK(doc["checks"] == 1200);

    CHECK(run({"verify", "--x-max", "0"}).code == 2);
    CHECK(run({"verify", "--x-max", "2000000"}).code == 2);

    r = run({"verify", "--x-max", "2000", "--fail-fast", "--threads", "2"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["failures"].empty());
}

TEST_CASE("trace output")
{
    auto r = run({"trace", "--x", "1", "--target", "mertens"});
    CHECK(r.code == 0);
    CHECK(r.out == "# target=mertens x=1\n1\t1\t1\t-1\t1\n# total=1\n");

    r = run({"trace", "--x", "16", "--target", "n_zero"});
    CHECK(r.code == 0);
    CHECK(lines(r.out).back() == "# total=5");

    r = run({"trace", "--x", "16", "--target", "q"});
    CHECK(lines(r.out).back() == "# total=11");

    r = run({"trace", "--x", "16", "--target", "mu"});
    CHECK(r.code == 2);
    CHECK(r.err.find("n_minus") != std::string::npos);
    CHECK(run({"trace", "--x", "0", "--target", "q"}).code == 2);
}

TEST_CASE("bench")
{
    auto r = run({"bench", "--x-max", "10000", "--methods", "sieve", "--repetitions", "1"});
    CHECK(r.code == 0);
    auto rows = lines(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].rfind("sieve,10000,-23,", 0) == 0);

    r = run({"bench", "--x-max", "100", "--methods", "identity,delta,sieve", "--repetitions", "2"});
    CHECK(r.code == 0);
    rows = lines(r.out);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].find(",100,1,31,30,39,61,") != std::string::npos);

    CHECK(run({"bench", "--x-max", "100", "--methods", "sieve", "--repetitions", "0"}).code == 2);
    CHECK(run({"bench", "--x-max", "100", "--methods", "oracle"}).code == 2);

    r = run({"bench", "--x-max", "100", "--methods", "sieve,identity", "--format", "json", "--repetitions", "1"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["rows"].size() == 2);
}

TEST_CASE("memory budget override reaches the sieve")
{
    ::setenv("MOEBIUS_MEM_BYTES", "1000", 1);
    const auto r = run({"census", "--x", "100000", "--method", "sieve"});
    ::unsetenv("MOEBIUS_MEM_BYTES");
    CHECK(r.code == 2);
}

TEST_CASE("help exits 0")
{
    CHECK(run({"--help"}).code == 0);
}
