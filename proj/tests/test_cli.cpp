#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcorr/cli.hpp"
#include "qcorr/closed_forms.hpp"

using namespace qcorr;
using namespace qcorr::cli;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "qcorr");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
        out.push_back(line);
    }
    return out;
}

// Last comma-separated field but `skip` from the end.
std::string field_from_end(const std::string& row, int skip) {
    std::vector<std::string> parts;
    std::stringstream ss(row);
    for (std::string p; std::getline(ss, p, ',');) {
        parts.push_back(p);
    }
    return parts[parts.size() - 1 - static_cast<std::size_t>(skip)];
}

} // namespace

TEST_CASE("compute") {
    const auto r = invoke({"compute", "--family", "werner", "--d", "2", "--lambda", "1", "--measures", "discord,cc"});
    REQUIRE(r.code == kExitOk);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] == kRecordHeader);
    CHECK(ls[1] == "werner,2,lambda,1,discord,1,closed");
    CHECK(ls[2] == "werner,2,lambda,1,cc,1,closed");

    SUBCASE("totally mixed pseudo-pure point") {
        const auto pp = invoke({"compute", "--family", "pp", "--d", "3", "--alpha", "0.111111111111111111", "--schmidt",
                                "0.8,0.6,0", "--measures", "discord"});
        REQUIRE(pp.code == kExitOk);
        CHECK(std::abs(std::stod(field_from_end(lines(pp.out)[1], 1))) <= 1e-9);
    }

    SUBCASE("numeric rows agree") {
        const auto n = invoke({"compute", "--family", "werner", "--d", "3", "--lambda", "0.5", "--numeric", "--restarts",
                               "8", "--seed", "1"});
        REQUIRE(n.code == kExitOk);
        const auto ls2 = lines(n.out);
        REQUIRE(ls2.size() == 3);
        CHECK(field_from_end(ls2[1], 0) == "closed");
        CHECK(field_from_end(ls2[2], 0) == "numeric");
        CHECK(std::abs(std::stod(field_from_end(ls2[1], 1)) - std::stod(field_from_end(ls2[2], 1))) <= 1e-6);
    }

    SUBCASE("json") {
        const auto j = invoke({"compute", "--family", "isotropic", "--d", "2", "--alpha", "1", "--measures",
                               "discord,negativity", "--format", "json"});
        REQUIRE(j.code == kExitOk);
        const auto parsed = nlohmann::json::parse(j.out);
        REQUIRE(parsed.is_array());
        REQUIRE(parsed.size() == 2);
        CHECK(parsed[0]["param_name"] == "alpha");
        CHECK(parsed[1]["measure"] == "negativity");
        CHECK(parsed[1]["value"].get<double>() == doctest::Approx(1.0));
    }
}

TEST_CASE("sweep") {
    const std::vector<std::string> args = {"sweep", "--family", "werner", "--d", "2", "--start", "0",
                                           "--stop", "1", "--step", "0.1", "--measures", "discord"};
    const auto a = invoke(args);
    REQUIRE(a.code == kExitOk);
    const auto ls = lines(a.out);
    CHECK(ls[0] == "family,d,param_name,param_value,measure,value,method");
    CHECK(ls.size() == 12);
    CHECK(ls.back().rfind("werner,2,lambda,1,", 0) == 0);
    CHECK(invoke(args).out == a.out);

    const auto iso = invoke({"sweep", "--family", "isotropic", "--d", "2,3", "--step", "0.5", "--measures", "discord,cc"});
    REQUIRE(iso.code == kExitOk);
    const auto il = lines(iso.out);
    CHECK(il.size() == 1 + 2 * 3 * 2);
    CHECK(il[1].find(",alpha,") != std::string::npos);
    // d outer, parameter inner, measure innermost
    CHECK(il[1].rfind("isotropic,2,alpha,0,discord", 0) == 0);
    CHECK(il[2].rfind("isotropic,2,alpha,0,cc", 0) == 0);
    CHECK(il[7].rfind("isotropic,3,alpha,0,discord", 0) == 0);
}

TEST_CASE("parameter_grid") {
    CHECK(parameter_grid(0.0, 1.0, 0.1).size() == 11);
    CHECK(parameter_grid(0.0, 1.0, 0.01).size() == 101);
    CHECK(parameter_grid(0.0, 1.0, 0.01).back() == 1.0);
    CHECK(parameter_grid(0.2, 0.2, 0.1).size() == 1);
}

TEST_CASE("figure") {
    const auto f1 = invoke({"figure", "fig1"});
    REQUIRE(f1.code == kExitOk);
    const auto ls = lines(f1.out);
    CHECK(ls[0] == "d,lambda,discord");
    CHECK(ls.size() == 1 + 4 * 101);
    CHECK(invoke({"figure", "fig1"}).out == f1.out);

    const auto f3 = invoke({"figure", "fig3"});
    REQUIRE(f3.code == kExitOk);
    CHECK(lines(f3.out)[0] == "d,lambda,discord,eof");
    CHECK(lines(f3.out).size() == 1 + 2 * 101);

    const auto f6 = invoke({"figure", "fig6", "--dims", "50"});
    REQUIRE(f6.code == kExitOk);
    const auto l6 = lines(f6.out);
    CHECK(l6[0] == "d,alpha,difference,binary_entropy");
    // alpha = 0.5 row
    CHECK(std::abs(std::stod(field_from_end(l6[51], 1)) - 1.0) <= 0.2);
    CHECK(std::stod(field_from_end(l6[51], 0)) == doctest::Approx(1.0));

    CHECK(invoke({"figure", "fig7"}).code == kExitUsage);
}

TEST_CASE("conjecture") {
    const std::vector<std::string> args = {"conjecture", "--samples", "50", "--dmax", "3", "--restarts", "4"};
    const auto a = invoke(args);
    REQUIRE(a.code == kExitOk);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["samples"] == 50);
    CHECK(j["violations"] == 0);
    CHECK(j["min_gap"].get<double>() >= -1e-10);
    CHECK(j.contains("worst_case"));
    CHECK(j["worst_case"].contains("schmidt"));
    CHECK(invoke(args).out == a.out);

    const auto forced = invoke({"conjecture", "--samples", "1", "--schmidt", "1,0"});
    REQUIRE(forced.code == kExitOk);
    CHECK(nlohmann::json::parse(forced.out)["min_gap"].get<double>() == 0.0);
}

TEST_CASE("oracle-compare") {
    const auto ok = invoke({"oracle-compare", "--family", "isotropic", "--d", "2", "--step", "0.25", "--measures",
                            "discord,gd,negativity", "--restarts", "8"});
    CHECK(ok.code == kExitOk);
    const auto ls = lines(ok.out);
    CHECK(ls[0] == "family,d,param_name,param_value,measure,closed,numeric,gap");
    CHECK(ls.size() == 1 + 5 * 3);
    CHECK(ok.err.find("max_gap negativity") != std::string::npos);

    CHECK(invoke({"oracle-compare", "--family", "werner", "--d", "9"}).code == kExitDomain);
}

TEST_CASE("exit codes") {
    CHECK(invoke({"--help"}).code == kExitOk);
    CHECK(invoke({}).code == kExitUsage);
    CHECK(invoke({"compute", "--family", "werner"}).code == kExitUsage);
    CHECK(invoke({"compute", "--family", "qutrit", "--d", "2", "--lambda", "0.5"}).code == kExitUsage);
    CHECK(invoke({"compute", "--family", "werner", "--d", "2", "--alpha", "0.5"}).code == kExitUsage);
    CHECK(invoke({"compute", "--family", "werner", "--d", "2", "--lambda", "abc"}).code == kExitUsage);
    CHECK(invoke({"compute", "--family", "pp", "--d", "2", "--alpha", "0.5"}).code == kExitUsage);

    const auto domain = invoke({"compute", "--family", "werner", "--d", "2", "--lambda", "1.5"});
    CHECK(domain.code == kExitDomain);
    CHECK(domain.err.find("lambda") != std::string::npos);
    CHECK(invoke({"compute", "--family", "pp", "--d", "2", "--alpha", "0.5", "--schmidt", "0.6,0.8"}).code ==
          kExitDomain);
    CHECK(invoke({"compute", "--family", "pp", "--d", "2", "--alpha", "0.5", "--schmidt", "0.6,0.8", "--normalize"})
              .code == kExitOk);
    CHECK(invoke({"compute", "--family", "werner", "--d", "12", "--lambda", "0.5", "--numeric"}).code == kExitDomain);
    CHECK(invoke({"sweep", "--family", "werner", "--d", "2", "--step", "-0.1"}).code == kExitDomain);

    CHECK(invoke({"compute", "--family", "werner", "--d", "2", "--lambda", "1", "--out", "/nonexistent-dir/x.csv"})
              .code == kExitIo);
}

TEST_CASE("violation exit code") {
    // One restart with a single simplex step cannot find the Schmidt basis.
    const auto starved = invoke({"oracle-compare", "--family", "pp", "--d", "3", "--schmidt", "0.8,0.6,0", "--start",
                                 "0.9", "--stop", "0.9", "--restarts", "1", "--max-iterations", "1", "--seed", "3"});
    CHECK(starved.code == kExitViolation);
    CHECK(starved.err.find("FAIL") != std::string::npos);
}
