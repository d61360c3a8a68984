#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "lyap/error.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "lyap");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = lyap::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string tmp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("lyap_cli_test_" + name)).string();
}

std::string slurp(const std::string& path)
{
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::size_t data_rows(const std::string& text)
{
    std::istringstream is(text);
    std::size_t rows = 0;
    for (std::string line; std::getline(is, line);)
        if (!line.empty() && line[0] != '#') ++rows;
    return rows - 1;  // header
}

}  // namespace

TEST_CASE("cli: grid parsing")
{
    using lyap::cli::parse_grid;
    const auto g = parse_grid("-3:3:601");
    CHECK(g.lo == -3);
    CHECK(g.hi == 3);
    CHECK(g.count == 601);
    CHECK_THROWS_AS(parse_grid("0:1"), lyap::DomainError);
    CHECK_THROWS_AS(parse_grid("1:0:5"), lyap::DomainError);
    CHECK_THROWS_AS(parse_grid("0:1:1"), lyap::DomainError);
    CHECK_THROWS_AS(parse_grid("0:x:5"), lyap::DomainError);
    CHECK_THROWS_AS(parse_grid("0:1:5.5"), lyap::DomainError);
}

TEST_CASE("cli: simulate writes n rows per sample and round-trips exactly")
{
    const auto path = tmp_path("sim.csv");
    const auto r = invoke({"simulate", "--n", "5", "--m", "12", "--samples", "7", "--seed", "42", "--out", path});
    REQUIRE(r.code == 0);
    const std::string text = slurp(path);
    CHECK(data_rows(text) == 35);
    CHECK(text.find("sample_index,j,lambda") != std::string::npos);

    const auto file = lyap::cli::read_samples(path);
    REQUIRE(file.spectra.size() == 7);
    CHECK(file.meta.at("method") == "graded-svd");
    for (std::size_t i = 0; i < 7; ++i) {
        const auto direct = lyap::graded_lyapunov(lyap::ProductSpec{lyap::EnsembleKind::Ginibre, 5, 12}, i, 42);
        REQUIRE(file.spectra[i].lambdas.size() == 5);
        for (int j = 0; j < 5; ++j) CHECK(file.spectra[i].lambdas[j] == direct.lambdas[j]);
    }
    std::filesystem::remove(path);
}

TEST_CASE("cli: simulate output is deterministic and independent of thread count")
{
    const std::vector<std::string> base{"simulate", "--n", "4", "--m", "20", "--samples", "9", "--seed", "7"};
    auto a = base, b = base;
    a.insert(a.end(), {"--threads", "1"});
    b.insert(b.end(), {"--threads", "3"});
    const auto ra = invoke(a), rb = invoke(b), rc = invoke(a);
    REQUIRE(ra.code == 0);
    CHECK(ra.out == rb.out);
    CHECK(ra.out == rc.out);
    auto q = a;
    q.insert(q.end(), {"--method", "qr"});
    CHECK(invoke(q).out != ra.out);
}

TEST_CASE("cli: kernel tabulates on the requested grid")
{
    const auto r = invoke({"kernel", "bulk", "--ap", "0.25", "--grid", "-3:3:601"});
    REQUIRE(r.code == 0);
    CHECK(data_rows(r.out) == 601);

    const auto path = tmp_path("kernel.csv");
    REQUIRE(invoke({"kernel", "bulk", "--a", "0.5", "--p", "0.5", "--grid", "-1:1:21", "--out", path}).code == 0);
    const auto c = lyap::cli::read_curve(path);
    REQUIRE(c.curve.xs.size() == 21);
    CHECK(c.curve.xs.front() == -1);
    CHECK(c.curve.xs.back() == 1);
    for (std::size_t i = 0; i < 21; ++i) CHECK(c.curve.values[i] == lyap::bulk_density_ap(c.curve.xs[i], 0.25));
    std::filesystem::remove(path);

    const auto s = invoke({"kernel", "sine", "--grid", "0:1:3"});
    CHECK(s.code == 0);
    CHECK(data_rows(s.out) == 3);
    CHECK(invoke({"kernel", "finite", "--n", "2", "--m", "4", "--grid", "-2:0:3", "--threads", "2"}).code == 0);
}

TEST_CASE("cli: exit codes")
{
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"bogus"}).code == 2);
    CHECK(invoke({"simulate", "--n", "4"}).code == 2);
    CHECK(invoke({"simulate", "--n", "0", "--m", "4"}).code == 2);
    CHECK(invoke({"simulate", "--n", "4", "--m", "4", "--ensemble", "nope"}).code == 2);
    CHECK(invoke({"simulate", "--n", "4", "--m", "4", "--method", "highprec-svd"}).code == 2);
    CHECK(invoke({"kernel", "bulk", "--grid", "0:1"}).code == 2);
    CHECK(invoke({"kernel", "warp", "--grid", "0:1:3"}).code == 2);
    CHECK(invoke({"kernel", "bulk", "--a", "0.5", "--p", "1.5", "--grid", "0:1:3"}).code == 2);
    CHECK(invoke({"dyson", "--tau", "0"}).code == 2);
    CHECK(invoke({"compare", tmp_path("does_not_exist.csv"), "--j-center", "3"}).code == 2);
    CHECK(invoke({"--version"}).code == 0);
    CHECK(invoke({"simulate", "--help"}).code == 0);
}

TEST_CASE("cli: compare produces a JSON report and exits 1 on failure")
{
    const auto path = tmp_path("cmp.csv");
    REQUIRE(invoke({"simulate", "--n", "12", "--m", "100", "--samples", "150", "--seed", "5", "--reorth", "4", "--out",
                    path})
                .code == 0);
    const auto report_path = tmp_path("cmp.json");
    const auto r = invoke({"compare", path, "--j-center", "6", "--window", "2", "--local-ap", "--bootstrap", "50",
                           "--out", report_path});
    CHECK((r.code == 0 || r.code == 1));
    const auto report = nlohmann::json::parse(slurp(report_path));
    for (const char* key : {"sup_norm", "chi_square", "dof", "pass", "tolerance_used", "within_3sigma", "config",
                            "empirical", "analytic"})
        CHECK(report.contains(key));
    CHECK(report["dof"] == 40);
    CHECK(report["config"]["center"] == "analytic");
    CHECK(report["config"]["ap"].get<double>() == doctest::Approx(0.06));
    CHECK(r.code == (report["pass"].get<bool>() ? 0 : 1));
    // 150 samples against the right curve: chi2 per bin is of order one
    CHECK(report["chi_square"].get<double>() / 40 < 3.0);

    // a badly wrong analytic curve must fail
    const auto bad = invoke({"compare", path, "--j-center", "6", "--analytic", "bulk", "--ap", "0.005",
                             "--bootstrap", "50", "--tolerance", "0.1"});
    CHECK(bad.code == 1);
    CHECK(invoke({"compare", path, "--j-center", "2", "--window", "2"}).code == 2);
    std::filesystem::remove(path);
    std::filesystem::remove(report_path);
}

TEST_CASE("cli: dyson writes the density and a report")
{
    const auto path = tmp_path("dyson.csv");
    const auto r = invoke({"dyson", "--n", "16", "--tau", "0.25", "--samples", "1000", "--seed", "2", "--out", path});
    CHECK((r.code == 0 || r.code == 1));
    const auto c = lyap::cli::read_curve(path);
    CHECK(c.curve.xs.size() == 21);
    const auto report = nlohmann::json::parse(slurp(path + ".json"));
    CHECK(report["config"]["tau"] == 0.25);
    CHECK(r.code == (report["pass"].get<bool>() ? 0 : 1));
    std::filesystem::remove(path);
    std::filesystem::remove(path + ".json");
}
