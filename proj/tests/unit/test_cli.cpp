#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "anharmonic/cli.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace anharmonic;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

// Rows of a CSV table keyed by header; quoted fields are not split-safe, so only
// numeric columns are read through this.
std::vector<std::map<std::string, std::string>> table(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    const auto header = split(line, ',');
    std::vector<std::map<std::string, std::string>> rows;
    while (std::getline(in, line)) {
        const auto cells = split(line, ',');
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) row[header[i]] = cells[i];
        rows.push_back(row);
    }
    return rows;
}

double num(const std::map<std::string, std::string>& row, const std::string& key) {
    return std::stod(row.at(key));
}

std::vector<std::vector<double>> grid_values(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> g;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v) row.push_back(v);
        g.push_back(row);
    }
    return g;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("splitmix64 reference stream") {
    cli::SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);
    cli::SplitMix64 u(42);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("measure") {
    const auto h = run({"measure", "mho", "--alpha", "1", "--beta", "0"});
    REQUIRE(h.code == cli::kExitOk);
    const auto rows = table(h.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].at("model") == "mho");
    CHECK(std::abs(num(rows[0], "eta_ng")) < 1e-12);
    CHECK(std::abs(num(rows[0], "nu")) < 1e-12);

    const auto bad = run({"measure", "morse", "--d", "1", "--alpha", "2.9"});
    CHECK(bad.code == cli::kExitUsage);
    CHECK(bad.err.find("Morse requires alpha < 2*sqrt(2D)") != std::string::npos);

    const auto poly = run({"measure", "poly", "--omega", "1", "--eps4", "0.1", "--eps6", "0.03"});
    REQUIRE(poly.code == cli::kExitOk);
    CHECK(num(table(poly.out)[0], "fidelity") >= 0.976);
    CHECK(table(poly.out)[0].at("extrapolated") == "0");

    const auto outside = run({"measure", "poly", "--omega", "1", "--eps4", "0.3", "--format", "json"});
    REQUIRE(outside.code == cli::kExitOk);
    CHECK(nlohmann::json::parse(outside.out)[0]["extrapolated"] == true);
}

TEST_CASE("CSV schema and JSON mirror") {
    const auto csv = run({"measure", "pt", "--a", "1", "--alpha", "1"});
    REQUIRE(csv.code == 0);
    const std::string header = csv.out.substr(0, csv.out.find('\n'));
    CHECK(header ==
          "model,alpha,beta,d,a,omega,eps4,eps6,tau_or_N_or_s,eta_ng,nu,ent_potential,r_x,r_p,energy,"
          "fidelity,eta_ng_bits,ent_potential_bits,extrapolated,error");
    const auto row = table(csv.out)[0];
    CHECK(num(row, "tau_or_N_or_s") == 1.0);
    CHECK(row.at("beta").empty());
    CHECK(std::abs(num(row, "eta_ng_bits") - num(row, "eta_ng") / std::numbers::ln2) < 1e-10);
    // 12 significant digits
    CHECK(row.at("r_x") == "1.64493406685");

    const auto js = run({"measure", "pt", "--a", "1", "--alpha", "1", "--format", "json"});
    REQUIRE(js.code == 0);
    const auto parsed = nlohmann::json::parse(js.out);
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 1);
    const auto& obj = parsed[0];
    CHECK(obj.size() == 20);
    CHECK(obj["extrapolated"].is_null());
    CHECK(obj["model"] == "pt");
    CHECK(obj["beta"].is_null());
    CHECK(obj["error"].is_null());
    CHECK(obj["r_x"].get<double>() == std::stod(row.at("r_x")));
    CHECK(obj["nu"].get<double>() == std::stod(row.at("nu")));
}

TEST_CASE("MHO sweep: nu nondecreasing in eta") {
    const auto r = run({"sweep", "mho", "--alpha", "1", "--axis", "tau", "--start", "0.1", "--stop", "6", "--count", "20"});
    REQUIRE(r.code == 0);
    auto rows = table(r.out);
    REQUIRE(rows.size() == 20);
    CHECK(num(rows.front(), "tau_or_N_or_s") == doctest::Approx(0.1));
    CHECK(num(rows.back(), "tau_or_N_or_s") == doctest::Approx(6.0));
    std::sort(rows.begin(), rows.end(), [](auto& a, auto& b) { return num(a, "eta_ng") < num(b, "eta_ng"); });
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(num(rows[i], "nu") >= num(rows[i - 1], "nu") - 1e-6);
}

TEST_CASE("Morse sweep endpoints") {
    const auto r = run({"sweep", "morse", "--d", "1", "--axis", "alpha", "--start", "0.15", "--stop", "2.7", "--count", "2", "--tol-2d", "1e-4"});
    REQUIRE(r.code == 0);
    const auto rows = table(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(std::abs(num(rows[0], "tau_or_N_or_s") - 8.928) < 1e-3);
    CHECK(std::abs(num(rows[1], "tau_or_N_or_s") - 0.0238) < 1e-3);
}

TEST_CASE("PT sweep at s = 1: nu constant") {
    const auto r = run({"sweep", "pt", "--s", "1", "--axis", "alpha", "--start", "0.5", "--stop", "2", "--count", "4"});
    REQUIRE(r.code == 0);
    const auto rows = table(r.out);
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        CHECK(std::abs(num(row, "tau_or_N_or_s") - 1.0) < 1e-12);
        CHECK(std::abs(num(row, "nu") - num(rows[0], "nu")) < 2e-3);
    }
}

TEST_CASE("sweep with failing rows") {
    // alpha past 2 sqrt 2 has no bound state; the other rows still succeed
    const auto r = run({"sweep", "morse", "--d", "1", "--axis", "alpha", "--start", "2.0", "--stop", "3.0", "--count", "2", "--tol-2d", "1e-4"});
    CHECK(r.code == 0);
    const auto rows = table(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(!rows[0].at("nu").empty());
    CHECK(rows[1].at("nu").empty());
    CHECK(rows[1].at("error").find("alpha < 2*sqrt(2D)") != std::string::npos);

    const auto none = run({"sweep", "morse", "--d", "1", "--axis", "alpha", "--start", "3.0", "--stop", "4.0", "--count", "2"});
    CHECK(none.code == cli::kExitUsage);
    CHECK(run({"sweep", "mho", "--axis", "tau", "--start", "1", "--stop", "0.5", "--count", "3"}).code == cli::kExitUsage);
    CHECK(run({"sweep", "mho", "--axis", "tau", "--start", "0", "--stop", "1", "--count", "0"}).code == cli::kExitUsage);
}

TEST_CASE("scatter") {
    const std::vector<std::string> args{"scatter", "--count", "12", "--seed", "7"};
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto rows = table(a.out);
    REQUIRE(rows.size() == 12);
    // eps4 is drawn before eps6 for every point
    cli::SplitMix64 rng(7);
    for (const auto& row : rows) {
        const double e4 = 0.1 * rng.uniform();
        const double e6 = 0.03 * rng.uniform();
        // printed with 12 significant digits
        CHECK(std::abs(num(row, "eps4") - e4) <= 1e-11 * e4);
        CHECK(std::abs(num(row, "eps6") - e6) <= 1e-11 * e6);
    }
    CHECK(run({"scatter", "--count", "12", "--seed", "8"}).out != a.out);

    const auto vac = run({"scatter", "--count", "1", "--eps4-max", "0", "--eps6-max", "0"});
    REQUIRE(vac.code == 0);
    const auto v = table(vac.out)[0];
    CHECK(num(v, "eta_ng") == 0.0);
    CHECK(num(v, "nu") == 0.0);
    CHECK(std::abs(num(v, "ent_potential")) < 1e-12);
    CHECK(num(v, "fidelity") == 1.0);
    CHECK(num(v, "energy") == 0.5);
}

TEST_CASE("wigner grid") {
    const auto vac = run({"wigner-grid", "fock", "--fock-n", "0", "--x-min", "-3", "--x-max", "3", "--nx", "61",
                          "--p-min", "-3", "--p-max", "3", "--ny", "61"});
    REQUIRE(vac.code == 0);
    CHECK(vac.out.substr(0, vac.out.find('\n')) == "# -3 3 61 -3 3 61");
    const auto g = grid_values(vac.out);
    REQUIRE(g.size() == 61);
    REQUIRE(g[30].size() == 61);
    CHECK(std::abs(g[30][30] - 1.0 / std::numbers::pi) < 1e-10);

    const auto one = run({"wigner-grid", "fock", "--fock-n", "1"});
    REQUIRE(one.code == 0);
    double lowest = 1.0;
    for (const auto& row : grid_values(one.out))
        for (double v : row) lowest = std::min(lowest, v);
    CHECK(lowest < 0.0);

    const auto mho = run({"wigner-grid", "mho", "--alpha", "1", "--beta", "1.2", "--nx", "201", "--ny", "201"});
    REQUIRE(mho.code == 0);
    double sum = 0.0;
    for (const auto& row : grid_values(mho.out))
        for (double v : row) sum += v;
    const double cell = (10.0 / 200.0) * (10.0 / 200.0);
    CHECK(std::abs(sum * cell - 1.0) < 2e-2);

    // rows run over p, columns over x
    const auto rows = run({"wigner-grid", "fock", "--fock-n", "0", "--x-min", "0", "--x-max", "1", "--nx", "2",
                           "--p-min", "0", "--p-max", "2", "--ny", "2"});
    REQUIRE(rows.code == 0);
    const auto gp = grid_values(rows.out);
    REQUIRE(gp.size() == 2);
    REQUIRE(gp[0].size() == 2);
    CHECK(std::abs(gp[0][1] - std::exp(-1.0) / std::numbers::pi) < 1e-12);
    CHECK(std::abs(gp[1][0] - std::exp(-4.0) / std::numbers::pi) < 1e-12);

    CHECK(run({"wigner-grid", "fock", "--fock-n", "0", "--nx", "0"}).code == cli::kExitUsage);
    CHECK(run({"wigner-grid", "fock", "--fock-n", "0", "--x-min", "2", "--x-max", "1"}).code == cli::kExitUsage);
}

TEST_CASE("fidelity map") {
    const auto r = run({"fidelity-map"});
    REQUIRE(r.code == 0);
    CHECK(r.out.substr(0, r.out.find('\n')) == "eps4,eps6,fidelity,error");
    const auto rows = table(r.out);
    REQUIRE(rows.size() == 25);
    double lowest = 1.0;
    for (const auto& row : rows) lowest = std::min(lowest, num(row, "fidelity"));
    CHECK(lowest >= 0.976);
    CHECK(num(rows.front(), "fidelity") == 1.0);
}

TEST_CASE("exit codes and output files") {
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"measure", "quartic"}).code == cli::kExitUsage);
    CHECK(run({"measure", "mho", "--format", "xml"}).code == cli::kExitUsage);
    CHECK(run({"measure", "mho", "--alpha", "-1"}).code == cli::kExitUsage);
    const auto starved = run({"measure", "mho", "--tau", "3", "--max-evals", "500"});
    CHECK(starved.code == cli::kExitNumeric);
    CHECK(starved.err.find("budget") != std::string::npos);
    CHECK(run({"measure", "mho", "--tol-2d", "0"}).code == cli::kExitUsage);
    const auto help = run({"--help"});
    CHECK(help.code == cli::kExitOk);
    CHECK(help.out.find("scatter") != std::string::npos);

    const auto path = std::filesystem::temp_directory_path() / "anharmonic_cli_test.csv";
    const auto r = run({"measure", "mho", "--alpha", "1", "--beta", "0.5", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str().rfind("model,alpha", 0) == 0);
    std::filesystem::remove(path);
    CHECK(run({"measure", "mho", "--out", "/nonexistent-dir/x.csv"}).code == cli::kExitUsage);
}

}
