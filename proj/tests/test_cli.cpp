#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>

#include "cli_runner.hpp"

namespace {

const double kInvSqrt2Value = 0.70710678118654752;

struct Fixture {
    std::filesystem::path dir;
    std::string ghz3;
    std::string product3;
    std::string zero_bell;
    std::string mixed3;
    std::string bad_index;
    std::string off_norm;

    Fixture() : dir(cli::make_temp_dir()) {
        char buf[256];

        std::snprintf(buf, sizeof(buf),
                      "dims: 2 2 2\nkind: pure\na 0 %.17g 0\na 7 %.17g 0\n", kInvSqrt2Value,
                      kInvSqrt2Value);
        ghz3 = (dir / "ghz3.state").string();
        cli::write_file(ghz3, buf);

        product3 = (dir / "product3.state").string();
        cli::write_file(product3, "dims: 2 2 2\nkind: pure\na 0 1 0\n");

        std::snprintf(buf, sizeof(buf),
                      "dims: 2 2 2\nkind: pure\na 0 %.17g 0\na 3 %.17g 0\n", kInvSqrt2Value,
                      kInvSqrt2Value);
        zero_bell = (dir / "zero_bell.state").string();
        cli::write_file(zero_bell, buf);

        std::string mixed_text = "dims: 2 2 2\nkind: mixed\n";
        for (int i = 0; i < 8; ++i) {
            mixed_text += "m " + std::to_string(i) + " " + std::to_string(i) + " 0.125 0\n";
        }
        mixed3 = (dir / "mixed3.state").string();
        cli::write_file(mixed3, mixed_text);

        bad_index = (dir / "bad_index.state").string();
        cli::write_file(bad_index, "dims: 2 2 2\nkind: pure\na 0 1 0\na 8 0 0\n");

        std::snprintf(buf, sizeof(buf),
                      "dims: 2 2\nkind: pure\na 0 %.17g 0\na 3 %.17g 0\n",
                      (1.0 + 5e-7) * kInvSqrt2Value, (1.0 + 5e-7) * kInvSqrt2Value);
        off_norm = (dir / "off_norm.state").string();
        cli::write_file(off_norm, buf);
    }

    ~Fixture() { std::filesystem::remove_all(dir); }
};

const Fixture& fixture() {
    static Fixture f;
    return f;
}

const std::string kGhzCoeffs =
    "0.70710678118654752 0 0 0 0 0 0.70710678118654752 0 0 0 0 0 0 0 0 0";

}  // namespace

TEST_CASE("measure reports per-cut values and E_bar", "[cli]") {
    const auto ghz = cli::run("measure --state " + fixture().ghz3 + " --measure concurrence");
    REQUIRE(ghz.code == 0);
    REQUIRE(cli::ends_with(ghz.out, "E_bar = 1.000000000000\n"));
    REQUIRE(cli::contains(ghz.out, "cut {0}|{1 2}  value = 1.000000000000"));
    REQUIRE(cli::contains(ghz.out, "cuts: 3"));

    const auto product = cli::run("measure --state " + fixture().product3);
    REQUIRE(product.code == 0);
    REQUIRE(cli::ends_with(product.out, "E_bar = 0.000000000000\n"));
}

TEST_CASE("measure rejects concurrence on a mixed state with exit 2", "[cli]") {
    const auto r = cli::run("measure --state " + fixture().mixed3 + " --measure concurrence");
    REQUIRE(r.code == 2);
    REQUIRE(cli::contains(r.err, "negativity"));

    const auto ok = cli::run("measure --state " + fixture().mixed3 + " --measure negativity");
    REQUIRE(ok.code == 0);
    REQUIRE(cli::ends_with(ok.out, "E_bar = 0.000000000000\n"));
}

TEST_CASE("input errors exit 1 with a one-line diagnostic", "[cli]") {
    const auto bad = cli::run("measure --state " + fixture().bad_index);
    REQUIRE(bad.code == 1);
    REQUIRE(cli::contains(bad.err, "line 4"));
    REQUIRE(cli::contains(bad.err, "index 8 out of range"));
    REQUIRE(std::count(bad.err.begin(), bad.err.end(), '\n') == 1);

    const auto missing = cli::run("measure --state " + (fixture().dir / "nope.state").string());
    REQUIRE(missing.code == 1);
    REQUIRE(cli::contains(missing.err, "nope.state"));
}

TEST_CASE("flag errors exit 2", "[cli]") {
    const auto missing_state = cli::run("measure");
    REQUIRE(missing_state.code == 2);
    REQUIRE(std::count(missing_state.err.begin(), missing_state.err.end(), '\n') == 1);
    REQUIRE(cli::contains(missing_state.err, "--state"));
    REQUIRE(cli::run("measure --state x --measure fidelity").code == 2);
    REQUIRE(cli::run("classify --state " + fixture().ghz3 + " --tol 0").code == 2);
    REQUIRE(cli::run("bogus").code == 2);
    REQUIRE(cli::run("family isotropic --n 1 --x 0.5").code == 2);
    REQUIRE(cli::run("sweep isotropic --n 3 --steps 1").code == 2);
}

TEST_CASE("classify prints per-cut flags and the verdict", "[cli]") {
    const auto ghz = cli::run("classify --state " + fixture().ghz3);
    REQUIRE(ghz.code == 0);
    REQUIRE(cli::ends_with(ghz.out, "verdict: fully-inseparable-consistent\n"));
    REQUIRE(cli::contains(ghz.out, "entangled"));
    REQUIRE(cli::contains(ghz.out, "tol: 1e-09"));

    const auto product = cli::run("classify --state " + fixture().product3);
    REQUIRE(cli::ends_with(product.out, "verdict: semiseparable-consistent\n"));
    REQUIRE(cli::contains(product.out, "not-detected"));

    const auto zb = cli::run("classify --state " + fixture().zero_bell);
    REQUIRE(cli::ends_with(zb.out, "verdict: incompletely-separable\n"));
    REQUIRE(cli::contains(zb.out, "cut {0}|{1 2}  value = 0.000000000000  not-detected"));
    REQUIRE(cli::contains(zb.out, "cut {1}|{0 2}  value = 0.500000000000  entangled"));
}

TEST_CASE("family commands agree with their closed forms", "[cli]") {
    const auto three = cli::run("family three-qubit --coeffs " + kGhzCoeffs);
    REQUIRE(three.code == 0);
    REQUIRE(cli::contains(three.out,
                          "E_bar  closed = 1.000000000000  pipeline = 1.000000000000"));

    const auto iso1 = cli::run("family isotropic --n 3 --x 1");
    REQUIRE(iso1.code == 0);
    REQUIRE(cli::contains(iso1.out,
                          "E_bar  closed = 0.500000000000  pipeline = 0.500000000000"));

    // Below the threshold 1/(1+4) = 0.2 both columns are zero.
    const auto iso0 = cli::run("family isotropic --n 3 --x 0.1");
    REQUIRE(iso0.code == 0);
    REQUIRE(cli::contains(iso0.out,
                          "E_bar  closed = 0.000000000000  pipeline = 0.000000000000"));

    // Unnormalized coefficients are an input error.
    const auto bad = cli::run("family three-qubit --coeffs 1 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0");
    REQUIRE(bad.code == 1);
    REQUIRE(cli::contains(bad.err, "normalized"));
}

TEST_CASE("sweep emits the declared CSV", "[cli]") {
    const auto r = cli::run("sweep isotropic --n 3 --x-min 0 --x-max 1 --steps 3");
    REQUIRE(r.code == 0);
    REQUIRE(r.out ==
            "x,e_bar_closed,e_bar_generic\n"
            "0.000000000000,0.000000000000,0.000000000000\n"
            "0.500000000000,0.187500000000,0.187500000000\n"
            "1.000000000000,0.500000000000,0.500000000000\n");

    const auto out_path = (fixture().dir / "sweep.csv").string();
    const auto to_file = cli::run("sweep isotropic --n 2 --steps 5 --out " + out_path);
    REQUIRE(to_file.code == 0);
    REQUIRE(to_file.out.empty());
    const std::string csv = cli::read_file(out_path);
    REQUIRE(cli::contains(csv, "x,e_bar_closed,e_bar_generic\n"));
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 6);
    REQUIRE(cli::contains(csv, "1.000000000000,0.500000000000,0.500000000000\n"));
}

TEST_CASE("csv output formats parse back", "[cli]") {
    const auto m = cli::run("measure --state " + fixture().ghz3 +
                            " --measure entropy --format csv");
    REQUIRE(m.code == 0);
    REQUIRE(cli::contains(m.out, "cut,side1,measure,value\n"));
    REQUIRE(cli::contains(m.out, "0,{0},entropy,1.000000000000\n"));
    REQUIRE(cli::contains(m.out, "e_bar,,entropy,1.000000000000\n"));

    const auto c = cli::run("classify --state " + fixture().zero_bell + " --format csv");
    REQUIRE(c.code == 0);
    REQUIRE(cli::contains(c.out, "cut,side1,value,flag\n"));
    REQUIRE(cli::contains(c.out, "verdict,incompletely-separable,tol,1e-09\n"));
}

TEST_CASE("identical invocations produce byte-identical output", "[cli]") {
    const std::string cmd = "measure --state " + fixture().ghz3 + " --measure concurrence";
    const auto first = cli::run(cmd);
    const auto second = cli::run(cmd);
    REQUIRE(first.code == 0);
    REQUIRE(first.out == second.out);

    const std::string family_cmd = "family three-qubit --coeffs " + kGhzCoeffs;
    REQUIRE(cli::run(family_cmd).out == cli::run(family_cmd).out);

    const std::string sweep_cmd = "sweep isotropic --n 4 --steps 7";
    REQUIRE(cli::run(sweep_cmd).out == cli::run(sweep_cmd).out);
}

TEST_CASE("renormalization warnings go to stderr", "[cli]") {
    const auto r = cli::run("measure --state " + fixture().off_norm);
    REQUIRE(r.code == 0);
    REQUIRE(cli::contains(r.err, "renormalized"));
    REQUIRE(cli::ends_with(r.out, "E_bar = 0.500000000000\n"));
}

TEST_CASE("distinct cut mode halves the Bell-state cut list", "[cli]") {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "dims: 2 2\nkind: pure\na 0 %.17g 0\na 3 %.17g 0\n",
                  kInvSqrt2Value, kInvSqrt2Value);
    const auto path = (fixture().dir / "bell.state").string();
    cli::write_file(path, buf);

    const auto literal = cli::run("measure --state " + path + " --measure negativity");
    REQUIRE(cli::contains(literal.out, "cuts: 2"));
    const auto distinct =
        cli::run("measure --state " + path + " --measure negativity --cut-mode distinct");
    REQUIRE(cli::contains(distinct.out, "cuts: 1"));
    REQUIRE(cli::ends_with(distinct.out, "E_bar = 0.500000000000\n"));
}
