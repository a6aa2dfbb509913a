#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>

#include "tpc/attacks.hpp"
#include "tpc/povm_io.hpp"
#include "tpc/report.hpp"
#include "tpc/tolerances.hpp"

using namespace tpc;

TEST_CASE("report documents round trip bit-exactly") {
    std::vector<AttackReport> reports{attack_oblivious_transfer(), attack_deterministic_3x3(builtin_function("neq3"), {.optimize = true}),
                                      attack_nondet_two_sided(builtin_function("counterexample"), default_q0_sweep())};
    reports.back().notes = "line one\nline two: with colon";
    auto doc = ReportDocument::with_current_environment(reports);
    auto text = serialize(doc);
    auto back = parse_report_document(text);
    CHECK(back == doc);
    CHECK(serialize(back) == text);
    CHECK(text.rfind("schema_version: 1\n", 0) == 0);
    CHECK(text.find("environment.CERT_TOL: 1e-08") != std::string::npos);
}

TEST_CASE("report parsing rejects malformed documents") {
    CHECK_THROWS_AS(parse_report_document("schema_version: 2\n"), ParseError);
    CHECK_THROWS_AS(parse_report_document("schema_version: 1\nreport:\nfunction_id: x\n"), ParseError);
    CHECK_THROWS_AS(parse_report_document("schema_version: 1\nreport:\nbogus: 1\nend\n"), ParseError);
}

TEST_CASE("numbers keep 17 significant digits") {
    const double v = 0.1 + 0.2;
    CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
    const double tiny = std::numeric_limits<double>::denorm_min();
    CHECK(std::strtod(format_number(tiny).c_str(), nullptr) == tiny);
}

TEST_CASE("complex tokens") {
    CHECK(parse_complex("1.5") == Complex(1.5, 0));
    CHECK(parse_complex("-2i") == Complex(0, -2));
    CHECK(parse_complex("1e-3-2.5e+1i") == Complex(1e-3, -25));
    CHECK(parse_complex("0.5+0.25i") == Complex(0.5, 0.25));
    CHECK(parse_complex("+i") == Complex(0, 1));
    CHECK_THROWS_AS(parse_complex("1+2j"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
}

TEST_CASE("povm files") {
    auto demo = oblivious_transfer_demo();
    ComplexMatrix e1 = ComplexMatrix::Identity(3, 3) - demo.explicit_e0;
    auto povm = Povm::make({demo.explicit_e0, e1});
    auto text = format_povm_file(povm);
    auto back = parse_povm_file(text);
    REQUIRE(back.size() == 2);
    for (std::size_t e = 0; e < 2; ++e) CHECK(max_abs(back.elements()[e] - povm.elements()[e]) == 0.0);

    CHECK_THROWS_AS(parse_povm_elements("dim: 2\n1 0\n0 1\n0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_povm_elements("dimension 2\n"), ParseError);
    CHECK_THROWS_AS(parse_povm_file("dim: 1\n0.5\n0.4\n"), std::invalid_argument);
}

TEST_CASE("tolerance overrides") {
    Tolerances t;
    t.apply_overrides("CERT_TOL=1e-6, ADV_MIN=2e-9");
    CHECK(t.cert == 1e-6);
    CHECK(t.adv_min == 2e-9);
    CHECK_THROWS_AS(t.apply_overrides("NOPE=1"), std::invalid_argument);
    CHECK_THROWS_AS(t.apply_overrides("CERT_TOL=abc"), std::invalid_argument);
    CHECK(t.entries().size() == 7);
}
