#include <gtest/gtest.h>

#include "finring/report.hpp"
#include "finring/script.hpp"

using namespace finring;

namespace {

const char* kWorkedScript =
    "# worked 216-element instance\n"
    "ring A = Z(12)\n"
    "ideal I = gen(A; 4)\n"
    "ring B = dup(A,I)\n"
    "ring D = Z(2)\n"
    "ring C = product(A,D)\n"
    "hom phi = proj(A->D)\n"
    "hom f = incl(A->B)\n"
    "hom g = graph(phi)\n"
    "ideal J = gen(B; (4,0),(0,4))\n"
    "ideal Jp = gen(C; (4,0),(0,1))\n"
    "datum ex = (f,g,J,Jp)\n"
    "ring R = biamalg(ex)\n";

TEST(Script, ThreeBindingExample) {
    InstanceScript s = parse_script("ring A = Z(12)\nideal I = gen(A; 4)\nring R = dup(A, I)\n");
    EXPECT_EQ(s.statements.size(), 3u);
    EXPECT_EQ(s.rings.at("A").size(), 12u);
    EXPECT_EQ(s.ideals.at("I").size(), 3u);
    EXPECT_EQ(s.rings.at("R").size(), 36u);
}

TEST(Script, ZeroModulusIsAValidationError) {
    try {
        parse_script("ring A = Z(0)\n");
        FAIL() << "expected an error";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("n >= 2"), std::string::npos);
    }
}

TEST(Script, UndefinedNameCarriesTheLine) {
    try {
        parse_script("ring A = Z(12)\nideal I = gen(B; 4)\n");
        FAIL() << "expected an error";
    } catch (const ScriptError& e) {
        EXPECT_EQ(e.kind, ScriptError::Kind::undefined_name);
        EXPECT_EQ(e.line, 2u);
    }
}

TEST(Script, TypeMismatchIsReported) {
    try {
        parse_script("ring A = Z(12)\nideal I = gen(A; 4)\nring Q = quotient(I, I)\n");
        FAIL() << "expected an error";
    } catch (const ScriptError& e) {
        EXPECT_EQ(e.kind, ScriptError::Kind::type_mismatch);
        EXPECT_EQ(e.line, 3u);
    }
}

TEST(Script, SyntaxErrorHasLineAndColumn) {
    try {
        parse_script("ring A = Z(12)\nring B = produkt(A,A)\n");
        FAIL() << "expected an error";
    } catch (const ScriptError& e) {
        EXPECT_EQ(e.kind, ScriptError::Kind::syntax);
        EXPECT_EQ(e.line, 2u);
        EXPECT_GT(e.col, 1u);
    }
}

TEST(Script, WorkedInstanceEvaluates) {
    InstanceScript s = parse_script(kWorkedScript);
    EXPECT_EQ(s.rings.at("R").size(), 216u);
    EXPECT_EQ(s.data.at("ex").I0.size(), 3u);
    EXPECT_EQ(s.ideals.at("J").size(), 9u);
    EXPECT_EQ(s.ideals.at("Jp").size(), 6u);
}

TEST(Script, TrivialExtensionAndModuleForms) {
    InstanceScript s = parse_script(
        "ring A = Z(4)\n"
        "ideal Z0 = gen(A;)\n"
        "ideal I2 = gen(A; 2)\n"
        "ring T1 = trivext(A, module(I2))\n"
        "ring T2 = trivext(A, module(A/I2))\n"
        "ring T3 = trivext(A, module(I2 + A/I2))\n");
    EXPECT_EQ(s.rings.at("T1").size(), 8u);
    EXPECT_EQ(s.rings.at("T2").size(), 8u);
    EXPECT_EQ(s.rings.at("T3").size(), 16u);
    EXPECT_EQ(s.ideals.at("Z0").size(), 1u);
}

TEST(Script, ExplicitMapHom) {
    InstanceScript s = parse_script(
        "ring A = Z(4)\n"
        "ring B = Z(2)\n"
        "hom h = map(A->B; 0:0, 1:1, 2:0, 3:1)\n");
    EXPECT_TRUE(s.homs.at("h").is_surjective());
    EXPECT_THROW(parse_script("ring A = Z(4)\nring B = Z(2)\nhom h = map(A->B; 0:0, 1:1)\n"),
                 ScriptError);
    EXPECT_THROW(
        parse_script("ring A = Z(4)\nring B = Z(2)\nhom h = map(A->B; 0:1, 1:1, 2:0, 3:1)\n"),
        ValidationError);
}

TEST(Script, OptionsControlCapsAndSeed) {
    EXPECT_THROW(parse_script("option max-ring-size = 8\nring A = Z(12)\n"), CapExceededError);
    InstanceScript s = parse_script("option seed = 9\nring A = Z(6)\n");
    EXPECT_EQ(s.seed.value_or(0), 9u);

    ParseConfig cfg;
    cfg.caps.max_ring_size = 100;
    cfg.ring_cap_locked = true;  // a command-line flag wins over the directive
    InstanceScript s2 = parse_script("option max-ring-size = 8\nring A = Z(12)\n", cfg);
    EXPECT_EQ(s2.rings.at("A").size(), 12u);
}

TEST(Script, RoundTripThroughCanonicalText) {
    for (const char* text :
         {kWorkedScript,
          "ring A = Z(12)\nideal I = gen(A; 4)\nring R = dup(A, I)\n",
          "option seed = 3\nring A = Z(4)\nideal I = gen(A; 2)\nring T = trivext(A, "
          "module(A/I))\nhom f = id(A)\n"}) {
        InstanceScript once = parse_script(text);
        InstanceScript twice = parse_script(once.canonical_text());
        EXPECT_EQ(once, twice);
        EXPECT_EQ(once.canonical_text(), twice.canonical_text());
    }
}

TEST(Records, FormatAndParseRoundTrip) {
    TheoremVerdict v;
    v.theorem = "chained-transfer";
    v.fingerprint = "00ff00ff00ff00ff";
    v.lhs = {true, ""};
    v.rhs = {false, "both J and J' are nonzero"};
    v.agree = false;
    v.seed = 99;
    std::string line = format_record(v);
    EXPECT_NE(line.find("agree=false"), std::string::npos);
    ParsedRecord rec = parse_record(line);
    EXPECT_EQ(rec.theorem, v.theorem);
    EXPECT_EQ(rec.fingerprint, v.fingerprint);
    EXPECT_TRUE(rec.lhs);
    EXPECT_FALSE(rec.rhs);
    EXPECT_FALSE(rec.agree);
    EXPECT_EQ(rec.seed, 99u);
    EXPECT_EQ(rec.witness, "lhs: holds; rhs: both J and J' are nonzero");
}

TEST(Records, EscapedWitnessSurvives) {
    TheoremVerdict v;
    v.theorem = "t";
    v.fingerprint = "0000000000000000";
    v.agree = false;
    v.lhs = {true, R"(quote " and slash \)"};
    v.rhs = {false, ""};
    ParsedRecord rec = parse_record(format_record(v));
    EXPECT_NE(rec.witness.find('"'), std::string::npos);
    EXPECT_NE(rec.witness.find('\\'), std::string::npos);
}

TEST(TextReport, EmptyListIsHeaderOnly) {
    std::string text = format_report({}, ReportFormat::text);
    EXPECT_NE(text.find("theorem"), std::string::npos);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
}

TEST(TextReport, RowAndAuxLines) {
    TheoremVerdict v;
    v.theorem = "arithmetical-transfer";
    v.fingerprint = "abcdefabcdefabcd";
    v.lhs = {true, ""};
    v.rhs = {true, ""};
    v.agree = true;
    v.aux.push_back({"duplication-criterion", true, true, true, ""});
    v.notes.push_back("sample note");
    std::string text = format_report({v}, ReportFormat::text);
    EXPECT_NE(text.find("AGREE"), std::string::npos);
    EXPECT_NE(text.find("aux duplication-criterion"), std::string::npos);
    EXPECT_NE(text.find("note: sample note"), std::string::npos);
}

}  // namespace
