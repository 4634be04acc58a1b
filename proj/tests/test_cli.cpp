#include "support.hpp"

#include "qfd/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace qfd;

namespace {

struct Invocation {
    int status;
    std::string out, err;
};

Invocation invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int status = cli::main(args, out, err);
    return {status, out.str(), err.str()};
}

std::string value_of(const cli::Record& rec, const std::string& key) {
    for (const auto& [k, v] : rec)
        if (k == key) return v;
    return {};
}

}  // namespace

TEST(Cli, ParseMatrix) {
    EXPECT_EQ(cli::parse_matrix("1 2 3\n2 4 5\n3 5 -1"), (SymMatrix{{1, 2, 3}, {2, 4, 5}, {3, 5, -1}}));
    EXPECT_EQ(cli::parse_matrix("1 0\n0 1\n"), SymMatrix::identity(2));
    EXPECT_EQ(cli::parse_matrix("\n  1/2 -3/6 \n\n -1/2 4\n"), (SymMatrix{{Rat(1, 2), Rat(-1, 2)}, {Rat(-1, 2), 4}}));
    auto message = [](const std::string& text) {
        try {
            cli::parse_matrix(text);
        } catch (const cli::ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_EQ(message("1 2\n3 4"), "asymmetric at (1,2)/(2,1)");
    EXPECT_EQ(message("1 2\n3"), "ragged row 2: expected 2 entries, got 1");
    EXPECT_EQ(message("1 2\n2 x"), "non-numeric entry 'x' at (2,2)");
    EXPECT_EQ(message("1 1/0\n1 1"), "non-numeric entry '1/0' at (1,2)");
    EXPECT_EQ(message("1 2 3\n2 3 4"), "not square: 2 rows of 3 entries");
    EXPECT_EQ(message(""), "empty matrix");
}

TEST(Cli, ParseIsTotal) {
    auto usage = [](const std::vector<std::string>& args) {
        try {
            cli::parse(args);
        } catch (const cli::UsageError& e) {
            return std::string(e.what());
        }
        return std::string("parsed");
    };
    EXPECT_EQ(usage({}), "missing command");
    EXPECT_EQ(usage({"frobnicate"}), "unknown command 'frobnicate'");
    EXPECT_EQ(usage({"symbol"}), "missing symbol command");
    EXPECT_EQ(usage({"symbol", "jacobi", "1", "3"}), "unknown symbol command 'jacobi'");
    EXPECT_EQ(usage({"symbol", "legendre", "31", "103", "7"}), "unexpected argument '7'");
    EXPECT_EQ(usage({"symbol", "legendre", "3x", "103"}), "not an integer: '3x'");
    EXPECT_EQ(usage({"design", "brc", "43"}), "design brc takes 3 arguments, got 1");
    EXPECT_EQ(usage({"--format", "json", "design", "plane", "6"}), "invalid value 'json' for --format");
    EXPECT_EQ(usage({"design", "plane", "6", "--max", "3"}), "unexpected option '--max'");
    EXPECT_EQ(usage({"scan", "planes"}), "scan planes requires --max");
    EXPECT_EQ(usage({"scan", "planes", "--max", "ten"}), "invalid value 'ten' for --max");
    EXPECT_EQ(usage({"scan", "planes", "--max", "10", "--jobs", "0"}), "invalid value '0' for --jobs");
    EXPECT_EQ(usage({"scan", "planes", "--max"}), "missing value for --max");
    EXPECT_EQ(usage({"-x", "symbol"}), "unknown option '-x'");
    EXPECT_EQ(usage({"form", "invariants", "a.txt", "b.txt"}), "unexpected argument 'b.txt'");

    cli::Command c = cli::parse({"--format=records", "symbol", "hilbert", "-3", "-5", "7", "--verify"});
    EXPECT_EQ(c.verb, "symbol");
    EXPECT_EQ(c.subverb, "hilbert");
    EXPECT_EQ(c.numbers, (std::vector<Int>{-3, -5, 7}));
    EXPECT_EQ(c.format, cli::Format::records);
    EXPECT_TRUE(c.verify);
    c = cli::parse({"scan", "maxdet", "--max=511", "--jobs", "4"});
    EXPECT_EQ(c.max, 511);
    EXPECT_EQ(c.jobs, 4u);
    c = cli::parse({"form", "diagonalize", "-"});
    EXPECT_EQ(c.file, "-");
}

TEST(Cli, RunExamples) {
    Invocation r = invoke({"symbol", "legendre", "31", "103"});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "-1\n");

    r = invoke({"design", "brc", "43", "7", "1", "--format", "records"});
    EXPECT_EQ(r.status, 1);
    auto rec = cli::parse_records(r.out).at(0);
    EXPECT_EQ(value_of(rec, "outcome"), "excluded");
    EXPECT_EQ(value_of(rec, "reason"), "local-invariant");
    EXPECT_EQ(value_of(rec, "witness"), "3");

    r = invoke({"design", "decompose", "91", "36", "45", "--format", "records"});
    EXPECT_EQ(r.status, 1);
    rec = cli::parse_records(r.out).at(0);
    EXPECT_EQ(value_of(rec, "sigma"), "471");
    EXPECT_EQ(value_of(rec, "witness"), "3");

    r = invoke({"design", "decompose", "91", "36", "45"});
    EXPECT_NE(r.out.find("sigma            471\n"), std::string::npos) << r.out;
}

TEST(Cli, ExitStatuses) {
    EXPECT_EQ(invoke({"design", "brc", "111", "11", "1"}).status, 0);
    EXPECT_EQ(invoke({"design", "plane", "6"}).status, 1);
    EXPECT_EQ(invoke({"design", "plane", "10"}).status, 0);
    EXPECT_EQ(invoke({"design", "decompose", "2380", "183", "793"}).status, 1);
    EXPECT_EQ(invoke({"design", "decompose", "31", "15", "10"}).status, 0);
    EXPECT_EQ(invoke({"design", "maxdet", "5"}).status, 0);
    EXPECT_EQ(invoke({"design", "maxdet", "63"}).status, 1);
    EXPECT_EQ(invoke({"design", "gdd", "3", "7", "9", "5", "3"}).status, 1);
    EXPECT_EQ(invoke({"design", "gdd", "2", "3", "4", "3", "2"}).status, 0);
    EXPECT_EQ(invoke({"symbol", "hilbert", "21", "33", "3"}).out, "+1\n");
    EXPECT_EQ(invoke({"help"}).status, 0);
    EXPECT_EQ(invoke({"--help"}).status, 0);
    EXPECT_EQ(invoke({"scan", "planes", "--max", "30"}).status, 0);
}

TEST(Cli, DomainErrorsAreVerbatim) {
    Invocation r = invoke({"symbol", "legendre", "3", "9"});
    EXPECT_EQ(r.status, 2);
    EXPECT_EQ(r.err, "legendre: 9 is not an odd prime\n");
    r = invoke({"design", "maxdet", "8"});
    EXPECT_EQ(r.status, 2);
    EXPECT_EQ(r.err, "maxdet_test: n = 0 mod 4 is the Hadamard case, which has no obstruction here\n");
    r = invoke({"scan", "maxdet", "--max", "10"});
    EXPECT_EQ(r.status, 2);
    EXPECT_EQ(r.err, "scan_maxdet: --max must be at least 63\n");
    r = invoke({"design", "brc"});
    EXPECT_EQ(r.status, 2);
    EXPECT_EQ(r.err.rfind("usage error: design brc takes 3 arguments, got 0\n", 0), 0u);
    r = invoke({"form", "invariants", "/nonexistent/matrix.txt"});
    EXPECT_EQ(r.status, 2);
    EXPECT_EQ(r.err, "parse error: cannot open '/nonexistent/matrix.txt'\n");
}

TEST(Cli, VerifyCrossChecks) {
    EXPECT_EQ(invoke({"--verify", "symbol", "legendre", "31", "103"}).status, 0);
    EXPECT_EQ(invoke({"--verify", "symbol", "hilbert", "-1", "-1", "2"}).out, "-1\n");
    EXPECT_EQ(invoke({"--verify", "design", "brc", "43", "7", "1"}).status, 1);
    EXPECT_EQ(invoke({"--verify", "design", "maxdet", "91"}).status, 1);
    EXPECT_EQ(invoke({"--verify", "scan", "maxdet", "--max", "600"}).status, 0);
    Invocation r = invoke({"--verify", "symbol", "legendre", "2", "1000000007"});
    EXPECT_EQ(r.status, 2);
    EXPECT_EQ(r.err, "verify: 1000000007 is too large to enumerate\n");
}

TEST(Cli, RecordRoundTrip) {
    for (const ScanReport& report : {scan_planes(200), scan_maxdet(2000), scan_even_decompositions(2500)}) {
        auto recs = cli::parse_records(cli::format_report(report, cli::Format::records));
        ASSERT_EQ(recs.size(), report.rows.size());
        for (std::size_t i = 0; i < recs.size(); ++i) {
            const ScanRow& row = report.rows[i];
            for (const auto& [k, v] : row.params) ASSERT_EQ(value_of(recs[i], k), v.str());
            ASSERT_EQ(parse_outcome(value_of(recs[i], "outcome")), row.verdict.outcome());
            if (row.verdict.is_excluded())
                ASSERT_EQ(parse_reason(value_of(recs[i], "reason")), row.verdict.reason());
            else
                ASSERT_EQ(value_of(recs[i], "reason"), "");
        }
    }
}

TEST(Cli, ReportRendering) {
    std::string text = cli::format_report(scan_planes(30), cli::Format::records);
    std::istringstream lines(text);
    std::string line;
    int rows = 0, excluded = 0;
    while (std::getline(lines, line)) {
        if (line.rfind("#", 0) == 0) continue;
        ++rows;
        excluded += line.find("outcome=excluded") != std::string::npos;
    }
    EXPECT_EQ(rows, 29);
    EXPECT_EQ(excluded, 5);

    ScanReport empty = scan_even_decompositions(3);
    std::string header = cli::format_report(empty, cli::Format::records);
    EXPECT_EQ(header,
              "# report=decompositions max=3 parity=even normalization=k<=v/2,k1<=k2\n"
              "# total=0 excluded=0 not-excluded=0 dropped=0 smallest-not-excluded=none\n");
    EXPECT_EQ(cli::format_report(empty, cli::Format::table), header);

    std::string table = cli::format_report(scan_maxdet(511), cli::Format::table);
    EXPECT_NE(table.find("n    m   outcome       reason           witness  detail\n"), std::string::npos) << table;
    EXPECT_NE(table.find("63   9   excluded      non-square       33       4m-3\n"), std::string::npos) << table;
}

TEST(Cli, FormCommandsFromFile) {
    const std::string path = ::testing::TempDir() + "qfd_form.txt";
    {
        std::ofstream f(path);
        f << "1 0 0 0\n0 2 0 0\n0 0 7 0\n0 0 0 14\n";
    }
    Invocation r = invoke({"--format", "records", "form", "gram-test", path});
    EXPECT_EQ(r.status, 1);
    auto rec = cli::parse_records(r.out).at(0);
    EXPECT_EQ(value_of(rec, "reason"), "local-invariant");
    EXPECT_EQ(value_of(rec, "witness"), "7");

    r = invoke({"--format", "records", "--verify", "form", "invariants", path});
    EXPECT_EQ(r.status, 0);
    rec = cli::parse_records(r.out).at(0);
    EXPECT_EQ(value_of(rec, "discriminant"), "1");
    EXPECT_EQ(value_of(rec, "minus-primes"), "7");
    EXPECT_EQ(value_of(rec, "signature"), "4,0,0");

    r = invoke({"--format", "records", "form", "diagonalize", path});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(value_of(cli::parse_records(r.out).at(0), "diagonal"), "1,2,7,14");
}
