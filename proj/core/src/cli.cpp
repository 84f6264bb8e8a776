#include "cylcert/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cylcert/errors.hpp"
#include "cylcert/io.hpp"
#include "cylcert/verify.hpp"

namespace cylcert {

namespace {

namespace fs = std::filesystem;

void print_report(const VerificationReport& report, bool with_witness, std::ostream& out) {
    out << report.id << "\n";
    for (const auto& s : report.stages) {
        out << "  " << std::left << std::setw(16) << s.stage << verdict_name(s.verdict);
        if (!s.detail.empty()) out << "  " << s.detail;
        out << "\n";
    }
    out << "  overall: " << (report.overall_pass ? "Pass" : "Fail") << "\n";
    if (with_witness) {
        out << "  witness:";
        for (const auto& [p, v] : report.witness) out << " " << p << "=" << to_string(v);
        out << "\n";
    }
}

VerificationReport report_for_file(const std::string& path) {
    try {
        Certificate cert = load_certificate(path);
        return verify_certificate(cert);
    } catch (const Error& e) {
        VerificationReport r;
        r.id = fs::path(path).filename().string();
        r.stages.push_back(StageResult{"schema", Verdict::Fail, e.what()});
        r.overall_pass = false;
        return r;
    }
}

int cmd_verify(const std::string& path, bool as_json, bool with_witness, std::ostream& out,
               std::ostream& err) {
    Certificate cert;
    try {
        cert = load_certificate(path);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    VerificationReport report = verify_certificate(cert);
    if (as_json)
        out << report_to_json(report);
    else
        print_report(report, with_witness, out);
    return report.overall_pass ? 0 : 1;
}

int cmd_verify_all(const std::string& dir, bool as_json, std::ostream& out, std::ostream& err) {
    std::vector<std::string> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        const std::string name = entry.path().filename().string();
        if (name.size() > 10 && name.substr(name.size() - 10) == ".cert.json")
            files.push_back(entry.path().string());
    }
    if (ec) {
        err << "error: cannot read directory " << dir << "\n";
        return 2;
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        err << "error: no *.cert.json files in " << dir << "\n";
        return 2;
    }

    bool all_pass = true;
    std::ostringstream table;
    std::ostringstream json_items;
    for (const auto& f : files) {
        VerificationReport report = report_for_file(f);
        all_pass = all_pass && report.overall_pass;
        if (as_json) {
            if (json_items.tellp() > 0) json_items << ",\n";
            std::string one = report_to_json(report);
            while (!one.empty() && one.back() == '\n') one.pop_back();
            json_items << one;
        } else {
            table << std::left << std::setw(28) << fs::path(f).filename().string()
                  << (report.overall_pass ? "Pass" : "Fail");
            std::string first = report.first_fail();
            if (!first.empty()) table << "  (" << first << ": " << report.stage(first)->detail << ")";
            table << "\n";
        }
    }
    if (as_json)
        out << "[\n" << json_items.str() << "\n]\n";
    else
        out << table.str();
    return all_pass ? 0 : 1;
}

int cmd_pullback(const std::string& path, std::ostream& out, std::ostream& err) {
    try {
        Certificate cert = load_certificate(path);
        out << pullback_ample(cert).str() << "\n";
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_derive(const std::string& path, std::ostream& out, std::ostream& err) {
    Certificate cert;
    DivisorExpr phi;
    try {
        cert = load_certificate(path);
        phi = pullback_ample(cert);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    try {
        std::vector<std::string> support;
        for (const Curve& c : cert.cfg.curves())
            if (cert.l.terms().count(c.name)) support.push_back(c.name);
        auto solved = express_in_span(phi, support, cert.cfg);
        if (std::holds_alternative<NoSolution>(solved)) {
            out << "no combination of the support matches the pulled-back class\n";
            return 1;
        }
        const SpanSolution& sol = std::get<SpanSolution>(solved);
        out << "particular: " << sol.particular.str() << "\n";
        for (const auto& k : sol.kernel) out << "kernel:     " << k.str() << "\n";

        DivisorExpr diff;
        for (const auto& [name, coeff] : cert.l.terms())
            diff.set_term(name, reduce_mod_equalities(coeff, cert.domain));
        for (const auto& [name, coeff] : sol.particular.terms())
            diff.set_term(name, diff.term(name) - reduce_mod_equalities(coeff, cert.domain));
        out << "L - particular: " << diff.str() << "\n";

        // Column-by-column membership of the difference in span(kernel).
        std::set<std::string> columns{""};
        for (const auto& [name, coeff] : diff.terms())
            for (const auto& [p, c] : coeff.coeffs()) columns.insert(p);
        bool in_span = true;
        for (const auto& col : columns) {
            std::vector<Rat> v;
            for (const auto& s : support) {
                AffineExpr c = diff.term(s);
                v.push_back(col.empty() ? c.constant() : c.coeff(col));
            }
            // Solve kernel-matrix * x = v by elimination.
            std::size_t rows = support.size(), cols_k = sol.kernel.size();
            std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(cols_k + 1));
            for (std::size_t i = 0; i < rows; ++i) {
                for (std::size_t j = 0; j < cols_k; ++j)
                    m[i][j] = sol.kernel[j].term(support[i]).constant();
                m[i][cols_k] = v[i];
            }
            std::size_t rank = 0;
            for (std::size_t c = 0; c < cols_k && rank < rows; ++c) {
                std::size_t pr = rank;
                while (pr < rows && m[pr][c] == 0) ++pr;
                if (pr == rows) continue;
                std::swap(m[rank], m[pr]);
                Rat inv = Rat(1) / m[rank][c];
                for (auto& x : m[rank]) x *= inv;
                for (std::size_t r = 0; r < rows; ++r) {
                    if (r == rank || m[r][c] == 0) continue;
                    Rat f = m[r][c];
                    for (std::size_t cc = 0; cc <= cols_k; ++cc) m[r][cc] -= f * m[rank][cc];
                }
                ++rank;
            }
            for (std::size_t r = 0; r < rows; ++r) {
                bool zero_row = true;
                for (std::size_t c = 0; c < cols_k; ++c)
                    if (m[r][c] != 0) zero_row = false;
                if (zero_row && m[r][cols_k] != 0) in_span = false;
            }
        }
        out << (in_span ? "transcribed L lies in particular + span(kernel)\n"
                        : "transcribed L is NOT in particular + span(kernel)\n");
        return in_span ? 0 : 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"certificate verifier for polar-cylinder constructions"};
    app.require_subcommand(1);

    bool as_json = false, with_witness = false;
    app.add_flag("--json", as_json, "machine-readable reports");
    app.add_flag("--witness", with_witness, "print the effectivity witness");

    std::string verify_path, dir_path, derive_path, pullback_path;
    auto* verify = app.add_subcommand("verify", "run the full pipeline on one certificate");
    verify->add_option("file", verify_path)->required();
    auto* verify_all = app.add_subcommand("verify-all", "verify every *.cert.json in a directory");
    verify_all->add_option("dir", dir_path);
    auto* derive = app.add_subcommand("derive", "recompute L from the pulled-back ample class");
    derive->add_option("file", derive_path)->required();
    auto* pullback = app.add_subcommand("pullback", "print the pulled-back ample class");
    pullback->add_option("file", pullback_path)->required();

    std::vector<std::string> args = argv;
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (verify->parsed()) return cmd_verify(verify_path, as_json, with_witness, out, err);
    if (verify_all->parsed()) {
        std::string dir = dir_path;
        if (dir.empty()) {
            const char* env = std::getenv("CYLCERT_CORPUS");
            if (!env) {
                err << "error: no directory given and CYLCERT_CORPUS is not set\n";
                return 2;
            }
            dir = env;
        }
        return cmd_verify_all(dir, as_json, out, err);
    }
    if (derive->parsed()) return cmd_derive(derive_path, out, err);
    if (pullback->parsed()) return cmd_pullback(pullback_path, out, err);
    return 2;
}

}  // namespace cylcert
