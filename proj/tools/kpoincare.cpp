// Command line front end: analyze, verify, graph and report subcommands.
//
// Exit codes: 0 success, 2 parse error, 3 mathematically invalid input,
// 4 series and brute-force dimensions disagree.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <kpoincare/report.hpp>

namespace
{

enum exit_code { ok = 0, internal = 1, parse = 2, invalid = 3, mismatch = 4 };

template <typename Fn>
int guarded(Fn &&fn)
{
    try {
        return fn();
    } catch (const kpoincare::parse_error &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return parse;
    } catch (const kpoincare::math_error &e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return invalid;
    } catch (const kpoincare::error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return internal;
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Poincare series of plane branches over number fields"};
    app.require_subcommand(1);

    std::string path;
    std::optional<std::size_t> truncate;
    std::size_t max_order = 30;
    bool dot = false;
    bool json = false;

    auto *analyze = app.add_subcommand("analyze", "resolve the branch and print invariants and series");
    analyze->add_option("file", path, "input JSON")->required();
    analyze->add_option("--truncate", truncate, "expansion order (default Delta + 10 in Case I, else 40)");

    auto *verify = app.add_subcommand("verify", "compare the series with brute-force filtration dimensions");
    verify->add_option("file", path, "input JSON")->required();
    verify->add_option("--max-order", max_order, "largest order compared")->capture_default_str();

    auto *graph = app.add_subcommand("graph", "print the quotient dual graph");
    graph->add_option("file", path, "input JSON")->required();
    graph->add_flag("--dot", dot, "emit DOT (the only format)");

    auto *report = app.add_subcommand("report", "print the full report");
    report->add_option("file", path, "input JSON")->required();
    report->add_flag("--json", json, "emit JSON (the only format)");
    report->add_option("--truncate", truncate, "expansion order");

    CLI11_PARSE(app, argc, argv);

    return guarded([&]() -> int {
        const auto doc = kpoincare::parse_input_file(path);
        const auto a = kpoincare::analyze(doc);
        const std::size_t n = truncate ? *truncate : kpoincare::default_truncation(a);
        if (analyze->parsed()) {
            std::cout << kpoincare::report_text(a, n);
            return ok;
        }
        if (graph->parsed()) {
            std::cout << kpoincare::dot_graph(a);
            return ok;
        }
        if (verify->parsed()) {
            const auto v = kpoincare::verify(a, max_order);
            std::cout << kpoincare::to_json(v).dump(2) << "\n";
            if (!v.match()) {
                const std::size_t k = *v.first_mismatch;
                std::cerr << "mismatch at v = " << k << ": oracle " << v.oracle_dims[k] << ", series "
                          << v.series_coeffs[k] << "\n";
                return mismatch;
            }
            return ok;
        }
        std::optional<kpoincare::verification> ver;
        if (doc.mode != kpoincare::input_mode::case2) {
            ver = kpoincare::verify(a, std::min<std::size_t>(n, 30));
        }
        std::cout << kpoincare::report_json(a, n, ver).dump(2) << "\n";
        return ok;
    });
}
