#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pgcycles/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Constructs and verifies cycle embeddings in the projective space PG(n,q)"};
    app.require_subcommand(1);

    int n = 3;
    std::uint32_t q = 2;
    int k = 3;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string format = "text";
    std::string cert_path;

    auto add_geometry_flags = [&](CLI::App* sub, bool with_k) {
        sub->add_option("--n", n, "projective dimension (>= 2)")->required();
        sub->add_option("--q", q, "field order (prime power)")->required();
        if (with_k) sub->add_option("--k", k, "cycle length")->required();
    };

    CLI::App* info = app.add_subcommand("info", "point/line counts for PG(n,q)");
    add_geometry_flags(info, false);
    info->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    CLI::App* embed = app.add_subcommand("embed", "embed a k-cycle and write a certificate");
    add_geometry_flags(embed, true);
    embed->add_option("--seed", seed, "search seed (default 0)");
    embed->add_option("--out", out_path, "certificate file (stdout when omitted)");

    CLI::App* verify = app.add_subcommand("verify", "re-verify a certificate file");
    verify->add_option("certificate", cert_path, "path to a pgc-1 certificate")->required();
    verify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    CLI::App* sweep = app.add_subcommand("sweep", "embed+verify every feasible length");
    add_geometry_flags(sweep, false);
    sweep->add_option("--seed", seed, "search seed (default 0)");
    sweep->add_option("--out", out_path, "JSON summary file");
    sweep->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    CLI::App* count = app.add_subcommand("count", "brute-force k-cycle count (desk scale)");
    add_geometry_flags(count, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return pgc::kExitBadInput;
    }

    if (info->parsed()) return pgc::cmd_info(n, q, format, std::cout, std::cerr);
    if (embed->parsed()) return pgc::cmd_embed(n, q, k, seed, out_path, std::cout, std::cerr);
    if (verify->parsed()) return pgc::cmd_verify(cert_path, format, std::cout, std::cerr);
    if (sweep->parsed()) return pgc::cmd_sweep(n, q, seed, out_path, format, std::cout, std::cerr);
    if (count->parsed()) return pgc::cmd_count(n, q, k, std::cout, std::cerr);
    return pgc::kExitBadInput;
}
