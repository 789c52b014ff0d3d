#include <CLI11.hpp>

#include "bqc/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Blind quantum computation protocol simulator"};
    app.require_subcommand(1);

    bqc::CliConfig cli;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", cli.config_path, "RunConfig JSON file");
        cmd->add_option("--out", cli.out_dir, "Output directory");
        cmd->add_option("--seed", [&](const CLI::results_t& r) {
            cli.seed = std::stoull(r[0]);
            return true;
        }, "Master seed");
        cmd->add_option("--shots", [&](const CLI::results_t& r) {
            cli.shots = std::stoi(r[0]);
            return true;
        }, "Shots / trials");
    };
    auto add_protocol_flags = [&](CLI::App* cmd) {
        cmd->add_option("--protocol", [&](const CLI::results_t& r) {
            cli.protocol = r[0];
            return true;
        }, "bfk|double|triple|single|single-classical");
        cmd->add_option("--m", [&](const CLI::results_t& r) {
            cli.m = std::stoi(r[0]);
            return true;
        }, "Computation qubit count");
        cmd->add_option("--delta", [&](const CLI::results_t& r) {
            cli.delta = std::stod(r[0]);
            return true;
        }, "Overhead parameter (n = ceil((2+delta)m))");
        cmd->add_option("--p-forward", [&](const CLI::results_t& r) {
            cli.p_forward = std::stod(r[0]);
            return true;
        }, "Forwarding probability");
        cmd->add_option("--decoys", [&](const CLI::results_t& r) {
            cli.decoys = std::stoi(r[0]);
            return true;
        }, "Decoy pair count h");
        cmd->add_option("--check-decoys", [&](const CLI::results_t& r) {
            cli.check_decoys = std::stoi(r[0]);
            return true;
        }, "Checked decoy count l");
        cmd->add_option("--adversary", [&](const CLI::results_t& r) {
            cli.adversary = r[0];
            return true;
        }, "honest|guess_bell|flip_bits|wrong_basis:K|leak_to_partner");
    };

    CLI::App* run = app.add_subcommand("run", "Execute a protocol and record results");
    run->add_option("--computation", cli.computation_path, "Computation JSON file");
    add_common(run);
    add_protocol_flags(run);

    CLI::App* check = app.add_subcommand("check", "Run the invariant and oracle suite");
    add_common(check);

    CLI::App* blindness = app.add_subcommand("blindness", "Enumerate server views per secret");
    add_common(blindness);

    CLI::App* detect = app.add_subcommand("detect", "Estimate decoy detection rates");
    add_common(detect);
    add_protocol_flags(detect);

    CLI::App* forward = app.add_subcommand("forward-stats", "Estimate forwarding success");
    add_common(forward);
    add_protocol_flags(forward);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    for (CLI::App* cmd : {run, check, blindness, detect, forward}) {
        if (cmd->parsed()) {
            cli.command = cmd->get_name();
            break;
        }
    }
    return bqc::dispatch(cli);
}
