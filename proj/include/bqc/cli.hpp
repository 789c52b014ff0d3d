#pragma once

#include <optional>
#include <string>

namespace bqc {

// Parsed command line; flag values override the config file.
struct CliConfig {
    std::string command;  // run | check | blindness | detect | forward-stats
    std::string config_path;
    std::string computation_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> shots;
    std::optional<std::string> protocol;  // bfk|double|triple|single|single-classical
    std::optional<int> m;
    std::optional<double> delta;
    std::optional<double> p_forward;
    std::optional<int> decoys;
    std::optional<int> check_decoys;
    std::optional<std::string> adversary;
};

// Exit codes: 0 success, 1 usage/config error, 2 protocol abort.
int cmd_run(const CliConfig& cli);
int cmd_check(const CliConfig& cli);
int cmd_blindness(const CliConfig& cli);
int cmd_detect(const CliConfig& cli);
int cmd_forward_stats(const CliConfig& cli);

int dispatch(const CliConfig& cli);

}  // namespace bqc
