#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hocat/io.hpp"
#include "report.hpp"

namespace cli {

struct Options {
    int max_degree = -1;    // subcommand default when negative
    int arity_cutoff = -1;  // subcommand default when negative
    bool witness = false;
    std::optional<std::uint64_t> seed;
    int gap = 2;
    std::string category, bimodule, cochain, twisted, cover;
    std::vector<std::string> maps;
};

inline const std::vector<std::string> kSubcommands{"check", "hh", "deform", "obstruct", "moore", "massey", "cech"};

/* Runs one subcommand on a parsed document; throws std::invalid_argument on input errors. */
Report run(const std::string& subcommand, const hocat::Document& doc, std::string_view input, const Options& opts);

}  // namespace cli
