#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "commands.hpp"

namespace {

int emit(const cli::Report& r, bool as_json, const std::string& report_path)
{
    if (as_json)
        std::cout << r.finished().dump(2) << "\n";
    else
        std::cout << r.text();
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) {
            std::cerr << "cannot write " << report_path << "\n";
            return cli::kInputError;
        }
        out << r.finished().dump(2) << "\n";
    }
    return r.exit_code();
}

// The field named on the header line, for error reports.
std::optional<std::string> declared_field(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream toks(line);
        std::string a, b;
        if (toks >> a >> b && a == "field") {
            try {
                return hocat::parse_field(b).name();
            } catch (const std::exception&) {
                return std::nullopt;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact computations with graded linear categories"};
    app.require_subcommand(1, 1);

    std::string file, field, report_path, maps;
    bool as_json = false, timing = false;
    cli::Options opts;
    std::uint64_t seed = 0;

    for (const std::string& name : cli::kSubcommands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("file", file, "GLC document")->required();
        sub->add_option("--field", field, "override the field: Q or F<p>");
        sub->add_option("--max-degree", opts.max_degree, "largest cohomological degree to compute");
        sub->add_option("--arity-cutoff", opts.arity_cutoff, "largest arity for A-infinity checks and lifts");
        sub->add_flag("--witness", opts.witness, "include full witnesses in the report");
        sub->add_option("--seed", seed, "seed for randomized re-choices");
        sub->add_option("--json-out", report_path, "also write the JSON report to this file");
        sub->add_flag("--json", as_json, "print the JSON report instead of text");
        sub->add_flag("--timing", timing, "include wall-clock timing in the report");
        sub->add_option("--category", opts.category);
        sub->add_option("--bimodule", opts.bimodule);
        sub->add_option("--cochain", opts.cochain);
        sub->add_option("--twisted", opts.twisted);
        sub->add_option("--cover", opts.cover);
        sub->add_option("--maps", maps, "f,g,h");
        sub->add_option("--gap", opts.gap, "gap m for moore");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : cli::kInputError;
    }
    std::string subcommand = app.get_subcommands().front()->get_name();
    if (app.get_subcommands().front()->count("--seed"))
        opts.seed = seed;
    if (!maps.empty()) {
        std::stringstream s(maps);
        std::string m;
        while (std::getline(s, m, ','))
            opts.maps.push_back(m);
    }

    std::ifstream in(file, std::ios::binary);
    if (!in) {
        std::cerr << "cannot read " << file << "\n";
        return cli::kInputError;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    auto start = std::chrono::steady_clock::now();
    std::optional<hocat::Field> override_field;
    std::string field_name = "?";
    try {
        if (!field.empty())
            override_field = hocat::parse_field(field);
        hocat::Document doc = hocat::parse_document(text, override_field);
        cli::Report r = cli::run(subcommand, doc, text, opts);
        if (timing)
            r.timing(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
        return emit(r, as_json, report_path);
    } catch (const std::exception& e) {
        if (override_field)
            field_name = override_field->name();
        else if (auto f = declared_field(text))
            field_name = *f;
        cli::Report r(subcommand, text, field_name);
        r.error(e.what());
        return emit(r, as_json, report_path);
    }
}
