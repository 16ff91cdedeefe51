#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hocat/linalg.hpp"

namespace cli {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kRefused = 1, kInputError = 2 };

/* Everything a subcommand reports; text output is rendered from the JSON form. */
class Report {
  public:
    Report(std::string subcommand, std::string_view input, std::string field);

    void verdict(const std::string& check, bool pass, const std::string& detail = "");
    void table(const std::string& name, const std::vector<hocat::Index>& dims);
    void value(const std::string& name, json v);
    void coords(const std::string& name, const hocat::Vec& v, int level = 0);
    void witness(const std::string& name, const std::string& text);
    void refuse(const std::string& why);
    void error(const std::string& why);
    void timing(double ms);

    // kRefused once a verdict failed or refuse was called, kInputError after error.
    int exit_code() const;
    const json& data() const { return j_; }
    json finished() const;
    std::string text() const;

  private:
    json j_;
    bool failed_ = false, refused_ = false, error_ = false;
};

std::string digest(std::string_view bytes);  // FNV-1a 64, hex
std::string coords_text(const hocat::Vec& v);  // "h0 - 2*h3"

}  // namespace cli
