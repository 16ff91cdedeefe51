#include "report.hpp"

#include <cstdio>
#include <sstream>

#include "hocat/io.hpp"

namespace cli {

std::string digest(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string coords_text(const hocat::Vec& v)
{
    std::vector<std::string> names;
    if (!v.empty())
        for (hocat::Index i = 0; i <= v.max_index(); ++i)
            names.push_back("h" + std::to_string(i));
    return hocat::format_vec(v, names);
}

Report::Report(std::string subcommand, std::string_view input, std::string field)
{
    j_["subcommand"] = std::move(subcommand);
    j_["digest"] = "fnv1a64:" + digest(input);
    j_["field"] = std::move(field);
    j_["verdicts"] = json::array();
    j_["tables"] = json::object();
    j_["values"] = json::object();
    j_["classes"] = json::object();
    j_["witnesses"] = json::object();
}

void Report::verdict(const std::string& check, bool pass, const std::string& detail)
{
    json v{{"check", check}, {"pass", pass}};
    if (!detail.empty())
        v["detail"] = detail;
    j_["verdicts"].push_back(v);
    failed_ |= !pass;
}

void Report::table(const std::string& name, const std::vector<hocat::Index>& dims)
{
    j_["tables"][name] = dims;
}

void Report::value(const std::string& name, json v) { j_["values"][name] = std::move(v); }

void Report::coords(const std::string& name, const hocat::Vec& v, int level)
{
    json c = json::object();
    if (level)
        c["level"] = level;
    json entries = json::array();
    for (auto& [i, s] : v)
        entries.push_back(json::array({i, s.str()}));
    c["coords"] = entries;
    c["text"] = coords_text(v);
    j_["classes"][name] = c;
}

void Report::witness(const std::string& name, const std::string& text) { j_["witnesses"][name] = text; }

void Report::refuse(const std::string& why)
{
    refused_ = true;
    j_["message"] = why;
}

void Report::error(const std::string& why)
{
    error_ = true;
    j_["message"] = why;
}

void Report::timing(double ms) { j_["timing_ms"] = ms; }

int Report::exit_code() const
{
    if (error_)
        return kInputError;
    return failed_ || refused_ ? kRefused : kOk;
}

json Report::finished() const
{
    json out = j_;
    int code = exit_code();
    out["status"] = code == kOk ? "ok" : code == kRefused ? "refused" : "error";
    out["exit"] = code;
    return out;
}

std::string Report::text() const
{
    json j = finished();
    std::ostringstream os;
    os << "subcommand: " << j["subcommand"].get<std::string>() << "\n";
    os << "digest: " << j["digest"].get<std::string>() << "\n";
    os << "field: " << j["field"].get<std::string>() << "\n";
    for (auto& [name, dims] : j["tables"].items()) {
        os << "table " << name << ":";
        for (auto& d : dims)
            os << " " << d.get<hocat::Index>();
        os << "\n";
    }
    for (auto& [name, v] : j["values"].items())
        os << "value " << name << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    for (auto& [name, c] : j["classes"].items()) {
        os << "class " << name << ":";
        if (c.contains("level"))
            os << " level " << c["level"].get<int>() << ",";
        os << " " << c["text"].get<std::string>() << "\n";
    }
    for (auto& v : j["verdicts"]) {
        os << (v["pass"].get<bool>() ? "pass " : "FAIL ") << v["check"].get<std::string>();
        if (v.contains("detail"))
            os << ": " << v["detail"].get<std::string>();
        os << "\n";
    }
    for (auto& [name, w] : j["witnesses"].items()) {
        os << "witness " << name << ":\n";
        std::istringstream lines(w.get<std::string>());
        std::string l;
        while (std::getline(lines, l))
            os << "  " << l << "\n";
    }
    if (j.contains("message"))
        os << "message: " << j["message"].get<std::string>() << "\n";
    if (j.contains("timing_ms"))
        os << "timing: " << j["timing_ms"].get<double>() << " ms\n";
    os << "status: " << j["status"].get<std::string>() << " (exit " << j["exit"].get<int>() << ")\n";
    return os.str();
}

}  // namespace cli
