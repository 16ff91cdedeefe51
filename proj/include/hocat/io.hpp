#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hocat/ainf.hpp"
#include "hocat/cech.hpp"
#include "hocat/twcx.hpp"

namespace hocat {

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& what);
    int line() const { return line_; }

  private:
    int line_;
};

/* A parsed GLC document; the grammar is in docs/glc-format.md.
 * Sections keep their order so that serialize(parse(doc)) reproduces a canonical document.
 */
struct Document {
    struct Section {
        std::string kind, name;
    };
    struct Twisted {
        std::string over;
        TwObject tw;
        std::optional<std::vector<int>> index;
        FiltObject filtered() const;
    };
    struct Map {
        std::string from, to;
        Block block;
    };
    struct Cover {
        std::vector<std::string> rings;
        CoverPoset poset;
    };

    Field field;
    std::vector<Section> sections;
    std::map<std::string, std::shared_ptr<Cat>> categories;
    std::map<std::string, std::string> h0_source;  // "category H = h0 B"
    std::map<std::string, H0Result> h0;
    std::map<std::string, BimodPtr> bimodules;
    std::map<std::string, std::string> diagonal_of;  // "bimodule M = diagonal R"
    std::map<std::string, std::pair<std::string, std::string>> bimodule_over;  // left, right ("" for modules)
    std::map<std::string, std::shared_ptr<HochCochain>> cochains;
    std::map<std::string, std::pair<std::string, std::string>> cochain_over;
    std::map<std::string, std::shared_ptr<AInf>> ainfs;
    std::map<std::string, std::string> ainf_over;
    std::map<std::string, Twisted> twisted;
    std::map<std::string, Map> maps;
    std::map<std::string, Cover> covers;

    CatPtr category(const std::string& name) const;
    BimodPtr bimodule(const std::string& name) const;
    // The first section of a kind, if any.
    std::optional<std::string> first(const std::string& kind) const;
};

/* field_override replaces the field line; coefficients are read in the new field. */
Document parse_document(std::string_view text, std::optional<Field> field_override = std::nullopt);
std::string serialize(const Document& doc);

std::string format_vec(const Vec& v, const std::vector<std::string>& names);
Vec parse_vec(std::string_view text, const std::map<std::string, Index>& names, const Field& k);

}  // namespace hocat
