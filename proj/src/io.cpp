#include "hocat/io.hpp"

#include <algorithm>
#include <sstream>

namespace hocat {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
{
}

namespace {

struct Line {
    int no = 0;
    std::vector<std::string> tok;
};

std::vector<Line> tokenize(std::string_view text)
{
    std::vector<Line> out;
    int no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++no;
        if (auto h = raw.find('#'); h != std::string_view::npos)
            raw = raw.substr(0, h);
        Line l{no, {}};
        std::istringstream is{std::string(raw)};
        std::string t;
        while (is >> t)
            l.tok.push_back(t);
        if (!l.tok.empty())
            out.push_back(std::move(l));
        if (end == text.size())
            break;
    }
    return out;
}

std::string join(const std::vector<std::string>& t, std::size_t from)
{
    std::string s;
    for (std::size_t i = from; i < t.size(); ++i) {
        if (i > from)
            s += ' ';
        s += t[i];
    }
    return s;
}

bool valid_name(const std::string& s)
{
    return !s.empty() && s != "0" && s != "+" && s != "-" && s != "=" && s != "end" &&
           s.find_first_of("*#") == std::string::npos;
}

int to_int(const Line& l, const std::string& s)
{
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception&) {
    }
    throw ParseError(l.no, "expected an integer, got '" + s + "'");
}

std::map<std::string, Index> arrow_names(const Cat& c)
{
    std::map<std::string, Index> m;
    for (Index x = 0; x < c.dim(); ++x)
        m[c.arrow(x).name] = x;
    return m;
}

std::map<std::string, Index> element_names(const Bimodule& b)
{
    std::map<std::string, Index> m;
    for (Index x = 0; x < b.dim(); ++x)
        m[b.element(x).name] = x;
    return m;
}

std::vector<std::string> arrow_list(const Cat& c)
{
    std::vector<std::string> v;
    for (auto& a : c.arrows())
        v.push_back(a.name);
    return v;
}

std::vector<std::string> element_list(const Bimodule& b)
{
    std::vector<std::string> v;
    for (auto& e : b.elements())
        v.push_back(e.name);
    return v;
}

std::string subset_text(const std::vector<int>& s)
{
    std::string t;
    for (std::size_t i = 0; i < s.size(); ++i)
        t += (i ? "," : "") + std::to_string(s[i]);
    return t;
}

std::vector<int> parse_subset(const Line& l, const std::string& s)
{
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t c = s.find(',', pos);
        if (c == std::string::npos)
            c = s.size();
        out.push_back(to_int(l, s.substr(pos, c - pos)));
        pos = c + 1;
    }
    return out;
}

template <class T>
std::vector<std::pair<std::pair<Index, Index>, Vec>> sorted(const T& table)
{
    std::vector<std::pair<std::pair<Index, Index>, Vec>> v(table.begin(), table.end());
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return v;
}

template <class T>
std::vector<std::pair<Index, Vec>> sorted_diff(const T& table)
{
    std::vector<std::pair<Index, Vec>> v(table.begin(), table.end());
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return v;
}

class Parser {
  public:
    Parser(std::string_view text, std::optional<Field> over) : lines_(tokenize(text)), over_(over) {}

    Document run()
    {
        if (lines_.empty() || lines_[0].tok != std::vector<std::string>{"glc", "1"})
            throw ParseError(lines_.empty() ? 1 : lines_[0].no, "document must start with 'glc 1'");
        if (lines_.size() < 2 || lines_[1].tok.size() != 2 || lines_[1].tok[0] != "field")
            throw ParseError(lines_.size() < 2 ? lines_[0].no : lines_[1].no, "expected 'field Q' or 'field F<p>'");
        try {
            doc_.field = parse_field(lines_[1].tok[1]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(lines_[1].no, e.what());
        }
        if (over_)
            doc_.field = *over_;
        i_ = 2;
        while (i_ < lines_.size())
            section();
        return std::move(doc_);
    }

  private:
    const Line& cur() const { return lines_.at(i_); }

    void expect(const Line& l, std::size_t n, const std::string& form)
    {
        if (l.tok.size() != n)
            throw ParseError(l.no, "expected '" + form + "'");
    }

    void fresh(const Line& l, const std::string& name)
    {
        if (!valid_name(name))
            throw ParseError(l.no, "invalid name '" + name + "'");
        for (auto& s : doc_.sections)
            if (s.name == name)
                throw ParseError(l.no, "duplicate name '" + name + "'");
    }

    // Lines of the current block, up to (excluding) its 'end'.
    std::vector<Line> body()
    {
        std::vector<Line> out;
        int start = cur().no;
        ++i_;
        while (i_ < lines_.size() && !(lines_[i_].tok.size() == 1 && lines_[i_].tok[0] == "end"))
            out.push_back(lines_[i_++]);
        if (i_ == lines_.size())
            throw ParseError(start, "section has no 'end'");
        ++i_;
        return out;
    }

    // Runs f on every line, turning library errors into errors at that line.
    template <class F>
    void each(const std::vector<Line>& lines, F f)
    {
        for (const Line& l : lines) {
            try {
                f(l);
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception& e) {
                throw ParseError(l.no, e.what());
            }
        }
    }

    Vec vec(const Line& l, std::size_t from, const std::map<std::string, Index>& names)
    {
        if (from >= l.tok.size() || l.tok[from - 1] != "=")
            throw ParseError(l.no, "expected '= <vector>'");
        try {
            return parse_vec(join(l.tok, from), names, doc_.field);
        } catch (const std::invalid_argument& e) {
            throw ParseError(l.no, e.what());
        }
    }

    Index lookup(const Line& l, const std::map<std::string, Index>& names, const std::string& s, const char* what)
    {
        auto it = names.find(s);
        if (it == names.end())
            throw ParseError(l.no, std::string("unknown ") + what + " '" + s + "'");
        return it->second;
    }

    CatPtr category(const Line& l, const std::string& name)
    {
        auto it = doc_.categories.find(name);
        if (it == doc_.categories.end())
            throw ParseError(l.no, "unknown category '" + name + "'");
        return it->second;
    }

    BimodPtr bimodule(const Line& l, const std::string& name)
    {
        auto it = doc_.bimodules.find(name);
        if (it == doc_.bimodules.end())
            throw ParseError(l.no, "unknown bimodule '" + name + "'");
        return it->second;
    }

    void report(const Line& l, const Report& r, const std::string& what)
    {
        if (!r.ok())
            throw ParseError(l.no, what + " is invalid: " + r.str());
    }

    void section()
    {
        const Line& h = cur();
        const std::string& kind = h.tok[0];
        if (h.tok.size() < 2)
            throw ParseError(h.no, "section needs a name");
        fresh(h, h.tok[1]);
        if (kind == "category")
            category_section();
        else if (kind == "bimodule")
            bimodule_section();
        else if (kind == "module")
            module_section();
        else if (kind == "cochain")
            cochain_section();
        else if (kind == "ainf")
            ainf_section();
        else if (kind == "twisted")
            twisted_section();
        else if (kind == "map")
            map_section();
        else if (kind == "cover")
            cover_section();
        else
            throw ParseError(h.no, "unknown section '" + kind + "'");
        doc_.sections.push_back({kind == "module" ? "bimodule" : kind, h.tok[1]});
    }

    void category_section()
    {
        Line h = cur();
        const std::string& name = h.tok[1];
        if (h.tok.size() == 5 && h.tok[2] == "=" && h.tok[3] == "h0") {
            CatPtr src = category(h, h.tok[4]);
            H0Result r = h0_functor(src);
            doc_.categories[name] = r.h0;
            doc_.h0[name] = r;
            doc_.h0_source[name] = h.tok[4];
            ++i_;
            return;
        }
        expect(h, 2, "category <name>");
        auto c = std::make_shared<Cat>(doc_.field);
        std::map<std::string, Index> objs;
        each(body(), [&](const Line& l) {
            const auto& t = l.tok;
            if (t[0] == "object") {
                expect(l, 2, "object <name>");
                if (!valid_name(t[1]) || objs.count(t[1]))
                    throw ParseError(l.no, "bad or repeated object '" + t[1] + "'");
                objs[t[1]] = c->add_object(t[1]);
            } else if (t[0] == "arrow") {
                if (t.size() != 8 && t.size() != 9)
                    throw ParseError(l.no, "expected 'arrow <name> : <src> -> <tgt> deg <n> [identity]'");
                if (t[2] != ":" || t[4] != "->" || t[6] != "deg" || (t.size() == 9 && t[8] != "identity"))
                    throw ParseError(l.no, "expected 'arrow <name> : <src> -> <tgt> deg <n> [identity]'");
                if (!valid_name(t[1]) || c->find_arrow(t[1]))
                    throw ParseError(l.no, "bad or repeated arrow '" + t[1] + "'");
                Index s = lookup(l, objs, t[3], "object"), g = lookup(l, objs, t[5], "object");
                int d = to_int(l, t[7]);
                if (t.size() == 9) {
                    if (s != g || d != 0)
                        throw ParseError(l.no, "an identity is a degree-0 endomorphism");
                    c->add_identity(s, t[1]);
                } else {
                    c->add_arrow(t[1], s, g, d);
                }
            } else if (t[0] == "compose") {
                auto names = arrow_names(*c);
                Index g = lookup(l, names, t.at(1), "arrow"), f = lookup(l, names, t.at(2), "arrow");
                if (c->is_identity(g) || c->is_identity(f))
                    throw ParseError(l.no, "compositions with identities are implicit");
                c->set_compose(g, f, vec(l, 4, names));
            } else if (t[0] == "d") {
                auto names = arrow_names(*c);
                Index x = lookup(l, names, t.at(1), "arrow");
                c->set_diff(x, vec(l, 3, names));
            } else {
                throw ParseError(l.no, "unexpected '" + t[0] + "' in category");
            }
        });
        if (!c->basis_identities())
            throw ParseError(h.no, "every object needs an identity arrow");
        report(h, validate(*c), "category " + name);
        doc_.categories[name] = c;
    }

    void bimodule_section()
    {
        Line h = cur();
        const std::string& name = h.tok[1];
        if (h.tok.size() == 5 && h.tok[2] == "=" && h.tok[3] == "diagonal") {
            doc_.bimodules[name] = std::make_shared<Bimodule>(diagonal(category(h, h.tok[4])));
            doc_.diagonal_of[name] = h.tok[4];
            doc_.bimodule_over[name] = {h.tok[4], h.tok[4]};
            ++i_;
            return;
        }
        if (h.tok.size() != 5 || h.tok[2] != "over")
            throw ParseError(h.no, "expected 'bimodule <name> over <left> <right>'");
        auto m = std::make_shared<Bimodule>(category(h, h.tok[3]), category(h, h.tok[4]));
        fill_bimodule(h, *m, false);
        doc_.bimodules[name] = m;
        doc_.bimodule_over[name] = {h.tok[3], h.tok[4]};
    }

    void module_section()
    {
        Line h = cur();
        if (h.tok.size() != 4 || h.tok[2] != "over")
            throw ParseError(h.no, "expected 'module <name> over <category>'");
        auto m = std::make_shared<Bimodule>(left_module(category(h, h.tok[3])));
        fill_bimodule(h, *m, true);
        doc_.bimodules[h.tok[1]] = m;
        doc_.bimodule_over[h.tok[1]] = {h.tok[3], ""};
    }

    void fill_bimodule(const Line& h, Bimodule& m, bool module)
    {
        auto lobj = objects(m.left()), robj = objects(m.right());
        each(body(), [&](const Line& l) {
            const auto& t = l.tok;
            if (t[0] == "element") {
                if (module) {
                    if (t.size() != 6 || t[2] != "at" || t[4] != "deg")
                        throw ParseError(l.no, "expected 'element <name> at <object> deg <n>'");
                } else if (t.size() != 8 || t[2] != ":" || t[4] != "->" || t[6] != "deg") {
                    throw ParseError(l.no, "expected 'element <name> : <src> -> <tgt> deg <n>'");
                }
                if (!valid_name(t[1]) || m.find(t[1]))
                    throw ParseError(l.no, "bad or repeated element '" + t[1] + "'");
                if (module)
                    m.add_element(t[1], 0, lookup(l, lobj, t[3], "object"), to_int(l, t[5]));
                else
                    m.add_element(t[1], lookup(l, robj, t[3], "object"), lookup(l, lobj, t[5], "object"),
                                  to_int(l, t[7]));
            } else if (t[0] == "left") {
                auto els = element_names(m);
                Index x = lookup(l, arrow_names(m.left()), t.at(1), "arrow");
                if (m.left().is_identity(x))
                    throw ParseError(l.no, "identities act trivially");
                m.set_left(x, lookup(l, els, t.at(2), "element"), vec(l, 4, els));
            } else if (t[0] == "right" && !module) {
                auto els = element_names(m);
                Index y = lookup(l, arrow_names(m.right()), t.at(2), "arrow");
                if (m.right().is_identity(y))
                    throw ParseError(l.no, "identities act trivially");
                m.set_right(lookup(l, els, t.at(1), "element"), y, vec(l, 4, els));
            } else if (t[0] == "d") {
                auto els = element_names(m);
                m.set_diff(lookup(l, els, t.at(1), "element"), vec(l, 3, els));
            } else {
                throw ParseError(l.no, "unexpected '" + t[0] + "' in bimodule");
            }
        });
        report(h, validate(m), "bimodule " + h.tok[1]);
    }

    static std::map<std::string, Index> objects(const Cat& c)
    {
        std::map<std::string, Index> m;
        for (Index a = 0; a < c.num_objects(); ++a)
            m[c.object_name(a)] = a;
        return m;
    }

    void cochain_section()
    {
        Line h = cur();
        if (h.tok.size() != 7 || h.tok[2] != "over" || h.tok[5] != "arity")
            throw ParseError(h.no, "expected 'cochain <name> over <category> <bimodule> arity <n>'");
        CatPtr a = category(h, h.tok[3]);
        BimodPtr m = bimodule(h, h.tok[4]);
        if (m->left_ptr() != a || m->right_ptr() != a)
            throw ParseError(h.no, "bimodule " + h.tok[4] + " is not over " + h.tok[3]);
        int n = to_int(h, h.tok[6]);
        if (n < 0)
            throw ParseError(h.no, "arity must be nonnegative");
        auto c = std::make_shared<HochCochain>(a, m, n);
        auto arrows = arrow_names(*a);
        auto objs = objects(*a);
        auto els = element_names(*m);
        each(body(), [&](const Line& l) {
            const auto& t = l.tok;
            std::size_t need = 1 + static_cast<std::size_t>(std::max(n, 1)) + 1;
            if (t[0] != "value" || t.size() < need + 1)
                throw ParseError(l.no, "expected 'value <arrows> = <vector>'");
            Tuple tu;
            if (n == 0) {
                tu.push_back(lookup(l, objs, t[1], "object"));
            } else {
                for (int k = 0; k < n; ++k) {
                    Index x = lookup(l, arrows, t[1 + k], "arrow");
                    if (a->is_identity(x))
                        throw ParseError(l.no, "normalized cochains vanish on identities");
                    tu.push_back(x);
                }
                for (int k = 0; k + 1 < n; ++k)
                    if (a->arrow(tu[k]).src != a->arrow(tu[k + 1]).tgt)
                        throw ParseError(l.no, "arrows are not composable");
            }
            Vec v = vec(l, need, els);
            Index s = tuple_src(*a, tu, n), g = tuple_tgt(*a, tu, n);
            for (auto& [e, co] : v)
                if (m->element(e).src != s || m->element(e).tgt != g)
                    throw ParseError(l.no, "value lies outside M(" + a->object_name(s) + ", " + a->object_name(g) +
                                               ")");
            c->set(tu, v);
        });
        doc_.cochains[h.tok[1]] = c;
        doc_.cochain_over[h.tok[1]] = {h.tok[3], h.tok[4]};
    }

    void ainf_section()
    {
        Line h = cur();
        if (h.tok.size() != 6 || h.tok[2] != "over" || h.tok[4] != "bound")
            throw ParseError(h.no, "expected 'ainf <name> over <category> bound <n>'");
        CatPtr a = category(h, h.tok[3]);
        auto x = std::make_shared<AInf>(a, to_int(h, h.tok[5]));
        auto arrows = arrow_names(*a);
        each(body(), [&](const Line& l) {
            const auto& t = l.tok;
            if (t[0] == "override") {
                expect(l, 2, "override <n>");
                int n = to_int(l, t[1]);
                if (n != 1 && n != 2)
                    throw ParseError(l.no, "only m1 and m2 can be overridden");
                x->override_op(n);
            } else if (t[0] == "op") {
                int n = to_int(l, t.at(1));
                if (n < 1 || n > x->arity_bound() || t.size() < static_cast<std::size_t>(n) + 4)
                    throw ParseError(l.no, "expected 'op <n> <n arrows> = <vector>'");
                Tuple tu;
                for (int k = 0; k < n; ++k)
                    tu.push_back(lookup(l, arrows, t[2 + k], "arrow"));
                try {
                    x->set_op(n, tu, vec(l, static_cast<std::size_t>(n) + 3, arrows));
                } catch (const std::invalid_argument& e) {
                    throw ParseError(l.no, e.what());
                }
            } else {
                throw ParseError(l.no, "unexpected '" + t[0] + "' in ainf");
            }
        });
        doc_.ainfs[h.tok[1]] = x;
        doc_.ainf_over[h.tok[1]] = h.tok[3];
    }

    void twisted_section()
    {
        Line h = cur();
        if (h.tok.size() != 4 || h.tok[2] != "over")
            throw ParseError(h.no, "expected 'twisted <name> over <category>'");
        Document::Twisted tw;
        tw.over = h.tok[3];
        tw.tw.base = category(h, tw.over);
        auto objs = objects(*tw.tw.base);
        auto arrows = arrow_names(*tw.tw.base);
        std::vector<int> index;
        bool with_index = false, without_index = false;
        each(body(), [&](const Line& l) {
            const auto& t = l.tok;
            if (t[0] == "comp") {
                if (t.size() != 3 && !(t.size() == 5 && t[3] == "index"))
                    throw ParseError(l.no, "expected 'comp <object> <shift> [index <i>]'");
                tw.tw.comps.push_back({lookup(l, objs, t[1], "object"), to_int(l, t[2])});
                (t.size() == 5 ? with_index : without_index) = true;
                if (t.size() == 5)
                    index.push_back(to_int(l, t[4]));
            } else if (t[0] == "delta") {
                Index k = static_cast<Index>(to_int(l, t.at(1))), m = static_cast<Index>(to_int(l, t.at(2)));
                if (k >= tw.tw.size() || m >= tw.tw.size())
                    throw ParseError(l.no, "component out of range");
                tw.tw.delta[{k, m}] = vec(l, 4, arrows);
            } else {
                throw ParseError(l.no, "unexpected '" + t[0] + "' in twisted");
            }
        });
        if (with_index && without_index)
            throw ParseError(h.no, "either every component has an index or none has");
        clean(tw.tw.delta);
        report(h, validate(tw.tw), "twisted complex " + h.tok[1]);
        if (with_index) {
            tw.index = index;
            report(h, validate(tw.filtered()), "filtered object " + h.tok[1]);
        }
        doc_.twisted[h.tok[1]] = tw;
    }

    void map_section()
    {
        Line h = cur();
        if (h.tok.size() != 6 || h.tok[2] != ":" || h.tok[4] != "->")
            throw ParseError(h.no, "expected 'map <name> : <twisted> -> <twisted>'");
        auto find = [&](const std::string& n) -> const Document::Twisted& {
            auto it = doc_.twisted.find(n);
            if (it == doc_.twisted.end())
                throw ParseError(h.no, "unknown twisted complex '" + n + "'");
            return it->second;
        };
        const auto &x = find(h.tok[3]), &y = find(h.tok[5]);
        if (x.tw.base != y.tw.base)
            throw ParseError(h.no, "twisted complexes over different categories");
        Document::Map m{h.tok[3], h.tok[5], {}};
        auto arrows = arrow_names(*x.tw.base);
        each(body(), [&](const Line& l) {
            const auto& t = l.tok;
            if (t[0] != "entry")
                throw ParseError(l.no, "unexpected '" + t[0] + "' in map");
            Index k = static_cast<Index>(to_int(l, t.at(1))), j = static_cast<Index>(to_int(l, t.at(2)));
            if (k >= x.tw.size() || j >= y.tw.size())
                throw ParseError(l.no, "component out of range");
            m.block[{k, j}] = vec(l, 4, arrows);
        });
        clean(m.block);
        try {
            if (!m.block.empty() && !block_degree(*x.tw.base, x.tw.comps, y.tw.comps, m.block))
                throw ParseError(h.no, "map is not homogeneous");
        } catch (const std::invalid_argument& e) {
            throw ParseError(h.no, e.what());
        }
        doc_.maps[h.tok[1]] = m;
    }

    void cover_section()
    {
        Line h = cur();
        if (h.tok.size() != 4 || h.tok[2] != "charts")
            throw ParseError(h.no, "expected 'cover <name> charts <n>'");
        Document::Cover c;
        c.poset.n = to_int(h, h.tok[3]);
        std::vector<Line> lines = body();
        each(lines, [&](const Line& l) {
            if (l.tok[0] != "element")
                return;
            if (l.tok.size() != 4 || l.tok[2] != "ring")
                throw ParseError(l.no, "expected 'element <subset> ring <category>'");
            c.poset.subsets.push_back(parse_subset(l, l.tok[1]));
            c.poset.rings.push_back(category(l, l.tok[3]));
            c.rings.push_back(l.tok[3]);
        });
        CoverPoset& p = c.poset;
        for (Index i = 0; i < p.size(); ++i)
            for (Index j = 0; j < p.size(); ++j)
                if (i != j && p.leq(j, i) && p.subsets[i] != p.subsets[j])
                    p.rho[{i, j}].assign(p.rings[i]->dim(), Vec());
        each(lines, [&](const Line& l) {
            const auto& t = l.tok;
            if (t[0] == "element")
                return;
            if (t[0] != "restrict" || t.size() < 6)
                throw ParseError(l.no, "expected 'restrict <subset> <subset> <basis element> = <vector>'");
            auto i = p.find(parse_subset(l, t[1])), j = p.find(parse_subset(l, t[2]));
            if (!i || !j || !p.rho.count({*i, *j}))
                throw ParseError(l.no, "no restriction between " + t[1] + " and " + t[2]);
            Index a = lookup(l, arrow_names(*p.rings[*i]), t[3], "arrow");
            p.rho[{*i, *j}][a] = vec(l, 5, arrow_names(*p.rings[*j]));
        });
        report(h, validate(p), "cover " + h.tok[1]);
        doc_.covers[h.tok[1]] = c;
    }

    std::vector<Line> lines_;
    std::optional<Field> over_;
    std::size_t i_ = 0;
    Document doc_;
};

}  // namespace

FiltObject Document::Twisted::filtered() const
{
    if (!index)
        throw std::invalid_argument("twisted complex has no filtration indices");
    return {tw, *index};
}

CatPtr Document::category(const std::string& name) const
{
    auto it = categories.find(name);
    if (it == categories.end())
        throw std::invalid_argument("unknown category '" + name + "'");
    return it->second;
}

BimodPtr Document::bimodule(const std::string& name) const
{
    auto it = bimodules.find(name);
    if (it == bimodules.end())
        throw std::invalid_argument("unknown bimodule '" + name + "'");
    return it->second;
}

std::optional<std::string> Document::first(const std::string& kind) const
{
    for (auto& s : sections)
        if (s.kind == kind)
            return s.name;
    return std::nullopt;
}

std::string format_vec(const Vec& v, const std::vector<std::string>& names)
{
    if (v.empty())
        return "0";
    std::string out;
    bool first = true;
    for (auto& [i, c] : v) {
        Scalar a = c;
        bool neg = !c.modulus() && c.rational() < 0;
        if (neg)
            a = -c;
        if (first)
            out += neg ? "- " : "";
        else
            out += neg ? " - " : " + ";
        if (!a.is_one())
            out += a.str() + "*";
        out += names.at(i);
        first = false;
    }
    return out;
}

Vec parse_vec(std::string_view text, const std::map<std::string, Index>& names, const Field& k)
{
    std::istringstream is{std::string(text)};
    std::vector<std::string> t;
    std::string s;
    while (is >> s)
        t.push_back(s);
    if (t.size() == 1 && t[0] == "0")
        return {};
    Vec out;
    std::size_t i = 0;
    Scalar sign = k.one();
    if (!t.empty() && t[0] == "-") {
        sign = -k.one();
        ++i;
    }
    while (true) {
        if (i >= t.size())
            throw std::invalid_argument("incomplete vector '" + std::string(text) + "'");
        std::string term = t[i++];
        Scalar c = k.one();
        std::string name = term;
        if (auto star = term.find('*'); star != std::string::npos) {
            c = k.parse(term.substr(0, star));
            name = term.substr(star + 1);
        }
        auto it = names.find(name);
        if (it == names.end())
            throw std::invalid_argument("unknown basis element '" + name + "'");
        out.add(it->second, sign * c);
        if (i == t.size())
            break;
        if (t[i] != "+" && t[i] != "-")
            throw std::invalid_argument("expected '+' or '-' in '" + std::string(text) + "'");
        sign = t[i] == "+" ? k.one() : -k.one();
        ++i;
    }
    return out;
}

Document parse_document(std::string_view text, std::optional<Field> field_override)
{
    return Parser(text, field_override).run();
}

std::string serialize(const Document& doc)
{
    std::ostringstream os;
    os << "glc 1\nfield " << doc.field.name() << "\n";
    for (auto& sec : doc.sections) {
        os << "\n";
        const std::string& n = sec.name;
        if (sec.kind == "category") {
            if (auto it = doc.h0_source.find(n); it != doc.h0_source.end()) {
                os << "category " << n << " = h0 " << it->second << "\n";
                continue;
            }
            const Cat& c = *doc.categories.at(n);
            auto names = arrow_list(c);
            os << "category " << n << "\n";
            for (Index a = 0; a < c.num_objects(); ++a)
                os << "  object " << c.object_name(a) << "\n";
            for (Index x = 0; x < c.dim(); ++x) {
                const Arrow& a = c.arrow(x);
                os << "  arrow " << a.name << " : " << c.object_name(a.src) << " -> " << c.object_name(a.tgt)
                   << " deg " << a.deg << (c.is_identity(x) ? " identity" : "") << "\n";
            }
            for (auto& [gf, v] : sorted(c.compose_table()))
                if (!v.empty())
                    os << "  compose " << names[gf.first] << " " << names[gf.second] << " = "
                       << format_vec(v, names) << "\n";
            for (auto& [x, v] : sorted_diff(c.diff_table()))
                if (!v.empty())
                    os << "  d " << names[x] << " = " << format_vec(v, names) << "\n";
            os << "end\n";
        } else if (sec.kind == "bimodule") {
            if (auto it = doc.diagonal_of.find(n); it != doc.diagonal_of.end()) {
                os << "bimodule " << n << " = diagonal " << it->second << "\n";
                continue;
            }
            const Bimodule& m = *doc.bimodules.at(n);
            auto [l, r] = doc.bimodule_over.at(n);
            bool module = r.empty();
            auto els = element_list(m);
            auto ln = arrow_list(m.left()), rn = arrow_list(m.right());
            os << (module ? "module " : "bimodule ") << n << " over " << l << (module ? "" : " " + r) << "\n";
            for (auto& e : m.elements()) {
                if (module)
                    os << "  element " << e.name << " at " << m.left().object_name(e.tgt) << " deg " << e.deg
                       << "\n";
                else
                    os << "  element " << e.name << " : " << m.right().object_name(e.src) << " -> "
                       << m.left().object_name(e.tgt) << " deg " << e.deg << "\n";
            }
            for (auto& [xm, v] : sorted(m.left_table()))
                if (!v.empty())
                    os << "  left " << ln[xm.first] << " " << els[xm.second] << " = " << format_vec(v, els) << "\n";
            for (auto& [my, v] : sorted(m.right_table()))
                if (!v.empty())
                    os << "  right " << els[my.first] << " " << rn[my.second] << " = " << format_vec(v, els)
                       << "\n";
            for (auto& [x, v] : sorted_diff(m.diff_table()))
                if (!v.empty())
                    os << "  d " << els[x] << " = " << format_vec(v, els) << "\n";
            os << "end\n";
        } else if (sec.kind == "cochain") {
            const HochCochain& c = *doc.cochains.at(n);
            auto [a, m] = doc.cochain_over.at(n);
            auto names = arrow_list(c.cat());
            auto els = element_list(c.module());
            os << "cochain " << n << " over " << a << " " << m << " arity " << c.arity() << "\n";
            for (auto& [t, v] : c.values()) {
                if (v.empty())
                    continue;
                os << "  value";
                if (c.arity() == 0)
                    os << " " << c.cat().object_name(t.at(0));
                else
                    for (Index x : t)
                        os << " " << names[x];
                os << " = " << format_vec(v, els) << "\n";
            }
            os << "end\n";
        } else if (sec.kind == "ainf") {
            const AInf& x = *doc.ainfs.at(n);
            auto names = arrow_list(x.cat());
            os << "ainf " << n << " over " << doc.ainf_over.at(n) << " bound " << x.arity_bound() << "\n";
            for (int k = 1; k <= x.arity_bound(); ++k) {
                if (k <= 2 && !x.overridden(k))
                    continue;
                if (k <= 2)
                    os << "  override " << k << "\n";
                for (auto& [t, v] : x.table(k)) {
                    if (v.empty())
                        continue;
                    os << "  op " << k;
                    for (Index a : t)
                        os << " " << names[a];
                    os << " = " << format_vec(v, names) << "\n";
                }
            }
            os << "end\n";
        } else if (sec.kind == "twisted") {
            const auto& tw = doc.twisted.at(n);
            const Cat& c = *tw.tw.base;
            auto names = arrow_list(c);
            os << "twisted " << n << " over " << tw.over << "\n";
            for (Index k = 0; k < tw.tw.size(); ++k) {
                os << "  comp " << c.object_name(tw.tw.comps[k].obj) << " " << tw.tw.comps[k].shift;
                if (tw.index)
                    os << " index " << tw.index->at(k);
                os << "\n";
            }
            for (auto& [kl, v] : tw.tw.delta)
                os << "  delta " << kl.first << " " << kl.second << " = " << format_vec(v, names) << "\n";
            os << "end\n";
        } else if (sec.kind == "map") {
            const auto& m = doc.maps.at(n);
            auto names = arrow_list(*doc.twisted.at(m.from).tw.base);
            os << "map " << n << " : " << m.from << " -> " << m.to << "\n";
            for (auto& [kl, v] : m.block)
                os << "  entry " << kl.first << " " << kl.second << " = " << format_vec(v, names) << "\n";
            os << "end\n";
        } else if (sec.kind == "cover") {
            const auto& c = doc.covers.at(n);
            const CoverPoset& p = c.poset;
            os << "cover " << n << " charts " << p.n << "\n";
            for (Index i = 0; i < p.size(); ++i)
                os << "  element " << subset_text(p.subsets[i]) << " ring " << c.rings[i] << "\n";
            for (auto& [ij, img] : p.rho) {
                auto src = arrow_list(*p.rings[ij.first]), tgt = arrow_list(*p.rings[ij.second]);
                for (Index a = 0; a < img.size(); ++a)
                    if (!img[a].empty())
                        os << "  restrict " << subset_text(p.subsets[ij.first]) << " "
                           << subset_text(p.subsets[ij.second]) << " " << src[a] << " = "
                           << format_vec(img[a], tgt) << "\n";
            }
            os << "end\n";
        }
    }
    return os.str();
}

}  // namespace hocat
