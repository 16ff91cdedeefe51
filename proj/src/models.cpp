#include "hocat/models.hpp"

#include <map>
#include <stdexcept>

namespace hocat {

namespace {

std::string power_name(const std::string& var, int i)
{
    if (i == 0)
        return "1";
    if (i == 1)
        return var;
    return var + std::to_string(i);
}

}  // namespace

std::shared_ptr<Cat> truncated_poly(Field k, int m, const std::string& var, const std::string& obj)
{
    if (m < 1)
        throw std::invalid_argument("truncated_poly: m must be positive");
    auto c = std::make_shared<Cat>(k);
    Index o = c->add_object(obj);
    c->add_identity(o, power_name(var, 0));
    for (int i = 1; i < m; ++i)
        c->add_arrow(power_name(var, i), o, o, 0);
    for (int i = 1; i < m; ++i)
        for (int j = 1; j < m; ++j)
            if (i + j < m)
                c->set_compose(static_cast<Index>(i), static_cast<Index>(j), Vec::unit(static_cast<Index>(i + j)));
    return c;
}

std::shared_ptr<Cat> gapped_dual_numbers(Field k, int ext_degree)
{
    auto c = std::make_shared<Cat>(k);
    Index o = c->add_object("o");
    c->add_identity(o, "1");
    Index x = c->add_arrow("x", o, o, 0);
    Index x2 = c->add_arrow("x2", o, o, 0);
    Index x3 = c->add_arrow("x3", o, o, 0);
    Index e = c->add_arrow("e", o, o, -1);
    Index ex = c->add_arrow("ex", o, o, -1);
    c->set_compose(x, x, Vec::unit(x2));
    c->set_compose(x, x2, Vec::unit(x3));
    c->set_compose(x2, x, Vec::unit(x3));
    c->set_compose(x, e, Vec::unit(ex));
    c->set_compose(e, x, Vec::unit(ex));
    c->set_diff(e, Vec::unit(x2));
    c->set_diff(ex, Vec::unit(x3));
    if (ext_degree < -1) {
        Index t = c->add_arrow("t", o, o, ext_degree);
        Index tx = c->add_arrow("tx", o, o, ext_degree);
        c->set_compose(x, t, Vec::unit(tx));
        c->set_compose(t, x, Vec::unit(tx));
    }
    return c;
}

std::shared_ptr<Cat> upper_triangular2(Field k)
{
    auto c = std::make_shared<Cat>(k);
    Index o = c->add_object("o");
    c->add_identity(o, "1");
    Index e = c->add_arrow("e", o, o, 0);
    Index u = c->add_arrow("u", o, o, 0);
    c->set_compose(e, e, Vec::unit(e));
    c->set_compose(e, u, Vec::unit(u));
    return c;
}

std::shared_ptr<Cat> path_category(Field k, const std::vector<std::string>& objects,
                                   const std::vector<QuiverArrow>& arrows,
                                   const std::vector<std::vector<std::string>>& zero_paths, int max_len)
{
    auto c = std::make_shared<Cat>(k);
    for (auto& o : objects)
        c->add_object(o);
    for (Index o = 0; o < objects.size(); ++o)
        c->add_identity(o, "e" + objects[o]);
    std::map<std::string, Index> by_name;
    for (Index i = 0; i < arrows.size(); ++i)
        by_name[arrows[i].name] = i;
    std::vector<std::vector<Index>> zero;
    for (auto& z : zero_paths) {
        std::vector<Index> p;
        for (auto& n : z)
            p.push_back(by_name.at(n));
        zero.push_back(p);
    }
    // A path is stored last-arrow-first.
    auto killed = [&](const std::vector<Index>& p) {
        for (auto& z : zero)
            for (Index s = 0; s + z.size() <= p.size(); ++s)
                if (std::equal(z.begin(), z.end(), p.begin() + static_cast<long>(s)))
                    return true;
        return false;
    };
    std::map<std::vector<Index>, Index> index;
    std::vector<std::vector<Index>> layer;
    for (Index i = 0; i < arrows.size(); ++i)
        layer.push_back({i});
    for (int len = 1; len <= max_len && !layer.empty(); ++len) {
        std::vector<std::vector<Index>> next;
        for (auto& p : layer) {
            if (killed(p))
                continue;
            std::string name;
            for (Index i = 0; i < p.size(); ++i)
                name += (i ? "." : "") + arrows[p[i]].name;
            index[p] = c->add_arrow(name, arrows[p.back()].src, arrows[p.front()].tgt, 0);
            for (Index a = 0; a < arrows.size(); ++a)
                if (arrows[a].src == arrows[p.front()].tgt) {
                    std::vector<Index> q{a};
                    q.insert(q.end(), p.begin(), p.end());
                    next.push_back(q);
                }
        }
        layer = std::move(next);
    }
    for (auto& [p, x] : index)
        for (auto& [q, y] : index) {
            if (arrows[q.back()].src != arrows[p.front()].tgt)
                continue;
            std::vector<Index> r = q;
            r.insert(r.end(), p.begin(), p.end());
            auto it = index.find(r);
            if (it != index.end())
                c->set_compose(y, x, Vec::unit(it->second));
        }
    return c;
}

}  // namespace hocat
