#include "commands.hpp"

#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hocat/ainf.hpp"
#include "hocat/cech.hpp"
#include "hocat/hoch.hpp"
#include "hocat/massey.hpp"
#include "hocat/obstr.hpp"
#include "hocat/twcx.hpp"

namespace cli {

using namespace hocat;

namespace {

std::vector<std::string> arrow_names(const Cat& c)
{
    std::vector<std::string> v;
    for (auto& a : c.arrows())
        v.push_back(a.name);
    return v;
}

std::vector<std::string> element_names(const Bimodule& m)
{
    std::vector<std::string> v;
    for (auto& e : m.elements())
        v.push_back(e.name);
    return v;
}

std::string tuple_text(const std::vector<std::string>& names, const Tuple& t)
{
    std::string s;
    for (Index x : t)
        s += (s.empty() ? "" : " ") + names[x];
    return s;
}

std::string cochain_text(const HochCochain& c)
{
    std::ostringstream os;
    auto an = arrow_names(c.cat());
    auto en = element_names(c.module());
    for (auto& [t, v] : c.values())
        os << "value " << (c.arity() == 0 ? c.cat().object_name(t.at(0)) : tuple_text(an, t)) << " = "
           << format_vec(v, en) << "\n";
    return os.str();
}

std::string block_text(const Cat& c, const Block& b)
{
    std::ostringstream os;
    auto an = arrow_names(c);
    for (auto& [kl, v] : b)
        os << "entry " << kl.first << " " << kl.second << " = " << format_vec(v, an) << "\n";
    return os.str();
}

// The sections of d after the header.
std::string sections_text(const Document& d)
{
    std::string s = serialize(d);
    return s.substr(s.find("\n\n") + 2);
}

std::string twisted_text(const std::string& name, const std::string& over, const TwObject& x)
{
    Document d;
    d.field = x.base->field();
    d.twisted[name] = {over, x, std::nullopt};
    d.sections.push_back({"twisted", name});
    return sections_text(d);
}

std::string pick(const Document& doc, const std::string& wanted, const std::string& kind)
{
    if (!wanted.empty()) {
        for (auto& s : doc.sections)
            if (s.name == wanted && s.kind == kind)
                return wanted;
        throw std::invalid_argument("no " + kind + " named '" + wanted + "'");
    }
    auto f = doc.first(kind);
    if (!f)
        throw std::invalid_argument("document has no " + kind + " section");
    return *f;
}

std::unique_ptr<std::mt19937_64> make_rng(const Options& o)
{
    return o.seed ? std::make_unique<std::mt19937_64>(*o.seed) : nullptr;
}

bool closed_degree0(const TwObject& x, const TwObject& y, const Block& f)
{
    if (f.empty())
        return true;
    auto deg = block_degree(*x.base, x.comps, y.comps, f);
    return deg && *deg == 0 && TwHom(x, y).is_cocycle(0, f);
}

void check(const Document& doc, const Options& o, Report& r)
{
    for (auto& s : doc.sections) {
        const std::string& n = s.name;
        if (s.kind == "category" || s.kind == "bimodule") {
            r.verdict("valid " + s.kind + " " + n, true);
        } else if (s.kind == "cochain") {
            r.verdict("valid cochain " + n, true);
            r.value("cocycle " + n, d_hoch(*doc.cochains.at(n)).is_zero());
        } else if (s.kind == "ainf") {
            const AInf& a = *doc.ainfs.at(n);
            int cutoff = o.arity_cutoff > 0 ? o.arity_cutoff : std::max(3, 2 * a.arity_bound() - 2);
            CheckReport c = check_stasheff(a, cutoff);
            r.verdict("stasheff " + n + " through arity " + std::to_string(cutoff), c.ok, c.ok ? "" : c.str());
        } else if (s.kind == "twisted") {
            const auto& t = doc.twisted.at(n);
            r.verdict("maurer-cartan " + n, mc_residual(t.tw).empty());
            if (t.index)
                r.verdict("filtered " + n, validate(t.filtered()).ok());
        } else if (s.kind == "map") {
            const auto& m = doc.maps.at(n);
            const TwObject &x = doc.twisted.at(m.from).tw, &y = doc.twisted.at(m.to).tw;
            if (m.block.empty()) {
                r.verdict("closed map " + n, true, "zero");
                continue;
            }
            int deg = *block_degree(*x.base, x.comps, y.comps, m.block);
            r.verdict("closed map " + n, TwHom(x, y).is_cocycle(deg, m.block), "degree " + std::to_string(deg));
        } else if (s.kind == "cover") {
            const auto& p = doc.covers.at(n).poset;
            r.verdict("valid cover " + n, true, std::to_string(p.size()) + " intersections");
        }
    }
}

void hh_command(const Document& doc, const Options& o, Report& r)
{
    std::string cn = pick(doc, o.category, "category");
    CatPtr c = doc.category(cn);
    BimodPtr m;
    std::string mn = o.bimodule;
    if (!mn.empty()) {
        m = doc.bimodule(mn);
        if (m->left_ptr() != c || m->right_ptr() != c)
            throw std::invalid_argument("bimodule " + mn + " is not over " + cn);
    } else {
        for (auto& [name, over] : doc.bimodule_over)
            if (over == std::pair<std::string, std::string>{cn, cn} && mn.empty())
                mn = name;
        m = mn.empty() ? std::make_shared<Bimodule>(diagonal(c)) : doc.bimodule(mn);
        if (mn.empty())
            mn = "diagonal";
    }
    int top = o.max_degree >= 0 ? o.max_degree : 4;
    r.value("category", cn);
    r.value("bimodule", mn);
    std::vector<Index> dims = hh_dims(c, m, top);
    r.table("hh", dims);
    if (o.witness)
        for (int n = 0; n <= top; ++n) {
            if (!dims[n])
                continue;
            HHResult h = hh(c, m, n);
            for (Index k = 0; k < h.basis.size(); ++k)
                r.witness("HH^" + std::to_string(n) + " basis " + std::to_string(k), cochain_text(h.basis[k]));
        }
}

void deform_command(const Document& doc, const Options& o, Report& r)
{
    std::string name = pick(doc, o.cochain, "cochain");
    const HochCochain& eta = *doc.cochains.at(name);
    int n = eta.arity();
    bool cocycle = d_hoch(eta).is_zero();
    r.verdict("cocycle " + name, cocycle);
    AInf a = deform(eta.cat_ptr(), eta.module_ptr(), eta, false);
    int cutoff = o.arity_cutoff > 0 ? o.arity_cutoff : 2 * n - 2;
    CheckReport c = check_stasheff(a, cutoff);
    r.verdict("stasheff through arity " + std::to_string(cutoff), c.ok, c.ok ? "" : c.str());
    if (!c.ok)
        r.value("failing arity", c.arity);
    if (o.witness) {
        Document d;
        d.field = a.cat().field();
        d.categories["T"] = std::const_pointer_cast<Cat>(a.cat_ptr());
        d.sections.push_back({"category", "T"});
        d.ainfs["A"] = std::make_shared<AInf>(a);
        d.ainf_over["A"] = "T";
        d.sections.push_back({"ainf", "A"});
        r.witness("deformation", sections_text(d));
    }
}

void obstruct_command(const Document& doc, const Options& o, Report& r)
{
    std::string name = pick(doc, o.cochain, "cochain");
    const HochCochain& eta = *doc.cochains.at(name);
    CatPtr c = eta.cat_ptr();
    int n = eta.arity();
    bool cocycle = d_hoch(eta).is_zero();
    r.verdict("cocycle " + name, cocycle);
    if (!cocycle) {
        r.refuse(name + " is not a Hochschild cocycle, so the deformation is not an A-infinity category");
        return;
    }
    auto target = std::make_shared<AInf>(deform(c, eta.module_ptr(), eta));
    std::vector<Index> objs;
    std::vector<Vec> arrows;
    for (Index a = 0; a < c->num_objects(); ++a)
        objs.push_back(a);
    for (Index x = 0; x < c->dim(); ++x)
        arrows.push_back(Vec::unit(x, c->field().one()));
    int cutoff = o.arity_cutoff > 0 ? o.arity_cutoff : n + 2;
    auto rng = make_rng(o);
    LiftResult l = lift_functor(c, target, objs, arrows, cutoff, rng.get());
    json steps = json::array();
    for (auto& s : l.steps)
        steps.push_back(json{{"level", s.level}, {"vanishes", s.vanishes()}});
    r.value("levels", steps);
    if (!l.obstruction) {
        r.verdict("lift of the identity", true, "A-infinity functor through arity " + std::to_string(l.level));
        if (o.witness) {
            std::ostringstream os;
            auto sn = arrow_names(l.functor->src().cat()), tn = arrow_names(l.functor->tgt().cat());
            for (int k : l.functor->active())
                for (auto& [t, v] : l.functor->table(k))
                    os << "f " << k << " " << tuple_text(sn, t) << " = " << format_vec(v, tn) << "\n";
            r.witness("functor", os.str());
        }
        return;
    }
    const ObstructionClass& ob = *l.obstruction;
    r.coords("obstruction", ob.coords, ob.level);
    r.value("internal degree", ob.internal_degree);
    HochComplex cx(c, eta.module_ptr());
    Vec eta_coords = hh_class(cx, eta).coords;
    r.coords(name, eta_coords, n);
    r.verdict("obstruction class equals " + name, ob.level == n && ob.coords == eta_coords);
    if (o.witness && ob.rep)
        r.witness("obstruction cocycle", cochain_text(*ob.rep));
    r.refuse("the identity does not lift: obstruction at level " + std::to_string(ob.level));
}

void moore_command(const Document& doc, const Options& o, Report& r)
{
    std::string name = o.twisted;
    if (name.empty()) {
        for (auto& s : doc.sections)
            if (s.kind == "twisted" && doc.h0.count(doc.twisted.at(s.name).over)) {
                name = s.name;
                break;
            }
        if (name.empty())
            throw std::invalid_argument("no twisted complex over an 'h0' category");
    }
    auto it = doc.twisted.find(name);
    if (it == doc.twisted.end())
        throw std::invalid_argument("no twisted named '" + name + "'");
    const std::string& over = it->second.over;
    if (!doc.h0.count(over))
        throw std::invalid_argument("twisted " + name + " is not over an 'h0' category");
    const H0Result& h = doc.h0.at(over);
    const std::string& bn = doc.h0_source.at(over);
    const TwObject& in = it->second.tw;
    int m = o.gap;
    std::set<Index> objs;
    for (auto& s : in.comps)
        objs.insert(s.obj);
    GapReport g = gap_check(*h.g.src, {objs.begin(), objs.end()}, m);
    r.verdict("gap " + std::to_string(m) + " in " + bn, g.ok,
              g.ok ? "" : "H^" + std::to_string(g.blocking_degree) + " is nonzero");
    if (!g.ok) {
        r.refuse("the category is not " + std::to_string(m) + "-gapped on the components");
        return;
    }
    TwObject l;
    try {
        l = moore_object(h, in, m);
    } catch (const std::invalid_argument& e) {
        r.refuse(e.what());
        return;
    }
    r.verdict("maurer-cartan L(" + name + ")", mc_residual(l).empty());
    TwObject back = apply_g(h, l);
    r.verdict("G(L(" + name + ")) = " + name, back.comps == in.comps && back.delta == in.delta);
    int top = o.max_degree >= 0 ? std::min(o.max_degree, m) : m;
    std::vector<Index> up, down;
    TwHom hu(l, l), hd(in, in);
    for (int i = 0; i <= top; ++i) {
        up.push_back(hu.cohomology(i).dim());
        down.push_back(hd.cohomology(i).dim());
    }
    r.table("H^i End L(" + name + ")", up);
    r.table("H^i End " + name, down);
    r.verdict("dimensions agree for i <= " + std::to_string(top), up == down);
    if (o.witness)
        r.witness("L(" + name + ")", twisted_text("L", bn, l));
}

void massey_command(const Document& doc, const Options& o, Report& r)
{
    std::vector<std::string> names = o.maps;
    if (names.empty())
        for (auto& s : doc.sections)
            if (s.kind == "map")
                names.push_back(s.name);
    if (names.size() != 3)
        throw std::invalid_argument("massey needs exactly three maps f, g, h (use --maps)");
    std::vector<const Document::Map*> m;
    for (auto& n : names) {
        auto it = doc.maps.find(n);
        if (it == doc.maps.end())
            throw std::invalid_argument("no map named '" + n + "'");
        m.push_back(&it->second);
    }
    if (m[0]->to != m[1]->from || m[1]->to != m[2]->from)
        throw std::invalid_argument("maps are not composable");
    const TwObject &x = doc.twisted.at(m[0]->from).tw, &y = doc.twisted.at(m[1]->from).tw,
                   &z = doc.twisted.at(m[2]->from).tw, &u = doc.twisted.at(m[2]->to).tw;
    const Block &f = m[0]->block, &g = m[1]->block, &h = m[2]->block;
    if (!closed_degree0(x, y, f) || !closed_degree0(y, z, g) || !closed_degree0(z, u, h))
        throw std::invalid_argument("massey needs closed maps of degree 0");
    const Cat& base = *x.base;
    bool gf = !TwHom(x, z).primitive(0, compose(base, g, f)).has_value();
    bool hg = !TwHom(y, u).primitive(0, compose(base, h, g)).has_value();
    r.verdict("[" + names[1] + " " + names[0] + "] = 0", !gf);
    r.verdict("[" + names[2] + " " + names[1] + "] = 0", !hg);
    if (gf || hg) {
        r.refuse("the triple product is undefined: a composite is not null-homotopic");
        return;
    }
    MasseyHoms homs = massey_homs(x, y, z, u);
    MasseySet dg = massey_dg(homs, f, g, h);
    MasseySet tri = massey_tri(x, y, z, u, f, g, h);
    r.value("ambient dimension", dg.ambient_dim());
    r.value("indeterminacy dimension", dg.indeterminacy_dim());
    r.coords("representative", dg.coords());
    for (Index k = 0; k < dg.indeterminacy().size(); ++k)
        r.coords("indeterminacy " + std::to_string(k), dg.indeterminacy()[k]);
    r.verdict("dg and triangulated cosets agree", dg.same_coset(tri));
    TwObject sx = shift(x, 1);
    if (u.comps == sx.comps && u.delta == sx.delta)
        r.value("contains id", dg.contains(suspension_unit(x)));
    if (auto rng = make_rng(o)) {
        bool stable = true;
        for (int k = 0; k < 5; ++k)
            stable = stable && massey_dg(homs, f, g, h, rng.get()).same_coset(dg) &&
                     massey_tri(x, y, z, u, f, g, h, rng.get()).same_coset(dg);
        r.verdict("coset unchanged under 5 random re-choices", stable);
    }
    if (o.witness)
        r.witness("representative", block_text(base, dg.rep()));
}

bool redundant(const Document::Cover& c)
{
    const CoverPoset& p = c.poset;
    if (p.size() != (Index{1} << p.n) - 1)
        return false;
    for (auto& ring : c.rings)
        if (ring != c.rings[0])
            return false;
    for (auto& [ij, img] : p.rho)
        for (Index a = 0; a < img.size(); ++a)
            if (img[a] != Vec::unit(a, p.rings[0]->field().one()))
                return false;
    return true;
}

void cech_command(const Document& doc, const Options& o, Report& r)
{
    std::string name = pick(doc, o.cover, "cover");
    const auto& c = doc.covers.at(name);
    const CoverPoset& p = c.poset;
    r.table("cech O", cech_complex(p, structure_sheaf(p, false)).cohomology_dims());
    int top = o.max_degree >= 0 ? o.max_degree : 3;
    CoverCat x = build_cover_cat(p);
    CoverBimodule po = Pi_star(p, x, structure_sheaf(p, true));
    std::vector<Index> cover = hh_dims(x.cat, po.mod, top);
    r.table("hh cover", cover);
    bool red = redundant(c);
    r.value("redundant", red);
    if (red) {
        CatPtr ring = p.rings[0];
        std::vector<Index> plain = hh_dims(ring, std::make_shared<Bimodule>(diagonal(ring)), top);
        r.table("hh " + c.rings[0], plain);
        r.verdict("cover and ring Hochschild cohomology agree", cover == plain);
    }
}

}  // namespace

Report run(const std::string& subcommand, const Document& doc, std::string_view input, const Options& opts)
{
    Report r(subcommand, input, doc.field.name());
    if (subcommand == "check")
        check(doc, opts, r);
    else if (subcommand == "hh")
        hh_command(doc, opts, r);
    else if (subcommand == "deform")
        deform_command(doc, opts, r);
    else if (subcommand == "obstruct")
        obstruct_command(doc, opts, r);
    else if (subcommand == "moore")
        moore_command(doc, opts, r);
    else if (subcommand == "massey")
        massey_command(doc, opts, r);
    else if (subcommand == "cech")
        cech_command(doc, opts, r);
    else
        throw std::invalid_argument("unknown subcommand '" + subcommand + "'");
    return r;
}

}  // namespace cli
