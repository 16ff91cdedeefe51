#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hocat/twcx.hpp"

namespace hocat {

/* The six Hom complexes used by a triple X -f-> Y -g-> Z -h-> U. */
struct MasseyHoms {
    std::shared_ptr<const TwHom> xy, yz, zu, xz, yu, xu;
};

MasseyHoms massey_homs(const TwObject& x, const TwObject& y, const TwObject& z, const TwObject& u);
MasseyHoms filt_massey_homs(const FiltObject& x, const FiltObject& y, const FiltObject& z, const FiltObject& u);

/* A coset rep + h H^-1(X, Z) + H^-1(Y, U) f inside H^-1(X, U). */
class MasseySet {
  public:
    MasseySet(std::shared_ptr<const TwHom> xu, Block rep, const std::vector<Block>& generators);

    const Block& rep() const { return rep_; }
    const Vec& coords() const { return coords_; }
    // Class coordinates of the generators of the indeterminacy.
    const std::vector<Vec>& indeterminacy() const { return gens_; }
    Index indeterminacy_dim() const { return span_.rank(); }
    Index ambient_dim() const { return h_->dim(); }

    Vec class_of(const Block& cocycle) const;  // degree -1 cocycle of X -> U
    bool contains_class(const Vec& coords) const;
    bool contains(const Block& cocycle) const { return contains_class(class_of(cocycle)); }
    bool same_coset(const MasseySet& o) const;
    std::string str() const;

  private:
    std::shared_ptr<const TwHom> xu_;
    std::shared_ptr<Cohomology> h_;
    Block rep_;
    Vec coords_;
    std::vector<Vec> gens_;
    Reducer span_;
};

/* <h, g, f> from null-homotopies: b = h s - t f with d s = g f, d t = h g.
 * rng (optional) adds random cocycles to s and t.
 */
MasseySet massey_dg(const MasseyHoms& homs, const Block& f, const Block& g, const Block& h,
                    std::mt19937_64* rng = nullptr);

/* <h, g, f> by completing X -> Y -> C(f) -> Sigma X against X -> Y -> Z -> U in H^0(Tw a).
 * rng (optional) picks random completions a, b.
 */
MasseySet massey_tri(const TwObject& x, const TwObject& y, const TwObject& z, const TwObject& u, const Block& f,
                     const Block& g, const Block& h, std::mt19937_64* rng = nullptr);

/* The morphism X -> Sigma X of degree -1 with identity entries; its class is id_X in H^-1(X, Sigma X). */
Block suspension_unit(const TwObject& x);

/* A closed inverse up to homotopy, if x: A -> B is an isomorphism in H^0. */
std::optional<Block> h0_inverse(const TwObject& a, const TwObject& b, const Block& x);

/* x: C(f) -> Z with [x i] = [g] and [h x] = [p], for h: Z -> Sigma X. */
std::optional<Block> triangle_completion(const TwObject& x, const TwObject& y, const TwObject& z, const Block& f,
                                         const Block& g, const Block& h);

struct Triangle {
    TwObject x, y, z;
    Block f, g, h;  // h: Z -> Sigma X
};

struct TriangleCertificate {
    bool distinguished = false;
    std::string failed;          // the clause that failed
    Vec phi;                     // G(theta), coordinates in H^-1(X, Sigma X) of the source
    std::optional<Block> x;      // C(L f) -> L Z, the completing isomorphism
    std::optional<Block> x_inverse;
};

/* Criterion for L X -> L Y -> L Z -> Sigma L X to be distinguished, with G = apply_g a strict left inverse of L.
 * s lives over h.h0 and is assumed distinguished; t over h.g.src is its image under L.
 */
TriangleCertificate certify_triangle(const H0Result& h, const Triangle& s, const Triangle& t);

/* gr(phi)_i in <gr(h)_i, gr(g)_i, gr(f)_i> for every index i. */
struct GradedMembership {
    int index;
    bool member;
};

std::vector<GradedMembership> filtered_massey_gr(const FiltObject& x, const FiltObject& y, const FiltObject& z,
                                                 const FiltObject& u, const Block& f, const Block& g,
                                                 const Block& h, const Block& phi);

}  // namespace hocat
