#pragma once

#include <memory>
#include <optional>

#include "hocat/ainf.hpp"
#include "hocat/modules.hpp"

namespace hocat {

enum class Flavor { direct, dual };

/* c_N(eta) in Ext^n(N, M (x) N), or c*_N(eta) in Ext^n(Hom(M, N), N), through HH^n(a, Hom_k(X, Y)). */
struct CharResult {
    Flavor flavor = Flavor::direct;
    HomK coeff;                        // Hom_k(X, Y)
    std::vector<Vec> on_elements;      // image in coeff of each element of M
    std::optional<TensorModule> tensor;
    std::optional<HomModule> hom;
    std::optional<HochCochain> image;
    Vec coords;                        // class coordinates in HH^n(a, coeff)
    Index ext_dim = 0;
    bool vanishes() const { return coords.empty(); }
};

CharResult char_map(const HochCochain& eta, ModPtr n, Flavor flavor);

struct ModuleLift {
    bool lifted = false;
    CharResult c;
    std::optional<HochCochain> xi;            // d_Hoch xi = c_U(eta)
    std::optional<CohomologyClass> obstruction;
    std::shared_ptr<Cat> lambda;              // lower triangular endomorphism category of U'
    std::shared_ptr<Cofunctor> functor;       // a_eta -> lambda
};

/* Lift (direct) or colift (dual) of U to a_eta; the witness is checked against the functor equations. */
ModuleLift lift_module(ModPtr u, BimodPtr m, const HochCochain& eta, Flavor flavor);

}  // namespace hocat
