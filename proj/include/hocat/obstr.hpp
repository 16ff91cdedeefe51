#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hocat/ainf.hpp"
#include "hocat/hoch.hpp"

namespace hocat {

/* Class of (b o F - F o b)_{i+1} in HH^{i+1}(c, H^{1-i}(target)). */
struct ObstructionClass {
    int level = 0;
    int internal_degree = 0;
    BimodPtr coeff;
    std::optional<HochCochain> rep;
    Vec coords;
    std::string provenance;
    bool vanishes() const { return coords.empty(); }
};

/* A cofunctor from a degree-0 category whose functor equations hold through arity `level`. */
struct AnFunctor {
    std::shared_ptr<Cofunctor> f;
    int level = 0;
};

Report certify(const AnFunctor& f);

/* H^deg(target) restricted along F_1 as a bimodule over the source. */
struct CohomologyBimodule {
    std::shared_ptr<Bimodule> m;
    // rep[e] is a cocycle representative (target coordinates) of element e
    std::vector<Vec> rep;
    std::vector<std::unique_ptr<HomCohomology>> parts;  // per (src, tgt) object pair of the source
    Vec project(Index a, Index b, const Vec& v) const;  // target cocycle -> element coordinates
};

CohomologyBimodule cohomology_bimodule(const Cofunctor& f, int deg);

struct ExtendResult {
    std::optional<AnFunctor> next;
    ObstructionClass obstruction;
};

/* One step A_i -> A_{i+1}; rng (optional) adds random kernel elements to every choice. */
ExtendResult extend_step(const AnFunctor& f, std::mt19937_64* rng = nullptr);

struct LiftResult {
    bool lifted = false;
    std::shared_ptr<Cofunctor> functor;  // the A_level functor reached
    int level = 0;
    std::vector<ObstructionClass> steps;  // one entry per attempted level >= 3
    std::optional<ObstructionClass> obstruction;
};

/* Lifts a functor c -> H^0(target), given on arrows by degree-0 cocycle representatives. */
LiftResult lift_functor(CatPtr c, AInfPtr target, const std::vector<Index>& on_objects,
                        const std::vector<Vec>& on_arrows, int max_arity, std::mt19937_64* rng = nullptr);
LiftResult lift_functor(const GradedFunctor& f, AInfPtr target, int max_arity, std::mt19937_64* rng = nullptr);

struct TildeResult {
    std::shared_ptr<Cofunctor> functor;  // c -> a_eta, present on success
    std::optional<CohomologyClass> refusal;  // nonzero class of the pulled-back cocycle
    std::shared_ptr<Bimodule> pulled;
};

/* Pullback of eta along f, and the A-infinity functor c -> a_eta over f when it is a coboundary. */
TildeResult construct_tilde_f(const GradedFunctor& f, BimodPtr m, const HochCochain& eta);

struct PulledBimodule {
    std::shared_ptr<Bimodule> m;
    std::vector<Index> origin;  // element of the original bimodule behind each new element
};

PulledBimodule pull_back(const Bimodule& m, const GradedFunctor& f);
HochCochain pull_back(const HochCochain& eta, const GradedFunctor& f, const PulledBimodule& pm);

struct GammaReport {
    std::vector<int> negative_ext;  // q with H^{-q}(End T) != 0, q >= 1
    int top = 0;                    // largest such q, 0 if none
    LiftResult lift;
};

/* Obstructions to lifting an action Gamma -> H^0(End T) to an A-infinity map into End T. */
GammaReport gamma_obstructions(CatPtr gamma, CatPtr end_t, const std::vector<Vec>& action, int max_arity,
                               std::mt19937_64* rng = nullptr);

}  // namespace hocat
