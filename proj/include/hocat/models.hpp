#pragma once

#include <string>
#include <vector>

#include "hocat/glc.hpp"

namespace hocat {

/* k[x]/(x^m) as a one-object category with basis 1, x, x2, ..., x{m-1}. */
std::shared_ptr<Cat> truncated_poly(Field k, int m, const std::string& var = "x", const std::string& obj = "o");

/* Upper triangular 2x2 matrices on the basis 1, e = e11, u = e12. */
std::shared_ptr<Cat> upper_triangular2(Field k);

/* DG algebra on 1, x, x2, x3 (degree 0), e, ex (degree -1) with d e = x2, d ex = x3.
 * H^0 = k[x]/(x^2) and H^-1 = 0.  With ext_degree < -1 a square-zero copy t, tx of H^0 is
 * added in that degree, giving H^ext_degree = k[x]/(x^2).
 */
std::shared_ptr<Cat> gapped_dual_numbers(Field k, int ext_degree = 0);

struct QuiverArrow {
    std::string name;
    Index src, tgt;
};

/* Path category of a quiver modulo monomial relations and all paths longer than max_len.
 * A relation is a path given as arrow names, last arrow first ("b a" means b o a).
 */
std::shared_ptr<Cat> path_category(Field k, const std::vector<std::string>& objects,
                                   const std::vector<QuiverArrow>& arrows,
                                   const std::vector<std::vector<std::string>>& zero_paths, int max_len);

}  // namespace hocat
