#pragma once

#include <cqp/seed.hpp>

#include <string>
#include <utility>
#include <vector>

namespace cqp {

// A simply laced Dynkin type with a fixed orientation, vertices 0..rank-1.
//   A_n: 0 -> 1 -> ... -> n-1
//   D_n: chain 0 -> ... -> n-3, then n-3 -> n-2 and n-3 -> n-1
//   E_n: chain 0 -> ... -> n-2, then 2 -> n-1
struct DynkinSpec {
    char letter = 'A';
    int rank = 1;
    std::vector<std::pair<int, int>> arrows;
    int positive_roots() const;
    int coxeter_number() const;
    // Diagram automorphism induced by -w0.
    std::vector<int> involution() const;
    std::vector<std::pair<int, int>> edges() const { return arrows; }
};

DynkinSpec dynkin(char letter, int rank);
DynkinSpec parse_dynkin(const std::string& s);  // "A3", "D4", ...

// One indecomposable of the AR quiver: the module τ^{-level} P_orbit.
struct ARVertex {
    int orbit;
    int level;
    Vec dim;
};

// AR quiver by knitting from the projectives, in knitting order.
std::vector<ARVertex> knit_ar_quiver(const DynkinSpec& q);

struct CatalogSeed {
    Seed seed;
    // Human-readable name per vertex, e.g. "P2", "tau^-1 P1", "P1[1]", "(1,2)".
    std::vector<std::string> names;
    // Frozen vertices indexing the crystal; all frozen vertices unless the family says otherwise.
    std::vector<int> I;
};

// AR quiver with translation arrows M -> τM; frozen = projectives.
// Vertex order: non-projective modules in knitting order, then P_1..P_n.
CatalogSeed unipotent_seed(const DynkinSpec& q);
// Adds a frozen vertex at the end of each τ-orbit, the shifted projective τ^{-1} I
// terminating row i, labelled ī; order: unipotent, then 1̄..n̄. I = the projectives.
CatalogSeed base_affine_seed(const DynkinSpec& q);
// Grid quiver of the Grassmannian with n = k + l frozen vertices, mutable vertices
// first, frozen in cyclic label order 0..n-1.
CatalogSeed grassmannian_seed(int k, int l);

struct OmegaSeed {
    CatalogSeed cs;
    std::vector<Vec> W;  // 2n x n grading matrix, columns wt_i
};
// Q acyclic on n vertices given by arrows (with repetition for multiplicity).
OmegaSeed omega_seed(int n, const std::vector<std::pair<int, int>>& arrows);

// Arms 0 -> 1_k -> ... -> (a_k-1)_k -> ∞ with max(r-2,0) arrows ∞ -> 0 (a single arm
// also gets the trivial arm 0 -> ∞),
// extended by frozen S_{j_k} and T_k (weight e_0 - e_{1_k}) for each arm.
CatalogSeed canonical_type_seed(const std::vector<int>& a);

// Resolves "unipotent:A3", "base-affine:D4", "grassmannian:2x3", "omega:A3", "omega:<file>",
// "canonical:2,3,6", or a path to a seed JSON file.
CatalogSeed catalog_lookup(const std::string& name);

}  // namespace cqp
