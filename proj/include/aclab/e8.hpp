#pragma once

#include "aclab/pair.hpp"

namespace aclab {

// Root lattices are taken negative definite throughout: every root has
// square -2 and adjacent simple roots pair to +1.

struct ADEComponent {
    char family = 'A';  // 'A', 'D', or 'E'
    std::size_t n = 0;

    bool operator==(const ADEComponent& o) const { return family == o.family && n == o.n; }
    bool operator<(const ADEComponent& o) const {
        return family != o.family ? family < o.family : n < o.n;
    }
};

struct ADEType {
    std::vector<ADEComponent> components;  // kept sorted

    bool operator==(const ADEType& o) const { return components == o.components; }
    std::string to_string() const;  // "E7", "A1+A2", "0"
};

// The E8 lattice on the simple-root basis (Bourbaki numbering), negative
// definite.
LatticePtr e8_lattice();

// All 240 roots, in lexicographic coordinate order.
const std::vector<ClassVec>& e8_roots();

// All v with v^2 = -norm in a negative definite lattice (exact
// Fincke-Pohst), lexicographic order.
std::vector<ClassVec> short_vectors(const LatticePtr& l, const Int& norm);

// Simple-root chain realizing A_{r-1} inside E8.
struct SubsystemEmbedding {
    std::vector<ClassVec> images;
};

// Representatives of the A_{r-1} -> E8 embedding classes modulo W(E8),
// produced by the Borel-de Siebenthal level walk with invariant-based
// deduplication.
std::vector<SubsystemEmbedding> bds_embeddings(std::size_t r_minus_1);

// Type of the root system orthogonal to the embedded chain.
ADEType complement_type(const SubsystemEmbedding& emb);

// Torsion of E8 / (span of the chain).
AbelianGroupStructure quotient_torsion(const SubsystemEmbedding& emb);

// Classifies a reflection-closed set of (-2)-classes by extracting a simple
// system and reading off the Dynkin graph.
ADEType identify_ade(const std::vector<ClassVec>& roots);

struct ComplementRootInfo {
    std::size_t count = 0;
    bool spans = false;  // roots span the complement over Z
};
ComplementRootInfo root_count_in_complement(const SubsystemEmbedding& emb);

// The translation-type admissible isometry a_lambda of a strictly negative
// semidefinite pair: needs a section class sigma0 (sigma0^2 = -1,
// sigma0.[D] = 1) and lambda orthogonal to sigma0, [D] and every [D_i].
IntIsometry semidef_gamma_structure(const AnticanonicalPair& p, const ClassVec& sigma0,
                                    const ClassVec& lambda);

struct EmbeddingReport {
    std::size_t r = 0;
    bool primitive = true;
    ADEType complement;
    AbelianGroupStructure torsion;
    std::size_t complement_root_count = 0;
    bool roots_span_complement = false;
};

// The full classification table for r = 2..9.
std::vector<EmbeddingReport> ade_embedding_table();

}  // namespace aclab
