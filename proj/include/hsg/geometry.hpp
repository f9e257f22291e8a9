/* geometry.hpp -- Cayley graphs at desk scale: balls, triangles, the
 * thin-triangle measurement, logarithmic neighborhoods, ball-intersection
 * distance, and combing comparison. Distances are measured between vertices
 * only (the unit-interval edge metric adds at most 1 and is dropped).
 */
#pragma once

#include "hsg/hyper.hpp"
#include "hsg/oracle.hpp"

namespace hsg {

/// A finite piece of the Cayley graph: * plus all elements representable by
/// words of length <= radius, with directed generator edges and the induced
/// undirected adjacency. In monoid mode * is the identity vertex; otherwise
/// it is a fresh vertex with out-edges only.
struct CayleyBall {
    OraclePtr oracle;
    int radius = 0;
    std::vector<Element> elements;  // vertex -> element; vertex 0 is *
    std::unordered_map<Element, int> index;
    std::vector<std::vector<std::pair<Letter, int>>> directed;
    std::vector<std::vector<int>> undirected;
    int star = 0;

    int vertex_of(const Element& e) const;
};

CayleyBall build_ball(OraclePtr oracle, int radius, size_t cap = 1u << 20);

/// Multi-source BFS over the undirected adjacency; unreachable = -1.
std::vector<int> distances_from(const CayleyBall& ball, const std::vector<int>& sources);

/// Vertex sequence of the path labeled w starting at `base`; throws when the
/// path leaves the ball.
std::vector<int> path_vertices(const CayleyBall& ball, int base, const Word& w);

struct Triangle {
    Word u, v, w;
};

/// max over vertices on side w of the distance to the union of sides u and v
/// (all three sides pairwise with all_sides). Basepoint defaults to *.
int side_distance(const CayleyBall& ball, const Triangle& t, int basepoint = -1,
                  bool all_sides = false);

struct DeltaReport {
    int maxlen = 0;
    int delta = 0;
    Triangle worst;
    long long triangles = 0;
};

/// max of side_distance over all minimal R-triangles with |u|+|v|+|w| <=
/// maxlen, basepoint *; measured twice with ball radii r and r+2 and grown
/// until both agree (truncation guard).
DeltaReport measure_delta(const Combing& c, int maxlen, size_t cap = 1u << 20);

struct FitSample {
    int n = 0;         // |w| (or max of the two path lengths)
    int max_dist = 0;  // worst distance among samples with this n
    long long count = 0;
};

struct FitReport {
    std::vector<FitSample> samples;
    double k1 = 0;  // anchored on the short-word samples (n <= 2)
    double k2 = 0;  // least slope with k1 + k2·log2(n) dominating the rest
    long long pairs = 0;
    long long skipped = 0;  // elements with no minimal R-word in budget
};

/// For every w with |w| <= maxlen and the minimal R-word v0 of the same
/// element, the max over v0-vertices of the distance to w's vertex set.
FitReport measure_log_neighborhood(const Combing& c, int maxlen, size_t cap = 1u << 20);

/// Hausdorff-style comparison of minimal words from two combings over the
/// same generators.
FitReport compare_combings(OraclePtr oracle, const Nfa& r1, const Nfa& r2, int maxlen,
                           size_t cap = 1u << 20);

/// Least d such that some directed path from * to the common endpoint stays
/// within distance d of every given path.
int ball_intersection_distance(OraclePtr oracle, const std::vector<Word>& paths,
                               int radius_margin = 4, size_t cap = 1u << 20);

}  // namespace hsg
