#include "hsg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>

namespace hsg {

int CayleyBall::vertex_of(const Element& e) const {
    auto it = index.find(e);
    return it == index.end() ? -1 : it->second;
}

CayleyBall build_ball(OraclePtr oracle, int radius, size_t cap) {
    if (radius < 1) throw std::invalid_argument("ball radius must be >= 1");
    CayleyBall b;
    b.oracle = oracle;
    b.radius = radius;
    const SemigroupOracle& o = *oracle;

    if (o.monoid_mode()) {
        b.elements.push_back(o.identity());  // vertex 0 = * = 1
    } else {
        b.elements.push_back("*");  // fresh basepoint, not an element
    }
    b.star = 0;
    for (const auto& entry : ball(o, radius, cap)) {
        if (o.monoid_mode() && entry.element == o.identity()) continue;
        b.elements.push_back(entry.element);
    }
    for (int v = 0; v < static_cast<int>(b.elements.size()); ++v) b.index[b.elements[v]] = v;

    b.directed.assign(b.elements.size(), {});
    b.undirected.assign(b.elements.size(), {});
    auto add = [&](int s, Letter a, int t) {
        b.directed[s].push_back({a, t});
        b.undirected[s].push_back(t);
        b.undirected[t].push_back(s);
    };
    for (int v = 0; v < static_cast<int>(b.elements.size()); ++v) {
        for (Letter a = 0; a < o.alphabet().size(); ++a) {
            Element target;
            if (v == b.star) {
                target = o.monoid_mode() ? o.product(b.elements[v], o.generator(a))
                                         : o.generator(a);
            } else {
                target = o.product(b.elements[v], o.generator(a));
            }
            int t = b.vertex_of(target);
            if (t >= 0) add(v, a, t);
        }
    }
    return b;
}

std::vector<int> distances_from(const CayleyBall& ball, const std::vector<int>& sources) {
    std::vector<int> dist(ball.elements.size(), -1);
    std::queue<int> q;
    for (int s : sources)
        if (s >= 0 && dist[s] < 0) {
            dist[s] = 0;
            q.push(s);
        }
    while (!q.empty()) {
        int s = q.front();
        q.pop();
        for (int t : ball.undirected[s])
            if (dist[t] < 0) {
                dist[t] = dist[s] + 1;
                q.push(t);
            }
    }
    return dist;
}

std::vector<int> path_vertices(const CayleyBall& ball, int base, const Word& w) {
    const SemigroupOracle& o = *ball.oracle;
    std::vector<int> out = {base};
    Element cur;
    bool at_star = (base == ball.star) && !o.monoid_mode();
    if (!at_star) cur = ball.elements[base];
    for (Letter a : w) {
        cur = at_star ? o.generator(a) : o.product(cur, o.generator(a));
        at_star = false;
        int v = ball.vertex_of(cur);
        if (v < 0) throw std::runtime_error("path leaves the ball (grow the radius)");
        out.push_back(v);
    }
    return out;
}

namespace {

constexpr int kUnreachable = 1 << 28;

int max_dist_to(const CayleyBall& ball, const std::vector<int>& from_path,
                const std::vector<int>& to_set) {
    std::vector<int> dist = distances_from(ball, to_set);
    int worst = 0;
    for (int v : from_path) worst = std::max(worst, dist[v] < 0 ? kUnreachable : dist[v]);
    return worst;
}

}  // namespace

int side_distance(const CayleyBall& ball, const Triangle& t, int basepoint, bool all_sides) {
    int p = basepoint < 0 ? ball.star : basepoint;
    std::vector<int> pu = path_vertices(ball, p, t.u);
    std::vector<int> pv = path_vertices(ball, pu.back(), t.v);
    std::vector<int> pw = path_vertices(ball, p, t.w);
    if (pv.back() != pw.back())
        throw std::invalid_argument("not a triangle: uv and w end at different vertices");

    auto join = [](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> out = a;
        out.insert(out.end(), b.begin(), b.end());
        return out;
    };
    int d = max_dist_to(ball, pw, join(pu, pv));
    if (all_sides) {
        d = std::max(d, max_dist_to(ball, pu, join(pv, pw)));
        d = std::max(d, max_dist_to(ball, pv, join(pu, pw)));
    }
    return d;
}

DeltaReport measure_delta(const Combing& c, int maxlen, size_t cap) {
    const SemigroupOracle& o = *c.oracle;
    auto minimal = minimal_combing_words(o, c.r, maxlen, cap);

    DeltaReport report;
    report.maxlen = maxlen;

    int radius = maxlen + 4;
    for (int attempt = 0; attempt < 5; ++attempt) {
        CayleyBall near = build_ball(c.oracle, radius, cap);
        CayleyBall far = build_ball(c.oracle, radius + 2, cap);
        report.delta = 0;
        report.triangles = 0;
        bool stable = true;
        for (const auto& [e1, m1] : minimal) {
            for (const auto& [e2, m2] : minimal) {
                auto it = minimal.find(o.product(e1, e2));
                if (it == minimal.end()) continue;
                const auto& mw = it->second;
                if (m1.length + m2.length + mw.length > maxlen) continue;
                Triangle t{m1.word, m2.word, mw.word};
                int d_near = side_distance(near, t);
                int d_far = side_distance(far, t);
                if (d_near != d_far) {
                    stable = false;
                    break;
                }
                ++report.triangles;
                if (d_near > report.delta) {
                    report.delta = d_near;
                    report.worst = t;
                }
            }
            if (!stable) break;
        }
        if (stable) return report;
        radius += 2;  // truncation guard tripped; grow and re-measure
    }
    throw std::runtime_error("measure_delta: ball radius did not stabilize");
}

namespace {

void anchored_fit(FitReport& report) {
    double k1 = 0;
    for (const auto& s : report.samples)
        if (s.n <= 2) k1 = std::max(k1, static_cast<double>(s.max_dist));
    double k2 = 0;
    for (const auto& s : report.samples)
        if (s.n >= 3)
            k2 = std::max(k2, (s.max_dist - k1) / std::log2(static_cast<double>(s.n)));
    report.k1 = k1;
    report.k2 = std::max(k2, 0.0);
}

}  // namespace

FitReport measure_log_neighborhood(const Combing& c, int maxlen, size_t cap) {
    const SemigroupOracle& o = *c.oracle;
    auto minimal = minimal_combing_words(o, c.r, maxlen + 6, cap);
    CombingWords all = combing_words_by_element(o, sigma_plus(o.alphabet()), maxlen, cap);

    int radius = maxlen + 8;
    CayleyBall ball_ = build_ball(c.oracle, radius, cap);

    FitReport report;
    std::map<int, FitSample> by_len;
    for (size_t i = 0; i < all.words.size(); ++i) {
        const Word& w = all.words[i];
        auto it = minimal.find(all.elements[i]);
        if (it == minimal.end()) {
            ++report.skipped;
            continue;
        }
        std::vector<int> pw = path_vertices(ball_, ball_.star, w);
        std::vector<int> pv = path_vertices(ball_, ball_.star, it->second.word);
        int d = max_dist_to(ball_, pv, pw);
        auto& s = by_len[static_cast<int>(w.size())];
        s.n = static_cast<int>(w.size());
        s.max_dist = std::max(s.max_dist, d);
        ++s.count;
        ++report.pairs;
    }
    for (const auto& [n, s] : by_len) {
        (void)n;
        report.samples.push_back(s);
    }
    anchored_fit(report);
    return report;
}

FitReport compare_combings(OraclePtr oracle, const Nfa& r1, const Nfa& r2, int maxlen,
                           size_t cap) {
    const SemigroupOracle& o = *oracle;
    if (r1.alphabet != o.alphabet() || r2.alphabet != o.alphabet())
        throw std::invalid_argument("compare_combings: merge the generator alphabets first");
    auto m1 = minimal_combing_words(o, r1, maxlen, cap);
    auto m2 = minimal_combing_words(o, r2, maxlen, cap);

    CayleyBall ball_ = build_ball(oracle, maxlen + 4, cap);
    FitReport report;
    std::map<int, FitSample> by_len;
    for (const auto& [e, w1] : m1) {
        auto it = m2.find(e);
        if (it == m2.end()) {
            ++report.skipped;
            continue;
        }
        const auto& w2 = it->second;
        std::vector<int> p1 = path_vertices(ball_, ball_.star, w1.word);
        std::vector<int> p2 = path_vertices(ball_, ball_.star, w2.word);
        int d = std::max(max_dist_to(ball_, p1, p2), max_dist_to(ball_, p2, p1));
        int n = std::max(w1.length, w2.length);
        auto& s = by_len[n];
        s.n = n;
        s.max_dist = std::max(s.max_dist, d);
        ++s.count;
        ++report.pairs;
    }
    for (const auto& [n, s] : by_len) {
        (void)n;
        report.samples.push_back(s);
    }
    anchored_fit(report);
    return report;
}

int ball_intersection_distance(OraclePtr oracle, const std::vector<Word>& paths,
                               int radius_margin, size_t cap) {
    if (paths.empty()) throw std::invalid_argument("need at least one path");
    size_t longest = 0;
    for (const auto& p : paths) longest = std::max(longest, p.size());
    int radius = static_cast<int>(longest) + radius_margin;
    CayleyBall ball_ = build_ball(oracle, radius, cap);

    std::vector<std::vector<int>> verts;
    for (const auto& p : paths) verts.push_back(path_vertices(ball_, ball_.star, p));
    int target = verts[0].back();
    for (const auto& pv : verts)
        if (pv.back() != target)
            throw std::invalid_argument("paths do not share an endpoint");

    // score(v) = max over paths of d(v, path)
    std::vector<int> score(ball_.elements.size(), 0);
    for (const auto& pv : verts) {
        std::vector<int> dist = distances_from(ball_, pv);
        for (size_t v = 0; v < score.size(); ++v)
            score[v] = std::max(score[v], dist[v] < 0 ? kUnreachable : dist[v]);
    }

    for (int d = 0; d <= radius; ++d) {
        // Directed reachability * -> target through {v : score(v) <= d}.
        if (score[ball_.star] > d || score[target] > d) continue;
        std::vector<char> seen(ball_.elements.size(), 0);
        std::queue<int> q;
        seen[ball_.star] = 1;
        q.push(ball_.star);
        bool found = false;
        while (!q.empty() && !found) {
            int s = q.front();
            q.pop();
            for (auto [a, t] : ball_.directed[s]) {
                (void)a;
                if (seen[t] || score[t] > d) continue;
                if (t == target) {
                    found = true;
                    break;
                }
                seen[t] = 1;
                q.push(t);
            }
        }
        if (found || ball_.star == target) return d;
    }
    throw std::runtime_error("ball_intersection_distance: no path within the ball cap");
}

}  // namespace hsg
