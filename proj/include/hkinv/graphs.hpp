#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hkinv/fujiki.hpp"
#include "hkinv/series.hpp"

namespace hkinv {

// A closed trivalent graph fell outside the reduction tables (more than 8
// vertices, or a class the relation closure cannot express in the catalog).
struct UnreducibleGraph : Unsupported {
    using Unsupported::Unsupported;
};
// b_gamma requested for a graph with no table-backed formula.
struct UnknownGamma : Unsupported {
    using Unsupported::Unsupported;
};

// ---------------------------------------------------------------------------
// Closed trivalent graphs with vertex orientations.
//
// Half-edge h = 3*v + s lives at vertex v in slot s; the cyclic order of the
// slots (0,1,2) is the orientation at v.  match[h] is the partner half-edge.
// The antisymmetry relation makes a slot transposition cost a sign, so a
// graph equals +-(canonical representative), or zero when some automorphism
// reverses an odd number of vertex orientations (loops are the basic case).
// ---------------------------------------------------------------------------

struct ClosedGraph {
    int nv = 0;
    std::vector<int> match;

    int vertex_of(int h) const { return h / 3; }
};

namespace graph_detail {

constexpr int kMaxClosedVertices = 8;

// Parity of a permutation of {0,1,2} given as the image array.
inline int perm3_sign(const std::array<int, 3>& img) {
    int inv = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (img[i] > img[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

struct CanonClass {
    std::string code;  // canonical adjacency code of the underlying multigraph
    int sign = 0;      // 0: the AS class vanishes; else +-1 vs the canonical slots
};

class Canonicalizer {
  public:
    explicit Canonicalizer(const ClosedGraph& g) : g_(g), nv_(g.nv) {
        mult_.assign(nv_, std::vector<int>(nv_, 0));
        for (int h = 0; h < 3 * nv_; ++h) {
            int u = h / 3, v = g.match[h] / 3;
            if (u == v) has_loop_ = true;
            mult_[u][v]++;
        }
        // mult counts half-edges, so mult[u][v] is the edge multiplicity for
        // u != v and twice the loop count on the diagonal.
    }

    CanonClass run() {
        CanonClass out;
        if (has_loop_) {
            // A loop's two half-edges sit at one vertex; swapping them is an
            // automorphism reversing a single orientation.
            out.code = loop_code();
            out.sign = 0;
            return out;
        }
        best_.clear();
        perm_.assign(nv_, -1);
        used_.assign(nv_, false);
        search(0);
        out.code = best_;
        int seen = 0;
        for (const auto& perm : optimal_perms_) {
            int s = extension_sign(perm);
            seen |= (s > 0) ? 1 : 2;
            if (seen == 3) break;
        }
        out.sign = (seen == 3) ? 0 : ((seen & 1) ? 1 : -1);
        return out;
    }

  private:
    const ClosedGraph& g_;
    int nv_;
    std::vector<std::vector<int>> mult_;
    bool has_loop_ = false;

    std::string best_;
    std::vector<int> perm_;  // canonical position -> original vertex
    std::vector<bool> used_;
    std::vector<std::vector<int>> optimal_perms_;

    std::string loop_code() const {
        // Degenerate classes never need a stable cross-graph identity; a
        // fixed marker keeps them distinct from genuine codes.
        return std::string("0");
    }

    // Lexicographically smallest row-by-row adjacency code over all vertex
    // orders, collecting every order that achieves it.  A strictly smaller
    // prefix dooms the incumbent (lexicographic order), so the incumbent is
    // dropped and re-established by the first leaf of the better subtree.
    void search(int depth) {
        if (depth == nv_) {
            std::string code = code_of(perm_);
            if (best_.empty() || code < best_) {
                best_ = code;
                optimal_perms_.clear();
            }
            if (code == best_) optimal_perms_.push_back(perm_);
            return;
        }
        for (int v = 0; v < nv_; ++v) {
            if (used_[v]) continue;
            perm_[depth] = v;
            if (!best_.empty()) {
                int cmp = compare_prefix(depth);
                if (cmp > 0) continue;
                if (cmp < 0) {
                    best_.clear();
                    optimal_perms_.clear();
                }
            }
            used_[v] = true;
            search(depth + 1);
            used_[v] = false;
        }
    }

    // Compares the code row of position `depth` against best_'s row; the code
    // is the concatenation over i of (mult to positions 0..i-1).
    int compare_prefix(int depth) const {
        std::size_t offset = static_cast<std::size_t>(depth) * (depth - 1) / 2;
        for (int j = 0; j < depth; ++j) {
            char mine = static_cast<char>('0' + mult_[perm_[depth]][perm_[j]]);
            char theirs = best_[offset + j];
            if (mine != theirs) return mine < theirs ? -1 : 1;
        }
        return 0;
    }

    std::string code_of(const std::vector<int>& perm) const {
        std::string code;
        code.reserve(static_cast<std::size_t>(nv_) * (nv_ - 1) / 2);
        for (int i = 0; i < nv_; ++i)
            for (int j = 0; j < i; ++j)
                code.push_back(static_cast<char>('0' + mult_[perm[i]][perm[j]]));
        return code;
    }

    // Sign of one vertex-level isomorphism onto the canonical labeling, with
    // the half-edge extension fixed by bundle order.  Within a parallel
    // bundle the choice of extension is sign-neutral (an edge swap reverses
    // two orientations), so one extension per permutation suffices.
    int extension_sign(const std::vector<int>& perm) const {
        std::vector<int> pos(nv_);
        for (int p = 0; p < nv_; ++p) pos[perm[p]] = p;

        // Canonical slot layout: at canonical vertex p, slots are grouped by
        // neighbor position q in increasing order, bundle copies consecutive.
        std::vector<std::array<int, 3>> image(nv_);  // slot s of v -> canonical slot
        std::vector<std::vector<int>> next_slot(nv_, std::vector<int>(nv_, 0));
        std::vector<std::vector<int>> start(nv_, std::vector<int>(nv_, 0));
        for (int p = 0; p < nv_; ++p) {
            int acc = 0;
            for (int q = 0; q < nv_; ++q) {
                start[p][q] = acc;
                acc += mult_[perm[p]][perm[q]];
            }
        }
        // Assign bundle copies: iterate original half-edges in a fixed order
        // (by id at the endpoint whose canonical position is smaller) so both
        // ends of an edge land on the same copy index.
        std::vector<int> copy_index(3 * nv_, -1);
        for (int h = 0; h < 3 * nv_; ++h) {
            int h2 = g_.match[h];
            int p = pos[h / 3], q = pos[h2 / 3];
            if (p > q || (p == q)) continue;  // handle from the smaller side only
            int k = next_slot[p][q]++;
            copy_index[h] = k;
            copy_index[h2] = k;
        }
        int sign = 1;
        for (int v = 0; v < nv_; ++v) {
            int p = pos[v];
            std::array<int, 3> img{};
            for (int s = 0; s < 3; ++s) {
                int h = 3 * v + s;
                int q = pos[g_.match[h] / 3];
                img[s] = start[p][q] + copy_index[h];
            }
            sign *= perm3_sign(img);
        }
        return sign;
    }
};

inline CanonClass canonicalize(const ClosedGraph& g) { return Canonicalizer(g).run(); }

// Connected components as separate closed graphs (vertices renumbered).
inline std::vector<ClosedGraph> components(const ClosedGraph& g) {
    std::vector<int> comp(g.nv, -1);
    int ncomp = 0;
    for (int v0 = 0; v0 < g.nv; ++v0) {
        if (comp[v0] >= 0) continue;
        std::vector<int> stack{v0};
        comp[v0] = ncomp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int s = 0; s < 3; ++s) {
                int w = g.match[3 * v + s] / 3;
                if (comp[w] < 0) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
            }
        }
        ++ncomp;
    }
    std::vector<int> local(g.nv);
    std::vector<int> count(ncomp, 0);
    for (int v = 0; v < g.nv; ++v) local[v] = count[comp[v]]++;
    std::vector<ClosedGraph> out(ncomp);
    for (int c = 0; c < ncomp; ++c) {
        out[c].nv = count[c];
        out[c].match.assign(3 * count[c], -1);
    }
    for (int h = 0; h < 3 * g.nv; ++h) {
        int v = h / 3;
        int c = comp[v];
        int nh = 3 * local[v] + h % 3;
        int h2 = g.match[h];
        out[c].match[nh] = 3 * local[h2 / 3] + h2 % 3;
    }
    return out;
}

}  // namespace graph_detail

// ---------------------------------------------------------------------------
// Open diagrams: disjoint unions of wheels and struts, with an ordered list
// of univalent legs.
// ---------------------------------------------------------------------------

struct Diagram {
    int nv = 0;
    std::vector<int> vmatch;  // 3*nv; partner half-edge, or -1 - k for leg k
    std::vector<int> legs;    // leg k -> anchored half-edge id, or -1 on a strut
    std::vector<std::pair<int, int>> struts;  // leg index pairs joined by a free edge

    int num_legs() const { return static_cast<int>(legs.size()); }
};

// The 2k-wheel w_{2k}: a cycle of 2k trivalent vertices, one leg each.
// Orientation at vertex i: (edge to previous, edge to next, leg).
inline Diagram wheel(unsigned vertices) {
    if (vertices < 2 || vertices % 2 != 0)
        throw InvalidInput("wheel: need an even vertex count >= 2");
    Diagram d;
    d.nv = static_cast<int>(vertices);
    d.vmatch.assign(3 * d.nv, -1);
    for (int i = 0; i < d.nv; ++i) {
        int next = (i + 1) % d.nv;
        d.vmatch[3 * i + 1] = 3 * next + 0;  // i's "next" meets next's "previous"
        d.vmatch[3 * next + 0] = 3 * i + 1;
        d.vmatch[3 * i + 2] = -1 - i;
        d.legs.push_back(3 * i + 2);
    }
    return d;
}

// The strut l: a single edge with two legs and no trivalent vertices.
inline Diagram strut() {
    Diagram d;
    d.legs = {-1, -1};
    d.struts = {{0, 1}};
    return d;
}

inline Diagram disjoint_union(const Diagram& a, const Diagram& b) {
    Diagram d = a;
    int hoff = 3 * a.nv;
    int loff = a.num_legs();
    d.nv += b.nv;
    for (int h = 0; h < 3 * b.nv; ++h) {
        int m = b.vmatch[h];
        d.vmatch.push_back(m >= 0 ? m + hoff : m - loff);
    }
    for (int leg : b.legs) d.legs.push_back(leg >= 0 ? leg + hoff : -1);
    for (auto [x, y] : b.struts) d.struts.emplace_back(x + loff, y + loff);
    return d;
}

// Product of wheels given by vertex counts, e.g. {2, 2, 4} = w2 w2 w4.
inline Diagram wheel_product(const std::vector<unsigned>& sizes) {
    Diagram d;
    bool first = true;
    for (unsigned s : sizes) {
        d = first ? wheel(s) : disjoint_union(d, wheel(s));
        first = false;
    }
    if (first) throw InvalidInput("wheel_product: empty product");
    return d;
}

inline Diagram strut_power(unsigned j) {
    if (j == 0) throw InvalidInput("strut_power: need j >= 1");
    Diagram d = strut();
    for (unsigned i = 1; i < j; ++i) d = disjoint_union(d, strut());
    return d;
}

// ---------------------------------------------------------------------------
// Graph vectors: rational combinations of disjoint unions of the catalog
// generators Theta, Theta2, Theta3, Theta4, Xi.  Theta3 only ever appears in
// intermediate values; the shipped identities all cancel it.
// ---------------------------------------------------------------------------

using GenId = std::uint8_t;
namespace gen {
inline constexpr GenId Theta = 1;
inline constexpr GenId Theta2 = 2;
inline constexpr GenId Theta3 = 3;
inline constexpr GenId Theta4 = 4;
inline constexpr GenId Xi = 5;
inline constexpr GenId FirstInternal = 16;
}  // namespace gen

using GraphMonomial = std::vector<GenId>;  // sorted; empty = the unit class

struct GraphVector {
    std::map<GraphMonomial, Rational> terms;

    GraphVector() = default;
    GraphVector(Rational constant) {
        if (!constant.is_zero()) terms[{}] = std::move(constant);
    }
    static GraphVector generator(GenId id, Rational coeff = Rational(1)) {
        GraphVector v;
        if (!coeff.is_zero()) v.terms.emplace(GraphMonomial{id}, std::move(coeff));
        return v;
    }

    bool is_zero() const { return terms.empty(); }

    Rational coeff(const GraphMonomial& m) const {
        auto it = terms.find(m);
        return it == terms.end() ? Rational(0) : it->second;
    }

    void add_term(const GraphMonomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    friend GraphVector operator+(const GraphVector& a, const GraphVector& b) {
        GraphVector r = a;
        for (const auto& [m, c] : b.terms) r.add_term(m, c);
        return r;
    }
    friend GraphVector operator-(const GraphVector& a, const GraphVector& b) {
        GraphVector r = a;
        for (const auto& [m, c] : b.terms) r.add_term(m, -c);
        return r;
    }
    friend GraphVector operator*(const Rational& s, const GraphVector& v) {
        GraphVector r;
        if (s.is_zero()) return r;
        for (const auto& [m, c] : v.terms) r.terms[m] = s * c;
        return r;
    }
    friend GraphVector operator*(const GraphVector& a, const GraphVector& b) {
        GraphVector r;
        for (const auto& [ma, ca] : a.terms)
            for (const auto& [mb, cb] : b.terms) {
                GraphMonomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                std::sort(m.begin(), m.end());
                r.add_term(m, ca * cb);
            }
        return r;
    }

    GraphVector pow(unsigned e) const {
        GraphVector r{Rational(1)};
        for (unsigned i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    friend bool operator==(const GraphVector&, const GraphVector&) = default;

    std::string to_string() const;
};

inline std::string generator_name(GenId id) {
    switch (id) {
        case gen::Theta: return "Theta";
        case gen::Theta2: return "Theta2";
        case gen::Theta3: return "Theta3";
        case gen::Theta4: return "Theta4";
        case gen::Xi: return "Xi";
        default: return "G" + std::to_string(id);
    }
}

inline std::string GraphVector::to_string() const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms) {
        if (!s.empty()) s += " + ";
        s += c.to_string();
        GenId run = 0;
        unsigned count = 0;
        auto flush = [&] {
            if (!count) return;
            s += "*" + generator_name(run);
            if (count > 1) s += "^" + std::to_string(count);
            count = 0;
        };
        for (GenId id : m) {
            if (id != run) {
                flush();
                run = id;
            }
            ++count;
        }
        flush();
    }
    return s;
}

// ---------------------------------------------------------------------------
// The AS/IHX quotient on <= 8 vertices.
//
// Built once by saturating the IHX relation set over every graph reachable
// from the shipped gluings and Gaussian-eliminating exactly over Q.  The
// catalog necklaces stay free generators whenever the relations allow; Xi is
// normalized from the 8-wheel gluing and cross-checked against the
// independent identities, so the whole construction is overdetermined and
// aborts on any inconsistency.
// ---------------------------------------------------------------------------

class GraphHomology {
  public:
    static const GraphHomology& instance() {
        static const GraphHomology h;
        return h;
    }

    // Sum over all leg bijections of the reduced glued class.  Mismatched leg
    // counts give the zero vector by convention.
    GraphVector glue(const Diagram& a, const Diagram& b) const {
        std::lock_guard<std::mutex> lock(mu_);
        return substituted(glue_raw(a, b));
    }

    // Class of one closed graph in catalog coordinates.
    GraphVector reduce(const ClosedGraph& g) const {
        std::lock_guard<std::mutex> lock(mu_);
        return substituted(classify_closed(g));
    }

    // Number of connected canonical classes the relation closure visited.
    std::size_t closure_size() const {
        std::lock_guard<std::mutex> lock(mu_);
        std::size_t n = 0;
        for (const auto& b : buckets_) n += b.second.graphs.size();
        return n;
    }

  private:
    struct GraphInfo {
        ClosedGraph rep;
        int sign = 0;  // sign of the representative against its canonical form
    };
    struct Relation {
        std::map<std::string, Rational> lhs;  // connected-class variables
        GraphVector rhs;                      // known (smaller-bucket) part
    };
    struct Bucket {
        std::map<std::string, GraphInfo> graphs;     // canonical code -> info
        std::vector<Relation> relations;
        std::map<std::string, GraphVector> resolved; // code -> catalog expression
        bool dirty = false;
    };

    mutable std::mutex mu_;
    mutable std::map<int, Bucket> buckets_;               // keyed by vertex count
    mutable std::map<std::string, GenId> extra_ids_;      // non-catalog free classes
    mutable GenId next_internal_ = gen::FirstInternal;
    // Canonical necklace codes; the sign relates the constructed necklace
    // (the class the generator id denotes) to the canonical representative.
    std::map<std::string, std::pair<GenId, int>> designated_;
    std::map<GenId, GraphVector> internal_subst_;         // Xi normalization

    GraphHomology() {
        for (unsigned beads = 1; beads <= 4; ++beads) {
            auto canon = graph_detail::canonicalize(necklace(beads));
            if (canon.sign != 0)
                designated_[canon.code] = {static_cast<GenId>(beads), canon.sign};
            else if (beads != 3)
                throw VerificationFailure("graph homology: necklace " + std::to_string(beads) +
                                          " is AS-degenerate");
        }
        // Mandatory-tier identities pin the orientation conventions.
        require(glue_raw(wheel(2), strut()), Rational(2) * GraphVector::generator(gen::Theta),
                "<w2, l> = 2 Theta");
        require(glue_raw(wheel(2), wheel(2)), Rational(2) * GraphVector::generator(gen::Theta2),
                "<w2, w2> = 2 Theta2");
        require(glue_raw(wheel(4), strut_power(2)),
                Rational(20) * GraphVector::generator(gen::Theta2), "<w4, l^2> = 20 Theta2");
        GraphVector theta_sq = GraphVector::generator(gen::Theta).pow(2);
        require(glue_raw(wheel_product({2, 2}), strut_power(2)),
                Rational(8) * theta_sq + Rational(16) * GraphVector::generator(gen::Theta2),
                "<w2^2, l^2> = 8 Theta^2 + 16 Theta2");

        // Xi normalization from the 8-wheel gluing:
        //   (1/384) <w8, l^4> = 7 Xi + (287/8) Theta4.
        GraphVector s2 = Rational(1, 384) * glue_raw(wheel(8), strut_power(4));
        GraphVector xi_expr =
            Rational(1, 7) *
            (s2 - Rational(287, 8) * GraphVector::generator(gen::Theta4));
        std::optional<GenId> extra;
        Rational alpha, beta;
        for (const auto& [m, c] : xi_expr.terms) {
            if (m.size() != 1)
                throw VerificationFailure("graph homology: disconnected class in <w8, l^4>");
            if (m[0] == gen::Theta4) beta = c;
            else if (m[0] >= gen::FirstInternal && !extra) {
                extra = m[0];
                alpha = c;
            } else
                throw VerificationFailure("graph homology: unexpected generator in <w8, l^4>");
        }
        if (!extra || alpha.is_zero())
            throw VerificationFailure("graph homology: Xi is not independent of Theta4");
        // extra = (Xi - beta * Theta4) / alpha.
        internal_subst_[*extra] =
            (Rational(1) / alpha) * (GraphVector::generator(gen::Xi) -
                                     beta * GraphVector::generator(gen::Theta4));

        // Cross-check: the independent second gluing identity must now hold.
        GraphVector s1 = Rational(1, 384) * substituted(glue_raw(wheel_product({4, 4}), strut_power(4)));
        GraphVector expect = Rational(24) * GraphVector::generator(gen::Xi) +
                             Rational(48) * GraphVector::generator(gen::Theta4) +
                             Rational(25, 4) * GraphVector::generator(gen::Theta2).pow(2);
        if (s1 != expect)
            throw VerificationFailure("graph homology: <w4^2, l^4> disagrees with the catalog "
                                      "normalization: got " + s1.to_string());
    }

    void require(const GraphVector& got, const GraphVector& expect, const char* what) const {
        if (got != expect)
            throw VerificationFailure(std::string("graph homology: ") + what + " failed: got " +
                                      got.to_string());
    }

    // Necklace with `beads` double edges closed by single edges; beads = 1 is
    // the theta graph.  The parallel edges at each bead cross slots (1,2) to
    // (1,0): this orientation gives the glued identities their positive
    // normalization (the uncrossed variant flips the class by (-1)^beads).
    static ClosedGraph necklace(unsigned beads) {
        ClosedGraph g;
        g.nv = static_cast<int>(2 * beads);
        g.match.assign(3 * g.nv, -1);
        auto connect = [&](int h1, int h2) {
            g.match[h1] = h2;
            g.match[h2] = h1;
        };
        for (unsigned b = 0; b < beads; ++b) {
            int u = 2 * b, v = 2 * b + 1;
            connect(3 * u + 1, 3 * v + 1);
            connect(3 * u + 2, 3 * v + 0);
            int w = (2 * b + 2) % g.nv;
            connect(3 * v + 2, 3 * w + 0);
        }
        return g;
    }

    // -- gluing ---------------------------------------------------------------

    GraphVector glue_raw(const Diagram& a, const Diagram& b) const {
        if (a.num_legs() != b.num_legs()) return GraphVector{};
        int L = a.num_legs();
        std::vector<int> sigma(L);
        for (int i = 0; i < L; ++i) sigma[i] = i;
        std::map<std::vector<int>, long long> configs;
        if (L == 0) {
            configs[glued_match(a, b, sigma)] = 1;
        } else {
            do {
                configs[glued_match(a, b, sigma)]++;
            } while (std::next_permutation(sigma.begin(), sigma.end()));
        }
        GraphVector acc;
        for (const auto& [match, count] : configs) {
            ClosedGraph g{static_cast<int>(match.size()) / 3, match};
            acc = acc + Rational(count) * classify_closed(g);
        }
        return acc;
    }

    // The closed graph obtained by joining a.leg[i] to b.leg[sigma[i]],
    // contracting strut chains.  Throws on closed pure-strut circles.
    static std::vector<int> glued_match(const Diagram& a, const Diagram& b,
                                        const std::vector<int>& sigma) {
        int offset = 3 * a.nv;
        int nv = a.nv + b.nv;
        int L = a.num_legs();
        auto anchor = [&](int node) -> int {  // vertex half-edge or -1
            if (node < L) return a.legs[node];
            int leg = b.legs[node - L];
            return leg >= 0 ? leg + offset : -1;
        };
        std::vector<int> strut_link(2 * L, -1);
        for (auto [x, y] : a.struts) {
            strut_link[x] = y;
            strut_link[y] = x;
        }
        for (auto [x, y] : b.struts) {
            strut_link[L + x] = L + y;
            strut_link[L + y] = L + x;
        }
        std::vector<int> glue_link(2 * L, -1);
        for (int i = 0; i < L; ++i) {
            glue_link[i] = L + sigma[i];
            glue_link[L + sigma[i]] = i;
        }
        std::vector<int> match(3 * nv, -1);
        for (int h = 0; h < 3 * a.nv; ++h)
            if (a.vmatch[h] >= 0) match[h] = a.vmatch[h];
        for (int h = 0; h < 3 * b.nv; ++h)
            if (b.vmatch[h] >= 0) match[h + offset] = b.vmatch[h] + offset;
        std::vector<bool> visited(2 * L, false);
        for (int start = 0; start < 2 * L; ++start) {
            if (visited[start] || anchor(start) < 0) continue;
            int node = start;
            visited[node] = true;
            int cur = glue_link[node];
            while (anchor(cur) < 0) {
                visited[cur] = true;
                cur = strut_link[cur];
                visited[cur] = true;
                cur = glue_link[cur];
            }
            visited[cur] = true;
            match[anchor(start)] = anchor(cur);
            match[anchor(cur)] = anchor(start);
        }
        for (int node = 0; node < 2 * L; ++node)
            if (!visited[node] && glue_link[node] >= 0)
                throw UnreducibleGraph("glue: a closed circle of struts has no catalog class");
        return match;
    }

    // -- classification -------------------------------------------------------

    GraphVector classify_closed(const ClosedGraph& g) const {
        GraphVector acc{Rational(1)};
        for (const auto& comp : graph_detail::components(g)) {
            if (comp.nv > graph_detail::kMaxClosedVertices)
                throw UnreducibleGraph("graph component with " + std::to_string(comp.nv) +
                                       " vertices exceeds the 8-vertex tables");
            auto canon = graph_detail::canonicalize(comp);
            if (canon.sign == 0) return GraphVector{};
            acc = acc * (Rational(canon.sign) * resolve(comp.nv, canon.code, comp));
        }
        return acc;
    }

    GraphVector resolve(int nv, const std::string& code, const ClosedGraph& rep) const {
        Bucket& bucket = buckets_[nv];
        if (!bucket.graphs.count(code)) saturate(bucket, rep);
        if (bucket.dirty) eliminate(nv, bucket);
        auto it = bucket.resolved.find(code);
        if (it == bucket.resolved.end())
            throw UnreducibleGraph("no catalog expression for an " + std::to_string(nv) +
                                   "-vertex class");
        return it->second;
    }

    GraphVector substituted(const GraphVector& v) const {
        if (internal_subst_.empty()) return v;
        GraphVector out;
        for (const auto& [m, c] : v.terms) {
            GraphVector term{c};
            for (GenId id : m) {
                auto it = internal_subst_.find(id);
                term = term * (it != internal_subst_.end() ? it->second
                                                           : GraphVector::generator(id));
            }
            out = out + term;
        }
        return out;
    }

    // -- IHX closure ----------------------------------------------------------

    // Adds every graph reachable from `seed` by IHX moves, one relation per
    // (graph, ordered edge).  Zero classes (loops, odd automorphisms) carry no
    // variable but their relations still constrain the live classes.
    void saturate(Bucket& bucket, const ClosedGraph& seed) const {
        std::vector<ClosedGraph> queue{seed};
        while (!queue.empty()) {
            ClosedGraph g = queue.back();
            queue.pop_back();
            auto canon = graph_detail::canonicalize(g);
            if (bucket.graphs.count(canon.code)) continue;
            bucket.graphs.emplace(canon.code, GraphInfo{g, canon.sign});
            bucket.dirty = true;
            if (has_loop(g)) continue;  // every IHX instance at a loop graph degenerates
            for (int h = 0; h < 3 * g.nv; ++h) {
                if (g.match[h] / 3 == h / 3) continue;
                Relation rel;
                auto add_instance = [&](const ClosedGraph& inst, const Rational& coeff) {
                    auto c = graph_detail::canonicalize(inst);
                    if (c.sign == 0) return;
                    if (connected(inst)) {
                        auto [it, fresh] = rel.lhs.emplace(c.code, Rational(c.sign) * coeff);
                        if (!fresh) {
                            it->second += Rational(c.sign) * coeff;
                            if (it->second.is_zero()) rel.lhs.erase(it);
                        }
                        if (!bucket.graphs.count(c.code)) queue.push_back(inst);
                    } else {
                        GraphVector prod{coeff};
                        for (const auto& comp : graph_detail::components(inst)) {
                            if (prod.is_zero()) break;
                            auto cc = graph_detail::canonicalize(comp);
                            if (cc.sign == 0) {
                                prod = GraphVector{};
                                break;
                            }
                            prod = prod * (Rational(cc.sign) * resolve(comp.nv, cc.code, comp));
                        }
                        rel.rhs = rel.rhs - prod;  // move the known part right
                    }
                };
                add_instance(g, Rational(1));
                add_instance(ihx_resolution(g, h, /*crossed=*/false), Rational(-1));
                add_instance(ihx_resolution(g, h, /*crossed=*/true), Rational(1));
                if (!rel.lhs.empty() || !rel.rhs.is_zero()) bucket.relations.push_back(rel);
            }
        }
    }

    static bool has_loop(const ClosedGraph& g) {
        for (int h = 0; h < 3 * g.nv; ++h)
            if (g.match[h] / 3 == h / 3) return true;
        return false;
    }

    static bool connected(const ClosedGraph& g) {
        return graph_detail::components(g).size() <= 1;
    }

    // The H (crossed = false) and X (crossed = true) resolutions of the IHX
    // relation I = H - X at the ordered edge given by half-edge h:
    //   I: u = (a, b, e), v = (e', c, d)
    //   H: u = (a, c, e), v = (e', b, d)
    //   X: u = (a, d, e), v = (e', b, c)
    // realized by relocating half-edge contents between u and v.
    static ClosedGraph ihx_resolution(const ClosedGraph& g, int h, bool crossed) {
        int u = h / 3, su = h % 3;
        int h2 = g.match[h];
        int v = h2 / 3, sv = h2 % 3;
        int A = 3 * u + (su + 1) % 3, B = 3 * u + (su + 2) % 3;
        int C = 3 * v + (sv + 1) % 3, D = 3 * v + (sv + 2) % 3;
        std::vector<int> relabel(3 * g.nv);
        for (int i = 0; i < 3 * g.nv; ++i) relabel[i] = i;
        relabel[A] = 3 * u + 0;
        relabel[crossed ? D : C] = 3 * u + 1;
        relabel[h] = 3 * u + 2;
        relabel[h2] = 3 * v + 0;
        relabel[B] = 3 * v + 1;
        relabel[crossed ? C : D] = 3 * v + 2;
        ClosedGraph out;
        out.nv = g.nv;
        out.match.assign(3 * g.nv, -1);
        for (int i = 0; i < 3 * g.nv; ++i) out.match[relabel[i]] = relabel[g.match[i]];
        return out;
    }

    // -- elimination ----------------------------------------------------------

    // Gauss-Jordan over the bucket variables with exact arithmetic.  Pivots
    // prefer non-designated classes, so the catalog necklaces stay free
    // unless a relation genuinely forces them; free non-catalog classes get
    // internal generator ids (resolved later by the Xi normalization or
    // reported as unreducible).
    void eliminate(int nv, Bucket& bucket) const {
        bucket.dirty = false;
        struct PivotRow {
            std::map<std::string, Rational> frees;  // support on still-free variables
            GraphVector rhs;
        };
        std::map<std::string, PivotRow> pivots;  // pivot var -> normalized row

        auto reduce_row = [&](Relation& row) {
            for (bool changed = true; changed;) {
                changed = false;
                for (auto it = row.lhs.begin(); it != row.lhs.end(); ++it) {
                    auto p = pivots.find(it->first);
                    if (p == pivots.end()) continue;
                    Rational coeff = it->second;
                    row.lhs.erase(it);
                    for (const auto& [var, c] : p->second.frees) {
                        auto [jt, fresh] = row.lhs.emplace(var, coeff * c);
                        if (!fresh) {
                            jt->second += coeff * c;
                            if (jt->second.is_zero()) row.lhs.erase(jt);
                        }
                    }
                    row.rhs = row.rhs + coeff * p->second.rhs;
                    changed = true;
                    break;
                }
            }
        };

        std::vector<Relation> rows = bucket.relations;
        for (auto& row : rows) {
            reduce_row(row);
            if (row.lhs.empty()) {
                if (!row.rhs.is_zero())
                    throw VerificationFailure("graph homology: inconsistent closure at " +
                                              std::to_string(nv) + " vertices");
                continue;
            }
            auto pivot = row.lhs.begin();
            for (auto it = row.lhs.begin(); it != row.lhs.end(); ++it)
                if (!designated_.count(it->first)) {
                    pivot = it;
                    break;
                }
            std::string var = pivot->first;
            Rational pc = pivot->second;
            row.lhs.erase(pivot);
            PivotRow pr;
            pr.rhs = (Rational(1) / pc) * row.rhs;
            for (const auto& [other, c] : row.lhs) pr.frees.emplace(other, -(c / pc));
            // Eliminate the new pivot from every stored pivot row.
            for (auto& [pv, prow] : pivots) {
                auto hit = prow.frees.find(var);
                if (hit == prow.frees.end()) continue;
                Rational coeff = hit->second;
                prow.frees.erase(hit);
                for (const auto& [fv, c] : pr.frees) {
                    auto [jt, fresh] = prow.frees.emplace(fv, coeff * c);
                    if (!fresh) {
                        jt->second += coeff * c;
                        if (jt->second.is_zero()) prow.frees.erase(jt);
                    }
                }
                prow.rhs = prow.rhs + coeff * pr.rhs;
            }
            pivots.emplace(std::move(var), std::move(pr));
        }

        // Assign generator ids to the free variables and materialize every
        // class expression.  The canonical class of a designated code equals
        // sign * generator: the id denotes the constructed necklace.
        auto free_vector = [&](const std::string& code) -> GraphVector {
            auto des = designated_.find(code);
            if (des != designated_.end())
                return Rational(des->second.second) * GraphVector::generator(des->second.first);
            auto [it, fresh] = extra_ids_.emplace(code, next_internal_);
            if (fresh) ++next_internal_;
            return GraphVector::generator(it->second);
        };
        bucket.resolved.clear();
        for (const auto& [code, info] : bucket.graphs) {
            if (info.sign == 0) continue;  // degenerate classes never resolve
            auto p = pivots.find(code);
            if (p == pivots.end()) {
                bucket.resolved[code] = free_vector(code);
                continue;
            }
            GraphVector expr = p->second.rhs;
            for (const auto& [fv, c] : p->second.frees) expr = expr + c * free_vector(fv);
            bucket.resolved[code] = expr;
        }
    }
};

// ---------------------------------------------------------------------------
// Public operations.
// ---------------------------------------------------------------------------

// Gluing pairing on diagrams, reduced to catalog coordinates.
inline GraphVector glue(const Diagram& a, const Diagram& b) {
    return GraphHomology::instance().glue(a, b);
}

// Modified Bernoulli numbers b_{2k}, k = 1..4, from the generating series
//   (1/2) log(sinh(x/2) / (x/2)) = sum_k b_{2k} x^{2k}:
//   1/48, -1/5760, 1/362880, -1/19353600.
inline const std::vector<Rational>& modified_bernoulli() {
    static const std::vector<Rational> table = [] {
        constexpr unsigned len = 9;  // degree 8 suffices for four coefficients
        Series f(len);               // sinh(x/2)/(x/2) = sum x^{2m} / (4^m (2m+1)!)
        for (unsigned m = 0; 2 * m < len; ++m)
            f.c[2 * m] = Rational(1) / (Rational(4).pow(static_cast<int>(m)) *
                                        rat_factorial(2 * m + 1));
        Series lg = Series::log(f, len);
        std::vector<Rational> b(5);
        for (unsigned k = 1; k <= 4; ++k) b[k] = lg.c[2 * k] / Rational(2);
        return b;
    }();
    return table;
}

namespace graph_detail {

// [Omega^power]_{2j legs} as wheel products with coefficients: the exp series
// over partitions of j, each part k contributing a factor power * b_{2k}.
struct WheelTerm {
    std::vector<unsigned> wheel_sizes;  // vertex counts, descending
    Rational coeff;
};

inline std::vector<WheelTerm> omega_terms(unsigned j, unsigned power) {
    const auto& b = modified_bernoulli();
    std::vector<WheelTerm> out;
    std::vector<unsigned> part;
    std::function<void(unsigned, unsigned)> gen = [&](unsigned remaining, unsigned max_part) {
        if (remaining == 0) {
            WheelTerm term;
            term.coeff = Rational(1);
            std::map<unsigned, unsigned> mult;
            for (unsigned k : part) {
                term.coeff *= Rational(power) * b[k];
                term.wheel_sizes.push_back(2 * k);
                mult[k]++;
            }
            for (const auto& [k, m] : mult) term.coeff /= rat_factorial(m);
            out.push_back(std::move(term));
            return;
        }
        for (unsigned k = std::min(remaining, max_part); k >= 1; --k) {
            part.push_back(k);
            gen(remaining - k, k);
            part.pop_back();
        }
    };
    gen(j, j);
    return out;
}

}  // namespace graph_detail

// <Omega^power, (1 + l)^n> reduced to catalog coordinates; power = 2 is the
// expansion controlling the full Riemann-Roch polynomial, power = 1 the
// half-Todd one (where the Wheeling Theorem forces (1 + Theta/24)^n).
inline GraphVector wheeling_expansion(unsigned n, unsigned power = 2) {
    if (n < 1 || n > 4) throw Unsupported("wheeling_expansion: implemented for 1 <= n <= 4");
    if (power < 1 || power > 2) throw Unsupported("wheeling_expansion: power must be 1 or 2");
    GraphVector acc{Rational(1)};  // j = 0 term: <1, 1> = 1
    for (unsigned j = 1; j <= n; ++j) {
        Diagram struts = strut_power(j);
        GraphVector level;
        for (const auto& term : graph_detail::omega_terms(j, power)) {
            if (term.coeff.is_zero()) continue;
            level = level + term.coeff * glue(wheel_product(term.wheel_sizes), struts);
        }
        acc = acc + rat_binomial(n, j) * level;
    }
    return acc;
}

// The two independent degree-4 gluing evaluations; the first normalizes Xi at
// construction time, the second is re-verified here, so both residuals vanish
// whenever the catalog built successfully.
struct SawonIdentities {
    GraphVector w4w4_lhs, w4w4_rhs;  // (1/384) <w4^2, l^4> = 24 Xi + 48 Theta4 + 25/4 Theta2^2
    GraphVector w8_lhs, w8_rhs;      // (1/384) <w8, l^4>   =  7 Xi + 287/8 Theta4
    GraphVector residual_w4w4, residual_w8;
};

inline SawonIdentities sawon_identities() {
    SawonIdentities s;
    s.w4w4_lhs = Rational(1, 384) * glue(wheel_product({4, 4}), strut_power(4));
    s.w4w4_rhs = Rational(24) * GraphVector::generator(gen::Xi) +
                 Rational(48) * GraphVector::generator(gen::Theta4) +
                 Rational(25, 4) * GraphVector::generator(gen::Theta2).pow(2);
    s.w8_lhs = Rational(1, 384) * glue(wheel(8), strut_power(4));
    s.w8_rhs = Rational(7) * GraphVector::generator(gen::Xi) +
               Rational(287, 8) * GraphVector::generator(gen::Theta4);
    s.residual_w4w4 = s.w4w4_lhs - s.w4w4_rhs;
    s.residual_w8 = s.w8_lhs - s.w8_rhs;
    return s;
}

// b_Gamma for catalog monomials in Theta and Theta2, extended multiplicatively:
//   b_Theta  = 2 (2n-1) C(c2) / C(1)
//   b_Theta2 = -4 (2n-1)(2n-3) (C(c2^2) - 2 C(c4)) / (5 C(1)).
inline Rational b_gamma(const GraphMonomial& gamma, unsigned n, const FujikiTable& table) {
    table.require_weight(4, "b_gamma");
    Rational c1 = table.C1();
    Rational acc(1);
    for (GenId id : gamma) {
        switch (id) {
            case gen::Theta:
                acc *= Rational(2) * Rational(2 * n - 1) * table.at(ChernMonomial::c(2)) / c1;
                break;
            case gen::Theta2:
                acc *= Rational(-4) * Rational(2 * n - 1) * Rational(2 * n - 3) *
                       (table.at(ChernMonomial::c(2, 2)) -
                        Rational(2) * table.at(ChernMonomial::c(4))) /
                       (Rational(5) * c1);
                break;
            default:
                throw UnknownGamma("b_gamma: no weight-4 table formula for " +
                                   generator_name(id));
        }
    }
    return acc;
}

// The Riemann-Roch polynomial determined by (C(1), b_Theta, b_Theta2) through
// the low-dimensional expansions of <Omega^2, (1+l)^n>:
//   n=2:  C1/4!  (q^2 + (2/12) bT q + (bT^2 + bT2)/144)
//   n=3:  C1/6!  (q + bT/12)(q^2 + (2/12) bT q + (bT^2 + 3 bT2)/144)
//   n=4:  C1/8!  (q^2 + (2/12) bT q + (bT^2 + (3/5) bT2)/144)
//                (q^2 + (2/12) bT q + (bT^2 + (27/5) bT2)/144)
inline RRPoly rr_from_b(unsigned n, const Rational& c1, const Rational& b_theta,
                        const Rational& b_theta2) {
    auto quadratic = [&](const Rational& mix) {
        return Poly({(b_theta * b_theta + mix * b_theta2) / Rational(144), b_theta / Rational(6),
                     Rational(1)});
    };
    Poly p;
    switch (n) {
        case 2:
            p = quadratic(Rational(1));
            break;
        case 3:
            p = Poly({b_theta / Rational(12), Rational(1)}) * quadratic(Rational(3));
            break;
        case 4:
            p = quadratic(Rational(3, 5)) * quadratic(Rational(27, 5));
            break;
        default:
            throw Unsupported("rr_from_b: implemented for n in {2, 3, 4}");
    }
    p = (c1 / rat_factorial(2 * n)) * p;
    std::vector<Rational> coeffs(n + 1);
    for (unsigned i = 0; i <= n; ++i) coeffs[i] = p.coeff(n - i);
    return RRPoly(n, std::move(coeffs));
}

}  // namespace hkinv
