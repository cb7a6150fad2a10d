#pragma once

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msk/rational.hpp"

namespace msk::groups {

// ---------------------------------------------------------------------------
// Words and presentations
// ---------------------------------------------------------------------------

// A word is a sequence of signed 1-based generator indices.
using Word = std::vector<int>;

inline Word reduced(Word w) {
    Word out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

inline Word inverse_word(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return out;
}

inline Word word_pow(const Word& w, long k) {
    Word base = k < 0 ? inverse_word(w) : w;
    Word out;
    for (long i = 0; i < std::labs(k); ++i) out.insert(out.end(), base.begin(), base.end());
    return reduced(out);
}

inline Word word_cat(std::initializer_list<Word> parts) {
    Word out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return reduced(out);
}

struct Presentation {
    std::vector<std::string> gens;
    std::vector<Word> relators;  // freely reduced

    int gen_index(char c) const {
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i].size() == 1 && gens[i][0] == c) return static_cast<int>(i) + 1;
        return 0;
    }
};

namespace detail {

// Grammar: word := term+ ; term := atom ['^' int] ; atom := letter | '(' word ')'
inline Word parse_word(const std::string& s, std::size_t& pos, const Presentation& p);

inline long parse_int(const std::string& s, std::size_t& pos) {
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
        throw enumeration_error("expected integer exponent in word");
    long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        v = v * 10 + (s[pos++] - '0');
    return neg ? -v : v;
}

inline Word parse_word(const std::string& s, std::size_t& pos, const Presentation& p) {
    Word out;
    while (pos < s.size()) {
        char c = s[pos];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
            ++pos;
            continue;
        }
        if (c == ')' || c == ',') break;
        Word atom;
        if (c == '(') {
            ++pos;
            atom = parse_word(s, pos, p);
            if (pos >= s.size() || s[pos] != ')') throw enumeration_error("unbalanced '(' in word");
            ++pos;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            int g = p.gen_index(c);
            if (g == 0) throw enumeration_error(std::string("unknown generator '") + c + "'");
            atom = {g};
            ++pos;
        } else {
            throw enumeration_error(std::string("unexpected character '") + c + "' in word");
        }
        long e = 1;
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            e = parse_int(s, pos);
        }
        Word powered = word_pow(atom, e);
        out.insert(out.end(), powered.begin(), powered.end());
    }
    return reduced(out);
}

}  // namespace detail

// Parses a comma-separated relator list such as "b^2,a^3,(ba)^3". Generators
// are inferred from the letters present unless given explicitly.
inline Presentation parse_presentation(const std::string& relator_list,
                                       std::vector<std::string> gens = {}) {
    Presentation p;
    if (gens.empty()) {
        std::vector<char> letters;
        for (char c : relator_list)
            if (std::isalpha(static_cast<unsigned char>(c)) &&
                std::find(letters.begin(), letters.end(), c) == letters.end())
                letters.push_back(c);
        std::sort(letters.begin(), letters.end());
        for (char c : letters) p.gens.emplace_back(1, c);
    } else {
        p.gens = std::move(gens);
    }
    std::size_t pos = 0;
    while (pos < relator_list.size()) {
        Word w = detail::parse_word(relator_list, pos, p);
        if (!w.empty()) p.relators.push_back(std::move(w));
        if (pos < relator_list.size()) {
            if (relator_list[pos] != ',')
                throw enumeration_error("expected ',' between relators");
            ++pos;
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// Todd-Coxeter coset enumeration (cosets of the trivial subgroup, i.e. the
// group order). HLT-style scanning with immediate coincidence handling; a
// final re-scan pass confirms the table is closed before reporting.
// ---------------------------------------------------------------------------

class CosetEnumerator {
  public:
    CosetEnumerator(const Presentation& p, long max_cosets)
        : ngens_(static_cast<int>(p.gens.size())), max_cosets_(max_cosets) {
        if (ngens_ < 1) throw enumeration_error("presentation needs at least one generator");
        if (max_cosets_ < 1) throw enumeration_error("max_cosets must be >= 1");
        for (const auto& r : p.relators) {
            std::vector<int> cols;
            cols.reserve(r.size());
            for (int x : r) cols.push_back(col_of(x));
            if (!cols.empty()) relators_.push_back(std::move(cols));
        }
        new_coset();
    }

    // Runs to closure and returns |G|; throws enumeration_error when the
    // table would exceed max_cosets (infinite quotient or too small a bound).
    long run() {
        for (std::size_t alpha = 0; alpha < table_.size(); ++alpha) {
            if (!alive(alpha)) continue;
            for (const auto& rel : relators_) {
                scan_and_fill(static_cast<long>(alpha), rel);
                if (!alive(alpha)) break;
            }
            if (!alive(alpha)) continue;
            for (int c = 0; c < 2 * ngens_; ++c)
                if (alive(alpha) && entry(static_cast<long>(alpha), c) < 0)
                    define(static_cast<long>(alpha), c);
        }
        verify_closed();
        long count = 0;
        for (std::size_t i = 0; i < table_.size(); ++i)
            if (alive(i)) ++count;
        return count;
    }

  private:
    int ngens_;
    long max_cosets_;
    std::vector<std::vector<int>> relators_;      // relator words as column sequences
    std::vector<std::vector<long>> table_;        // -1 = undefined
    std::vector<long> parent_;                    // union-find; parent_[i] == i iff live

    static int inv_col(int c) { return c ^ 1; }
    int col_of(int signed_gen) const {
        int g = std::abs(signed_gen) - 1;
        return 2 * g + (signed_gen < 0 ? 1 : 0);
    }

    bool alive(std::size_t i) const { return parent_[i] == static_cast<long>(i); }

    long rep(long a) {
        while (parent_[static_cast<std::size_t>(a)] != a) {
            parent_[static_cast<std::size_t>(a)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(a)])];
            a = parent_[static_cast<std::size_t>(a)];
        }
        return a;
    }

    long entry(long a, int c) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)]; }
    void set(long a, int c, long v) { table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] = v; }

    long new_coset() {
        if (static_cast<long>(table_.size()) >= max_cosets_)
            throw enumeration_error("enumeration exceeded max_cosets (" +
                                    std::to_string(max_cosets_) +
                                    "): infinite quotient or bound too small");
        table_.emplace_back(static_cast<std::size_t>(2 * ngens_), -1);
        parent_.push_back(static_cast<long>(table_.size()) - 1);
        return static_cast<long>(table_.size()) - 1;
    }

    void define(long a, int c) {
        long b = new_coset();
        set(a, c, b);
        set(b, inv_col(c), a);
    }

    void merge(long a, long b, std::deque<long>& queue) {
        a = rep(a);
        b = rep(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent_[static_cast<std::size_t>(b)] = a;
        queue.push_back(b);
    }

    void coincide(long a, long b) {
        std::deque<long> queue;
        merge(a, b, queue);
        while (!queue.empty()) {
            long dead = queue.front();
            queue.pop_front();
            for (int c = 0; c < 2 * ngens_; ++c) {
                long d = entry(dead, c);
                if (d < 0) continue;
                set(dead, c, -1);
                if (entry(d, inv_col(c)) == dead) set(d, inv_col(c), -1);
                long mu = rep(dead), nu = rep(d);
                long at_mu = entry(mu, c);
                if (at_mu >= 0) {
                    merge(nu, at_mu, queue);
                } else {
                    long at_nu = entry(nu, inv_col(c));
                    if (at_nu >= 0) {
                        merge(mu, at_nu, queue);
                    } else {
                        set(mu, c, nu);
                        set(nu, inv_col(c), mu);
                    }
                }
            }
        }
    }

    // Scans relator `rel` from coset a, filling gaps by deduction or by
    // defining new cosets; a completed scan with distinct ends coincides them.
    void scan_and_fill(long a, const std::vector<int>& rel) {
        long f = rep(a), b = rep(a);
        std::size_t i = 0, j = rel.size();
        while (true) {
            while (i < j && entry(f, rel[i]) >= 0) f = rep(entry(f, rel[i++]));
            if (i == j) {
                if (f != b) coincide(f, b);
                return;
            }
            while (j > i && entry(b, inv_col(rel[j - 1])) >= 0)
                b = rep(entry(b, inv_col(rel[--j])));
            if (j == i) {
                coincide(f, b);
                return;
            }
            if (j == i + 1) {
                set(f, rel[i], b);
                set(b, inv_col(rel[i]), f);
                return;
            }
            define(f, rel[i]);
        }
    }

    // Fixpoint check: every relator closes at every live coset and the table
    // is complete. Re-runs the fill loop if a coincidence fired late.
    void verify_closed() {
        for (int pass = 0; pass < 64; ++pass) {
            bool dirty = false;
            const std::size_t before = table_.size();
            for (std::size_t alpha = 0; alpha < table_.size(); ++alpha) {
                if (!alive(alpha)) continue;
                for (const auto& rel : relators_) {
                    if (!alive(alpha)) break;
                    long f = static_cast<long>(alpha);
                    bool complete = true;
                    for (int c : rel) {
                        long next = entry(rep(f), c);
                        if (next < 0) {
                            complete = false;
                            break;
                        }
                        f = rep(next);
                    }
                    if (!complete) {
                        scan_and_fill(static_cast<long>(alpha), rel);
                        dirty = true;
                    } else if (f != rep(static_cast<long>(alpha))) {
                        coincide(f, static_cast<long>(alpha));
                        dirty = true;
                    }
                }
            }
            for (std::size_t alpha = 0; alpha < table_.size() && !dirty; ++alpha) {
                if (!alive(alpha)) continue;
                for (int c = 0; c < 2 * ngens_; ++c)
                    if (entry(static_cast<long>(alpha), c) < 0) {
                        dirty = true;
                        break;
                    }
            }
            if (!dirty && table_.size() == before) return;
            if (dirty) {
                for (std::size_t alpha = 0; alpha < table_.size(); ++alpha) {
                    if (!alive(alpha)) continue;
                    for (int c = 0; c < 2 * ngens_; ++c)
                        if (alive(alpha) && entry(static_cast<long>(alpha), c) < 0)
                            define(static_cast<long>(alpha), c);
                    if (!alive(alpha)) continue;
                    for (const auto& rel : relators_) {
                        if (!alive(alpha)) break;
                        scan_and_fill(static_cast<long>(alpha), rel);
                    }
                }
            }
        }
        throw enumeration_error("coset table failed to stabilize");
    }
};

inline long coset_enumerate(const Presentation& p, long max_cosets = 1000000) {
    return CosetEnumerator(p, max_cosets).run();
}

// ---------------------------------------------------------------------------
// Kernel descriptors and the classification of modular solutions
// ---------------------------------------------------------------------------

enum class Family { A4, S4, A5, D2n, C2n, OddCyclic };
enum class Variant { primary, fricke };

struct GroupId {
    Family family;
    long n = 0;  // parameter for D2n / C2n (group order 2n); order for OddCyclic
    Variant variant = Variant::primary;

    long order() const {
        switch (family) {
            case Family::A4: return 12;
            case Family::S4: return 24;
            case Family::A5: return 60;
            case Family::D2n:
            case Family::C2n: return 2 * n;
            case Family::OddCyclic: return n;
        }
        return 0;
    }

    std::string label() const {
        switch (family) {
            case Family::A4: return "A4";
            case Family::S4: return "S4";
            case Family::A5: return "A5";
            case Family::D2n: return "D2n(n=" + std::to_string(n) + ")";
            case Family::C2n: return "C2n(n=" + std::to_string(n) + ")";
            case Family::OddCyclic: return "C" + std::to_string(n);
        }
        return "?";
    }
};

struct KernelDescriptor {
    GroupId group;
    std::string name;                        // subgroup description
    std::vector<std::string> words_tr;       // kernel generators as (T, R)-words
    std::vector<std::string> words_ab;       // the same through (a, b) -> (T, R T^-1)
    std::vector<Word> relators_ab;           // quotient relators over <a, b | b^2>, incl. b^2
    long m1 = 0;                             // cusp width at infinity (smallest T-power in the kernel)
    long m2 = 0;                             // cusp width at 0 (twice the smallest R-power)
};

namespace detail {

inline std::string pow_str(const std::string& g, long k) {
    if (k == 1) return g;
    return g + "^" + std::to_string(k);
}

// a -> T, b -> R T^-1, hence T = a and R = b a.
inline Word ab_of_T(long k) { return word_pow({1}, k); }
inline Word ab_of_R(long k) { return word_pow({2, 1}, k); }

inline std::string word_ab_str(const Word& w) {
    std::string out;
    std::size_t i = 0;
    const char* names[] = {"a", "b"};
    // a pure power of a two-letter block prints as "(xy)^k"
    if (w.size() >= 4 && w.size() % 2 == 0 && w[0] > 0 && w[1] > 0 && w[0] != w[1]) {
        bool periodic = true;
        for (std::size_t k = 2; k < w.size(); ++k)
            if (w[k] != w[k % 2]) {
                periodic = false;
                break;
            }
        if (periodic)
            return "(" + std::string(names[w[0] - 1]) + std::string(names[w[1] - 1]) + ")^" +
                   std::to_string(w.size() / 2);
    }
    while (i < w.size()) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        long run = static_cast<long>(j - i);
        int g = std::abs(w[i]) - 1;
        if (!out.empty()) out += " ";
        if (w[i] > 0)
            out += run == 1 ? names[g] : pow_str(names[g], run);
        else
            out += std::string(names[g]) + "^-" + std::to_string(run);
        i = j;
    }
    return out.empty() ? "1" : out;
}

}  // namespace detail

inline KernelDescriptor kernel_descriptor(const GroupId& g) {
    using detail::ab_of_R;
    using detail::ab_of_T;
    using detail::pow_str;
    KernelDescriptor kd;
    kd.group = g;
    auto normal_closure = [&](long tpow, long rpow) {
        kd.words_tr = {pow_str("T", tpow), pow_str("R", rpow)};
        kd.relators_ab = {{2, 2}, ab_of_T(tpow), ab_of_R(rpow)};
        kd.words_ab = {detail::word_ab_str(ab_of_T(tpow)), detail::word_ab_str(ab_of_R(rpow))};
        kd.name = "N(" + pow_str("T", tpow) + ", " + pow_str("R", rpow) + ")";
        kd.m1 = tpow;
        kd.m2 = 2 * rpow;
    };
    switch (g.family) {
        case Family::A4:
            normal_closure(3, 3);
            kd.name = "Gamma0(2) ∩ Gamma(3) = " + kd.name;
            break;
        case Family::S4:
            if (g.variant == Variant::primary)
                normal_closure(4, 3);
            else
                normal_closure(3, 4);
            break;
        case Family::A5:
            if (g.variant == Variant::primary)
                normal_closure(5, 3);
            else
                normal_closure(3, 5);
            break;
        case Family::D2n:
            if (g.n < 1) throw enumeration_error("D2n needs n >= 1");
            if (g.variant == Variant::primary)
                normal_closure(g.n, 2);
            else
                normal_closure(2, g.n);
            break;
        case Family::C2n: {
            const long n = g.n;
            if (n < 1) throw enumeration_error("C2n needs n >= 1");
            const bool even = n % 2 == 0;
            Word comm = reduced({1, 2, -1, -2});  // [a, b] = image of [T, R]
            if (even || g.variant == Variant::fricke) {
                // <T^2n, R^(n or 2n), T^(n+1) R^-1, commutator subgroup>
                const long rpow = even ? 2 * n : n;
                kd.words_tr = {pow_str("T", 2 * n), pow_str("R", rpow),
                               pow_str("T", n + 1) + " R^-1", "[T, R]"};
                kd.relators_ab = {{2, 2}, ab_of_T(2 * n), ab_of_R(rpow),
                                  word_cat({ab_of_T(n + 1), inverse_word(ab_of_R(1))}), comm};
                kd.m1 = 2 * n;
                kd.m2 = even ? 4 * n : 2 * n;
            } else {
                // odd n, primary: <T^n, R^2n, R^(n+1) T^-1, commutator subgroup>
                kd.words_tr = {pow_str("T", n), pow_str("R", 2 * n),
                               pow_str("R", n + 1) + " T^-1", "[T, R]"};
                kd.relators_ab = {{2, 2}, ab_of_T(n), ab_of_R(2 * n),
                                  word_cat({ab_of_R(n + 1), inverse_word(ab_of_T(1))}), comm};
                kd.m1 = n;
                kd.m2 = 4 * n;
            }
            kd.words_ab.clear();
            for (std::size_t i = 1; i < kd.relators_ab.size(); ++i)
                kd.words_ab.push_back(detail::word_ab_str(kd.relators_ab[i]));
            kd.name = "<" + kd.words_tr[0];
            for (std::size_t i = 1; i < kd.words_tr.size(); ++i) kd.name += ", " + kd.words_tr[i];
            kd.name += ">";
            break;
        }
        case Family::OddCyclic:
            throw enumeration_error(
                "no torsion-free kernel: an odd-order cyclic image kills the order-2 elliptic "
                "element R T^-1, which a torsion-free kernel cannot absorb");
    }
    return kd;
}

// Genus of the covering modular curve: g = 1 + |G| (1/4 - 1/(2 m1) - 1/m2).
inline Rat genus(long group_order, long m1, long m2) {
    if (group_order < 1 || m1 < 1 || m2 < 1) throw enumeration_error("genus needs positive inputs");
    return Rat(1) + Rat(group_order) * (Rat(1, 4) - Rat(1, 2 * m1) - Rat(1, m2));
}

// Covering degree d = 1 - g + (|G|/(2 m1)) (n1 - 1) + (|G|/m2) (n2 - 1).
inline long covering_degree(const Rat& g, long group_order, long m1, long m2, long n1, long n2) {
    Rat d = Rat(1) - g + rat_of(group_order * (n1 - 1), 2 * m1) + rat_of(group_order * (n2 - 1), m2);
    if (!rat_is_integer(d))
        throw enumeration_error("inconsistent ramification data: degree " + rat_str(d) +
                                " is not an integer");
    return rat_to_long(d);
}

struct ClassificationInput {
    long n1 = 1, m1 = 1, n2 = 1, m2 = 1;
    bool a_zero = false, b_zero = false;

    ClassificationInput() = default;
    ClassificationInput(long n1_, long m1_, long n2_, long m2_) {
        if (n1_ < 1 || m1_ < 1 || n2_ < 1 || m2_ < 1)
            throw enumeration_error("classification inputs must be positive");
        long g1 = std::gcd(n1_, m1_), g2 = std::gcd(n2_, m2_);
        n1 = n1_ / g1;
        m1 = m1_ / g1;
        n2 = n2_ / g2;
        m2 = m2_ / g2;
    }

    static ClassificationInput zero_a(long n2_, long m2_) {
        ClassificationInput in(1, 1, n2_, m2_);
        in.a_zero = true;
        return in;
    }
    static ClassificationInput zero_b(long n1_, long m1_) {
        ClassificationInput in(n1_, m1_, 1, 1);
        in.b_zero = true;
        return in;
    }
};

struct ClassificationResult {
    bool exists = false;
    std::optional<GroupId> group;
    std::optional<long> gamma_level;  // equal-coefficient case: invariance group Gamma(m)
    std::optional<KernelDescriptor> kernel;
    std::optional<std::pair<long, long>> cusp_widths;
    std::optional<Rat> genus_value;
    std::optional<long> degree;
    std::string case_tag;
    std::string rationale;
};

// Decides whether a = 2 pi^2 (n1/m1)^2 on theta2^8 together with
// b = 2 pi^2 (n2/m2)^2 on (theta3 theta4)^4 admits a modular solution, and
// if so on which subgroup. Total on valid inputs.
inline ClassificationResult classify(const ClassificationInput& in) {
    ClassificationResult res;
    if (in.a_zero || in.b_zero) {
        res.case_tag = "rejected";
        res.rationale =
            "zero coefficient: the weight-4 form vanishes at a cusp, which forces a logarithmic "
            "singularity on every solution";
        return res;
    }
    const bool equal = in.n1 == in.n2 && in.m1 == in.m2;
    if (equal) {
        const long m = in.m1;
        if (m >= 2 && m <= 5) {
            res.exists = true;
            res.case_tag = "equal-coefficients";
            res.gamma_level = m;
            res.cusp_widths = {m, m};
            res.genus_value = Rat(0);
            res.rationale = "equal coefficients: solution is invariant under the principal "
                            "congruence group Gamma(" + std::to_string(m) + ")";
        } else {
            res.case_tag = "rejected";
            res.rationale = "equal coefficients admit modular solutions only for denominators m in "
                            "{2, 3, 4, 5}; got m = " + std::to_string(m);
        }
        return res;
    }

    std::optional<GroupId> gid;
    static const std::map<std::pair<long, long>, GroupId> polyhedral = {
        {{3, 6}, {Family::A4, 0, Variant::primary}},
        {{4, 6}, {Family::S4, 0, Variant::primary}},
        {{3, 8}, {Family::S4, 0, Variant::fricke}},
        {{5, 6}, {Family::A5, 0, Variant::primary}},
        {{3, 10}, {Family::A5, 0, Variant::fricke}},
    };
    if (auto it = polyhedral.find({in.m1, in.m2}); it != polyhedral.end()) {
        gid = it->second;
        res.case_tag = "polyhedral-widths";
    } else if (in.m2 == 4) {
        gid = GroupId{Family::D2n, in.m1, Variant::primary};
        res.case_tag = "dihedral-widths";
    } else if (in.m1 == 2 && in.m2 % 2 == 0) {
        gid = GroupId{Family::D2n, in.m2 / 2, Variant::fricke};
        res.case_tag = "dihedral-widths";
    }

    if (!gid) {
        const bool cyclic_even = in.m1 % 4 == 0 && in.m2 == 2 * in.m1;
        const bool cyclic_odd_a = in.m1 % 2 == 1 && in.m1 >= 3 && in.m2 == 4 * in.m1;
        const bool cyclic_odd_b = in.m1 == in.m2 && in.m1 % 4 == 2 && in.m1 >= 6;
        res.case_tag = "rejected";
        if (cyclic_even || cyclic_odd_a || cyclic_odd_b)
            res.rationale = "cyclic image admits no solution, n > 1: every candidate function has "
                            "a vanishing derivative";
        else
            res.rationale = "width pair (" + std::to_string(in.m1) + ", " + std::to_string(in.m2) +
                            ") not admissible";
        return res;
    }

    res.exists = true;
    res.group = gid;
    KernelDescriptor kd = kernel_descriptor(*gid);
    res.cusp_widths = {kd.m1, kd.m2};
    res.genus_value = genus(gid->order(), kd.m1, kd.m2);
    res.degree = covering_degree(*res.genus_value, gid->order(), kd.m1, kd.m2, in.n1, in.n2);
    res.kernel = std::move(kd);
    if (res.rationale.empty())
        res.rationale = "width pair (" + std::to_string(in.m1) + ", " + std::to_string(in.m2) +
                        ") admits the finite image " + gid->label();
    return res;
}

// Classification from the normalized coefficient values a/(2 pi^2), b/(2 pi^2).
inline ClassificationResult classify_coeffs(const Rat& a_norm, const Rat& b_norm) {
    ClassificationResult res;
    if (sgn(a_norm) == 0 || sgn(b_norm) == 0) {
        ClassificationInput in;
        in.a_zero = sgn(a_norm) == 0;
        in.b_zero = sgn(b_norm) == 0;
        return classify(in);
    }
    auto ra = sgn(a_norm) > 0 ? rat_sqrt(a_norm) : std::nullopt;
    auto rb = sgn(b_norm) > 0 ? rat_sqrt(b_norm) : std::nullopt;
    if (!ra || !rb) {
        res.case_tag = "rejected";
        res.rationale = "coefficient is not 2 pi^2 times the square of a positive rational";
        return res;
    }
    return classify(ClassificationInput(rat_num_long(*ra), rat_den_long(*ra), rat_num_long(*rb),
                                        rat_den_long(*rb)));
}

// ---------------------------------------------------------------------------
// Summary table of admissible kernels. Every row is regenerated from
// kernel_descriptor + genus (checked across n = 1..12 for the parametric
// families); nothing is emitted from literals.
// ---------------------------------------------------------------------------

struct SummaryRow {
    std::string group;
    std::string kernel;
    std::string widths;
    std::string genus;
};

inline std::vector<SummaryRow> summary_table() {
    std::vector<SummaryRow> rows;
    auto fixed_row = [&](const GroupId& g, const std::string& label) {
        KernelDescriptor kd = kernel_descriptor(g);
        Rat gen = genus(g.order(), kd.m1, kd.m2);
        rows.push_back({label, kd.name,
                        "(" + std::to_string(kd.m1) + ", " + std::to_string(kd.m2) + ")",
                        rat_str(gen)});
    };
    fixed_row({Family::A4, 0, Variant::primary}, "A4");
    fixed_row({Family::S4, 0, Variant::primary}, "S4");
    fixed_row({Family::S4, 0, Variant::fricke}, "S4");
    fixed_row({Family::A5, 0, Variant::primary}, "A5");
    fixed_row({Family::A5, 0, Variant::fricke}, "A5");

    auto family_row = [&](Family fam, Variant var, long n_begin, long n_step,
                          const std::string& label, const std::string& kernel_text,
                          const std::string& widths_text, const std::string& genus_text,
                          auto genus_formula) {
        for (long n = n_begin; n <= 12; n += n_step) {
            GroupId g{fam, n, var};
            KernelDescriptor kd = kernel_descriptor(g);
            if (genus(g.order(), kd.m1, kd.m2) != genus_formula(n))
                throw enumeration_error("summary table genus mismatch for " + g.label());
        }
        rows.push_back({label, kernel_text, widths_text, genus_text});
    };
    family_row(Family::D2n, Variant::primary, 1, 1, "D2n for n >= 1", "N(T^n, R^2)", "(n, 4)", "0",
               [](long) { return Rat(0); });
    family_row(Family::D2n, Variant::fricke, 1, 1, "D2n for n >= 1", "N(T^2, R^n)", "(2, 2n)", "0",
               [](long) { return Rat(0); });
    family_row(Family::C2n, Variant::primary, 2, 2, "C2n for n even",
               "<T^2n, R^2n, T^(n+1) R^-1, [T, R]>", "(2n, 4n)", "n/2",
               [](long n) { return rat_of(n, 2); });
    family_row(Family::C2n, Variant::primary, 1, 2, "C2n for n odd",
               "<T^n, R^2n, R^(n+1) T^-1, [T, R]>", "(n, 4n)", "(n-1)/2",
               [](long n) { return rat_of(n - 1, 2); });
    family_row(Family::C2n, Variant::fricke, 1, 2, "C2n for n odd",
               "<T^2n, R^n, T^(n+1) R^-1, [T, R]>", "(2n, 2n)", "(n-1)/2",
               [](long n) { return rat_of(n - 1, 2); });
    return rows;
}

}  // namespace msk::groups
