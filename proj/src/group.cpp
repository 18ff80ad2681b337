#include "uwidth/group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "uwidth/error.hpp"

namespace uw {

Word reduce(Word w) {
    Word out;
    out.reserve(w.size());
    for (int x : w) {
        if (!out.empty() && out.back() == -x) out.pop_back();
        else out.push_back(x);
    }
    return out;
}

Word cyclic_reduce(Word w) {
    w = reduce(std::move(w));
    std::size_t i = 0, j = w.size();
    while (j - i >= 2 && w[i] == -w[j - 1]) {
        ++i;
        --j;
    }
    return Word(w.begin() + i, w.begin() + j);
}

Word inverse(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (int& x : out) x = -x;
    return out;
}

Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return reduce(std::move(w));
}

std::string word_string(const Word& w) {
    std::string s;
    for (int x : w) {
        int g = std::abs(x) - 1;
        if (g < 26) {
            s += char((x > 0 ? 'a' : 'A') + g);
        } else {
            s += (x > 0 ? 'x' : 'X');
            s += std::to_string(g);
            s += '.';
        }
    }
    return s;
}

Word parse_word(const std::string& s) {
    Word w;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == 'x' || ch == 'X') {
            std::size_t j = s.find('.', i);
            if (j == std::string::npos) throw Error(ErrorCode::ParseError, "bad word " + s);
            int g = std::stoi(s.substr(i + 1, j - i - 1));
            w.push_back(ch == 'x' ? g + 1 : -(g + 1));
            i = j;
        } else if (std::islower((unsigned char)ch)) {
            w.push_back(ch - 'a' + 1);
        } else if (std::isupper((unsigned char)ch)) {
            w.push_back(-(ch - 'A' + 1));
        } else if (ch == 'e' || std::isspace((unsigned char)ch)) {
            continue;
        } else {
            throw Error(ErrorCode::ParseError, "bad word " + s);
        }
    }
    return reduce(w);
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int pivot_of(const Group::Element& r) {
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] != 0) return int(i);
    return -1;
}

}  // namespace

std::vector<Group::Element> hermite_normal_form(std::vector<Group::Element> rows, int cols) {
    std::vector<Group::Element> out;
    std::size_t r = 0;
    for (int c = 0; c < cols && r < rows.size(); ++c) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || std::llabs(rows[i][c]) < std::llabs(rows[best][c])))
                    best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                std::int64_t q = rows[i][c] / rows[r][c];
                for (int k = 0; k < cols; ++k) rows[i][k] -= q * rows[r][k];
                if (rows[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (r < rows.size() && rows[r][c] != 0) {
            if (rows[r][c] < 0)
                for (auto& x : rows[r]) x = -x;
            for (std::size_t i = 0; i < r; ++i) {
                std::int64_t q = floor_div(rows[i][c], rows[r][c]);
                for (int k = 0; k < cols; ++k) rows[i][k] -= q * rows[r][k];
            }
            ++r;
        }
    }
    for (std::size_t i = 0; i < r; ++i) out.push_back(rows[i]);
    return out;
}

Group Group::free(int rank) {
    Group g;
    g.kind_ = Kind::Free;
    g.rank_ = rank;
    return g;
}

Group Group::abelian(int rank, const std::vector<Element>& relations) {
    Group g;
    g.kind_ = Kind::Abelian;
    g.rank_ = rank;
    std::vector<Element> rows;
    for (auto r : relations) {
        r.resize(rank, 0);
        if (pivot_of(r) >= 0) rows.push_back(r);
    }
    g.hnf_ = hermite_normal_form(rows, rank);
    return g;
}

bool Group::is_trivial() const {
    if (kind_ == Kind::Free) return rank_ == 0;
    return is_finite() && order() == 1;
}

bool Group::is_finite() const {
    if (kind_ == Kind::Free) return rank_ == 0;
    return int(hnf_.size()) == rank_;
}

std::int64_t Group::order() const {
    if (!is_finite()) return 0;
    std::int64_t o = 1;
    for (auto& r : hnf_) o *= r[pivot_of(r)];
    return o;
}

int Group::free_rank() const { return kind_ == Kind::Free ? rank_ : rank_ - int(hnf_.size()); }

Group::Element Group::identity() const {
    return kind_ == Kind::Free ? Element{} : Element(rank_, 0);
}

Group::Element Group::generator(int g, bool inv) const {
    if (kind_ == Kind::Free) return Element{inv ? -(g + 1) : g + 1};
    Element v(rank_, 0);
    v[g] = inv ? -1 : 1;
    return normal(v);
}

Group::Element Group::normal(Element v) const {
    if (kind_ == Kind::Free) {
        Word w(v.begin(), v.end());
        w = reduce(w);
        return Element(w.begin(), w.end());
    }
    for (auto& r : hnf_) {
        int p = pivot_of(r);
        std::int64_t q = floor_div(v[p], r[p]);
        if (q)
            for (int k = 0; k < rank_; ++k) v[k] -= q * r[k];
    }
    return v;
}

Group::Element Group::mul(const Element& a, const Element& b) const {
    if (kind_ == Kind::Free) {
        Element w = a;
        w.insert(w.end(), b.begin(), b.end());
        return normal(w);
    }
    Element v(rank_);
    for (int k = 0; k < rank_; ++k) v[k] = a[k] + b[k];
    return normal(v);
}

Group::Element Group::inv(const Element& a) const {
    if (kind_ == Kind::Free) {
        Element w(a.rbegin(), a.rend());
        for (auto& x : w) x = -x;
        return w;
    }
    Element v(rank_);
    for (int k = 0; k < rank_; ++k) v[k] = -a[k];
    return normal(v);
}

Group::Element Group::pow(const Element& a, std::int64_t n) const {
    Element base = n < 0 ? inv(a) : a;
    Element out = identity();
    for (std::int64_t k = 0; k < std::llabs(n); ++k) out = mul(out, base);
    return out;
}

bool Group::is_identity(const Element& a) const {
    return std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; });
}

Group::Element Group::from_word(const Word& w) const {
    if (kind_ == Kind::Free) return normal(Element(w.begin(), w.end()));
    Element v(rank_, 0);
    for (int x : w) {
        int g = std::abs(x) - 1;
        if (g >= rank_) throw Error(ErrorCode::BadParam, "generator out of range");
        v[g] += x > 0 ? 1 : -1;
    }
    return normal(v);
}

std::string Group::key(const Element& a) const {
    std::string s;
    for (auto x : a) {
        s += std::to_string(x);
        s += ',';
    }
    return s;
}

std::string Group::format(const Element& a) const {
    if (kind_ == Kind::Free) return word_string(Word(a.begin(), a.end()));
    Word w;
    for (int k = 0; k < rank_; ++k)
        for (std::int64_t i = 0; i < std::llabs(a[k]); ++i) w.push_back(a[k] > 0 ? k + 1 : -(k + 1));
    return w.empty() ? "e" : word_string(w);
}

std::int64_t Group::element_order(const Element& a) const {
    if (is_identity(a)) return 1;
    if (kind_ == Kind::Free) return 0;
    std::int64_t bound = 1;
    for (auto& r : hnf_) bound *= r[pivot_of(r)];
    Element x = a;
    for (std::int64_t n = 1; n <= bound; ++n) {
        if (is_identity(x)) return n;
        x = mul(x, a);
    }
    return 0;
}

std::string Group::coset_key(const Element& a, const Element& c) const {
    if (kind_ == Kind::Abelian) {
        auto rows = hnf_;
        rows.push_back(c);
        Group q = Group::abelian(rank_, rows);
        return q.key(q.normal(a));
    }
    Word cw(c.begin(), c.end());
    cw = reduce(cw);
    Word core = cyclic_reduce(cw);
    if (core.empty()) return key(a);
    std::size_t strip = (cw.size() - core.size()) / 2;
    Word u(cw.begin(), cw.begin() + strip);
    Word h = concat(Word(a.begin(), a.end()), u);
    long K = long(2 * h.size() / core.size()) + 2;
    Word best;
    bool have = false;
    for (long k = -K; k <= K; ++k) {
        Word w = h;
        Word step = k < 0 ? inverse(core) : core;
        for (long i = 0; i < std::labs(k); ++i) w = concat(w, step);
        if (!have || w.size() < best.size() || (w.size() == best.size() && w < best)) {
            best = w;
            have = true;
        }
    }
    return "c" + key(Element(best.begin(), best.end()));
}

Group::Element Group::abelianise(const Element& a) const {
    if (kind_ == Kind::Abelian) return a;
    Element v(rank_, 0);
    for (auto x : a) v[std::llabs(x) - 1] += x > 0 ? 1 : -1;
    return v;
}

}  // namespace uw
