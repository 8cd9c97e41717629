#include "matchkit/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

namespace matchkit {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw DomainError("group needs at least one cyclic factor");
    for (int d : moduli_) {
        if (d < 2) throw DomainError("every cyclic modulus must be >= 2");
        if (order_ > (1ll << 40) / d) throw ResourceError("group order too large to index");
        order_ *= d;
    }
}

GroupElement FiniteAbelianGroup::zero() const {
    return GroupElement{std::vector<int>(moduli_.size(), 0)};
}

GroupElement FiniteAbelianGroup::element_at(long long index) const {
    if (index < 0 || index >= order_) throw StructuralError("element index out of range");
    std::vector<int> coords(moduli_.size());
    for (std::size_t i = moduli_.size(); i-- > 0;) {
        coords[i] = static_cast<int>(index % moduli_[i]);
        index /= moduli_[i];
    }
    return GroupElement{std::move(coords)};
}

long long FiniteAbelianGroup::index_of(const GroupElement& e) const {
    check_element(e);
    long long index = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) index = index * moduli_[i] + e.coords[i];
    return index;
}

void FiniteAbelianGroup::check_element(const GroupElement& e) const {
    if (e.coords.size() != moduli_.size())
        throw StructuralError("element has " + std::to_string(e.coords.size()) +
                              " coordinates, group has " + std::to_string(moduli_.size()) +
                              " factors");
    for (std::size_t i = 0; i < moduli_.size(); ++i)
        if (e.coords[i] < 0 || e.coords[i] >= moduli_[i])
            throw StructuralError("coordinate " + std::to_string(i) + " not reduced mod " +
                                  std::to_string(moduli_[i]));
}

GroupElement FiniteAbelianGroup::add(const GroupElement& x, const GroupElement& y) const {
    check_element(x);
    check_element(y);
    std::vector<int> coords(moduli_.size());
    for (std::size_t i = 0; i < moduli_.size(); ++i)
        coords[i] = (x.coords[i] + y.coords[i]) % moduli_[i];
    return GroupElement{std::move(coords)};
}

GroupElement FiniteAbelianGroup::negate(const GroupElement& x) const {
    check_element(x);
    std::vector<int> coords(moduli_.size());
    for (std::size_t i = 0; i < moduli_.size(); ++i)
        coords[i] = x.coords[i] == 0 ? 0 : moduli_[i] - x.coords[i];
    return GroupElement{std::move(coords)};
}

long long FiniteAbelianGroup::add_index(long long x, long long y) const {
    return index_of(add(element_at(x), element_at(y)));
}

long long FiniteAbelianGroup::negate_index(long long x) const {
    return index_of(negate(element_at(x)));
}

std::string FiniteAbelianGroup::spec_string() const {
    std::string out;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        if (i > 0) out += 'x';
        out += 'Z' + std::to_string(moduli_[i]);
    }
    return out;
}

std::string FiniteAbelianGroup::format_element(const GroupElement& e) const {
    check_element(e);
    if (cyclic()) return std::to_string(e.coords[0]);
    std::string out = "(";
    for (std::size_t i = 0; i < e.coords.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(e.coords[i]);
    }
    return out + ")";
}

GroupSubset::GroupSubset(FiniteAbelianGroup group, const std::vector<GroupElement>& elems)
    : group_(std::move(group)) {
    indices_.reserve(elems.size());
    for (const auto& e : elems) indices_.push_back(group_.index_of(e));
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

GroupSubset GroupSubset::from_indices(FiniteAbelianGroup group, std::vector<long long> indices) {
    for (long long i : indices)
        if (i < 0 || i >= group.order()) throw StructuralError("subset index out of range");
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    GroupSubset s(std::move(group), {});
    s.indices_ = std::move(indices);
    return s;
}

std::vector<GroupElement> GroupSubset::elements() const {
    std::vector<GroupElement> out;
    out.reserve(indices_.size());
    for (long long i : indices_) out.push_back(group_.element_at(i));
    return out;
}

bool GroupSubset::contains_index(long long index) const {
    return std::binary_search(indices_.begin(), indices_.end(), index);
}

bool GroupSubset::contains(const GroupElement& e) const {
    return contains_index(group_.index_of(e));
}

std::string GroupSubset::format() const {
    std::string out = "{";
    bool first = true;
    for (long long i : indices_) {
        if (!first) out += ',';
        first = false;
        out += group_.format_element(group_.element_at(i));
    }
    return out + "}";
}

GroupSubset sumset(const GroupSubset& a, const GroupSubset& b) {
    if (a.group() != b.group()) throw StructuralError("sumset arguments live in different groups");
    if (a.empty() || b.empty()) throw DomainError("sumset requires non-empty subsets");
    const auto& g = a.group();
    std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
    for (long long x : a.indices())
        for (long long y : b.indices()) seen[static_cast<std::size_t>(g.add_index(x, y))] = 1;
    std::vector<long long> out;
    for (long long i = 0; i < g.order(); ++i)
        if (seen[static_cast<std::size_t>(i)]) out.push_back(i);
    return GroupSubset::from_indices(g, std::move(out));
}

bool is_subgroup(const GroupSubset& s) {
    const auto& g = s.group();
    if (!s.contains_index(0)) return false;
    for (long long x : s.indices()) {
        if (!s.contains_index(g.negate_index(x))) return false;
        for (long long y : s.indices())
            if (!s.contains_index(g.add_index(x, y))) return false;
    }
    return true;
}

namespace {

std::vector<long long> close_under(const FiniteAbelianGroup& g,
                                   const std::vector<long long>& seed) {
    std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
    std::vector<long long> work;
    auto push = [&](long long i) {
        if (!in[static_cast<std::size_t>(i)]) {
            in[static_cast<std::size_t>(i)] = 1;
            work.push_back(i);
        }
    };
    push(0);
    for (long long s : seed) push(s);
    for (std::size_t k = 0; k < work.size(); ++k) {
        push(g.negate_index(work[k]));
        for (std::size_t j = 0; j <= k; ++j) push(g.add_index(work[k], work[j]));
    }
    std::sort(work.begin(), work.end());
    return work;
}

}  // namespace

std::vector<Subgroup> subgroups(const FiniteAbelianGroup& g, long long max_order) {
    if (g.order() > max_order)
        throw ResourceError("subgroup enumeration is limited to order <= " +
                            std::to_string(max_order) + " (group has order " +
                            std::to_string(g.order()) + ")");
    std::set<std::vector<long long>> seen;
    std::deque<std::vector<long long>> queue;
    auto trivial = close_under(g, {});
    seen.insert(trivial);
    queue.push_back(std::move(trivial));
    while (!queue.empty()) {
        auto h = std::move(queue.front());
        queue.pop_front();
        std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
        for (long long i : h) in[static_cast<std::size_t>(i)] = 1;
        for (long long x = 0; x < g.order(); ++x) {
            if (in[static_cast<std::size_t>(x)]) continue;
            auto extended = h;
            extended.push_back(x);
            auto closure = close_under(g, extended);
            if (seen.insert(closure).second) queue.push_back(std::move(closure));
        }
    }
    std::vector<Subgroup> out;
    out.reserve(seen.size());
    for (const auto& carrier : seen)
        out.push_back(Subgroup{GroupSubset::from_indices(g, carrier)});
    return out;
}

bool is_generator(const FiniteAbelianGroup& g, const GroupElement& e) {
    if (!g.cyclic()) throw DomainError("generator test requires a cyclic group");
    long long index = g.index_of(e);
    long long a = index;
    long long b = g.order();
    while (b != 0) {
        long long r = a % b;
        a = b;
        b = r;
    }
    return a == 1;
}

namespace {

void skip_ws(std::string_view s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

long long parse_int(std::string_view s, std::size_t& i, const char* what) {
    skip_ws(s, i);
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw ParseError(std::string(s), start, std::string("expected ") + what);
    if (i - start > 9) throw ParseError(std::string(s), start, "number too large");
    long long v = 0;
    for (std::size_t k = start; k < i; ++k) v = v * 10 + (s[k] - '0');
    return v;
}

}  // namespace

FiniteAbelianGroup parse_group(std::string_view text) {
    std::size_t i = 0;
    std::vector<int> moduli;
    for (;;) {
        skip_ws(text, i);
        if (i >= text.size() || (text[i] != 'Z' && text[i] != 'z'))
            throw ParseError(std::string(text), i, "expected 'Z'");
        ++i;
        std::size_t at = i;
        long long d = parse_int(text, i, "modulus");
        if (d < 2) throw ParseError(std::string(text), at, "modulus must be >= 2");
        moduli.push_back(static_cast<int>(d));
        skip_ws(text, i);
        if (i == text.size()) break;
        if (text[i] == 'x' || text[i] == 'X') {
            ++i;
            continue;
        }
        throw ParseError(std::string(text), i, "expected 'x' separator");
    }
    return FiniteAbelianGroup(std::move(moduli));
}

GroupSubset parse_subset(const FiniteAbelianGroup& g, std::string_view text) {
    std::size_t i = 0;
    skip_ws(text, i);
    bool braced = i < text.size() && text[i] == '{';
    if (braced) ++i;
    std::vector<GroupElement> elems;
    for (;;) {
        skip_ws(text, i);
        if (i >= text.size()) break;
        if (braced && text[i] == '}') break;
        GroupElement e;
        if (text[i] == '(') {
            ++i;
            for (std::size_t c = 0; c < g.factors(); ++c) {
                if (c > 0) {
                    skip_ws(text, i);
                    if (i >= text.size() || text[i] != ',')
                        throw ParseError(std::string(text), i, "expected ','");
                    ++i;
                }
                std::size_t at = i;
                long long v = parse_int(text, i, "coordinate");
                if (v >= g.moduli()[c])
                    throw ParseError(std::string(text), at,
                                     "coordinate must be reduced mod " +
                                         std::to_string(g.moduli()[c]));
                e.coords.push_back(static_cast<int>(v));
            }
            skip_ws(text, i);
            if (i >= text.size() || text[i] != ')')
                throw ParseError(std::string(text), i, "expected ')'");
            ++i;
        } else {
            if (!g.cyclic())
                throw ParseError(std::string(text), i,
                                 "expected '(' (bare residues are only valid in cyclic groups)");
            std::size_t at = i;
            long long v = parse_int(text, i, "residue");
            if (v >= g.order())
                throw ParseError(std::string(text), at,
                                 "residue must be reduced mod " + std::to_string(g.order()));
            e.coords.push_back(static_cast<int>(v));
        }
        elems.push_back(std::move(e));
        skip_ws(text, i);
        if (i < text.size() && text[i] == ',') {
            ++i;
            continue;
        }
        break;
    }
    if (braced) {
        skip_ws(text, i);
        if (i >= text.size() || text[i] != '}')
            throw ParseError(std::string(text), i, "expected '}'");
        ++i;
    }
    skip_ws(text, i);
    if (i != text.size()) throw ParseError(std::string(text), i, "trailing characters");
    if (elems.empty()) throw ParseError(std::string(text), 0, "empty subset");
    return GroupSubset(g, elems);
}

}  // namespace matchkit
