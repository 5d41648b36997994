#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "common.hpp"
#include "hash.hpp"

namespace pdsforge {

/// Uniform finite-group interface.  Elements are dense ids in [0, order) with
/// the identity always at index 0; each backend defines a canonical index
/// formula that is part of the certificate contract (see README).
///
/// Groups of order <= 2048 materialise their multiplication table eagerly;
/// larger groups always compute products from the backend law (O(1) for all
/// backends except matrix-affine, which is O(m^2)).  Handles are immutable
/// after construction and safe to share across census workers.
class Group {
public:
    static constexpr ElementId identity = 0;
    static constexpr ElementId table_limit = 2048;

    explicit Group(std::uint64_t v) {
        require(v >= 1 && v <= (std::uint64_t{1} << 31), "TooLarge",
                "group order out of supported range");
        v_ = static_cast<ElementId>(v);
    }
    virtual ~Group() = default;

    ElementId order() const { return v_; }

    ElementId mul(ElementId a, ElementId b) const {
        require(a < v_ && b < v_, "HandleMismatch", "element id out of range for this group");
        if (!table_.empty()) return table_[std::size_t{a} * v_ + b];
        return mul_impl(a, b);
    }

    ElementId inverse(ElementId a) const {
        require(a < v_, "HandleMismatch", "element id out of range for this group");
        if (!inv_tab_.empty()) return inv_tab_[a];
        return inv_impl(a);
    }

    /// Canonical cross-run identity string, e.g. "semidirect:3:2" or "abelian:9,9".
    virtual std::string spec_string() const = 0;
    /// Human-readable label, e.g. "Z9 : Z9 (s=7)".
    virtual std::string description() const = 0;
    /// A generating set when the backend knows one (may be empty, meaning
    /// "unknown"; centre computation then falls back to exhaustive testing).
    virtual std::vector<ElementId> generators() const { return {}; }
    virtual bool is_abelian() const = 0;

protected:
    virtual ElementId mul_impl(ElementId a, ElementId b) const = 0;
    virtual ElementId inv_impl(ElementId a) const = 0;

    /// Called at the end of each backend constructor: caches inverses and,
    /// for small orders, the full multiplication table.
    void finalize_tables() {
        if (v_ <= table_limit) {
            table_.resize(std::size_t{v_} * v_);
            for (ElementId a = 0; a < v_; ++a)
                for (ElementId b = 0; b < v_; ++b) table_[std::size_t{a} * v_ + b] = mul_impl(a, b);
            inv_tab_.resize(v_);
            for (ElementId a = 0; a < v_; ++a) inv_tab_[a] = inv_impl(a);
        }
    }

private:
    ElementId v_;
    std::vector<ElementId> table_;
    std::vector<ElementId> inv_tab_;
};

using GroupPtr = std::shared_ptr<const Group>;

/// Direct product of cyclic groups; element = tuple of residues, canonical
/// index = mixed-radix encoding with the FIRST factor fastest-varying.
class AbelianGroup final : public Group {
public:
    explicit AbelianGroup(const std::vector<std::uint32_t>& orders)
        : Group(total_order(orders)), orders_(orders) {
        finalize_tables();
    }

    std::string spec_string() const override {
        std::string s = "abelian:";
        for (std::size_t i = 0; i < orders_.size(); ++i)
            s += (i ? "," : "") + std::to_string(orders_[i]);
        return s;
    }

    std::string description() const override {
        std::string s;
        for (std::size_t i = 0; i < orders_.size(); ++i)
            s += (i ? " x " : "") + ("Z" + std::to_string(orders_[i]));
        return s;
    }

    std::vector<ElementId> generators() const override {
        std::vector<ElementId> gens;
        ElementId scale = 1;
        for (std::uint32_t n : orders_) {
            gens.push_back(scale);
            scale *= n;
        }
        return gens;
    }

    bool is_abelian() const override { return true; }

    const std::vector<std::uint32_t>& orders() const { return orders_; }

protected:
    ElementId mul_impl(ElementId a, ElementId b) const override {
        ElementId out = 0, scale = 1;
        for (std::uint32_t n : orders_) {
            std::uint32_t s = a % n + b % n;
            if (s >= n) s -= n;
            out += s * scale;
            a /= n;
            b /= n;
            scale *= n;
        }
        return out;
    }

    ElementId inv_impl(ElementId a) const override {
        ElementId out = 0, scale = 1;
        for (std::uint32_t n : orders_) {
            std::uint32_t d = a % n;
            out += (d == 0 ? 0 : n - d) * scale;
            a /= n;
            scale *= n;
        }
        return out;
    }

private:
    static std::uint64_t total_order(const std::vector<std::uint32_t>& orders) {
        require(!orders.empty(), "OrderTooSmall", "abelian group needs at least one factor");
        std::uint64_t v = 1;
        for (std::uint32_t n : orders) {
            require(n >= 2, "OrderTooSmall", "cyclic factors must have order >= 2");
            v *= n;
            require(v <= (std::uint64_t{1} << 31), "TooLarge", "group order out of range");
        }
        return v;
    }

    std::vector<std::uint32_t> orders_;
};

/// The nonabelian group of order p^{2t} presented as
///   < x, y : x^{p^t} = y^{p^t} = 1, y x y^{-1} = x^s >,  s = (p-1)p^{t-1} + 1.
/// Elements are pairs (a,b) standing for x^a y^b with index a + p^t*b; the
/// relation is realised as y x = x^s y, giving the closed product law
///   (a,b)(c,d) = (a + c*s^b, b + d)  (mod p^t componentwise).
class SemidirectGroup final : public Group {
public:
    SemidirectGroup(std::uint32_t p, std::uint32_t t)
        : Group(order_of(p, t)), p_(p), t_(t) {
        pt_ = 1;
        for (std::uint32_t i = 0; i < t_; ++i) pt_ *= p_;
        std::uint64_t s = 1;
        for (std::uint32_t i = 0; i + 1 < t_; ++i) s *= p_;
        s_ = static_cast<std::uint32_t>(((p_ - 1) * s + 1) % pt_);
        s_pow_.resize(pt_);
        s_pow_[0] = 1;
        for (std::uint32_t b = 1; b < pt_; ++b)
            s_pow_[b] = static_cast<std::uint32_t>(std::uint64_t{s_pow_[b - 1]} * s_ % pt_);
        finalize_tables();
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t t() const { return t_; }
    std::uint32_t s() const { return s_; }
    std::uint32_t pt() const { return pt_; }

    /// Id of x^a y^b.
    ElementId xy(std::int64_t a, std::int64_t b) const {
        std::int64_t m = pt_;
        return static_cast<ElementId>(((a % m + m) % m) + m * ((b % m + m) % m));
    }

    std::string spec_string() const override {
        return "semidirect:" + std::to_string(p_) + ":" + std::to_string(t_);
    }

    std::string description() const override {
        return "Z" + std::to_string(pt_) + " : Z" + std::to_string(pt_) +
               " (s=" + std::to_string(s_) + ")";
    }

    std::vector<ElementId> generators() const override { return {xy(1, 0), xy(0, 1)}; }

    bool is_abelian() const override { return s_ == 1; }

protected:
    ElementId mul_impl(ElementId a, ElementId b) const override {
        std::uint32_t a1 = a % pt_, b1 = a / pt_, a2 = b % pt_, b2 = b / pt_;
        std::uint32_t x = static_cast<std::uint32_t>((a1 + std::uint64_t{a2} * s_pow_[b1]) % pt_);
        std::uint32_t y = b1 + b2;
        if (y >= pt_) y -= pt_;
        return x + pt_ * y;
    }

    ElementId inv_impl(ElementId g) const override {
        std::uint32_t a = g % pt_, b = g / pt_;
        std::uint32_t bi = (pt_ - b) % pt_;
        // (a,b)^{-1} = (-a * s^{-b}, -b); s^{-b} = s^{(p^t - b) mod p^t} since s^p = 1
        std::uint32_t ai =
            static_cast<std::uint32_t>(std::uint64_t{(pt_ - a) % pt_} * s_pow_[bi] % pt_);
        return ai + pt_ * bi;
    }

private:
    static std::uint64_t order_of(std::uint32_t p, std::uint32_t t) {
        require(p >= 3 && p % 2 == 1 && is_prime(p), "NotOddPrime",
                "semidirect construction requires an odd prime");
        require(t >= 2, "TTooSmall", "semidirect construction requires t >= 2");
        std::uint64_t v = 1;
        for (std::uint32_t i = 0; i < 2 * t; ++i) {
            v *= p;
            require(v <= (std::uint64_t{1} << 31), "TooLarge", "group order out of range");
        }
        return v;
    }

    static bool is_prime(std::uint32_t p) {
        if (p < 2) return false;
        for (std::uint32_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    std::uint32_t p_, t_, pt_, s_;
    std::vector<std::uint32_t> s_pow_;
};

/// Direct product; index = idx_left + |left| * idx_right.
class ProductGroup final : public Group {
public:
    ProductGroup(GroupPtr left, GroupPtr right)
        : Group(std::uint64_t{left->order()} * right->order()),
          left_(std::move(left)),
          right_(std::move(right)) {
        vl_ = left_->order();
        finalize_tables();
    }

    const GroupPtr& left() const { return left_; }
    const GroupPtr& right() const { return right_; }

    ElementId pair(ElementId g, ElementId h) const { return g + vl_ * h; }
    ElementId left_part(ElementId g) const { return g % vl_; }
    ElementId right_part(ElementId g) const { return g / vl_; }

    std::string spec_string() const override {
        return "product:(" + left_->spec_string() + ")x(" + right_->spec_string() + ")";
    }

    std::string description() const override {
        return "(" + left_->description() + ") x (" + right_->description() + ")";
    }

    std::vector<ElementId> generators() const override {
        std::vector<ElementId> gens;
        for (ElementId g : left_->generators()) gens.push_back(pair(g, 0));
        for (ElementId h : right_->generators()) gens.push_back(pair(0, h));
        return gens;
    }

    bool is_abelian() const override { return left_->is_abelian() && right_->is_abelian(); }

protected:
    ElementId mul_impl(ElementId a, ElementId b) const override {
        return pair(left_->mul(a % vl_, b % vl_), right_->mul(a / vl_, b / vl_));
    }

    ElementId inv_impl(ElementId a) const override {
        return pair(left_->inverse(a % vl_), right_->inverse(a / vl_));
    }

private:
    GroupPtr left_, right_;
    ElementId vl_;
};

inline GroupPtr abelian_group(const std::vector<std::uint32_t>& orders) {
    return std::make_shared<AbelianGroup>(orders);
}

inline GroupPtr semidirect_group(std::uint32_t p, std::uint32_t t) {
    return std::make_shared<SemidirectGroup>(p, t);
}

inline GroupPtr direct_product(GroupPtr g, GroupPtr h) {
    return std::make_shared<ProductGroup>(std::move(g), std::move(h));
}

/// Subset of one group's elements as a dense bit vector with cached size.
/// All set algebra stays within one owner group (HandleMismatch otherwise,
/// compared by canonical spec string so independently built but identical
/// groups interoperate).
class ElementSet {
public:
    explicit ElementSet(GroupPtr owner)
        : owner_(std::move(owner)), bits_((std::size_t{owner_->order()} + 63) / 64, 0) {}

    static ElementSet full(GroupPtr owner) {
        ElementSet s(std::move(owner));
        for (ElementId g = 0; g < s.owner_->order(); ++g) s.add(g);
        return s;
    }

    static ElementSet of(GroupPtr owner, const std::vector<ElementId>& ids) {
        ElementSet s(std::move(owner));
        for (ElementId g : ids) {
            require(g < s.owner_->order(), "HandleMismatch", "element id out of range");
            require(!s.contains(g), "BadParameters",
                    "duplicate element id " + std::to_string(g));
            s.add(g);
        }
        return s;
    }

    const GroupPtr& owner() const { return owner_; }

    bool contains(ElementId g) const { return (bits_[g >> 6] >> (g & 63)) & 1; }

    void add(ElementId g) {
        std::uint64_t& w = bits_[g >> 6];
        std::uint64_t m = std::uint64_t{1} << (g & 63);
        if (!(w & m)) {
            w |= m;
            ++count_;
        }
    }

    void remove(ElementId g) {
        std::uint64_t& w = bits_[g >> 6];
        std::uint64_t m = std::uint64_t{1} << (g & 63);
        if (w & m) {
            w &= ~m;
            --count_;
        }
    }

    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    ElementSet& operator|=(const ElementSet& other) {
        check_owner(other);
        count_ = 0;
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            bits_[i] |= other.bits_[i];
            count_ += std::popcount(bits_[i]);
        }
        return *this;
    }

    ElementSet& operator&=(const ElementSet& other) {
        check_owner(other);
        count_ = 0;
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            bits_[i] &= other.bits_[i];
            count_ += std::popcount(bits_[i]);
        }
        return *this;
    }

    ElementSet& operator-=(const ElementSet& other) {
        check_owner(other);
        count_ = 0;
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            bits_[i] &= ~other.bits_[i];
            count_ += std::popcount(bits_[i]);
        }
        return *this;
    }

    friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
    friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
    friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

    ElementSet complement() const {
        ElementSet out(owner_);
        for (ElementId g = 0; g < owner_->order(); ++g)
            if (!contains(g)) out.add(g);
        return out;
    }

    bool operator==(const ElementSet& other) const {
        return owner_->spec_string() == other.owner_->spec_string() && bits_ == other.bits_;
    }
    bool operator!=(const ElementSet& other) const { return !(*this == other); }

    bool disjoint_with(const ElementSet& other) const {
        check_owner(other);
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & other.bits_[i]) return false;
        return true;
    }

    /// Visit members in ascending id order.
    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < bits_.size(); ++w) {
            std::uint64_t word = bits_[w];
            while (word != 0) {
                unsigned bit = static_cast<unsigned>(std::countr_zero(word));
                fn(static_cast<ElementId>(64 * w + bit));
                word &= word - 1;
            }
        }
    }

    std::vector<ElementId> ids() const {
        std::vector<ElementId> out;
        out.reserve(count_);
        for_each([&](ElementId g) { out.push_back(g); });
        return out;
    }

    ElementSet inverse_image() const {
        ElementSet out(owner_);
        for_each([&](ElementId g) { out.add(owner_->inverse(g)); });
        return out;
    }

    bool inverse_closed() const {
        bool ok = true;
        for_each([&](ElementId g) { ok = ok && contains(owner_->inverse(g)); });
        return ok;
    }

    /// SHA-256 over the ascending member ids, each as 8 little-endian bytes.
    std::string hash() const {
        Sha256 h;
        for_each([&](ElementId g) { h.update_u64(g); });
        return h.hex_digest();
    }

    void check_owner(const ElementSet& other) const {
        require(owner_ == other.owner_ ||
                    owner_->spec_string() == other.owner_->spec_string(),
                "HandleMismatch", "element sets belong to different groups");
    }

private:
    GroupPtr owner_;
    std::vector<std::uint64_t> bits_;
    std::size_t count_ = 0;
};

/// {g^0, g^1, ...} INCLUDING the identity; callers building "subgroup minus
/// identity" classes subtract it themselves.
inline ElementSet cyclic_subgroup(const GroupPtr& G, ElementId g) {
    ElementSet out(G);
    ElementId cur = Group::identity;
    do {
        out.add(cur);
        cur = G->mul(cur, g);
    } while (cur != Group::identity);
    return out;
}

/// Closure of a generating set (breadth-first); includes the identity.
inline ElementSet subgroup_generated(const GroupPtr& G, const std::vector<ElementId>& gens) {
    ElementSet out(G);
    out.add(Group::identity);
    std::vector<ElementId> frontier{Group::identity};
    while (!frontier.empty()) {
        std::vector<ElementId> next;
        for (ElementId h : frontier) {
            for (ElementId g : gens) {
                ElementId e = G->mul(h, g);
                if (!out.contains(e)) {
                    out.add(e);
                    next.push_back(e);
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

inline std::uint64_t element_order(const Group& G, ElementId g) {
    std::uint64_t n = 1;
    ElementId cur = g;
    while (cur != Group::identity) {
        cur = G.mul(cur, g);
        ++n;
    }
    return n;
}

/// Least common multiple of all element orders (exhaustive; bounded).
inline std::uint64_t exponent(const Group& G) {
    require(G.order() <= 1000000u, "TooLarge", "exponent probe limited to order <= 10^6");
    std::uint64_t l = 1;
    for (ElementId g = 0; g < G.order(); ++g) l = std::lcm(l, element_order(G, g));
    return l;
}

/// Elements commuting with everything.  When the backend knows a generating
/// set, candidates are tested against the generators only (sufficient since
/// the centraliser of a generating set is the centraliser of the group).
inline ElementSet center(const GroupPtr& G) {
    require(G->order() <= 1000000u, "TooLarge", "centre probe limited to order <= 10^6");
    std::vector<ElementId> probes = G->generators();
    ElementSet out(G);
    for (ElementId z = 0; z < G->order(); ++z) {
        bool central = true;
        if (!probes.empty()) {
            for (ElementId g : probes)
                if (G->mul(z, g) != G->mul(g, z)) {
                    central = false;
                    break;
                }
        } else {
            for (ElementId g = 0; g < G->order(); ++g)
                if (G->mul(z, g) != G->mul(g, z)) {
                    central = false;
                    break;
                }
        }
        if (central) out.add(z);
    }
    return out;
}

}  // namespace pdsforge
