#pragma once

// Dense tensors with polynomial entries and explicit variance bookkeeping.
//
// A Tensor of rank r over an n-dimensional space stores n^r Poly entries in
// row-major order together with one Variance tag per slot.  All geometric
// operations (permutation, trace, raising/lowering, composition with an
// endomorphism) validate the variances they need, so misuse fails loudly
// instead of silently producing a wrong but well-typed array.
//
// Entries are polynomials in the model's parameters; a purely numeric model
// simply uses constants.  All arithmetic is exact.

#include "norden/poly.hpp"

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

namespace norden {

enum class Variance { Up, Down };

/// Odometer over all index tuples of [0,dim)^rank in row-major order.
class MultiIndex {
  public:
    MultiIndex(std::size_t dim, std::size_t rank)
        : dim_(dim), idx_(rank, 0), done_(dim == 0 && rank > 0) {}

    bool done() const { return done_; }
    const std::vector<std::size_t>& operator*() const { return idx_; }

    void next() {
        for (std::size_t k = idx_.size(); k-- > 0;) {
            if (++idx_[k] < dim_) return;
            idx_[k] = 0;
        }
        done_ = true;
    }

  private:
    std::size_t dim_;
    std::vector<std::size_t> idx_;
    bool done_;
};

class Tensor {
  public:
    Tensor(SpacePtr space, std::size_t dim, std::vector<Variance> slots)
        : space_(std::move(space)), dim_(dim), slots_(std::move(slots)) {
        if (dim_ == 0) throw error("tensor dimension must be positive");
        std::size_t size = 1;
        for (std::size_t k = 0; k < slots_.size(); ++k) size *= dim_;
        data_.assign(size, Poly::zero(space_));
    }

    const SpacePtr& space() const { return space_; }
    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return slots_.size(); }
    const std::vector<Variance>& slots() const { return slots_; }

    Poly& at(const std::vector<std::size_t>& idx) {
        return data_[offset(idx.data(), idx.size())];
    }
    const Poly& at(const std::vector<std::size_t>& idx) const {
        return data_[offset(idx.data(), idx.size())];
    }

    template <typename... I>
    Poly& operator()(I... is) {
        const std::array<std::size_t, sizeof...(I)> idx{
            static_cast<std::size_t>(is)...};
        return data_[offset(idx.data(), idx.size())];
    }
    template <typename... I>
    const Poly& operator()(I... is) const {
        const std::array<std::size_t, sizeof...(I)> idx{
            static_cast<std::size_t>(is)...};
        return data_[offset(idx.data(), idx.size())];
    }

    bool is_zero() const {
        for (const auto& p : data_)
            if (!p.is_zero()) return false;
        return true;
    }

    Tensor operator-() const {
        Tensor out(*this);
        for (auto& p : out.data_) p = -p;
        return out;
    }

    Tensor& operator+=(const Tensor& rhs) {
        require_same_shape(rhs, "+");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
        return *this;
    }
    Tensor& operator-=(const Tensor& rhs) {
        require_same_shape(rhs, "-");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
        return *this;
    }
    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }

    friend Tensor operator*(Tensor t, const Poly& c) {
        for (auto& p : t.data_) p *= c;
        return t;
    }
    friend Tensor operator*(const Poly& c, Tensor t) { return std::move(t) * c; }

    friend bool operator==(const Tensor& a, const Tensor& b) {
        if (a.dim_ != b.dim_ || a.slots_ != b.slots_) return false;
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            if (a.data_[k] != b.data_[k]) return false;
        return true;
    }
    friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

  private:
    std::size_t offset(const std::size_t* idx, std::size_t count) const {
        if (count != slots_.size())
            throw error("tensor indexed with " + std::to_string(count) +
                        " indices, rank is " + std::to_string(slots_.size()));
        std::size_t off = 0;
        for (std::size_t k = 0; k < count; ++k) {
            if (idx[k] >= dim_) throw error("tensor index out of range");
            off = off * dim_ + idx[k];
        }
        return off;
    }

    void require_same_shape(const Tensor& rhs, const char* op) const {
        if (dim_ != rhs.dim_ || slots_ != rhs.slots_)
            throw error(std::string("tensor shapes incompatible for '") + op +
                        "'");
    }

    SpacePtr space_;
    std::size_t dim_;
    std::vector<Variance> slots_;
    std::vector<Poly> data_;
};

/// u(j_0,...,j_{r-1}) = t(j_{sigma[0]}, ..., j_{sigma[r-1]}).
/// Example: sigma = {1,2,0} turns t(x,y,z) into u with u(x,y,z) = t(y,z,x).
inline Tensor permute(const Tensor& t, const std::vector<std::size_t>& sigma) {
    const std::size_t r = t.rank();
    if (sigma.size() != r) throw error("permutation length != tensor rank");
    std::vector<bool> seen(r, false);
    for (auto s : sigma) {
        if (s >= r || seen[s]) throw error("invalid permutation");
        seen[s] = true;
    }
    std::vector<Variance> slots(r, Variance::Down);
    for (std::size_t k = 0; k < r; ++k) slots[sigma[k]] = t.slots()[k];
    Tensor u(t.space(), t.dim(), slots);
    std::vector<std::size_t> src(r);
    for (MultiIndex mi(t.dim(), r); !mi.done(); mi.next()) {
        const auto& j = *mi;
        for (std::size_t k = 0; k < r; ++k) src[k] = j[sigma[k]];
        u.at(j) = t.at(src);
    }
    return u;
}

/// Natural trace of one contravariant against one covariant slot.
inline Tensor contract(const Tensor& t, std::size_t up_slot,
                       std::size_t down_slot) {
    const std::size_t r = t.rank();
    if (up_slot >= r || down_slot >= r || up_slot == down_slot)
        throw error("contract: bad slot pair");
    if (t.slots()[up_slot] != Variance::Up ||
        t.slots()[down_slot] != Variance::Down)
        throw error("contract: slots must be one contravariant, one covariant");
    std::vector<Variance> slots;
    for (std::size_t k = 0; k < r; ++k)
        if (k != up_slot && k != down_slot) slots.push_back(t.slots()[k]);
    Tensor out(t.space(), t.dim(), slots);
    std::vector<std::size_t> src(r);
    for (MultiIndex mi(t.dim(), r - 2); !mi.done(); mi.next()) {
        const auto& j = *mi;
        Poly sum = Poly::zero(t.space());
        for (std::size_t m = 0; m < t.dim(); ++m) {
            std::size_t pos = 0;
            for (std::size_t k = 0; k < r; ++k)
                src[k] = (k == up_slot || k == down_slot) ? m : j[pos++];
            sum += t.at(src);
        }
        out.at(j) = sum;
    }
    return out;
}

/// Raise or lower one slot.  `metric2` must be rank 2 with both slots Down
/// (lowers an Up slot of t) or both Up (raises a Down slot of t):
///   out(..., a, ...) = sum_b metric2(a, b) * t(..., b, ...).
inline Tensor apply_metric(const Tensor& t, std::size_t slot,
                           const Tensor& metric2) {
    const std::size_t r = t.rank();
    if (slot >= r) throw error("apply_metric: slot out of range");
    if (metric2.rank() != 2 || metric2.dim() != t.dim())
        throw error("apply_metric: metric tensor has wrong shape");
    const bool lowering = metric2.slots()[0] == Variance::Down &&
                          metric2.slots()[1] == Variance::Down;
    const bool raising = metric2.slots()[0] == Variance::Up &&
                         metric2.slots()[1] == Variance::Up;
    if (!lowering && !raising)
        throw error("apply_metric: metric tensor has mixed variance");
    if (lowering && t.slots()[slot] != Variance::Up)
        throw error("apply_metric: lowering needs a contravariant slot");
    if (raising && t.slots()[slot] != Variance::Down)
        throw error("apply_metric: raising needs a covariant slot");
    std::vector<Variance> slots = t.slots();
    slots[slot] = lowering ? Variance::Down : Variance::Up;
    Tensor out(t.space(), t.dim(), slots);
    std::vector<std::size_t> src(r);
    for (MultiIndex mi(t.dim(), r); !mi.done(); mi.next()) {
        const auto& j = *mi;
        src.assign(j.begin(), j.end());
        Poly sum = Poly::zero(t.space());
        for (std::size_t b = 0; b < t.dim(); ++b) {
            src[slot] = b;
            sum += metric2(j[slot], b) * t.at(src);
        }
        out.at(j) = sum;
    }
    return out;
}

/// Plug the endomorphism `endo` (a (1,1) tensor) into one argument of t:
/// for a covariant slot, out(..., x, ...) = t(..., endo x, ...); for a
/// contravariant slot the endomorphism acts on the output instead.
inline Tensor compose(const Tensor& t, std::size_t slot, const Tensor& endo) {
    const std::size_t r = t.rank();
    if (slot >= r) throw error("compose: slot out of range");
    if (endo.rank() != 2 || endo.dim() != t.dim() ||
        endo.slots()[0] != Variance::Up || endo.slots()[1] != Variance::Down)
        throw error("compose: endomorphism must be a (1,1) tensor");
    Tensor out(t.space(), t.dim(), t.slots());
    std::vector<std::size_t> src(r);
    const bool covariant = t.slots()[slot] == Variance::Down;
    for (MultiIndex mi(t.dim(), r); !mi.done(); mi.next()) {
        const auto& j = *mi;
        src.assign(j.begin(), j.end());
        Poly sum = Poly::zero(t.space());
        for (std::size_t b = 0; b < t.dim(); ++b) {
            src[slot] = b;
            // T(..., Jx, ...) = T_b J^b_x x-component;  (J T)^a = J^a_b T^b.
            sum += (covariant ? endo(b, j[slot]) : endo(j[slot], b)) * t.at(src);
        }
        out.at(j) = sum;
    }
    return out;
}

/// Full pairing of an all-contravariant tensor with an all-covariant tensor
/// of the same rank: sum over all indices of the entrywise product.
inline Poly full_contract(const Tensor& up, const Tensor& down) {
    if (up.rank() != down.rank() || up.dim() != down.dim())
        throw error("full_contract: shape mismatch");
    for (std::size_t k = 0; k < up.rank(); ++k)
        if (up.slots()[k] != Variance::Up || down.slots()[k] != Variance::Down)
            throw error("full_contract: variance mismatch");
    Poly sum = Poly::zero(up.space());
    for (MultiIndex mi(up.dim(), up.rank()); !mi.done(); mi.next()) {
        const auto& j = *mi;
        sum += up.at(j) * down.at(j);
    }
    return sum;
}

}  // namespace norden
