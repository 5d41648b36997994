#pragma once

#include <cstdint>
#include <thread>
#include <vector>

#include "common.hpp"
#include "group.hpp"
#include "hash.hpp"

namespace pdsforge {

/// Exact multiset of values over a group: counts[g] for every element id.
using Census = std::vector<std::int64_t>;

namespace detail {

/// Runs kernel(worker, lo, hi) over [0, n) split into contiguous chunks, one
/// per worker.  Each worker owns a private accumulator; the accumulators are
/// summed in worker order afterwards, so results are bit-identical for every
/// thread count.
template <typename Kernel>
Census parallel_accumulate(std::uint64_t n, std::size_t bins, unsigned threads, Kernel kernel) {
    unsigned nw = effective_threads(threads);
    if (std::uint64_t{nw} > n) nw = n ? static_cast<unsigned>(n) : 1;
    std::vector<Census> acc(nw, Census(bins, 0));
    if (nw == 1) {
        kernel(acc[0], std::uint64_t{0}, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (unsigned w = 0; w < nw; ++w) {
            std::uint64_t lo = n * w / nw, hi = n * (w + 1) / nw;
            pool.emplace_back([&, w, lo, hi] { kernel(acc[w], lo, hi); });
        }
        for (auto& th : pool) th.join();
    }
    Census total = std::move(acc[0]);
    for (unsigned w = 1; w < nw; ++w)
        for (std::size_t i = 0; i < bins; ++i) total[i] += acc[w][i];
    return total;
}

}  // namespace detail

/// counts[g] = #{ (d1, d2) : d1, d2 in S, d1 != d2, d1 * d2^{-1} = g }.
/// The unordered-pair convention d1 != d2 is implemented by running the full
/// ordered double loop and then removing the |S| diagonal hits at the
/// identity.
inline Census difference_census(const ElementSet& S, unsigned threads = 0) {
    const GroupPtr& G = S.owner();
    std::vector<ElementId> ids = S.ids();
    std::vector<ElementId> inv(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) inv[i] = G->inverse(ids[i]);

    Census counts = detail::parallel_accumulate(
        ids.size(), G->order(), threads,
        [&](Census& acc, std::uint64_t lo, std::uint64_t hi) {
            for (std::uint64_t i = lo; i < hi; ++i)
                for (std::size_t j = 0; j < ids.size(); ++j)
                    ++acc[G->mul(ids[i], inv[j])];
        });
    counts[Group::identity] -= static_cast<std::int64_t>(ids.size());
    return counts;
}

/// counts[g] = #{ (a, b) in A x B : a * b = g }.
inline Census convolution(const ElementSet& A, const ElementSet& B, unsigned threads = 0) {
    A.check_owner(B);
    const GroupPtr& G = A.owner();
    std::vector<ElementId> as = A.ids(), bs = B.ids();
    return detail::parallel_accumulate(
        as.size(), G->order(), threads,
        [&](Census& acc, std::uint64_t lo, std::uint64_t hi) {
            for (std::uint64_t i = lo; i < hi; ++i)
                for (std::size_t j = 0; j < bs.size(); ++j) ++acc[G->mul(as[i], bs[j])];
        });
}

/// Pointwise sum / scale helpers for assembling census identities.
inline Census& census_add(Census& a, const Census& b) {
    require(a.size() == b.size(), "SizeMismatch", "census length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline Census census_of_set(const ElementSet& S, std::int64_t weight) {
    Census c(S.owner()->order(), 0);
    S.for_each([&](ElementId g) { c[g] += weight; });
    return c;
}

/// SHA-256 over the census values in element-id order (int64 little-endian).
inline std::string census_checksum(const Census& c) { return sha256_of_i64(c); }

}  // namespace pdsforge
